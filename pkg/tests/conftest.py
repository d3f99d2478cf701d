import pytest
from hypothesis import HealthCheck, settings

from affnet import AffiliationMap, Rank3Network, Rank4Network, build_rank4
from affnet.transforms import rank4_to_rank3

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


TOY_LABELS = list("ABCDEFG")
TOY_AFFILIATIONS = (0, 0, 0, 0, 1, 1, 1)
# Directed toy system: nodes A-D belong to layer "1", E-G to layer "2".
# D's personal network is (D->C, D->E, D->F); the D->E and D->F links are
# inter-affiliation, everything else is intra.
TOY_LINKS = [
    (0, 1, 0, 0),  # A -> B
    (1, 2, 0, 0),  # B -> C
    (2, 0, 0, 0),  # C -> A
    (3, 2, 0, 0),  # D -> C
    (3, 4, 0, 1),  # D -> E
    (3, 5, 0, 1),  # D -> F
    (4, 5, 1, 1),  # E -> F
    (5, 6, 1, 1),  # F -> G
    (6, 4, 1, 1),  # G -> E
]

A, B, C, D, E, F, G = range(7)


@pytest.fixture(scope="session")
def toy_rank4() -> Rank4Network:
    return build_rank4(
        7,
        2,
        "directed",
        TOY_LINKS,
        AffiliationMap(TOY_AFFILIATIONS),
        node_labels=TOY_LABELS,
        layer_labels=["1", "2"],
    )


@pytest.fixture(scope="session")
def toy_rank3(toy_rank4) -> Rank3Network:
    return rank4_to_rank3(toy_rank4)
