"""Analysis toolkit for single-affiliation multilayer networks.

Represents a network whose nodes each belong to exactly one affiliation in
two interchangeable sparse tensor forms, converts losslessly between them,
computes slice-based structural metrics, fits degree and activity
distributions, generates seeded random benchmarks, and runs a full
comparison pipeline from the command line.
"""

from ._version import __version__
from .errors import (
    AffiliationViolationError,
    AffnetError,
    DegenerateInputError,
    IndexOutOfRangeError,
    IndeterminateOrderingError,
    InsufficientDataError,
    InvalidSliceError,
    LinkNotFoundError,
    MissingAffiliationError,
    OverlapViolationError,
    ParseError,
    SelfLoopError,
)
from .network import (
    AffiliationMap,
    Directedness,
    Rank3Network,
    Rank4Network,
    Slice,
    SliceView,
    build_rank3,
    build_rank4,
    enumerate_slices,
    slice_view,
)
from .transforms import (
    InferenceResult,
    LinkClass,
    classify_link,
    infer_affiliations,
    rank3_to_rank4,
    rank4_to_rank3,
)
from .metrics import (
    ActivityMatrix,
    ClosenessTable,
    DegreeDistribution,
    DegreeVector,
    activity_matrix,
    closeness_table,
    degree_distribution,
    node_activity,
    slice_closeness_centrality,
    slice_degrees,
    slice_pair_closeness,
)
from .fitting import (
    FitReport,
    HistogramSpec,
    fit_binomial,
    fit_power_law,
    freedman_diaconis_bins,
    pearson_correlation,
    significance_fraction,
)
from .generators import (
    DensityReport,
    ErConfig,
    RNG_ALGORITHM,
    density_report,
    generate_er_affiliation,
)
from .io import (
    IngestResult,
    IngestStats,
    export_edge_list,
    ingest,
    load_affiliations,
    load_network,
    read_affiliation_file,
    read_edge_list,
    save_affiliations,
    save_network,
)
from .pipeline import (
    AnalysisReport,
    RepresentationAnalysis,
    SliceAnalysis,
    export_report,
    run_comparison,
)

__all__ = [
    "__version__",
    # errors
    "AffnetError",
    "IndexOutOfRangeError",
    "SelfLoopError",
    "AffiliationViolationError",
    "OverlapViolationError",
    "InvalidSliceError",
    "LinkNotFoundError",
    "IndeterminateOrderingError",
    "InsufficientDataError",
    "DegenerateInputError",
    "ParseError",
    "MissingAffiliationError",
    # core model
    "Directedness",
    "Slice",
    "SliceView",
    "AffiliationMap",
    "Rank3Network",
    "Rank4Network",
    "build_rank3",
    "build_rank4",
    "slice_view",
    "enumerate_slices",
    # transforms
    "LinkClass",
    "InferenceResult",
    "rank4_to_rank3",
    "rank3_to_rank4",
    "infer_affiliations",
    "classify_link",
    # metrics
    "DegreeVector",
    "DegreeDistribution",
    "ActivityMatrix",
    "ClosenessTable",
    "slice_degrees",
    "degree_distribution",
    "activity_matrix",
    "node_activity",
    "slice_pair_closeness",
    "closeness_table",
    "slice_closeness_centrality",
    # fitting
    "FitReport",
    "HistogramSpec",
    "fit_power_law",
    "fit_binomial",
    "pearson_correlation",
    "freedman_diaconis_bins",
    "significance_fraction",
    # generators
    "ErConfig",
    "DensityReport",
    "RNG_ALGORITHM",
    "generate_er_affiliation",
    "density_report",
    # io
    "IngestStats",
    "IngestResult",
    "read_edge_list",
    "read_affiliation_file",
    "ingest",
    "save_network",
    "load_network",
    "save_affiliations",
    "load_affiliations",
    "export_edge_list",
    # pipeline
    "SliceAnalysis",
    "RepresentationAnalysis",
    "AnalysisReport",
    "run_comparison",
    "export_report",
]
