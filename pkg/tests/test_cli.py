import os

import pytest

from affnet.cli import main
from affnet import load_network
from affnet.pipeline import EXPORT_TABLES


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_unknown_subcommand_exits_1(capsys):
    code, _, err = run(["frobnicate"], capsys)
    assert code == 1
    assert "usage" in err.lower()


def test_no_subcommand_exits_1(capsys):
    code, _, err = run([], capsys)
    assert code == 1


def test_missing_required_flag_exits_1(capsys):
    code, _, err = run(["generate", "--n", "10"], capsys)
    assert code == 1


def test_generate_writes_files(tmp_path, capsys):
    code, out, _ = run(
        ["generate", "--n", "30", "--p", "0.1", "--m", "3",
         "--seed", "5", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0
    for name in ("network.rank4.tsv", "network.rank3.tsv", "affiliations.tsv", "edges.tsv"):
        assert (tmp_path / name).exists()
    net = load_network(tmp_path / "network.rank4.tsv")
    assert net.n_nodes == 30


def test_generate_bad_probability_exits_2(tmp_path, capsys):
    code, _, err = run(
        ["generate", "--n", "10", "--p", "2.0", "--m", "2", "--out", str(tmp_path)],
        capsys,
    )
    # invalid config is a data error
    assert code in (1, 2)


def test_ingest_and_metrics(tmp_path, capsys):
    edges = tmp_path / "edges.tsv"
    affs = tmp_path / "affs.tsv"
    edges.write_text("A\tB\nA\tC\nB\tC\nC\tD\n", encoding="utf-8")
    affs.write_text("A\tx\nB\tx\nC\ty\nD\ty\n", encoding="utf-8")
    out = tmp_path / "nets"
    code, _, _ = run(
        ["ingest", "--edges", str(edges), "--affiliations", str(affs), "--out", str(out)],
        capsys,
    )
    assert code == 0
    code, _, _ = run(
        ["metrics", "--input", str(out / "network.rank3.tsv"), "--out", str(out)],
        capsys,
    )
    assert code == 0
    assert (out / "degrees.tsv").exists()
    assert (out / "activity.tsv").exists()
    assert (out / "closeness.tsv").exists()


def test_ingest_strict_failure_exits_2(tmp_path, capsys):
    edges = tmp_path / "edges.tsv"
    affs = tmp_path / "affs.tsv"
    edges.write_text("A\tB\n", encoding="utf-8")
    affs.write_text("A\tx\n", encoding="utf-8")
    code, _, err = run(
        ["ingest", "--edges", str(edges), "--affiliations", str(affs),
         "--out", str(tmp_path / "o")],
        capsys,
    )
    assert code == 2
    assert "MissingAffiliation" in err


def test_transform_round_trip(tmp_path, capsys):
    code, _, _ = run(
        ["generate", "--n", "20", "--p", "0.15", "--m", "2",
         "--seed", "3", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0
    rank3_out = tmp_path / "converted.rank3.tsv"
    code, _, _ = run(
        ["transform", "--input", str(tmp_path / "network.rank4.tsv"),
         "--to", "rank3", "--out", str(rank3_out)],
        capsys,
    )
    assert code == 0
    rank4_out = tmp_path / "back.rank4.tsv"
    code, _, _ = run(
        ["transform", "--input", str(rank3_out), "--to", "rank4",
         "--out", str(rank4_out)],
        capsys,
    )
    assert code == 0
    original = load_network(tmp_path / "network.rank4.tsv")
    recovered = load_network(rank4_out)
    assert recovered == original


def test_transform_indeterminate_directed_exits_2(tmp_path, capsys):
    # a directed rank-3 network whose only pair spans two layers cannot be
    # ordered without affiliations
    path = tmp_path / "net.rank3.tsv"
    path.write_text(
        "# affnet network\n"
        "# version=1 rank=3 n_nodes=2 n_layers=2 directed=true\n"
        "0\t1\t0\n0\t1\t1\n",
        encoding="utf-8",
    )
    code, _, err = run(
        ["transform", "--input", str(path), "--to", "rank4",
         "--out", str(tmp_path / "out.tsv")],
        capsys,
    )
    assert code == 2
    assert "IndeterminateOrdering" in err


def test_compare_generate_end_to_end(tmp_path, capsys):
    code, out, _ = run(
        ["compare", "--generate", "n=120", "p=0.05", "m=3",
         "--seed", "42", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0
    for name in EXPORT_TABLES + ("summary.json",):
        assert (tmp_path / name).exists()
    code, out, _ = run(["report", "--input", str(tmp_path)], capsys)
    assert code == 0
    assert "rank3" in out and "rank4" in out


def test_compare_requires_input(tmp_path, capsys):
    code, _, err = run(["compare", "--out", str(tmp_path)], capsys)
    assert code == 1


def test_out_dir_env_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFFNET_OUT_DIR", str(tmp_path / "from_env"))
    code, _, _ = run(
        ["generate", "--n", "10", "--p", "0.2", "--m", "2", "--seed", "1"],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "from_env" / "network.rank4.tsv").exists()
