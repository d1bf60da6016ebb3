"""Command-line interface: exit codes, reports, and output files."""

import csv
import json

import pytest

from conftest import make_cycle
from walkfp.cli import main
from walkfp.graphs import encode_graph6, write_graph6_file


@pytest.fixture
def petersen_file(tmp_path, petersen):
    path = tmp_path / "petersen.g6"
    write_graph6_file(path, [petersen])
    return str(path)


@pytest.fixture
def pair16_file(tmp_path, srg16_pair):
    path = tmp_path / "srg16.g6"
    write_graph6_file(path, list(srg16_pair))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def test_compare_same_graph_exit_zero(capsys, petersen_file):
    code, out, _ = _run(capsys, ["compare", petersen_file, petersen_file, "-p", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["delta"] == 0.0 and not report["distinguished"]
    assert report["schema_version"] == 1


def test_compare_distinguished_exit_one(capsys, tmp_path, srg16_pair):
    a, b = srg16_pair
    code, out, _ = _run(
        capsys,
        ["compare", encode_graph6(a), encode_graph6(b), "-p", "3",
         "--stats", "fermion"],
    )
    assert code == 1
    assert json.loads(out)["distinguished"]


def test_compare_accepts_inline_graph6(capsys, petersen):
    rec = encode_graph6(petersen)
    code, out, _ = _run(capsys, ["compare", rec, rec, "-p", "1"])
    assert code == 0


def test_compare_mismatched_sizes_exit_four(capsys, petersen):
    code, _, err = _run(
        capsys, ["compare", encode_graph6(petersen), encode_graph6(make_cycle(5))]
    )
    assert code == 4 and "vertex counts differ" in err


def test_compare_bad_input_exit_three(capsys, tmp_path):
    code, _, err = _run(capsys, ["compare", "!!notgraph6!!", "A_"])
    assert code == 3 and "error" in err


def test_invalid_flags_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compare", "A_", "A_", "--stats", "anyon"])
    assert exc.value.code == 2


def test_compare_budget_exit_five(capsys, petersen_file):
    code, _, err = _run(
        capsys,
        ["compare", petersen_file, petersen_file, "-p", "3",
         "--element-budget", "1000"],
    )
    assert code == 5 and "budget" in err


def test_compare_out_file(capsys, tmp_path, petersen_file):
    out_path = tmp_path / "report.json"
    code, out, _ = _run(
        capsys,
        ["compare", petersen_file, petersen_file, "-p", "1", "--out", str(out_path)],
    )
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["delta"] == 0.0


# ---------------------------------------------------------------------------
# family
# ---------------------------------------------------------------------------

def test_family_p2_nullity(capsys, tmp_path, pair16_file):
    csv_path = tmp_path / "summary.csv"
    code, out, _ = _run(
        capsys,
        ["family", pair16_file, "-p", "2", "--stats", "both",
         "--csv", str(csv_path)],
    )
    assert code == 0
    summary = json.loads(out)
    assert summary["family"] == [16, 6, 2, 2]
    assert summary["comparisons"] == 1
    assert summary["failures"] == {"boson_failures": 1, "fermion_failures": 1}
    with open(csv_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][-2:] == ["boson_failures", "fermion_failures"]
    assert rows[1][-2:] == ["1", "1"]


def test_family_p3_distinguishes(capsys, pair16_file):
    code, out, _ = _run(
        capsys, ["family", pair16_file, "-p", "3", "--stats", "both", "-j", "2"]
    )
    summary = json.loads(out)
    assert summary["failures"] == {"boson_failures": 0, "fermion_failures": 0}


def test_family_resume_uses_cache(capsys, tmp_path, pair16_file):
    cache_dir = tmp_path / "cache"
    argv = ["family", pair16_file, "-p", "2", "--stats", "boson",
            "--cache-dir", str(cache_dir), "--resume"]
    code1, out1, _ = _run(capsys, argv)
    n_files = len(list(cache_dir.iterdir()))
    code2, out2, _ = _run(capsys, argv)
    assert code1 == code2 == 0
    assert len(list(cache_dir.iterdir())) == n_files
    assert (json.loads(out1)["pairs"] == json.loads(out2)["pairs"])


def test_family_resume_requires_cache_dir(capsys, pair16_file, monkeypatch):
    monkeypatch.delenv("WALKFP_CACHE_DIR", raising=False)
    code, _, err = _run(capsys, ["family", pair16_file, "--resume"])
    assert code == 3 and "cache" in err


# ---------------------------------------------------------------------------
# widgets / bounds / binsweep
# ---------------------------------------------------------------------------

def test_widgets_preset_counts(capsys, pair16_file):
    code, out, _ = _run(capsys, ["widgets", pair16_file, "--widget", "empty3"])
    assert code == 0
    payload = json.loads(out)
    assert {r["count"] for r in payload["counts"]} == {512, 608}
    assert all("value" in r for r in payload["counts"])


def test_widgets_custom_pattern(capsys, petersen_file):
    code, out, _ = _run(capsys, ["widgets", petersen_file, "--widget", "EN/NE"])
    assert code == 0
    assert json.loads(out)["widget"] == "EN/NE"


def test_bounds_report_and_csv(capsys, tmp_path):
    csv_path = tmp_path / "bounds.csv"
    code, out, _ = _run(
        capsys, ["bounds", "-p", "3", "-N", "10000", "--csv", str(csv_path)]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["x_p_used"] == 8 and payload["x_p_is_lower_bound"]
    with open(csv_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["N", "log_R_lower"]
    assert len(rows) == 99 + 1  # squares 4..10000


def test_binsweep(capsys, tmp_path, petersen_file):
    csv_path = tmp_path / "sweep.csv"
    code, out, _ = _run(
        capsys,
        ["binsweep", petersen_file, "-p", "2", "--stats", "fermion",
         "--points", "5", "--csv", str(csv_path)],
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["sweep"]) == 5
    with open(csv_path) as fh:
        assert len(list(csv.reader(fh))) == 6
