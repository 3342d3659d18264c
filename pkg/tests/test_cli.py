"""
tests/test_cli.py
============================================================
명령행 진입점: stdout JSON 과 exit code (0 / 1 / 2)
"""

import json
from pathlib import Path

import pytest

from sepbound_cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, run

SAMPLES = Path(__file__).resolve().parent.parent / "docs" / "samples"


def sample(name):
    return str(SAMPLES / name)


@pytest.fixture
def cli(capsys):
    def invoke(*argv):
        code = run(list(argv))
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None

    return invoke


def test_group_info_from_file(cli):
    code, out = cli("group", "info", "--group", sample("s3_perm.json"))
    assert code == EXIT_OK
    assert out["order"] == 6
    assert out["dimension"] == 3


def test_group_classify_from_gallery(cli):
    code, out = cli("group", "classify", "--gallery", "c2c2-2n1", "--n", "2")
    assert code == EXIT_OK
    assert out["generating_r"] == 3
    assert out["r_star"] == 4
    assert not out["rigid_reflection_group"]


def test_poset_build_writes_dot(cli, tmp_path):
    dot = tmp_path / "s3.dot"
    code, out = cli("poset", "build", "--gallery", "s3-perm", "--dot", str(dot), "--dump")
    assert code == EXIT_OK
    assert out["nodes"] == 16
    assert len(out["dump"]["covers"]) == 27
    assert "separating_poset" in dot.read_text(encoding="utf-8")


def test_homology(cli):
    code, out = cli("homology", "--gallery", "s3-perm", "--entries")
    assert code == EXIT_OK
    assert out["Q"] == [3]
    assert out["betti_above_bottom"] == [0, 4]
    assert len(out["entries"]) == 16


def test_bounds(cli):
    code, out = cli("bounds", "--gallery", "c2c2-2n1")
    assert code == EXIT_OK
    assert out["reflection_bound"] == 8
    assert out["reflection_degrees"] == [7, 8]
    assert out["connectivity_bound"] == 7
    assert out["consistent"]


def test_shelling_verified(cli):
    code, out = cli("shelling", "--gallery", "s3-perm")
    assert code == EXIT_OK
    assert out["status"] == "verified"
    assert out["facets"] == 18
    assert len(out["order"]) == 18

    code, out = cli("shelling", "--gallery", "s3-perm", "--verify-only")
    assert code == EXIT_OK
    assert out["order"] is None


def test_shelling_needs_a_rigid_reflection_group(cli):
    code, out = cli("shelling", "--gallery", "c2c2-2n1")
    assert code == EXIT_ERROR
    assert out["error"] == "precondition"


def test_separating_verify_exit_codes(cli):
    code, out = cli("separating", "verify", "--group", sample("swap_f3.json"), "--candidates", sample("swap_symmetric.json"))
    assert code == EXIT_OK
    assert out["verdict"] == "separating"

    code, out = cli("separating", "verify", "--group", sample("swap_f3.json"), "--candidates", sample("swap_sum_only.json"))
    assert code == EXIT_NEGATIVE
    assert out["verdict"] == "not-separating"
    assert out["results"][0]["witness"] is not None


def test_separating_verify_uses_gallery_candidates(cli):
    code, out = cli("separating", "verify", "--gallery", "cp-vn", "--extensions", "1")
    assert code == EXIT_OK
    assert out["candidates"] == ["S2", "S3", "S4", "S6"]


def test_separating_verify_needs_candidates(cli):
    code, out = cli("separating", "verify", "--group", sample("swap_f3.json"))
    assert code == EXIT_ERROR
    assert out["error"] == "usage"


def test_separating_triangle(cli):
    code, out = cli(
        "separating", "triangle", "--group", sample("v2_c3_substitution.json"), "--triangle", sample("v2_c3_triangle.json")
    )
    assert code == EXIT_OK
    assert (out["size"], out["diagonal_sums"], out["expected"]) == (2, 2, 3)
    assert out["separation"]["verdict"] == "separating"


def test_separating_search_over_invariants(cli):
    base = ["separating", "search", "--group", sample("swap_f3.json"), "--pool", "invariants", "--max-degree", "2"]
    code, out = cli(*base, "--target", "2")
    assert code == EXIT_OK
    assert len(out["found"]) == 2
    assert out["found"][0] == "I1[0]"

    code, out = cli(*base, "--target", "1")
    assert code == EXIT_NEGATIVE
    assert out["found"] is None


def test_separating_search_without_a_gallery_pool(cli):
    code, out = cli("separating", "search", "--gallery", "trivial-d", "--target", "3")
    assert code == EXIT_ERROR
    assert out["error"] == "usage"


@pytest.mark.parametrize("name", ["trivial-d", "c2-sign", "cp-vn"])
def test_gallery_full_report(cli, name):
    code, out = cli("gallery", name)
    assert code == EXIT_OK
    assert all(e["ok"] for e in out["expectations"])
    assert out["schema_version"] == 1


def test_gallery_sections(cli):
    code, out = cli("gallery", "s3-perm", "summary")
    assert code == EXIT_OK
    assert out["summary"]["Q"] == [3]

    code, out = cli("gallery", "s3-perm", "bounds")
    assert code == EXIT_OK
    assert out["bound_cohomological"] == 3

    code, out = cli("gallery", "trivial-d", "separating")
    assert code == EXIT_OK
    assert out["verdict"] == "separating"


def test_report_writes_json(cli, tmp_path):
    target = tmp_path / "report.json"
    code, out = cli("report", "--gallery", "s3-perm", "--json", str(target))
    assert code == EXIT_OK
    assert out["json"] == str(target)
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["scenario"] == "s3-perm"
    assert data["poset"]["dump"] is not None
    assert len(data["homology"]["entries"]) == 16


@pytest.mark.parametrize(
    "argv, kind",
    [
        (["group", "info", "--group", sample("bad_field.json")], "spec_file"),
        (["group", "info"], "usage"),
        (["bogus"], "usage"),
        (["gallery", "nope"], "usage"),
        (["group", "info", "--group", sample("s3_perm.json"), "--gallery", "s3-perm"], "usage"),
        (["gallery", "trivial-d", "--n", "3"], "unknown_scenario"),
        (["bounds", "--gallery", "s3-perm", "--extensions", "0"], "usage"),
    ],
)
def test_errors_exit_with_one(cli, argv, kind):
    code, out = cli(*argv)
    assert code == EXIT_ERROR
    assert out["error"] == kind
