"""
tests/test_spec_loader.py
============================================================
입력 파일 로더 (샘플 파일 + 잘못된 입력)
"""

from pathlib import Path

import pytest

from schemas.group_spec import GroupSpecFile
from services.errors import SpecFileError
from services.invariants import act, is_invariant
from services.polynomials import MultiPoly
from services.spec_loader import load_candidates, load_group, load_triangle, parse_json

SAMPLES = Path(__file__).resolve().parent.parent / "docs" / "samples"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_load_permutation_group_over_q():
    g = load_group(SAMPLES / "s3_perm.json")
    assert g.order == 6
    assert g.field.characteristic == 0
    assert g.label == "s3-perm"


def test_substitution_file_acts_on_variables():
    g = load_group(SAMPLES / "v3_c3_substitution.json")
    assert g.order == 3
    sigma = g.generator_indices()[0]
    x1, x2, x3 = MultiPoly.variables(g.field, 3)
    assert act(g, sigma, x1) == x1 + x2
    assert act(g, sigma, x2) == x2 + x3


def test_candidates_with_coordinates():
    g = load_group(SAMPLES / "trivial.json")
    cands = load_candidates(SAMPLES / "coords.json", g)
    assert [n for n, _ in cands] == ["x1", "x2"]


def test_named_candidates_are_invariant():
    g = load_group(SAMPLES / "swap_f3.json")
    cands = load_candidates(SAMPLES / "swap_symmetric.json", g)
    assert [n for n, _ in cands] == ["e1", "e2"]
    assert all(is_invariant(g, f) for _, f in cands)


def test_triangle_file():
    g = load_group(SAMPLES / "v2_c3_substitution.json")
    family, extra = load_triangle(SAMPLES / "v2_c3_triangle.json", g)
    assert family.size == 2
    assert family.candidate_labels() == ["S2", "S4"]
    assert extra == []
    assert all(is_invariant(g, f) for f in family.candidates())


def test_bad_field_is_a_schema_error():
    with pytest.raises(SpecFileError, match="field"):
        load_group(SAMPLES / "bad_field.json")


def test_malformed_json_reports_position(tmp_path):
    path = write(tmp_path, "broken.json", '{"field": "Q",\n "dimension": }')
    with pytest.raises(SpecFileError, match="line 2"):
        load_group(path)


def test_missing_file(tmp_path):
    with pytest.raises(SpecFileError):
        load_group(tmp_path / "absent.json")


@pytest.mark.parametrize(
    "body",
    [
        '{"field": "Q", "dimension": 2, "generators": [[[1, 0]]]}',
        '{"field": "Q", "dimension": 2, "generators": []}',
        '{"field": {"p": 4}, "dimension": 1, "generators": [[[1]]]}',
        '{"field": {"p": 3}, "dimension": 1, "generators": [[["x"]]]}',
    ],
)
def test_invalid_group_files(tmp_path, body):
    with pytest.raises(SpecFileError):
        load_group(write(tmp_path, "g.json", body))


def test_candidate_file_problems(tmp_path):
    g = load_group(SAMPLES / "swap_f3.json")
    with pytest.raises(SpecFileError, match="entries"):
        load_candidates(write(tmp_path, "c.json", '{"candidates": [{"terms": [{"exps": [1]}]}]}'), g)
    with pytest.raises(SpecFileError, match="no candidates"):
        load_candidates(write(tmp_path, "e.json", '{"candidates": []}'), g)
    with pytest.raises(SpecFileError, match="negative"):
        load_candidates(write(tmp_path, "n.json", '{"candidates": [{"terms": [{"exps": [-1, 0]}]}]}'), g)


def test_triangle_file_problems(tmp_path):
    g = load_group(SAMPLES / "v2_c3_substitution.json")
    below = '{"size": 2, "entries": [{"i": 2, "j": 1, "terms": []}]}'
    with pytest.raises(SpecFileError, match="below the diagonal"):
        load_triangle(write(tmp_path, "b.json", below), g)
    twice = '{"size": 2, "entries": [{"i": 1, "j": 1, "terms": []}, {"i": 1, "j": 1, "terms": []}]}'
    with pytest.raises(SpecFileError, match="duplicate"):
        load_triangle(write(tmp_path, "d.json", twice), g)
    outside = '{"size": 1, "entries": [{"i": 1, "j": 2, "terms": []}]}'
    with pytest.raises(SpecFileError, match="outside"):
        load_triangle(write(tmp_path, "o.json", outside), g)


def test_parse_json_uses_schema_defaults():
    spec = parse_json('{"field": "Q", "dimension": 1, "generators": [[[1]]]}', GroupSpecFile)
    assert spec.matrix_convention == "point"
    assert spec.field_descriptor() == "Q"
