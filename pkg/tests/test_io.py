import json
from fractions import Fraction

import pytest
from hypothesis import given

from strategies import formal_polys
from vertexrb import io
from vertexrb.axioms import check_skew
from vertexrb.formal import Element, FormalPoly, Generator
from vertexrb.replay import replay
from vertexrb.rota_baxter import check_rb, deform


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return path


def algebra_doc(**overrides):
    doc = {
        "name": "t",
        "generators": [{"name": "alpha", "parity": 0}, {"name": "k", "parity": 0, "torsion_order": 1}],
        "vacuum": None,
        "brackets": [
            {"left": "alpha", "right": "alpha", "terms": [{"coeff": "1/2", "var_power": 2, "del_power": 0, "gen": "k"}]}
        ],
    }
    doc.update(overrides)
    return doc


def test_parse_heisenberg(heis1):
    assert [g.name for g in heis1.generators] == ["alpha", "k"]
    assert heis1.gen("k").torsion == 1
    assert len(heis1.explicit) == 1
    assert len(list(heis1.bracket.items())) == 1


def test_parse_rational():
    assert io.parse_rational("-3/6", "x") == Fraction(-1, 2)
    assert io.parse_rational("7", "x") == 7
    for bad in ("1/0", "0.5", "1e3", 2, "one"):
        with pytest.raises(io.ParseError):
            io.parse_rational(bad, "x")


def test_zero_denominator_in_file(tmp_path):
    doc = algebra_doc()
    doc["brackets"][0]["terms"][0]["coeff"] = "1/0"
    with pytest.raises(io.ParseError, match="coeff"):
        io.parse_algebra(write(tmp_path, "a.json", doc))


def test_torsion_strictness(tmp_path):
    doc = algebra_doc()
    doc["brackets"][0]["terms"].append({"coeff": "1", "var_power": 1, "del_power": 1, "gen": "k"})
    path = write(tmp_path, "a.json", doc)
    with pytest.raises(io.ValidationError, match="torsion"):
        io.parse_algebra(path)
    A = io.parse_algebra(path, strict_torsion=False)
    assert A == io.load_algebra("heis1").with_bracket(A.bracket, name="t")
    assert A.bracket == io.load_algebra("heis1").bracket


def make_value_odd(doc):
    doc["generators"].append({"name": "o", "parity": 1})
    doc["brackets"][0]["terms"][0]["gen"] = "o"


@pytest.mark.parametrize(
    "mutate, error",
    [
        (lambda d: d["brackets"][0].update(left="beta"), io.ValidationError),
        (lambda d: d["brackets"].append(dict(d["brackets"][0])), io.ValidationError),
        (lambda d: d["generators"].append({"name": "alpha", "parity": 1}), io.ValidationError),
        (lambda d: d.update(vacuum="k"), io.ValidationError),
        (lambda d: d["generators"][0].update(parity=2), io.ValidationError),
        (lambda d: d.pop("generators"), io.ParseError),
        (lambda d: d["brackets"][0]["terms"][0].update(var_power=-1), io.ParseError),
        (make_value_odd, io.ValidationError),
    ],
)
def test_bad_algebra_files(tmp_path, mutate, error):
    doc = algebra_doc()
    mutate(doc)
    with pytest.raises(error):
        io.parse_algebra(write(tmp_path, "a.json", doc))


def test_malformed_json_reports_position(tmp_path):
    with pytest.raises(io.ParseError, match="line 2"):
        io.parse_algebra(write(tmp_path, "a.json", '{\n  "name": }'))


def test_operators(heis2, proj1):
    assert proj1.weight == -1
    assert proj1(heis2.element("alpha2")) == Element()
    empty = io.operator_from_dict({"name": "zero", "weight": "0", "action": []}, heis2)
    assert not empty.action
    with pytest.raises(io.ValidationError):
        io.operator_from_dict({"name": "x", "weight": "0", "action": [{"gen": "beta", "image": []}]}, heis2)


def test_algebra_round_trip(tmp_path, heis2, odd1, proj1):
    for A in (heis2, odd1, deform(heis2, proj1)):
        path = tmp_path / f"{A.name}.json"
        io.write_algebra(A, path)
        B = io.parse_algebra(path)
        assert B.bracket == A.bracket and B.generators == A.generators


@given(formal_polys(gens=(Generator("a", 0), Generator("t", 0, torsion=2)), variables=("lam", "mu")))
def test_poly_round_trip(p):
    by_name = {"a": Generator("a", 0), "t": Generator("t", 0, torsion=2)}
    assert io.poly_from_list(io.poly_to_list(p), by_name) == p


def test_report_json_replays(heis1, heis2, proj1):
    k = heis1.element("k")
    A = heis1.with_bracket(heis1.bracket.with_entry(heis1.gen("alpha"), heis1.gen("alpha"), FormalPoly.term(k, lam=1)))
    report = check_skew(A)
    doc = json.loads(json.dumps(io.report_to_dict(report)))
    assert doc["check_name"] == "skew_symmetry" and doc["passed"] is False
    for w in doc["witnesses"]:
        args, residual = io.witness_from_dict(w, A)
        assert replay(doc["check_name"], args, A) == residual
    P = io.operator_from_dict({"name": "p", "weight": "0", "action": io.operator_to_dict(proj1)["action"]}, heis2)
    doc = json.loads(json.dumps(io.report_to_dict(check_rb(heis2, P))))
    for w in doc["witnesses"]:
        args, residual = io.witness_from_dict(w, heis2)
        assert replay("rota_baxter", args, heis2, P) == residual


def test_fixture_lookup():
    names = io.fixture_names()
    for expected in ("heis1", "heis2", "odd1", "even1", "proj1", "proj2"):
        assert expected in names
    with pytest.raises(io.ParseError):
        io.resolve_input("no_such_fixture")
