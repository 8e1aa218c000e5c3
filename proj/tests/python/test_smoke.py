"""Smoke tests for the python bindings: JSON round trips and a few known values."""
import json
import math

import pytest

import resonorm as rn


def series(n, scheme, truncation, terms, res=None):
    doc = {"n": n, "scheme": scheme, "truncation": truncation, "terms": terms}
    if res is not None:
        doc["res"] = res
    return json.dumps(doc)


def term(k, l, re, im="0", m=0, j=0):
    return {"k": k, "l": l, "m": m, "j": j, "re": re, "im": im}


def coeffs(doc):
    return {(t["k"], t["l"], t["m"], t["j"]): (t["re"], t["im"])
            for t in json.loads(doc)["terms"]}


def test_series_arithmetic_is_exact():
    a = series(5, "poly", 16, [term(3, 3, "1/3")])
    b = series(5, "poly", 16, [term(3, 3, "1/6"), term(5, 0, "2")])
    s = coeffs(rn.series_add(a, b))
    assert s[(3, 3, 0, 0)] == ("1/2", "0")
    assert s[(5, 0, 0, 0)] == ("2", "0")
    p = coeffs(rn.series_mul(a, b))
    assert p[(6, 6, 0, 0)] == ("1/18", "0")
    assert p[(8, 3, 0, 0)] == ("2/3", "0")


def test_lie_derivative_of_commuting_pair_vanishes():
    h = series(5, "poly", 12, [term(1, 1, "1")])
    assert coeffs(rn.lie_derivative(h, h)) == {}


def test_simplify_recovers_normal_form_shape():
    # already-simplified n = 7 input stays fixed
    h = series(7, "delta", 8, [term(3, 3, "1"), term(7, 0, "2"), term(0, 7, "2")])
    nf_json, remainder = rn.simplify(h, 8)
    nf = json.loads(nf_json)
    assert nf["n"] == 7
    a = {(e["k"], e["m"], e["j"]): e["value"] for e in nf["a"]}
    b = {(e["k"], e["m"], e["j"]): e["value"] for e in nf["b"]}
    assert a[(0, 0, 0)] == "1" and b[(0, 0, 0)] == "2"
    ok, violations = rn.validate_shape(nf_json)
    assert ok and violations == []


def test_simplify_rejects_degenerate_lead():
    h = series(7, "delta", 8, [term(3, 3, "1")])  # no z^7 harmonic
    with pytest.raises(rn.DegeneracyError):
        rn.simplify(h, 8)


def test_interpolation_round_trip():
    h = series(5, "poly", 8, [term(3, 3, "1/2"), term(5, 0, "1/4"), term(0, 5, "1/4")])
    m = rn.map_from_hamiltonian(h, 1)
    back = rn.interpolate(m, 8)
    assert coeffs(back) == coeffs(h)


def test_extract_params_known_values():
    l0 = complex(math.cos(2 * math.pi / 7), math.sin(2 * math.pi / 7))
    d, v = rn.extract_params(l0, l0, 0j)
    assert abs(d) < 1e-14 and abs(v) < 1e-14


def test_critical_points_and_domains():
    pts = rn.critical_points(7, 0.002, -0.1)
    kinds = sorted(p["kind"] for p in pts if p["I"] < 0.2)
    assert kinds.count("saddle") >= 1 and kinds.count("center") >= 1
    assert rn.classify_domain(5, 0.002, -0.2) == "D1'"
    assert rn.connection_curve(5, -0.2) == pytest.approx(-4 / 25 * (-0.2) ** 3, rel=1e-6)


def test_critical_level_sets_smoke():
    sets = rn.critical_level_sets(5, 0.002, -0.2, 1.0, 128)
    assert sets
    assert any(len(line) > 10 for cs in sets for line in cs["lines"])


def test_rank_table_matches_known_dimensions():
    # grade-p spaces over the resonant lattice
    assert rn.space_dim(7, 3) == 3
    dim_src, dim_tgt, rank = rn.lambda_rank_info(7, 3)
    assert dim_src == 3 and rank <= dim_tgt
