import json
from fractions import Fraction

import pytest

from coherentpairs import (CoherenceData, NuParam, Poly, charlier, coherence_fit, derived_smop, smop_from_moments)
from coherentpairs import serialize as ser
from coherentpairs.errors import InconsistencyError
from coherentpairs.functional import first_disagreement

SPECS = [
    {"kind": "moments", "values": ["1", "1", "2", "5", "15"]},
    {"kind": "charlier", "mu": "1/2"},
    {"kind": "kravchuk", "N": 20, "p": "1/2"},
    {"kind": "hahn", "alpha": "1/2", "beta": "2", "N": 6},
    {"kind": "discrete", "nodes": ["1", "1/2", "1/4"], "weights": ["1/2", "1/3", "1/6"]},
    {"kind": "polymul", "pi": ["-1", "1"], "base": {"kind": "charlier", "mu": "1"}},
    {"kind": "dnu", "nu": {"type": "omega", "value": "1"}, "base": {"kind": "charlier", "mu": "1"}},
    {"kind": "geronimus", "c": "-1", "v0": "1", "base": {"kind": "charlier", "mu": "1"}},
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s["kind"])
def test_functional_spec_round_trip(spec):
    U = ser.functional_from_spec(spec)
    assert U.spec == spec
    again = ser.functional_from_spec(json.loads(json.dumps(U.spec)))
    assert first_disagreement(U, again, 4) is None


@pytest.mark.parametrize("bad", [
    {"kind": "charlier", "mu": "1", "extra": 1},
    {"kind": "charlier"},
    {"kind": "meixner", "beta": "1", "c": "1/2"},
    {"kind": "charlier", "mu": "0.5"},
    {"kind": "charlier", "mu": 0.5},
    {"kind": "kravchuk", "N": "20", "p": "1/2"},
    {"kind": "dnu", "nu": {"type": "q", "value": "1"}, "base": {"kind": "charlier", "mu": "1"}},
])
def test_functional_spec_rejections(bad):
    with pytest.raises(ValueError):
        ser.functional_from_spec(bad)


def test_rationals():
    assert ser.rational_str(Fraction(-6, 4)) == "-3/2"
    assert ser.rational_str(3) == "3"
    assert ser.parse_rational("3/2") == Fraction(3, 2)
    for bad in ("1.5", " 1/2", "1/0", "x", True):
        with pytest.raises(ValueError):
            ser.parse_rational(bad)


def test_nu_parsing():
    assert ser.parse_nu("omega:1") == NuParam.omega(1)
    assert ser.parse_nu("q:1/2") == NuParam.q(Fraction(1, 2))
    for bad in ("q:1", "omega:0", "q:-1", "x:2", "omega"):
        with pytest.raises(ValueError):
            ser.parse_nu(bad)


def test_smop_json_round_trip():
    P = smop_from_moments(charlier(1), 8)
    doc = json.loads(ser.dumps(ser.smop_to_json(P)))
    assert len(doc["moments"]) == 2 * 8 + 2
    Q = ser.smop_from_json(doc)
    assert Q == P
    w = NuParam.omega(1)
    assert derived_smop(Q, 1, w) == derived_smop(P, 1, w)
    assert coherence_fit(Q, Q, 0, 0, 1, 0, w, 6) == coherence_fit(P, P, 0, 0, 1, 0, w, 6)


def test_smop_json_detects_tampering():
    doc = ser.smop_to_json(smop_from_moments(charlier(1), 4))
    doc["polys"][2] = ["1", "-3", "2"]
    with pytest.raises(InconsistencyError):
        ser.smop_from_json(doc)


def test_csv_layout():
    P = smop_from_moments(charlier(1), 2)
    text = ser.polys_to_csv(P.polys)
    assert text.splitlines() == ["n,c0,c1,c2", "0,1,0,0", "1,-1,1,0", "2,1,-3,1"]


def test_coherence_json_round_trip():
    C = CoherenceData.from_rules(2, 1, 1, 0, 6, lambda i, n: Fraction(i, n + 1), lambda i, n: -n)
    assert ser.coherence_from_json(json.loads(ser.dumps(ser.coherence_to_json(C)))) == C
    with pytest.raises(ValueError):
        ser.coherence_from_json({"M": 0})


def test_poly_json():
    p = Poly([Fraction(1, 2), 0, -3])
    assert ser.poly_to_json(p) == ["1/2", "0", "-3"]
    assert ser.poly_from_json(["1/2", "0", "-3"]) == p
