"""JSON/CSV encodings: rationals as canonical ``"p/q"`` strings, polynomials as ascending arrays."""
from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence

from .calculus import NuParam, Poly
from .coherence import CoherenceData, DistributionalRelation
from .errors import InconsistencyError
from .families import charlier, discrete, geronimus, hahn, kravchuk
from .functional import MomentFunctional, dnu_functional, from_moments, poly_mul
from .semiclassical import PearsonPair
from .smop import Smop, smop_from_moments

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def rational_str(v) -> str:
    return str(Fraction(v))


def parse_rational(text, what: str = "rational") -> Fraction:
    """Parse ``"p"``, ``"p/q"`` or a JSON integer; floats and decimals are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"{what}: booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise ValueError(f"{what}: malformed rational {text!r}")
    _, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"{what}: zero denominator")
    return Fraction(text)


def poly_to_json(p: Poly) -> List[str]:
    return [rational_str(c) for c in p.coeffs]


def poly_from_json(items: Sequence, what: str = "poly") -> Poly:
    if not isinstance(items, list):
        raise ValueError(f"{what}: expected a JSON array")
    return Poly([parse_rational(v, what) for v in items])


def parse_nu(text: str) -> NuParam:
    """``"omega:1"`` or ``"q:1/2"``."""
    kind, sep, value = text.partition(":")
    if not sep or kind not in ("omega", "q"):
        raise ValueError(f"lattice parameter must look like omega:<r> or q:<r>, got {text!r}")
    return NuParam(kind, parse_rational(value, "lattice parameter"))


def nu_to_json(nu: NuParam) -> Dict[str, str]:
    return {"type": nu.kind, "value": rational_str(nu.value)}


def nu_from_json(obj) -> NuParam:
    _keys(obj, {"type", "value"}, "nu")
    if obj["type"] not in ("omega", "q"):
        raise ValueError(f"nu: unknown type {obj['type']!r}")
    return NuParam(obj["type"], parse_rational(obj["value"], "nu.value"))


# -- functionals ---------------------------------------------------------------

_FIELDS = {
    "moments": {"values"},
    "charlier": {"mu"},
    "kravchuk": {"N", "p"},
    "hahn": {"alpha", "beta", "N"},
    "discrete": {"nodes", "weights"},
    "polymul": {"pi", "base"},
    "dnu": {"nu", "base"},
    "geronimus": {"c", "v0", "base"},
}


def _keys(obj, allowed, what):
    if not isinstance(obj, dict):
        raise ValueError(f"{what}: expected a JSON object")
    extra = set(obj) - allowed - {"kind"}
    missing = allowed - set(obj)
    if extra:
        raise ValueError(f"{what}: unknown keys {sorted(extra)}")
    if missing:
        raise ValueError(f"{what}: missing keys {sorted(missing)}")


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"{what}: expected an integer")
    return v


def functional_from_spec(spec: Dict[str, Any]) -> MomentFunctional:
    """Build a functional from its JSON description (see ``_FIELDS`` for the schema)."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("functional spec needs a 'kind'")
    kind = spec["kind"]
    if kind not in _FIELDS:
        raise ValueError(f"unknown functional kind {kind!r}")
    _keys(spec, _FIELDS[kind], kind)
    if kind == "moments":
        return from_moments([parse_rational(v, "moments") for v in spec["values"]])
    if kind == "charlier":
        return charlier(parse_rational(spec["mu"], "mu"))
    if kind == "kravchuk":
        return kravchuk(_int(spec["N"], "N"), parse_rational(spec["p"], "p"))
    if kind == "hahn":
        return hahn(parse_rational(spec["alpha"], "alpha"), parse_rational(spec["beta"], "beta"),
                    _int(spec["N"], "N"))
    if kind == "discrete":
        return discrete([parse_rational(v, "nodes") for v in spec["nodes"]],
                        [parse_rational(v, "weights") for v in spec["weights"]])
    base = functional_from_spec(spec["base"])
    if kind == "polymul":
        return poly_mul(poly_from_json(spec["pi"], "pi"), base)
    if kind == "dnu":
        return dnu_functional(base, nu_from_json(spec["nu"]))
    return geronimus(base, parse_rational(spec["c"], "c"), parse_rational(spec["v0"], "v0"))


def load_json_arg(text: str):
    """Inline JSON (starting with ``{`` or ``[``) or a path to a JSON file."""
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        return json.loads(stripped)
    with open(text, encoding="utf-8") as fh:
        return json.load(fh)


# -- sequences -----------------------------------------------------------------

def smop_to_json(P: Smop) -> Dict[str, Any]:
    """The SMOP plus moments ``0..2 n_max + 1`` of its functional, enough to re-import it."""
    out: Dict[str, Any] = {
        "n_max": P.n_max,
        "polys": [poly_to_json(p) for p in P.polys],
        "alpha": [rational_str(v) for v in P.alpha],
        "beta": [rational_str(v) for v in P.beta],
        "norms": [rational_str(v) for v in P.norms],
    }
    if P.source is not None:
        out["functional"] = P.source.spec
        out["moments"] = [rational_str(v) for v in P.source.moments(2 * P.n_max + 2)]
    return out


def smop_from_json(obj: Dict[str, Any], verify: bool = True) -> Smop:
    """Re-import a SMOP; the source becomes the explicit stored moments.

    With ``verify`` the sequence is recomputed from those moments and must
    match the stored one exactly.
    """
    _keys(obj, {"n_max", "polys", "alpha", "beta", "norms"} | ({"functional", "moments"} & set(obj)), "smop")
    polys = tuple(poly_from_json(p) for p in obj["polys"])
    alpha = tuple(parse_rational(v, "alpha") for v in obj["alpha"])
    beta = tuple(parse_rational(v, "beta") for v in obj["beta"])
    norms = tuple(parse_rational(v, "norms") for v in obj["norms"])
    source = from_moments(obj["moments"], label="imported") if "moments" in obj else None
    P = Smop(polys, alpha, beta, norms, source)
    if verify and source is not None:
        if smop_from_moments(source, P.n_max) != P:
            raise InconsistencyError("stored SMOP does not match its stored moments")
    return P


def polys_to_csv(polys: Iterable[Poly], extra: Dict[str, Sequence] = None) -> str:
    """Rows ``n, c_0, ..., c_d`` (zero-padded to the top degree), plus optional named columns."""
    polys = list(polys)
    width = max((p.degree for p in polys), default=0) + 1
    extra = extra or {}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n"] + [f"c{d}" for d in range(width)] + list(extra))
    for n, p in enumerate(polys):
        coeffs = [rational_str(p[d]) for d in range(width)]
        w.writerow([n] + coeffs + [rational_str(col[n]) for col in extra.values()])
    return buf.getvalue()


# -- coherence and relations -----------------------------------------------------

def _coeffs_to_json(table) -> List[List[Any]]:
    return [[i, n, rational_str(v)] for (i, n), v in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0]))]


def _coeffs_from_json(items, what):
    out = {}
    for entry in items:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ValueError(f"{what}: entries must be [i, n, value]")
        i, n, v = entry
        out[(_int(i, what), _int(n, what))] = parse_rational(v, what)
    return out


def coherence_to_json(C: CoherenceData) -> Dict[str, Any]:
    return {"M": C.M, "N": C.N, "m": C.m, "k": C.k, "n_max": C.n_max,
            "a": _coeffs_to_json(C.a), "b": _coeffs_to_json(C.b)}


def coherence_from_json(obj) -> CoherenceData:
    _keys(obj, {"M", "N", "m", "k", "n_max", "a", "b"}, "coherence")
    return CoherenceData(_int(obj["M"], "M"), _int(obj["N"], "N"), _int(obj["m"], "m"), _int(obj["k"], "k"),
                         _coeffs_from_json(obj["a"], "a"), _coeffs_from_json(obj["b"], "b"),
                         _int(obj["n_max"], "n_max"))


def pearson_to_json(pair: PearsonPair) -> Dict[str, Any]:
    return {"sigma": poly_to_json(pair.sigma), "tau": poly_to_json(pair.tau), "nu": nu_to_json(pair.nu),
            "class_bound": pair.class_bound, "verified_degree": pair.verified_degree}


def relation_to_json(rel: DistributionalRelation) -> Dict[str, Any]:
    out = {"order": rel.order, "phi": poly_to_json(rel.phi), "psi": poly_to_json(rel.psi),
           "verified_degree": rel.verified_degree}
    if rel.nu is not None:
        out["nu"] = nu_to_json(rel.nu)
    return out


def sobolev_to_json(S) -> Dict[str, Any]:
    return {"lambda": rational_str(S.ctx.lam), "m": S.ctx.m, "nu": nu_to_json(S.ctx.nu),
            "polys": [poly_to_json(p) for p in S.polys],
            "s_norms": [rational_str(v) for v in S.s_norms],
            "c": _coeffs_to_json(S.c)}


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
