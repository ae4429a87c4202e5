"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 cross-check mismatch,
64 usage error.
"""
from __future__ import annotations

import argparse
import sys
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import serialize as ser
from .calculus import NuParam
from .coherence import (coherence_fit, coherence_residual, l_matrix, leading_coeff_check,
                        relation_at_coherence_degrees)
from .errors import CoherentPairsError
from .semiclassical import class_estimate, pearson_solve
from .smop import derived_smop, smop_from_moments
from .sobolev import SobolevContext, coherent_recursion, sobolev_smop_gram
from .suite import run_suite

EXIT_OK, EXIT_COMPUTE, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 64


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    subcommand: str
    functional: Optional[dict] = None
    u: Optional[dict] = None
    v: Optional[dict] = None
    coherence: Optional[dict] = None
    nu: NuParam = field(default_factory=lambda: NuParam.omega(1))
    n: int = 10
    M: int = 0
    N: int = 0
    m: int = 1
    k: int = 0
    lam: Fraction = Fraction(1)
    deg_sigma: int = 2
    deg_tau: int = 1
    class_max: Optional[int] = None
    derived: int = 0
    leading: int = -1
    guard: int = 10
    method: str = "both"
    out: str = "json"
    output: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coherentpairs", description="Exact coherent pairs and discrete Sobolev polynomials.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, functionals=(), orders=False):
        for name in functionals:
            p.add_argument(f"--{name}", required=True, help="functional spec: JSON file or inline JSON")
        p.add_argument("--nu", default="omega:1", help="lattice, e.g. omega:1 or q:1/2")
        p.add_argument("--n", type=int, default=10, help="largest index")
        p.add_argument("--guard", type=int, default=10)
        p.add_argument("--out", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="write here instead of stdout")
        if orders:
            for flag, default in (("--M", 0), ("--N", 0), ("--m", 1), ("--k", 0)):
                p.add_argument(flag, type=int, default=default)

    p = sub.add_parser("smop", help="monic orthogonal sequence of one functional")
    common(p, ("functional",))
    p.add_argument("--derived", type=int, default=0, help="emit the m-th derived sequence instead")

    p = sub.add_parser("sobolev", help="Sobolev orthogonal sequence")
    common(p, ("u", "v"), orders=True)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--method", choices=("gram", "recursion", "both"), default="both")
    p.add_argument("--coherence", help="coherence data JSON (else fitted with --M/--N)")

    p = sub.add_parser("coherence-fit", help="fit coherence coefficients")
    common(p, ("u", "v"), orders=True)

    p = sub.add_parser("coherence-verify", help="check stored coherence coefficients")
    common(p, ("u", "v"))
    p.add_argument("--coherence", required=True)
    p.add_argument("--leading", type=int, default=-1,
                   help="also check leading-coefficient ratios for n = 0..LEADING")

    p = sub.add_parser("pearson", help="Pearson pair or class estimate")
    common(p, ("functional",))
    p.add_argument("--deg-sigma", type=int, default=2)
    p.add_argument("--deg-tau", type=int, default=1)
    p.add_argument("--class-max", type=int, default=None, help="estimate the class up to this bound")

    sub.add_parser("verify-suite", help="run the invariant battery")

    p = sub.add_parser("bench", help="time both Sobolev routes")
    common(p, ("u", "v"), orders=True)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--coherence")
    return parser


def _nonneg(value, flag):
    if value < 0:
        raise UsageError(f"{flag} must be nonnegative")
    return value


def parse_config(argv: List[str]) -> CliConfig:
    """Validate ``argv``; every failure is a :class:`UsageError` naming the flag."""
    ns = _build_parser().parse_args(argv)
    cfg = CliConfig(ns.subcommand)
    if cfg.subcommand == "verify-suite":
        return cfg
    try:
        cfg.nu = ser.parse_nu(ns.nu)
    except ValueError as exc:
        raise UsageError(f"--nu: {exc}") from None
    for name in ("functional", "u", "v", "coherence"):
        text = getattr(ns, name, None)
        if text is None:
            continue
        try:
            obj = ser.load_json_arg(text)
            if name == "coherence":
                ser.coherence_from_json(obj)
            else:
                ser.functional_from_spec(obj)
        except (OSError, ValueError) as exc:
            raise UsageError(f"--{name}: {exc}") from None
        setattr(cfg, name, obj)
    cfg.n = _nonneg(ns.n, "--n")
    cfg.guard = _nonneg(ns.guard, "--guard")
    cfg.out, cfg.output = ns.out, ns.output
    for flag in ("M", "N", "m", "k", "derived", "deg_sigma", "deg_tau", "leading", "class_max", "method"):
        if hasattr(ns, flag) and getattr(ns, flag) is not None:
            val = getattr(ns, flag)
            if flag not in ("leading", "method"):
                _nonneg(val, "--" + flag.replace("_", "-"))
            setattr(cfg, flag, val)
    if hasattr(ns, "lam"):
        try:
            cfg.lam = ser.parse_rational(ns.lam, "--lambda")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if cfg.lam <= 0:
            raise UsageError("--lambda must be positive")
    if cfg.subcommand in ("sobolev", "bench") and cfg.m < 1:
        raise UsageError("--m must be at least 1")
    if cfg.subcommand == "pearson" and cfg.deg_tau < 1:
        raise UsageError("--deg-tau must be at least 1")
    return cfg


def _emit(cfg: CliConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _functionals(cfg, *names):
    return [ser.functional_from_spec(getattr(cfg, n)) for n in names]


def _coherence_for(cfg, P, Q):
    if cfg.coherence is not None:
        return ser.coherence_from_json(cfg.coherence)
    return coherence_fit(P, Q, cfg.M, cfg.N, cfg.m, 0, cfg.nu, cfg.n)


def _run_smop(cfg):
    (U,) = _functionals(cfg, "functional")
    P = smop_from_moments(U, cfg.n + cfg.derived)
    if cfg.derived:
        D = derived_smop(P, cfg.derived, cfg.nu)
        if cfg.out == "csv":
            _emit(cfg, ser.polys_to_csv(D.polys))
        else:
            _emit(cfg, ser.dumps({"m": cfg.derived, "nu": ser.nu_to_json(cfg.nu),
                                  "polys": [ser.poly_to_json(p) for p in D.polys]}))
        return EXIT_OK
    if cfg.out == "csv":
        _emit(cfg, ser.polys_to_csv(P.polys, {"alpha": P.alpha, "beta": P.beta, "norm": P.norms}))
    else:
        _emit(cfg, ser.dumps(ser.smop_to_json(P)))
    return EXIT_OK


def _sobolev_inputs(cfg):
    U, V = _functionals(cfg, "u", "v")
    ctx = SobolevContext(U, V, cfg.m, cfg.nu, cfg.lam)
    P = smop_from_moments(U, cfg.n + cfg.m)
    Q = smop_from_moments(V, cfg.n)
    return ctx, P, Q


def _run_sobolev(cfg):
    ctx, P, Q = _sobolev_inputs(cfg)
    top = cfg.n + cfg.m
    results = {}
    if cfg.method in ("gram", "both"):
        results["gram"] = sobolev_smop_gram(ctx, top)
    if cfg.method in ("recursion", "both"):
        C = _coherence_for(cfg, P, Q)
        if C is None:
            print("no coherence at given orders", file=sys.stderr)
            return EXIT_COMPUTE
        results["recursion"] = coherent_recursion(ctx, P, Q, C, cfg.n)
    S = results.get("gram") or results["recursion"]
    status = EXIT_OK
    if len(results) == 2:
        G, R = results["gram"], results["recursion"]
        for n in range(top + 1):
            if G.polys[n] != R.polys[n] or G.s_norms[n] != R.s_norms[n]:
                print(f"routes disagree at n={n}", file=sys.stderr)
                status = EXIT_MISMATCH
                break
    if cfg.out == "csv":
        _emit(cfg, ser.polys_to_csv(S.polys, {"s": S.s_norms}))
    else:
        doc = ser.sobolev_to_json(S)
        doc["method"] = cfg.method
        if "recursion" in results:
            doc["c"] = ser._coeffs_to_json(results["recursion"].c)
        _emit(cfg, ser.dumps(doc))
    return status


def _run_fit(cfg):
    U, V = _functionals(cfg, "u", "v")
    P = smop_from_moments(U, cfg.n + cfg.m)
    Q = smop_from_moments(V, cfg.n + cfg.k)
    C = coherence_fit(P, Q, cfg.M, cfg.N, cfg.m, cfg.k, cfg.nu, cfg.n)
    if C is None:
        print("no coherence at given orders", file=sys.stderr)
        return EXIT_COMPUTE
    doc = ser.coherence_to_json(C)
    if cfg.M + cfg.N <= cfg.n:
        L, det = l_matrix(C)
        doc["l_matrix"] = [[ser.rational_str(v) for v in row] for row in L]
        doc["l_det"] = ser.rational_str(det)
    _emit(cfg, ser.dumps(doc))
    return EXIT_OK


def _run_verify(cfg):
    U, V = _functionals(cfg, "u", "v")
    C = ser.coherence_from_json(cfg.coherence)
    extra = max(cfg.leading, 0) + C.M + C.N + C.m + C.k + 2
    P = smop_from_moments(U, C.n_max + extra)
    Q = smop_from_moments(V, C.n_max + extra)
    residual = coherence_residual(P, Q, C, cfg.nu)
    bad = [n for n, r in enumerate(residual) if r]
    doc = {"residual_zero": not bad, "failing_n": bad, "extremes_nonzero": C.extremes_nonzero()}
    leading_ok = True
    if cfg.leading >= 0:
        rows = []
        for n in range(cfg.leading + 1):
            rel = relation_at_coherence_degrees(P, Q, C, n, cfg.nu, cfg.guard)
            if rel is None:
                rows.append({"n": n, "applicable": False, "reason": "no relation at the predicted degrees"})
                continue
            rep = leading_coeff_check(P, Q, C, rel, n, cfg.nu)
            rows.append({"n": n, "applicable": rep.applicable, "passed": rep.passed, "reason": rep.reason,
                         "relation": ser.relation_to_json(rel)})
            leading_ok &= (not rep.applicable) or rep.passed
        doc["leading"] = rows
    _emit(cfg, ser.dumps(doc))
    return EXIT_OK if not bad and leading_ok else EXIT_MISMATCH


def _run_pearson(cfg):
    (U,) = _functionals(cfg, "functional")
    if cfg.class_max is not None:
        s = class_estimate(U, cfg.nu, cfg.class_max, cfg.guard)
        _emit(cfg, ser.dumps({"class_estimate": s, "searched_up_to": cfg.class_max}))
        return EXIT_OK if s is not None else EXIT_COMPUTE
    pair = pearson_solve(U, cfg.nu, cfg.deg_sigma, cfg.deg_tau, cfg.guard)
    if pair is None:
        print("no Pearson pair within the degree caps", file=sys.stderr)
        return EXIT_COMPUTE
    _emit(cfg, ser.dumps(ser.pearson_to_json(pair)))
    return EXIT_OK


def _run_suite(cfg):
    rows = run_suite()
    width = max(len(name) for name, _, _ in rows)
    lines = [f"{name:<{width}}  {'pass' if ok else 'FAIL'}  {detail}" for name, ok, detail in rows]
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if all(ok for _, ok, _ in rows) else EXIT_MISMATCH


def _bits(p):
    return max((max(c.numerator.bit_length(), c.denominator.bit_length()) for c in p.coeffs), default=0)


def _run_bench(cfg):
    ctx, P, Q = _sobolev_inputs(cfg)
    C = _coherence_for(cfg, P, Q)
    if C is None:
        print("no coherence at given orders", file=sys.stderr)
        return EXIT_COMPUTE
    t0 = time.perf_counter()
    G = sobolev_smop_gram(ctx, cfg.n + cfg.m)
    t1 = time.perf_counter()
    R = coherent_recursion(ctx, P, Q, C, cfg.n)
    t2 = time.perf_counter()
    same = G.polys == R.polys and G.s_norms == R.s_norms
    lines = [f"gram_seconds {t1 - t0:.4f}", f"recursion_seconds {t2 - t1:.4f}",
             f"routes_agree {'yes' if same else 'no'}", "n max_coeff_bits"]
    lines += [f"{n} {_bits(p)}" for n, p in enumerate(G.polys)]
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if same else EXIT_MISMATCH


_DISPATCH = {
    "smop": _run_smop,
    "sobolev": _run_sobolev,
    "coherence-fit": _run_fit,
    "coherence-verify": _run_verify,
    "pearson": _run_pearson,
    "verify-suite": _run_suite,
    "bench": _run_bench,
}


def run(cfg: CliConfig) -> int:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return _DISPATCH[cfg.subcommand](cfg)
    except (CoherentPairsError, ArithmeticError, ValueError, IndexError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main(argv: Optional[List[str]] = None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
