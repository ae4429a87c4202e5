"""Built-in exact moment functionals: Charlier, Kravchuk, Hahn and finite node-weight measures."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Tuple, Union

from .calculus import as_fraction
from .functional import MomentFunctional


@dataclass(frozen=True)
class Charlier:
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu", as_fraction(self.mu))
        if self.mu <= 0:
            raise ValueError("Charlier parameter mu must be positive")


@dataclass(frozen=True)
class Kravchuk:
    N: int
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", as_fraction(self.p))
        if self.N < 1:
            raise ValueError("Kravchuk N must be a positive integer")
        if not 0 < self.p < 1:
            raise ValueError("Kravchuk p must lie in (0, 1)")


@dataclass(frozen=True)
class Hahn:
    alpha: Fraction
    beta: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.N < 1:
            raise ValueError("Hahn N must be a positive integer")
        if self.alpha <= -1 or self.beta <= -1:
            raise ValueError("Hahn parameters must exceed -1")


@dataclass(frozen=True)
class Discrete:
    nodes: Tuple[Fraction, ...]
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        nodes = tuple(as_fraction(x) for x in self.nodes)
        weights = tuple(as_fraction(w) for w in self.weights)
        if len(nodes) != len(weights):
            raise ValueError("nodes and weights differ in length")
        if not nodes:
            raise ValueError("a discrete measure needs at least one node")
        if len(set(nodes)) != len(nodes):
            raise ValueError("nodes must be pairwise distinct")
        if any(w == 0 for w in weights):
            raise ValueError("weights must be nonzero")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


FamilySpec = Union[Charlier, Kravchuk, Hahn, Discrete]


def stirling2_row(n: int, table: list) -> list:
    """Extend ``table`` of Stirling numbers of the second kind through row ``n``."""
    while len(table) <= n:
        prev = table[-1]
        k_max = len(prev)
        row = [0] * (k_max + 1)
        for k in range(1, k_max + 1):
            row[k] = k * (prev[k] if k < k_max else 0) + prev[k - 1]
        table.append(row)
    return table[n]


def charlier(mu) -> MomentFunctional:
    """Poisson weight ``mu^x e^{-mu} / x!`` on the nonnegative integers.

    The moments are Touchard polynomials ``sum_k S(n, k) mu^k``; ``u_0 = 1``.
    """
    spec = Charlier(mu)
    mu = spec.mu
    table = [[1]]
    lock = threading.Lock()

    def gen(n):
        with lock:
            row = stirling2_row(n, table)
        return sum((s * mu**k for k, s in enumerate(row) if s), Fraction(0))

    return MomentFunctional(gen, spec={"kind": "charlier", "mu": str(mu)}, label=f"Charlier({mu})")


def discrete(nodes: Sequence, weights: Sequence) -> MomentFunctional:
    """Finite measure ``sum_k w_k delta_{x_k}``; regular at most up to ``#nodes - 1``."""
    spec = Discrete(tuple(nodes), tuple(weights))
    return _node_weight(spec.nodes, spec.weights,
                        {"kind": "discrete", "nodes": [str(x) for x in spec.nodes],
                         "weights": [str(w) for w in spec.weights]},
                        f"Discrete[{len(spec.nodes)}]")


def _node_weight(nodes, weights, spec, label) -> MomentFunctional:
    def gen(n):
        return sum((w * x**n for x, w in zip(nodes, weights)), Fraction(0))

    return MomentFunctional(gen, horizon=len(nodes) - 1, spec=spec, label=label)


def kravchuk(N: int, p) -> MomentFunctional:
    """Binomial weight ``C(N, x) p^x (1-p)^{N-x}`` on ``0..N``."""
    spec = Kravchuk(N, p)
    p = spec.p
    weights = [comb(N, x) * p**x * (1 - p) ** (N - x) for x in range(N + 1)]
    return _node_weight([Fraction(x) for x in range(N + 1)], weights,
                        {"kind": "kravchuk", "N": N, "p": str(p)}, f"Kravchuk({N},{p})")


def _rising(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def hahn(alpha, beta, N: int) -> MomentFunctional:
    """Hahn weight ``C(alpha+x, x) C(beta+N-x, N-x)`` on ``0..N``, normalized to ``u_0 = 1``."""
    spec = Hahn(alpha, beta, N)
    a, b = spec.alpha, spec.beta
    raw = [
        _rising(a + 1, x) / _rising(Fraction(1), x) * _rising(b + 1, N - x) / _rising(Fraction(1), N - x)
        for x in range(N + 1)
    ]
    total = sum(raw)
    return _node_weight([Fraction(x) for x in range(N + 1)], [w / total for w in raw],
                        {"kind": "hahn", "alpha": str(a), "beta": str(b), "N": N},
                        f"Hahn({a},{b},{N})")


def q_lattice(q, count: int, weights: Sequence) -> MomentFunctional:
    """Discrete measure on the nodes ``1, q, q^2, ..., q^{count-1}``."""
    q = as_fraction(q)
    return discrete([q**k for k in range(count)], weights)


def finite_lattice(spec: FamilySpec) -> MomentFunctional:
    if isinstance(spec, Kravchuk):
        return kravchuk(spec.N, spec.p)
    if isinstance(spec, Hahn):
        return hahn(spec.alpha, spec.beta, spec.N)
    if isinstance(spec, Discrete):
        return discrete(spec.nodes, spec.weights)
    raise TypeError(f"{type(spec).__name__} is not a finitely supported family")


def family(spec: FamilySpec) -> MomentFunctional:
    if isinstance(spec, Charlier):
        return charlier(spec.mu)
    return finite_lattice(spec)


def geronimus(U: MomentFunctional, c, v0) -> MomentFunctional:
    """Functional ``V`` with ``(x - c) V = U`` and ``v_0`` prescribed.

    Moments follow ``v_{n+1} = u_n + c v_n``.  For ``c`` left of the support
    of a positive measure ``U`` and ``v0`` large enough, ``V`` is again
    positive definite (a point mass at ``c`` is added).
    """
    c, v0 = as_fraction(c), as_fraction(v0)
    cache = [v0]
    lock = threading.Lock()

    def gen(n):
        with lock:
            while len(cache) <= n:
                k = len(cache) - 1
                cache.append(U.moment(k) + c * cache[k])
            return cache[n]

    spec = None
    if U.spec is not None:
        spec = {"kind": "geronimus", "c": str(c), "v0": str(v0), "base": U.spec}
    return MomentFunctional(gen, limit=None if U.limit is None else U.limit + 1,
                            spec=spec, label=f"Geronimus({U.label},{c},{v0})")
