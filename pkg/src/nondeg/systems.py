"""Seeded generators for the benchmark families Cyclic, Pseudo, Sos and Sing.

All randomness comes from :class:`~nondeg.rng.SplitMix64`.  A dense quadric
draws one coefficient uniformly from ``[0, p)`` for every monomial of degree
at most 2, in the order: constant, ``v_i`` by increasing ``i``, then
``v_i v_j`` for ``i <= j`` in lexicographic order of ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .poly import DEFAULT_PRIME, Polynomial, PolyRing
from .rng import SplitMix64

FAMILIES = ("cyclic", "pseudo", "sos", "sing")


@dataclass(frozen=True)
class SystemSpec:
    family: str
    params: tuple[int, ...]
    seed: int = 0
    p: int = DEFAULT_PRIME

    def label(self) -> str:
        return f"{self.family.capitalize()}({', '.join(map(str, self.params))})"


def partial_derivative(f: Polynomial, j) -> Polynomial:
    """``df/dx_j``; ``j`` is a variable index or name."""
    return f.derivative(j)


def dense_quadric(ring: PolyRing, var_indices: Sequence[int], rng: SplitMix64) -> Polynomial:
    n = ring.nvars
    p = ring.p
    terms = []

    def mono(*idx):
        e = [0] * n
        for i in idx:
            e[var_indices[i]] += 1
        return e

    k = len(var_indices)
    terms.append((mono(), rng.below(p)))
    for i in range(k):
        terms.append((mono(i), rng.below(p)))
    for i in range(k):
        for j in range(i, k):
            terms.append((mono(i, j), rng.below(p)))
    return ring.from_terms(terms)


def gen_cyclic(n: int, p: int = DEFAULT_PRIME) -> tuple[PolyRing, list[Polynomial]]:
    if n < 2:
        raise ValueError("Cyclic(n) needs n >= 2")
    ring = PolyRing([f"x{i}" for i in range(n)], p)
    xs = ring.gens()
    polys = []
    for d in range(1, n):
        f = ring.zero()
        for i in range(n):
            t = ring.one()
            for j in range(d):
                t = t * xs[(i + j) % n]
            f = f + t
        polys.append(f)
    prod = ring.one()
    for x in xs:
        prod = prod * x
    polys.append(prod - 1)
    return ring, polys


def gen_pseudo(n: int, seed: int = 0, p: int = DEFAULT_PRIME) -> tuple[PolyRing, list[Polynomial]]:
    """``f_i`` dense quadrics in ``x_1..x_{n-2}, z_1, z_2``; ``g_i`` with ``x -> y``."""
    if n < 3:
        raise ValueError("Pseudo(n) needs n >= 3")
    m = n - 2
    names = [f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)] + ["z1", "z2"]
    ring = PolyRing(names, p)
    rng = SplitMix64(seed)
    xz = list(range(m)) + [2 * m, 2 * m + 1]
    fs = [dense_quadric(ring, xz, rng) for _ in range(n - 1)]
    swap = {i: ring.gen(m + i) for i in range(m)}
    gs = [f.substitute(swap) for f in fs]
    return ring, fs + gs


def gen_sos(s: int, n: int, seed: int = 0, p: int = DEFAULT_PRIME) -> tuple[PolyRing, list[Polynomial]]:
    """``f = sum g_i^2`` and its partials in ``x_2..x_n``."""
    if s < 1 or n < 2:
        raise ValueError("Sos(s, n) needs s >= 1 and n >= 2")
    ring = PolyRing([f"x{i}" for i in range(1, n + 1)], p)
    rng = SplitMix64(seed)
    gs = [dense_quadric(ring, list(range(n)), rng) for _ in range(s)]
    f = ring.zero()
    for g in gs:
        f = f + g * g
    return ring, [f] + [partial_derivative(f, j) for j in range(1, n)]


def _det(m: list[list[Polynomial]], zero: Polynomial) -> Polynomial:
    n = len(m)
    total = zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        t = None
        for i in range(n):
            e = m[i][perm[i]]
            if not e.monos:
                t = None
                break
            t = e if t is None else t * e
        if t is None:
            continue
        total = total - t if inv % 2 else total + t
    return total


def coefficients_in(f: Polynomial, var: int, degree: int) -> list[Polynomial]:
    """``[c_0, ..., c_degree]`` with ``f = sum c_k var^k``."""
    ring = f.ring
    buckets: list[list] = [[] for _ in range(degree + 1)]
    for exps, c in f.terms():
        k = exps[var]
        if k > degree:
            raise ValueError("degree bound exceeded")
        e = list(exps)
        e[var] = 0
        buckets[k].append((e, c))
    return [ring.from_terms(b) for b in buckets]


def sylvester_resultant(A: Polynomial, B: Polynomial, var: int) -> Polynomial:
    """Resultant of two polynomials of degree exactly 2 in ``var`` (4x4 Sylvester)."""
    a0, a1, a2 = coefficients_in(A, var, 2)
    b0, b1, b2 = coefficients_in(B, var, 2)
    if not a2.monos or not b2.monos:
        raise ValueError("leading coefficient vanishes")
    z = A.ring.zero()
    rows = [
        [a2, a1, a0, z],
        [z, a2, a1, a0],
        [b2, b1, b0, z],
        [z, b2, b1, b0],
    ]
    return _det(rows, z)


def gen_sing(n: int, seed: int = 0, p: int = DEFAULT_PRIME) -> tuple[PolyRing, list[Polynomial]]:
    """Resultant in ``x_{n+1}`` of two dense quadrics, and its partials in ``x_2..x_n``."""
    if n < 2:
        raise ValueError("Sing(n) needs n >= 2")
    big = PolyRing([f"x{i}" for i in range(1, n + 2)], p)
    ring = PolyRing([f"x{i}" for i in range(1, n + 1)], p, counter=big.counter)
    rng = SplitMix64(seed)
    allv = list(range(n + 1))

    def draw():
        while True:
            q = dense_quadric(big, allv, rng)
            if coefficients_in(q, n, 2)[2].monos:
                return q

    A = draw()
    B = draw()
    f = ring.convert(sylvester_resultant(A, B, n))
    return ring, [f] + [partial_derivative(f, j) for j in range(1, n)]


def generate(spec: SystemSpec) -> tuple[PolyRing, list[Polynomial]]:
    fam = spec.family.lower()
    params = spec.params
    try:
        if fam == "cyclic":
            (n,) = params
            return gen_cyclic(n, spec.p)
        if fam == "pseudo":
            (n,) = params
            return gen_pseudo(n, spec.seed, spec.p)
        if fam == "sos":
            s, n = params
            return gen_sos(s, n, spec.seed, spec.p)
        if fam == "sing":
            (n,) = params
            return gen_sing(n, spec.seed, spec.p)
    except ValueError as exc:
        if "unpack" in str(exc):
            raise ValueError(f"wrong number of parameters for {fam}") from None
        raise
    raise ValueError(f"unknown family {spec.family!r}; expected one of {', '.join(FAMILIES)}")


__all__ = [
    "FAMILIES",
    "SystemSpec",
    "coefficients_in",
    "dense_quadric",
    "gen_cyclic",
    "gen_pseudo",
    "gen_sing",
    "gen_sos",
    "generate",
    "partial_derivative",
    "sylvester_resultant",
]
