"""Classical Gröbner bases and elimination-based ideal operations.

Everything here is independent of the signature machinery: Buchberger's
algorithm with the Gebauer-Möller criteria and the sugar strategy, plus
quotients, saturations and intersections obtained by adding one auxiliary
variable and eliminating it under a block order.  The signature engine and
the locus drivers are checked against these routines.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .poly import Polynomial, PolyRing, _reduce_with_index, normal_form
from .rng import SplitMix64


class _Empty:
    """Codimension of the unit ideal (empty variety)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())


EMPTY = _Empty()


# ---------------------------------------------------------------------------
# Buchberger


def _spoly(f: Polynomial, g: Polynomial, lcm: int) -> Polynomial:
    ring = f.ring
    p = ring.p
    a = f.mul_term(1, lcm - f.monos[0])
    m, c, nadd = kernels.axpy(a.monos, a.coeffs, 1, g.monos, g.coeffs, 1, lcm - g.monos[0], p - 1, p)
    ring.counter.addsub_count += nadd
    return Polynomial(ring, m, c)


def groebner_basis(polys: Iterable[Polynomial], ring: PolyRing | None = None) -> list[Polynomial]:
    """Reduced Gröbner basis (monic, sorted by increasing leading monomial)."""
    polys = [f for f in polys if f.monos]
    if not polys:
        return []
    ring = ring or polys[0].ring
    for f in polys:
        if f.is_constant():
            return [ring.one()]
    basis = _buchberger(ring, polys)
    return interreduce(basis)


def _buchberger(ring: PolyRing, polys: list[Polynomial]) -> list[Polynomial]:
    mono_degree = ring.mono_degree
    lcm_of = ring.mono_lcm
    divides = ring.mono_divides
    coprime = ring.mono_coprime

    G: list[Polynomial] = []
    sugar: list[int] = []
    active: list[int] = []
    index = kernels.DivisorIndex(ring.nvars, ring.guard)
    inv_lcs: list[int] = []
    heap: list = []
    live: dict[tuple[int, int], int] = {}  # pair -> lcm

    def reduce(f):
        if not G:
            return f
        return _reduce_with_index(f, G, index, inv_lcs)

    def add(h: Polynomial, s: int) -> bool:
        h = h.monic()
        k = len(G)
        lh = h.monos[0]
        G.append(h)
        sugar.append(s)
        inv_lcs.append(1)
        info = ring.info(lh)
        index.add(info[0], ring.packed(lh))
        if lh == 0:
            return True
        # Gebauer-Möller update
        cands = [(i, lcm_of(G[i].monos[0], lh)) for i in active]
        kept = []
        for pos, (i, L) in enumerate(cands):
            if coprime(G[i].monos[0], lh):
                kept.append((i, L, True))
                continue
            dominated = False
            for i2, L2 in cands[pos + 1:]:
                if divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for i2, L2, _ in kept:
                    if divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                kept.append((i, L, False))
        for (i, j), L in list(live.items()):
            if divides(lh, L) and lcm_of(G[i].monos[0], lh) != L and lcm_of(G[j].monos[0], lh) != L:
                del live[(i, j)]
        for i, L, is_coprime in kept:
            if is_coprime:
                continue
            dl = mono_degree(L)
            s_pair = max(sugar[i] + dl - mono_degree(G[i].monos[0]), s + dl - mono_degree(lh))
            live[(i, k)] = L
            heapq.heappush(heap, (s_pair, L, i, k))
        still = []
        for i in active:
            if divides(lh, G[i].monos[0]):
                index.kill(i)
            else:
                still.append(i)
        still.append(k)
        active[:] = still
        return False

    start = sorted(polys, key=lambda f: (f.degree(), f.monos[0]))
    for f in start:
        r = reduce(f.monic())
        if r.monos:
            if add(r, f.degree()):
                return [ring.one()]

    while heap:
        s, L, i, j = heapq.heappop(heap)
        if live.pop((i, j), None) is None:
            continue
        r = reduce(_spoly(G[i], G[j], L))
        if r.monos:
            if add(r, s):
                return [ring.one()]
    return [G[i] for i in active]


def interreduce(basis: Sequence[Polynomial]) -> list[Polynomial]:
    """Reduced form of a Gröbner basis: minimal, monic, tail-reduced."""
    basis = [g.monic() for g in basis if g.monos]
    if not basis:
        return []
    ring = basis[0].ring
    if any(g.is_constant() for g in basis):
        return [ring.one()]
    basis.sort(key=lambda g: g.monos[0])
    minimal: list[Polynomial] = []
    for g in basis:
        if any(ring.mono_divides(h.monos[0], g.monos[0]) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = Polynomial(ring, g.monos[1:], g.coeffs[1:])
        r = normal_form(tail, others) if others else tail
        out.append(Polynomial(ring, [g.monos[0]] + r.monos, [g.coeffs[0]] + r.coeffs))
    return out


def is_groebner(basis: Sequence[Polynomial]) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    basis = [g.monic() for g in basis if g.monos]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            f, g = basis[i], basis[j]
            L = f.ring.mono_lcm(f.monos[0], g.monos[0])
            if normal_form(_spoly(f, g, L), basis).monos:
                return False
    return True


# ---------------------------------------------------------------------------
# ideals


@dataclass(eq=False)
class IdealBasis:
    ring: PolyRing
    gens: list[Polynomial]
    is_groebner: bool = False
    _gb: list[Polynomial] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.gens = [self.ring.convert(g) if g.ring is not self.ring else g for g in self.gens]
        self.gens = [g for g in self.gens if g.monos]
        if self.is_groebner:
            self._gb = self.gens

    def groebner(self) -> "IdealBasis":
        if self._gb is None:
            self._gb = groebner_basis(self.gens, self.ring)
        if self.is_groebner:
            return self
        return IdealBasis(self.ring, list(self._gb), True)

    @property
    def basis(self) -> list[Polynomial]:
        return self.groebner().gens

    def is_unit(self) -> bool:
        gb = self.basis
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(self.ring.convert(f), self.basis).monos

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(self.ring.convert(f), self.basis)

    def __add__(self, other) -> "IdealBasis":
        if isinstance(other, Polynomial):
            other = [other]
        if isinstance(other, IdealBasis):
            other = other.gens
        return IdealBasis(self.ring, self.gens + list(other))

    def equals(self, other: "IdealBasis") -> bool:
        return [(g.monos, g.coeffs) for g in self.basis] == [
            (g.monos, g.coeffs) for g in other.basis
        ]

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.gens) + ">"


def ideal(ring: PolyRing, gens: Iterable[Polynomial] = ()) -> IdealBasis:
    return IdealBasis(ring, list(gens))


def unit_ideal(ring: PolyRing) -> IdealBasis:
    return IdealBasis(ring, [ring.one()], True)


def buchberger(I: IdealBasis) -> IdealBasis:
    return I.groebner()


def _aux_name(ring: PolyRing, stem: str = "_t") -> str:
    name = stem
    n = 0
    while name in ring.variables:
        n += 1
        name = f"{stem}{n}"
    return name


def eliminate(ring: PolyRing, ext: PolyRing, polys: Sequence[Polynomial], k: int) -> IdealBasis:
    """Intersect ``<polys>`` (in ``ext``, last ``k`` variables eliminated) with ``ring``."""
    gb = groebner_basis(polys, ext)
    n = ring.nvars
    kept = []
    for g in gb:
        exps = ext.exponents(g.monos[0])
        if not any(exps[n:]):
            kept.append(ring.convert(g))
    return IdealBasis(ring, interreduce(kept), True)


def _block_ring(ring: PolyRing) -> PolyRing:
    return ring.extend([_aux_name(ring)], ("block", 1))


def intersect(I: IdealBasis, J: IdealBasis) -> IdealBasis:
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return IdealBasis(ring, [], True)
    if J.is_unit():
        return I.groebner()
    if I.is_unit():
        return J.groebner()
    ext = _block_ring(ring)
    t = ext.gen(ring.nvars)
    one_minus_t = ext.one() - t
    polys = [t * ext.convert(f) for f in I.gens] + [one_minus_t * ext.convert(g) for g in J.gens]
    return eliminate(ring, ext, polys, 1)


def quotient(I: IdealBasis, f: Polynomial) -> IdealBasis:
    """``I : f``."""
    ring = I.ring
    f = ring.convert(f)
    if not f.monos:
        raise ValueError("quotient by the zero polynomial")
    if f.is_constant():
        return I.groebner()
    if I.contains(f):
        return unit_ideal(ring)
    K = intersect(I, IdealBasis(ring, [f]))
    from .poly import exact_divide

    gens = [exact_divide(g, f) for g in K.gens]
    return IdealBasis(ring, gens).groebner()


def quotient_ideal(I: IdealBasis, K: IdealBasis) -> IdealBasis:
    """``I : K`` as the intersection of the quotients by generators of ``K``."""
    ring = I.ring
    result = None
    for g in K.basis:
        if I.contains(g):
            continue
        q = quotient(I, g)
        result = q if result is None else intersect(result, q)
    return result if result is not None else unit_ideal(ring)


def saturate(I: IdealBasis, f: Polynomial) -> IdealBasis:
    """``I : f^oo`` via ``I + <t*f - 1>`` with ``t`` eliminated."""
    ring = I.ring
    f = ring.convert(f)
    if not f.monos:
        raise ValueError("saturation by the zero polynomial")
    if f.is_constant() or I.is_zero():
        return I.groebner()
    if I.is_unit():
        return unit_ideal(ring)
    ext = _block_ring(ring)
    t = ext.gen(ring.nvars)
    polys = [ext.convert(g) for g in I.basis] + [t * ext.convert(f) - 1]
    return eliminate(ring, ext, polys, 1)


def random_combination(gens: Sequence[Polynomial], rng: SplitMix64) -> Polynomial:
    ring = gens[0].ring
    out = ring.zero()
    for g in gens:
        out = out + g.scale(rng.nonzero_scalar(ring.p))
    return out


def saturate_by_ideal(I: IdealBasis, K: IdealBasis, seed: int | None = None) -> IdealBasis:
    """``I : K^oo``.

    With ``seed=None`` the answer is exact: the intersection of the
    saturations by each generator of ``K``.  With a seed, ``I`` is saturated
    by one random linear combination of the generators, which is correct for
    all but a thin set of coefficient choices.
    """
    ring = I.ring
    if K.is_zero():
        raise ValueError("saturation by the zero ideal")
    if K.is_unit():
        return I.groebner()
    gens = K.basis
    if seed is not None:
        g = random_combination(gens, SplitMix64(seed))
        if not g.monos:
            raise ValueError("degenerate random combination")
        return saturate(I, g)
    result = None
    for g in gens:
        s = saturate(I, g)
        result = s if result is None else intersect(result, s)
    return result


def saturate_by_ideal_fixpoint(I: IdealBasis, K: IdealBasis) -> IdealBasis:
    """Iterate ``I <- I : g^oo`` over the generators of ``K`` until stable.

    This computes ``I : (prod K)^oo``, which contains ``I : K^oo`` and can be
    strictly larger; kept for comparison, not used by the drivers.
    """
    cur = I.groebner()
    while True:
        nxt = cur
        for g in K.basis:
            nxt = saturate(nxt, g)
        if nxt.equals(cur):
            return cur
        cur = nxt


def radical_member(f: Polynomial, I: IdealBasis) -> bool:
    """``f in sqrt(I)`` by the Rabinowitsch trick."""
    ring = I.ring
    f = ring.convert(f)
    if not f.monos:
        return True
    if not normal_form(f, I.basis).monos:
        return True
    if I.is_zero():
        return False
    ext = ring.extend([_aux_name(ring)], "drl")
    t = ext.gen(ring.nvars)
    polys = [ext.convert(g) for g in I.basis] + [t * ext.convert(f) - 1]
    gb = groebner_basis(polys, ext)
    return len(gb) == 1 and gb[0].is_constant()


def ideals_equal_up_to_radical(I: IdealBasis, J: IdealBasis) -> bool:
    return all(radical_member(g, J) for g in I.basis) and all(
        radical_member(g, I) for g in J.basis
    )


def codimension(I: IdealBasis):
    """``n - dim(R/I)`` from maximal independent variable sets of ``lm(I)``."""
    ring = I.ring
    gb = I.basis
    if not gb:
        return 0
    if len(gb) == 1 and gb[0].is_constant():
        return EMPTY
    n = ring.nvars
    supports = set()
    for g in gb:
        mask = 0
        for i, e in enumerate(ring.exponents(g.monos[0])):
            if e:
                mask |= 1 << i
        supports.add(mask)
    best = 0
    for S in range(1 << n):
        size = bin(S).count("1")
        if size <= best:
            continue
        if all(m & ~S for m in supports):
            best = size
    return n - best


__all__ = [
    "EMPTY",
    "IdealBasis",
    "buchberger",
    "codimension",
    "eliminate",
    "groebner_basis",
    "ideal",
    "ideals_equal_up_to_radical",
    "interreduce",
    "intersect",
    "is_groebner",
    "quotient",
    "quotient_ideal",
    "radical_member",
    "random_combination",
    "saturate",
    "saturate_by_ideal",
    "saturate_by_ideal_fixpoint",
    "unit_ideal",
]
