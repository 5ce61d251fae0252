"""Nondegenerate locus of ``f_1, ..., f_c``: the union of the codimension-c
components of ``V(f_1, ..., f_c)``.

Two drivers compute a Gröbner basis of an ideal whose zero set is that locus:

* :func:`nondeg_naive` iterates saturations and quotients using the
  elimination routines of :mod:`nondeg.ideal`;
* :func:`nondeg_sgbtree` drives an :class:`~nondeg.sgbtree.SgbTree`, reading
  saturations and double quotients off syzygies as they appear.  The generic
  combinations of syzygies use either seeded random scalars or a slack
  variable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import IO, Sequence

from .ideal import (
    IdealBasis,
    interreduce,
    quotient_ideal,
    saturate,
    saturate_by_ideal,
)
from .poly import Polynomial, PolyRing
from .rng import SplitMix64
from .sgbtree import SgbTree

SLACK_NAME = "_s"


class LocusInputError(ValueError):
    """Bad input for a locus computation (zero polynomial, too many equations)."""


@dataclass
class NondegResult:
    basis: IdealBasis
    mode: str
    seed: int | None = None
    iterations: list[dict] = field(default_factory=list)
    intermediates: list[IdealBasis] = field(default_factory=list)
    ops: dict[str, int] = field(default_factory=dict)
    seconds: float = 0.0
    tree: object = field(default=None, repr=False)

    @property
    def is_empty(self) -> bool:
        return self.basis.is_unit()


def _check_input(polys: Sequence[Polynomial]) -> PolyRing:
    if not polys:
        raise LocusInputError("no input polynomials")
    ring = polys[0].ring
    if any(not f.monos for f in polys):
        raise LocusInputError("zero input polynomial")
    if len(polys) > ring.nvars:
        raise LocusInputError(
            f"{len(polys)} equations in {ring.nvars} variables: the locus is empty by definition"
        )
    return ring


# ---------------------------------------------------------------------------
# naive


def nondeg_naive(polys: Sequence[Polynomial]) -> NondegResult:
    """Saturation loop: ``H = J : f^oo``, record ``J : H``, ``J = H + <f>``, clean."""
    polys = list(polys)
    ring = _check_input(polys)
    t0 = time.perf_counter()
    before = ring.counter.snapshot()
    J = IdealBasis(ring, [], True)
    Ks: list[IdealBasis] = []
    result = NondegResult(J, "naive")
    for k, f in enumerate(polys, start=1):
        H = saturate(J, f)
        K = quotient_ideal(J, H) if not H.equals(J) else IdealBasis(ring, [ring.one()], True)
        if not K.is_unit():
            Ks.append(K)
        J = (H + f).groebner()
        result.intermediates.append(J)
        if not J.is_unit():
            for K in Ks:
                J = saturate_by_ideal(J, K)
                if J.is_unit():
                    break
        result.iterations.append(
            {"k": k, "cleaning_ideals": len(Ks), "generators": len(J.basis)}
        )
        if J.is_unit():
            break
    result.basis = J.groebner()
    result.ops = _ops_delta(ring, before)
    result.seconds = time.perf_counter() - t0
    return result


def _ops_delta(ring: PolyRing, before: dict) -> dict:
    now = ring.counter.snapshot()
    return {k: now[k] - before[k] for k in now}


# ---------------------------------------------------------------------------
# sGB tree


def combine_syzygies(h_prev: Polynomial, h_new: Polynomial, t) -> Polynomial:
    """``t * h_prev + h_new`` for a scalar or a slack-variable polynomial ``t``."""
    if not h_prev.monos:
        return h_new
    if isinstance(t, Polynomial):
        return t * h_prev + h_new
    return h_prev.scale(t) + h_new


def slack_ring(ring: PolyRing) -> PolyRing:
    """``ring`` with one extra variable under an order eliminating it.

    The slack block dominates and DRL orders the remaining variables, so the
    elements of a Gröbner basis whose leading monomial is free of the slack
    form a Gröbner basis of the intersection with ``ring``.
    """
    name = SLACK_NAME
    while name in ring.variables:
        name = "_" + name
    return ring.extend([name], ("block", 1))


def nondeg_sgbtree(
    polys: Sequence[Polynomial],
    mode: str = "random",
    seed: int = 0,
    trace: IO[str] | None = None,
) -> NondegResult:
    """Locus via an sGB tree; ``mode`` is ``"random"`` or ``"deterministic"``."""
    polys = list(polys)
    base = _check_input(polys)
    if mode not in ("random", "deterministic"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    before = base.counter.snapshot()
    if mode == "deterministic":
        if base.order.describe()[0] != "drl":
            raise LocusInputError("the deterministic variant needs a DRL ring")
        ring = slack_ring(base)
        slack = ring.gen(ring.nvars - 1)
        rng = None
    else:
        ring = base
        slack = None
        rng = SplitMix64(seed)
    result = NondegResult(IdealBasis(base, [], True), "sgbtree-" + mode, seed if rng else None)

    T = SgbTree(ring, trace=trace)
    nu = T.insert_node(ring.zero())
    for k, f in enumerate(polys, start=1):
        f = ring.convert(f)
        info = {"k": k, "saturation_syzygies": 0, "leaves": 0, "cleaning_syzygies": 0}
        mu = T.insert_node(f, ("above", nu))
        while True:
            g = T.get_syzygy(mu)
            if not g.monos:
                break
            info["saturation_syzygies"] += 1
            gamma = T.insert_node(g, ("above", mu))
            h = ring.zero()
            t = slack if slack is not None else rng.nonzero_scalar(ring.p)
            while True:
                h2 = T.get_syzygy(gamma)
                if not h2.monos:
                    break
                h = combine_syzygies(h, h2, t)
            if h.monos:
                T.insert_node(h, ("child", nu))
                info["leaves"] += 1
        for beta in list(T.children[nu]):
            while True:
                b = T.get_syzygy(beta)
                if not b.monos:
                    break
                info["cleaning_syzygies"] += 1
                T.insert_node(b, ("above", nu))
        info["nodes"] = len(T.inserted)
        result.iterations.append(info)
        if _has_unit(T.polys_below(nu)):
            break

    gb = interreduce(T.basis(nu))
    if slack is not None:
        last = ring.nvars - 1
        out = [base.convert(g) for g in gb if ring.exponents(g.monos[0])[last] == 0]
    else:
        out = gb
    result.basis = IdealBasis(base, interreduce(out), True)
    result.ops = _ops_delta(base, before)
    result.seconds = time.perf_counter() - t0
    result.tree = T
    return result


def _has_unit(polys: Sequence[Polynomial]) -> bool:
    return any(f.is_constant() for f in polys)


def nondeg(polys: Sequence[Polynomial], algorithm: str = "naive", **kw) -> NondegResult:
    if algorithm == "naive":
        return nondeg_naive(polys)
    if algorithm == "sgbtree":
        return nondeg_sgbtree(polys, **kw)
    raise ValueError(f"unknown algorithm {algorithm!r}")


__all__ = [
    "LocusInputError",
    "NondegResult",
    "combine_syzygies",
    "nondeg",
    "nondeg_naive",
    "nondeg_sgbtree",
    "slack_ring",
]
