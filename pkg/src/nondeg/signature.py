"""Signature-based Gröbner bases with recording of syzygy quotients.

Signatures are ``(index, monomial)`` pairs; an extended sig-poly pair carries a
polynomial, its signature and its quotient (the cofactor of the generator at
that index).  The same machinery serves the flat engine, where the indices
1..r form a chain, and the tree engine in :mod:`nondeg.sgbtree`, where indices
are tree nodes ordered by ancestry.

Two layers live here:

* small reference functions (:func:`make_spair`, :func:`regular_reduce`,
  :func:`rewritable`) operating on plain lists of :class:`SigPoly`, written
  for clarity and used by the tests as an oracle for the indexed engine;
* :class:`SignatureState`, the indexed engine, and the flat drivers
  :func:`sgb` and :func:`buchberger_sig`.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from . import kernels
from .poly import Polynomial, PolyRing


@dataclass(slots=True)
class SigPoly:
    """Extended sig-poly pair; ``sig`` is ``(index, monomial key)``."""

    poly: Polynomial
    sig: tuple[int, int]
    quo: Polynomial
    stamp: int = -1

    @property
    def index(self) -> int:
        return self.sig[0]


@dataclass(slots=True)
class SPair:
    left: SigPoly  # side carrying the larger multiplied signature
    right: SigPoly
    a: int
    b: int
    sig: tuple[int, int]
    poly: Polynomial
    quo: Polynomial


# ---------------------------------------------------------------------------
# reference implementations (flat integer indices)


def _sig_divides(ring: PolyRing, s: tuple[int, int], t: tuple[int, int]) -> bool:
    return s[0] == t[0] and ring.mono_divides(s[1], t[1])


def make_spair(alpha: SigPoly, beta: SigPoly) -> SPair | None:
    """S-pair of two sig-poly pairs, or ``None`` when it is singular."""
    f, g = alpha.poly, beta.poly
    if not f.monos or not g.monos:
        return None
    ring = f.ring
    lcm = ring.mono_lcm(f.monos[0], g.monos[0])
    a = lcm - f.monos[0]
    b = lcm - g.monos[0]
    sa = (alpha.sig[0], a + alpha.sig[1])
    sb = (beta.sig[0], b + beta.sig[1])
    if sa == sb:
        return None
    if sa < sb:
        alpha, beta, a, b, sa, sb = beta, alpha, b, a, sb, sa
        f, g = g, f
    ca = ring.inv(f.coeffs[0])
    cb = ring.inv(g.coeffs[0])
    poly = f.mul_term(ca, a) - g.mul_term(cb, b)
    quo = alpha.quo.mul_term(ca, a)
    if alpha.sig[0] == beta.sig[0]:
        quo = quo - beta.quo.mul_term(cb, b)
    return SPair(alpha, beta, a, b, sa, poly, quo)


def regular_reduce(alpha: SigPoly, G: Sequence[SigPoly]) -> SigPoly:
    """Top regular reduction; the reducer with the smallest stamp is used."""
    f, h = alpha.poly, alpha.quo
    if not f.monos:
        return SigPoly(f, alpha.sig, h, alpha.stamp)
    ring = f.ring
    reducers = sorted((g for g in G if g.poly.monos), key=lambda g: g.stamp)
    while f.monos:
        lead = f.monos[0]
        for beta in reducers:
            lb = beta.poly.monos[0]
            if not ring.mono_divides(lb, lead):
                continue
            b = lead - lb
            if (beta.sig[0], b + beta.sig[1]) < alpha.sig:
                break
        else:
            break
        c = f.coeffs[0] * ring.inv(beta.poly.coeffs[0]) % ring.p
        f = f - beta.poly.mul_term(c, b)
        if beta.sig[0] == alpha.sig[0]:
            h = h - beta.quo.mul_term(c, b)
    return SigPoly(f, alpha.sig, h, alpha.stamp)


def rewritable(alpha: SigPoly, m: int, G: Sequence[SigPoly]) -> bool:
    """Singular, syzygy and Koszul criteria for ``m * alpha``.

    The Koszul test is applied to the monomial part of the multiplied
    signature, i.e. ``m * lm(quo(alpha))``.
    """
    ring = alpha.poly.ring
    sig = (alpha.sig[0], m + alpha.sig[1])
    for delta in G:
        if delta is alpha:
            continue
        if _sig_divides(ring, delta.sig, sig):
            if delta.stamp > alpha.stamp or not delta.poly.monos:
                return True
        if (
            delta.sig[0] < alpha.sig[0]
            and delta.poly.monos
            and ring.mono_divides(delta.poly.monos[0], sig[1])
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# indexed engine


class SignatureState:
    """Shared G / P / S bookkeeping for signature computations.

    Indices are hashable node ids with an ancestry relation given by
    ``self.anc[node]`` (the set of ancestors including ``node``).  Pairs are
    kept lazily in one heap per node, keyed by the deeper of the two indices,
    so that the minimal signature along any root-to-node path is found by
    walking the path from the root and taking the first non-empty heap.
    """

    def __init__(self, ring: PolyRing, criteria: bool = True, trace: IO[str] | None = None):
        self.ring = ring
        self.criteria = criteria
        self.trace = trace
        self.G: list[SigPoly] = []
        self.parent: dict[int, int | None] = {}
        self.children: dict[int, list[int]] = {}
        self.anc: dict[int, set[int]] = {}
        self.node_poly: dict[int, Polynomial] = {}
        self.heaps: dict[int, list] = {}
        self.S: dict[int, deque] = {}
        self.S_all: dict[int, list[Polynomial]] = {}
        self._pending_seed: set[int] = set()
        self._seq = 0
        guard = ring.guard
        self._lm_index = kernels.DivisorIndex(ring.nvars, guard)
        self._lm_stamp: list[int] = []
        self._sig_index: dict[int, object] = {}
        self._sig_pos: list[int] = []
        self._syz_index: dict[int, object] = {}
        self._nonzero: list[int] = []
        self.last_reduced_sig = None
        self.stats = {
            "pairs_created": 0,
            "pairs_singular": 0,
            "pairs_rewritten": 0,
            "reductions": 0,
            "zero_reductions": 0,
            "seeds": 0,
        }

    # -- tree plumbing ---------------------------------------------------
    def _new_node(self, node: int, parent: int | None, poly: Polynomial) -> None:
        self.parent[node] = parent
        self.children[node] = []
        self.anc[node] = ({node} | self.anc[parent]) if parent is not None else {node}
        if parent is not None:
            self.children[parent].append(node)
        self.node_poly[node] = poly
        self.heaps[node] = []
        self.S[node] = deque()
        self.S_all[node] = []
        guard = self.ring.guard
        self._sig_index[node] = kernels.DivisorIndex(self.ring.nvars, guard)
        self._syz_index[node] = kernels.DivisorIndex(self.ring.nvars, guard)

    def path(self, node: int) -> list[int]:
        """Nodes from the root down to ``node``."""
        out = []
        cur = node
        while cur is not None:
            out.append(cur)
            cur = self.parent[cur]
        out.reverse()
        return out

    def comparable(self, u: int, v: int) -> bool:
        return u in self.anc[v] or v in self.anc[u]

    # -- G ---------------------------------------------------------------
    def _add(self, sp: SigPoly) -> int:
        ring = self.ring
        stamp = len(self.G)
        sp.stamp = stamp
        self.G.append(sp)
        node, smono = sp.sig
        e, _ = ring.info(smono)
        sidx = self._sig_index[node]
        self._sig_pos.append(sidx.add(e, ring.packed(smono)))
        if sp.poly.monos:
            lm = sp.poly.monos[0]
            e2, _ = ring.info(lm)
            self._lm_index.add(e2, ring.packed(lm))
            self._lm_stamp.append(stamp)
            self._nonzero.append(stamp)
            self._make_pairs(stamp)
        else:
            self._syz_index[node].add(e, ring.packed(smono))
        return stamp

    def _make_pairs(self, s: int) -> None:
        ring = self.ring
        G = self.G
        gam = G[s]
        gnode, gsm = gam.sig
        glm = gam.poly.monos[0]
        ganc = self.anc[gnode]
        lcm_of = ring.mono_lcm
        stats = self.stats
        for t in self._nonzero:
            if t == s:
                continue
            beta = G[t]
            bnode, bsm = beta.sig
            if bnode in ganc:
                deeper = gnode
            elif gnode in self.anc[bnode]:
                deeper = bnode
            else:
                continue
            blm = beta.poly.monos[0]
            lcm = lcm_of(glm, blm)
            sa = lcm - glm + gsm
            sb = lcm - blm + bsm
            if gnode == bnode:
                if sa == sb:
                    stats["pairs_singular"] += 1
                    continue
                hi_is_new = sa > sb
            else:
                hi_is_new = deeper == gnode
            if hi_is_new:
                hi, lo, smono = s, t, sa
            else:
                hi, lo, smono = t, s, sb
            if self.criteria and (
                self._rewritable(hi, lcm - G[hi].poly.monos[0])
                or self._rewritable(lo, lcm - G[lo].poly.monos[0])
            ):
                stats["pairs_rewritten"] += 1
                continue
            stats["pairs_created"] += 1
            heapq.heappush(self.heaps[deeper], (smono, 1, s, t, hi, lo, lcm))

    def push_seed(self, node: int) -> None:
        """Queue a fresh reduction of the generator at ``node``."""
        if node in self._pending_seed or not self.node_poly[node].monos:
            return
        self._pending_seed.add(node)
        self._seq += 1
        heapq.heappush(self.heaps[node], (0, 0, self._seq, 0, 0, 0, 0))

    # -- criteria --------------------------------------------------------
    def _rewritable(self, stamp: int, m: int) -> str | None:
        alpha = self.G[stamp]
        node, smono = alpha.sig
        return self._sig_rewritable(node, m + smono, self._sig_pos[stamp] + 1)

    def _sig_rewritable(self, node: int, mono: int, newer_than: int) -> str | None:
        """Criteria for signature ``(node, mono)``; ``newer_than < 0`` skips the singular test."""
        ring = self.ring
        e, _ = ring.info(mono)
        pk = ring.packed(mono)
        if newer_than >= 0 and self._sig_index[node].first(e, pk, newer_than) >= 0:
            return "singular"
        if self._syz_index[node].first(e, pk, 0) >= 0:
            return "syzygy"
        anc = self.anc[node]
        idx = self._lm_index
        j = idx.first(e, pk, 0)
        while j >= 0:
            owner = self.G[self._lm_stamp[j]].sig[0]
            if owner != node and owner in anc:
                return "koszul"
            j = idx.first(e, pk, j + 1)
        return None

    def rewritable(self, alpha: SigPoly, m: int) -> bool:
        return self._rewritable(alpha.stamp, m) is not None

    # -- reduction -------------------------------------------------------
    def regular_reduce(self, sp: SigPoly) -> SigPoly:
        ring = self.ring
        p = ring.p
        cnt = ring.counter
        G = self.G
        info = ring.info
        packed = ring.packed
        axpy = kernels.axpy
        idx = self._lm_index
        lm_stamp = self._lm_stamp
        node, smono = sp.sig
        anc = self.anc[node]
        fm, fc = sp.poly.monos, sp.poly.coeffs
        hm, hc = sp.quo.monos, sp.quo.coeffs
        while fm:
            lead = fm[0]
            e, _ = info(lead)
            pk = packed(lead)
            j = idx.first(e, pk, 0)
            beta = None
            while j >= 0:
                cand = G[lm_stamp[j]]
                bn = cand.sig[0]
                if bn in anc:
                    if bn != node or lead - cand.poly.monos[0] + cand.sig[1] < smono:
                        beta = cand
                        break
                j = idx.first(e, pk, j + 1)
            if beta is None:
                break
            g = beta.poly
            c = fc[0]
            shift = lead - g.monos[0]
            g._check_shift(shift)
            fm, fc, nadd = axpy(fm, fc, 1, g.monos, g.coeffs, 1, shift, p - c, p)
            cnt.mul_count += len(g.monos) - 1
            cnt.addsub_count += nadd
            if beta.sig[0] == node:
                q = beta.quo
                hm, hc, nadd = axpy(hm, hc, 0, q.monos, q.coeffs, 0, shift, p - c, p)
                cnt.mul_count += len(q.monos)
                cnt.addsub_count += nadd
        f = Polynomial(ring, fm, fc)
        h = Polynomial(ring, hm, hc)
        if fm and fc[0] != 1:
            inv = ring.inv(fc[0])
            f = f.scale(inv)
            h = h.scale(inv)
        return SigPoly(f, sp.sig, h)

    def _build_spair(self, hi: int, lo: int, lcm: int) -> SigPoly:
        ring = self.ring
        p = ring.p
        cnt = ring.counter
        A, B = self.G[hi], self.G[lo]
        f, g = A.poly, B.poly
        a = lcm - f.monos[0]
        b = lcm - g.monos[0]
        f._check_shift(a)
        g._check_shift(b)
        am, ac = kernels.mul_term(f.monos, f.coeffs, a, 1, p)
        m, c, nadd = kernels.axpy(am, ac, 1, g.monos, g.coeffs, 1, b, p - 1, p)
        cnt.mul_count += len(g.monos) - 1
        cnt.addsub_count += nadd
        qm, qc = kernels.mul_term(A.quo.monos, A.quo.coeffs, a, 1, p)
        if A.sig[0] == B.sig[0]:
            qm, qc, nadd = kernels.axpy(qm, qc, 0, B.quo.monos, B.quo.coeffs, 0, b, p - 1, p)
            cnt.mul_count += len(B.quo.monos)
            cnt.addsub_count += nadd
        return SigPoly(Polynomial(ring, m, c), (A.sig[0], a + A.sig[1]), Polynomial(ring, qm, qc))

    # -- main step -------------------------------------------------------
    def has_work(self, node: int) -> bool:
        heaps = self.heaps
        return any(heaps[v] for v in self.path(node))

    def _step(self, node: int) -> bool:
        """Handle the minimal-signature item among indices on the path to ``node``.

        Returns ``False`` when there was nothing to do.
        """
        heaps = self.heaps
        for v in self.path(node):
            if heaps[v]:
                item = heapq.heappop(heaps[v])
                self._handle(v, item)
                return True
        return False

    def process_spair(self, node: int) -> bool:
        return self._step(node)

    def _handle(self, node: int, item: tuple) -> None:
        smono, kind = item[0], item[1]
        ring = self.ring
        verdicts = None
        if kind == 0:
            self._pending_seed.discard(node)
            self.stats["seeds"] += 1
            # a seed supersedes older elements at its index, so only the
            # syzygy and Koszul tests apply
            why = self._sig_rewritable(node, 0, -1)
            if why:
                self._log(node, smono, [why], "rewritten", True)
                return
            f = self.node_poly[node]
            sp = SigPoly(f, (node, 0), ring.one())
        else:
            _, _, _, _, hi, lo, lcm = item
            if self.criteria:
                ra = self._rewritable(hi, lcm - self.G[hi].poly.monos[0])
                rb = None if ra else self._rewritable(lo, lcm - self.G[lo].poly.monos[0])
                verdicts = [ra, rb]
                if ra or rb:
                    self.stats["pairs_rewritten"] += 1
                    self._log(node, smono, verdicts, "rewritten")
                    return
            sp = self._build_spair(hi, lo, lcm)
        self.stats["reductions"] += 1
        self.last_reduced_sig = (node, smono)
        gamma = self.regular_reduce(sp)
        if gamma.poly.monos:
            self._add(gamma)
            self._log(node, smono, verdicts, "nonzero", kind == 0)
        else:
            self.stats["zero_reductions"] += 1
            if gamma.quo.monos:
                self._add(gamma)
                q = gamma.quo.monic()
                self.S[node].append(q)
                self.S_all[node].append(q)
            self._log(node, smono, verdicts, "zero", kind == 0)

    def _log(self, node, smono, verdicts, outcome, seed=False) -> None:
        if self.trace is None:
            return
        rec = {
            "index": node,
            "sig": list(self.ring.exponents(smono)),
            "rewritable": verdicts,
            "outcome": outcome,
        }
        if seed:
            rec["seed"] = True
        self.trace.write(json.dumps(rec) + "\n")

    def polys_below(self, node: int) -> list[Polynomial]:
        anc = self.anc[node]
        return [g.poly for g in self.G if g.poly.monos and g.sig[0] in anc]


# ---------------------------------------------------------------------------
# flat drivers


@dataclass
class SigResult:
    basis: list[Polynomial]
    syzygies: dict[int, list[Polynomial]]
    G: list[SigPoly]
    stats: dict[str, int] = field(default_factory=dict)

    def leading_monomials(self) -> set[int]:
        return {g.monos[0] for g in self.basis}


def _run_flat(polys: Sequence[Polynomial], criteria: bool, trace) -> SigResult:
    polys = list(polys)
    if not polys:
        raise ValueError("empty input")
    if any(not f.monos for f in polys):
        raise ValueError("zero input polynomial")
    ring = polys[0].ring
    st = SignatureState(ring, criteria=criteria, trace=trace)
    prev = None
    for i, f in enumerate(polys, start=1):
        f = f.monic()
        st._new_node(i, prev, f)
        st._add(SigPoly(f, (i, 0), ring.one()))
        prev = i
    r = len(polys)
    while st._step(r):
        pass
    return SigResult(
        basis=[g.poly for g in st.G if g.poly.monos],
        syzygies={i: list(st.S_all[i]) for i in range(1, r + 1)},
        G=st.G,
        stats=dict(st.stats),
    )


def sgb(polys: Iterable[Polynomial], trace: IO[str] | None = None) -> SigResult:
    """sGB with the rewritability criterion; records zero-reduction quotients."""
    return _run_flat(list(polys), True, trace)


def buchberger_sig(polys: Iterable[Polynomial], trace: IO[str] | None = None) -> SigResult:
    """Signature Buchberger without any criterion (every regular S-pair is reduced)."""
    return _run_flat(list(polys), False, trace)


__all__ = [
    "SPair",
    "SigPoly",
    "SigResult",
    "SignatureState",
    "buchberger_sig",
    "make_spair",
    "regular_reduce",
    "rewritable",
    "sgb",
]
