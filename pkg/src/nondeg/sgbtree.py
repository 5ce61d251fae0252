"""The sGB tree: incremental signature Gröbner bases over a tree of generators.

Each node holds a polynomial; the ideal ``I_{<nu}`` is generated by the
polynomials of the strict ancestors of ``nu``.  All nodes share one set of
sig-poly pairs, one pair queue and per-node syzygy sets, so that work done for
a common prefix of two branches is done once.

Inserting a node on an edge enlarges ``I_{<mu}`` for every node ``mu`` below
it.  Elements already computed at those indices stay valid, but they were
reduced against a smaller ideal, so the generator of each such node is queued
again (a *seed*) the next time a path through it is processed.  Because the
seed is the newest element of signature ``(mu, 1)``, the singular criterion
retires every older pair at that index and the computation of index ``mu``
restarts against the enlarged ideal.
"""

from __future__ import annotations

import json
from typing import IO

from .poly import Polynomial, PolyRing
from .signature import SignatureState, SigPoly


class SgbTree(SignatureState):
    def __init__(self, ring: PolyRing, trace: IO[str] | None = None):
        super().__init__(ring, criteria=True, trace=trace)
        self.root: int | None = None
        self._stale: set[int] = set()
        self.inserted: list[int] = []

    # -- structure -------------------------------------------------------
    @property
    def labels(self) -> list[int]:
        return list(self.inserted)

    def _check(self, node: int) -> None:
        if node not in self.parent:
            raise KeyError(f"no node labelled {node}")

    def subtree(self, node: int) -> list[int]:
        out = [node]
        i = 0
        while i < len(out):
            out.extend(self.children[out[i]])
            i += 1
        return out

    def leq(self, u: int, v: int) -> bool:
        """``u <=_T v``: ``u`` lies on the path from the root to ``v``."""
        return u in self.anc[v]

    def insert_node(self, f: Polynomial, position: tuple | None = None) -> int:
        """Insert ``f`` and return the new label.

        ``position`` is ``None`` for the first node, ``("child", nu)`` for a
        new leaf under ``nu``, or ``("above", nu)`` for the edge just above
        ``nu`` (``nu`` may be the root).
        """
        ring = self.ring
        f = ring.convert(f).monic()
        label = (max(self.inserted) + 1) if self.inserted else 1
        if position is None:
            if self.root is not None:
                raise ValueError("tree is not empty; give a position")
            self._new_node(label, None, f)
            self.root = label
        else:
            kind, nu = position
            self._check(nu)
            if kind in ("child", "leaf"):
                self._new_node(label, nu, f)
            elif kind == "above":
                par = self.parent[nu]
                self._new_node(label, par, f)
                if par is not None:
                    self.children[par].remove(nu)
                else:
                    self.root = label
                self.children[label].append(nu)
                self.parent[nu] = label
                for v in self.subtree(nu):
                    self.anc[v].add(label)
                    self._stale.add(v)
            else:
                raise ValueError(f"unknown position {kind!r}")
        self.inserted.append(label)
        self._add(SigPoly(f, (label, 0), ring.one()))
        return label

    def _refresh(self, nu: int) -> None:
        for v in self.path(nu):
            if v in self._stale:
                self._stale.discard(v)
                self.push_seed(v)

    # -- queries ---------------------------------------------------------
    def process_spair(self, nu: int) -> bool:
        """Process the minimal pair with both indices on the path to ``nu``."""
        self._check(nu)
        self._refresh(nu)
        return self._step(nu)

    def basis(self, nu: int) -> list[Polynomial]:
        """Gröbner basis of the ideal of the polynomials on the path to ``nu``."""
        self._check(nu)
        self._refresh(nu)
        while self._step(nu):
            pass
        return self.polys_below(nu)

    def get_syzygy(self, nu: int) -> Polynomial:
        """An element of ``I_{<nu} : poly(nu)``; zero once the quotient is exhausted."""
        self._check(nu)
        self._refresh(nu)
        S = self.S[nu]
        while not S and self._step(nu):
            pass
        if S:
            return S.popleft()
        return self.ring.zero()

    # -- inspection ------------------------------------------------------
    def dump(self) -> dict:
        ring = self.ring
        nodes = []
        for v in self.inserted:
            nodes.append(
                {
                    "label": v,
                    "parent": self.parent[v],
                    "poly": ring.format(self.node_poly[v]),
                    "syzygies_pending": len(self.S[v]),
                    "syzygies_found": len(self.S_all[v]),
                    "pairs_pending": len(self.heaps[v]),
                    "stale": v in self._stale,
                }
            )
        return {"root": self.root, "nodes": nodes, "G": len(self.G), "stats": dict(self.stats)}

    def dump_json(self) -> str:
        return json.dumps(self.dump(), indent=2, sort_keys=True)


__all__ = ["SgbTree"]
