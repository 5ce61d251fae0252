"""Monomial orders over packed integer keys.

A monomial is stored as a single nonnegative Python ``int`` (its *key*).  Every
order in this module is a linear map from exponent vectors to integers such
that integer comparison of keys coincides with the monomial order.  Linearity
gives the two properties the rest of the package leans on:

* ``key(a * b) == key(a) + key(b)`` so multiplying a polynomial by a monomial
  is a shift of its keys, and
* ``key(b / a) == key(b) - key(a)`` whenever ``a`` divides ``b``.

Divisibility cannot be read off a key directly, so orders also provide
``decode`` back to the exponent vector.  The ring caches a *packed* form
(``sum(e_i << (EXP_BITS * i))``) on which divisibility is a three-operation
guard-bit test.
"""

from __future__ import annotations

from typing import Sequence

EXP_BITS = 17
MAX_EXPONENT = (1 << 16) - 1
DEG_BITS = 24
_FIELD_MASK = (1 << EXP_BITS) - 1


class ExponentOverflowError(OverflowError):
    """An exponent left the representable range ``[0, 2**16)``."""


def check_exponents(exps: Sequence[int]) -> None:
    for e in exps:
        if e < 0 or e > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent {e} outside [0, {MAX_EXPONENT}]")


def pack(exps: Sequence[int]) -> int:
    out = 0
    for i, e in enumerate(exps):
        out |= e << (EXP_BITS * i)
    return out


def guard_mask(nvars: int) -> int:
    g = 0
    for i in range(nvars):
        g |= 1 << (EXP_BITS * i + EXP_BITS - 1)
    return g


class MonomialOrder:
    """Base class; subclasses fill in ``weights`` and ``decode``."""

    kind = "abstract"

    def __init__(self, nvars: int):
        if nvars < 0:
            raise ValueError("negative variable count")
        self.nvars = nvars
        self.weights: tuple[int, ...] = ()

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        check_exponents(exps)
        return sum(e * w for e, w in zip(exps, self.weights) if e)

    def decode(self, key: int) -> tuple[int, ...]:
        raise NotImplementedError

    def degree(self, key: int) -> int:
        return sum(self.decode(key))

    def __eq__(self, other):
        return type(self) is type(other) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())

    def describe(self) -> tuple:
        return (self.kind, self.nvars)

    def __repr__(self):
        return f"{type(self).__name__}{self.describe()[1:]}"


class GroupedOrder(MonomialOrder):
    """Product of degree-reverse-lexicographic orders on variable groups.

    ``groups`` lists index groups from most to least significant.  Inside a
    group, monomials compare by total degree and ties are broken
    reverse-lexicographically (the exponent of the last variable decides
    first, smaller exponent wins).
    """

    kind = "grouped"

    def __init__(self, nvars: int, groups: Sequence[Sequence[int]]):
        super().__init__(nvars)
        seen = sorted(v for g in groups for v in g)
        if seen != list(range(nvars)):
            raise ValueError("groups must partition the variables")
        self.groups = tuple(tuple(g) for g in groups)
        # least significant group sits at bit offset 0
        self._layout = []  # (offset, low_bits, group)
        offset = 0
        for g in reversed(self.groups):
            low_bits = EXP_BITS * len(g)
            self._layout.append((offset, low_bits, g))
            offset += low_bits + DEG_BITS
        self._layout.reverse()
        weights = [0] * nvars
        for off, low_bits, g in self._layout:
            for j, v in enumerate(g):
                weights[v] = ((1 << low_bits) - (1 << (EXP_BITS * j))) << off
        self.weights = tuple(weights)

    def decode(self, key: int) -> tuple[int, ...]:
        exps = [0] * self.nvars
        for off, low_bits, g in self._layout:
            chunk = (key >> off) & ((1 << (low_bits + DEG_BITS)) - 1)
            deg = (chunk + (1 << low_bits) - 1) >> low_bits
            low = (deg << low_bits) - chunk
            for v in g:
                exps[v] = low & _FIELD_MASK
                low >>= EXP_BITS
        return tuple(exps)

    def degree(self, key: int) -> int:
        total = 0
        for off, low_bits, _ in self._layout:
            chunk = (key >> off) & ((1 << (low_bits + DEG_BITS)) - 1)
            total += (chunk + (1 << low_bits) - 1) >> low_bits
        return total

    def describe(self) -> tuple:
        return (self.kind, self.nvars, self.groups)


class DegRevLex(GroupedOrder):
    kind = "drl"

    def __init__(self, nvars: int):
        super().__init__(nvars, [range(nvars)])
        self._low_bits = EXP_BITS * nvars
        self._round = (1 << self._low_bits) - 1

    def decode(self, key: int) -> tuple[int, ...]:
        low = (((key + self._round) >> self._low_bits) << self._low_bits) - key
        out = []
        for _ in range(self.nvars):
            out.append(low & _FIELD_MASK)
            low >>= EXP_BITS
        return tuple(out)

    def degree(self, key: int) -> int:
        return (key + self._round) >> self._low_bits

    def packed(self, key: int) -> int:
        # the low part of a DRL key already is the packed exponent vector
        return (((key + self._round) >> self._low_bits) << self._low_bits) - key

    def describe(self) -> tuple:
        return (self.kind, self.nvars)


class BlockOrder(GroupedOrder):
    """Elimination order for the last ``k`` variables.

    The trailing block dominates; each block is ordered by DegRevLex.
    """

    kind = "block"

    def __init__(self, nvars: int, k: int):
        if not 0 < k <= nvars:
            raise ValueError("block size must be in [1, nvars]")
        super().__init__(nvars, [range(nvars - k, nvars), range(nvars - k)] if k < nvars else [range(nvars)])
        self.k = k

    def describe(self) -> tuple:
        return (self.kind, self.nvars, self.k)


class Lex(MonomialOrder):
    """Lexicographic order with ``x_0 > x_1 > ...``."""

    kind = "lex"

    def __init__(self, nvars: int):
        super().__init__(nvars)
        self.weights = tuple(1 << (EXP_BITS * (nvars - 1 - i)) for i in range(nvars))

    def decode(self, key: int) -> tuple[int, ...]:
        out = [0] * self.nvars
        for i in range(self.nvars - 1, -1, -1):
            out[i] = key & _FIELD_MASK
            key >>= EXP_BITS
        return tuple(out)


def make_order(spec, nvars: int) -> MonomialOrder:
    """Build an order from ``"drl"``, ``"lex"``, ``("block", k)`` or an order."""
    if isinstance(spec, MonomialOrder):
        if spec.nvars != nvars:
            raise ValueError("order variable count mismatch")
        return spec
    if spec in ("drl", "degrevlex", None):
        return DegRevLex(nvars)
    if spec == "lex":
        return Lex(nvars)
    if isinstance(spec, tuple) and spec[0] == "block":
        return BlockOrder(nvars, spec[1])
    raise ValueError(f"unknown monomial order {spec!r}")
