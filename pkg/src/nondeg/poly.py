"""Sparse multivariate polynomials over a prime field ``Z/p``.

A :class:`PolyRing` is the computation context: the characteristic, the
variable names, the monomial order and the arithmetic-operation counter.
Polynomials are immutable :class:`Polynomial` objects holding two parallel
lists (monomial keys in strictly decreasing order, coefficients in
``[1, p)``); the zero polynomial has empty lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import kernels
from .monomial import (
    EXP_BITS,
    MAX_EXPONENT,
    DegRevLex,
    ExponentOverflowError,
    MonomialOrder,
    check_exponents,
    guard_mask,
    make_order,
    pack,
)

DEFAULT_PRIME = 65521


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass
class OpCounter:
    """Field operation tallies; shared by all rings derived from one another."""

    mul_count: int = 0
    addsub_count: int = 0
    inv_count: int = 0

    @property
    def total(self) -> int:
        return self.mul_count + self.addsub_count + self.inv_count

    def snapshot(self) -> dict[str, int]:
        return {
            "mul_count": self.mul_count,
            "addsub_count": self.addsub_count,
            "inv_count": self.inv_count,
            "total": self.total,
        }

    def reset(self) -> None:
        self.mul_count = self.addsub_count = self.inv_count = 0


class PolyRing:
    """``Z/p[x_1..x_n]`` with a fixed monomial order."""

    def __init__(
        self,
        variables: Sequence[str],
        p: int = DEFAULT_PRIME,
        order="drl",
        counter: OpCounter | None = None,
    ):
        if not (2 < p < 2**31) or not is_prime(p):
            raise ValueError(f"characteristic {p} is not an odd prime below 2^31")
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        self.p = p
        self.variables = variables
        self.nvars = len(variables)
        self.order: MonomialOrder = make_order(order, self.nvars)
        self.counter = counter if counter is not None else OpCounter()
        self.guard = guard_mask(self.nvars)
        self._info: dict[int, tuple[tuple[int, ...], int]] = {}
        self._var_index = {v: i for i, v in enumerate(variables)}
        self._fast_packed = isinstance(self.order, DegRevLex)

    # -- identity -------------------------------------------------------
    def same_as(self, other: "PolyRing") -> bool:
        return self is other or (
            self.p == other.p and self.variables == other.variables and self.order == other.order
        )

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={','.join(self.variables)}, order={self.order!r})"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.variables, self.p, make_order(order, self.nvars), self.counter)

    def extend(self, names: Sequence[str], order="drl") -> "PolyRing":
        """Ring with extra trailing variables, sharing this ring's counter."""
        variables = self.variables + tuple(names)
        return PolyRing(variables, self.p, make_order(order, len(variables)), self.counter)

    def var_index(self, name: str) -> int:
        return self._var_index[name]

    # -- monomials ------------------------------------------------------
    def monomial(self, exps: Sequence[int]) -> int:
        return self.order.encode(exps)

    def info(self, key: int) -> tuple[tuple[int, ...], int]:
        """``(exponents, packed)`` for a key, memoised per ring."""
        r = self._info.get(key)
        if r is None:
            exps = self.order.decode(key)
            r = (exps, pack(exps))
            self._info[key] = r
        return r

    def exponents(self, key: int) -> tuple[int, ...]:
        return self.info(key)[0]

    def packed(self, key: int) -> int:
        if self._fast_packed:
            return self.order.packed(key)
        return self.info(key)[1]

    def mono_degree(self, key: int) -> int:
        return self.order.degree(key)

    def mono_mul(self, a: int, b: int) -> int:
        s = self.packed(a) + self.packed(b)
        if s & self.guard:
            raise ExponentOverflowError("monomial product exceeds the exponent bound")
        return a + b

    def mono_divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((self.packed(b) | g) - self.packed(a)) & g == g

    def mono_div(self, a: int, b: int) -> int:
        """``a / b``; raises ``ValueError`` unless ``b`` divides ``a``."""
        if not self.mono_divides(b, a):
            raise ValueError("monomial does not divide")
        return a - b

    def mono_lcm(self, a: int, b: int) -> int:
        ea = self.exponents(a)
        eb = self.exponents(b)
        return self.order.encode([x if x > y else y for x, y in zip(ea, eb)])

    def mono_coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.exponents(a), self.exponents(b)))

    def compare(self, a: int, b: int) -> int:
        return (a > b) - (a < b)

    def mono_str(self, key: int) -> str:
        parts = []
        for name, e in zip(self.variables, self.exponents(key)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- scalars --------------------------------------------------------
    def inv(self, a: int) -> int:
        a %= self.p
        if not a:
            raise ZeroDivisionError("inverse of zero in Z/p")
        self.counter.inv_count += 1
        return pow(a, -1, self.p)

    # -- polynomial constructors ----------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, [], [])

    def one(self) -> "Polynomial":
        return Polynomial(self, [0], [1])

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, [0], [c]) if c else self.zero()

    def gen(self, which) -> "Polynomial":
        i = self._var_index[which] if isinstance(which, str) else which
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, [self.monomial(exps)], [1])

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def term(self, coeff: int, exps: Sequence[int]) -> "Polynomial":
        coeff %= self.p
        if not coeff:
            return self.zero()
        return Polynomial(self, [self.monomial(exps)], [coeff])

    def from_dict(self, terms: Mapping[Sequence[int], int]) -> "Polynomial":
        acc: dict[int, int] = {}
        for exps, c in terms.items():
            k = self.monomial(tuple(exps))
            acc[k] = (acc.get(k, 0) + c) % self.p
        keys = sorted((k for k, c in acc.items() if c), reverse=True)
        return Polynomial(self, keys, [acc[k] for k in keys])

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> "Polynomial":
        acc: dict[int, int] = {}
        for exps, c in terms:
            k = self.monomial(tuple(exps))
            acc[k] = (acc.get(k, 0) + c) % self.p
        keys = sorted((k for k, c in acc.items() if c), reverse=True)
        return Polynomial(self, keys, [acc[k] for k in keys])

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Map ``f`` from another ring by variable name."""
        if f.ring is self:
            return f
        if f.ring.p != self.p:
            raise ValueError("characteristic mismatch")
        target = []
        for name in f.ring.variables:
            target.append(self._var_index.get(name, -1))
        acc = {}
        for k, c in zip(f.monos, f.coeffs):
            src = f.ring.exponents(k)
            exps = [0] * self.nvars
            for e, t in zip(src, target):
                if e:
                    if t < 0:
                        raise ValueError("polynomial uses a variable absent from the target ring")
                    exps[t] = e
            acc[self.monomial(exps)] = c
        keys = sorted(acc, reverse=True)
        return Polynomial(self, keys, [acc[k] for k in keys])

    def format(self, f: "Polynomial") -> str:
        if not f.monos:
            return "0"
        parts = []
        for k, c in zip(f.monos, f.coeffs):
            m = self.mono_str(k)
            if m == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts)


class Polynomial:
    """Immutable sparse polynomial; build through :class:`PolyRing`."""

    __slots__ = ("ring", "monos", "coeffs", "_maxdeg")

    def __init__(self, ring: PolyRing, monos: list, coeffs: list):
        self.ring = ring
        self.monos = monos
        self.coeffs = coeffs
        self._maxdeg = None

    # -- basic accessors -------------------------------------------------
    def __bool__(self):
        return bool(self.monos)

    def is_zero(self) -> bool:
        return not self.monos

    def __len__(self):
        return len(self.monos)

    @property
    def lm(self) -> int:
        return self.monos[0]

    @property
    def lc(self) -> int:
        return self.coeffs[0]

    def is_constant(self) -> bool:
        return not self.monos or (len(self.monos) == 1 and self.monos[0] == 0)

    def degree(self) -> int:
        """Maximal total degree of a term (-1 for zero)."""
        if self._maxdeg is None:
            deg = self.ring.order.degree
            self._maxdeg = max((deg(k) for k in self.monos), default=-1)
        return self._maxdeg

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        ex = self.ring.exponents
        return [(ex(k), c) for k, c in zip(self.monos, self.coeffs)]

    def variables_used(self) -> set[int]:
        used = set()
        for exps, _ in self.terms():
            used.update(i for i, e in enumerate(exps) if e)
        return used

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ring.same_as(other.ring)
            and self.monos == other.monos
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((tuple(self.monos), tuple(self.coeffs)))

    def __repr__(self):
        return f"Polynomial({self.ring.format(self)!r})"

    def __str__(self):
        return self.ring.format(self)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and not self.ring.same_as(other.ring):
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        m, c, nadd = kernels.axpy(self.monos, self.coeffs, 0, other.monos, other.coeffs, 0, 0, 1, self.ring.p)
        self.ring.counter.addsub_count += nadd
        return Polynomial(self.ring, m, c)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        m, c, nadd = kernels.axpy(self.monos, self.coeffs, 0, other.monos, other.coeffs, 0, 0, p - 1, p)
        self.ring.counter.addsub_count += nadd
        return Polynomial(self.ring, m, c)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, list(self.monos), [p - c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if not self.monos or not other.monos:
            return self.ring.zero()
        self._check_product(self.degree(), other)
        m, c, nadd = kernels.mul(self.monos, self.coeffs, other.monos, other.coeffs, self.ring.p)
        cnt = self.ring.counter
        cnt.mul_count += len(self.monos) * len(other.monos)
        cnt.addsub_count += nadd
        return Polynomial(self.ring, m, c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        if c == 1:
            return self
        self.ring.counter.mul_count += len(self.coeffs)
        return Polynomial(self.ring, list(self.monos), [v * c % p for v in self.coeffs])

    def mul_term(self, c: int, mono: int) -> "Polynomial":
        """``c * x^mono * self``."""
        ring = self.ring
        c %= ring.p
        if not c or not self.monos:
            return ring.zero()
        self._check_shift(mono)
        m, cs = kernels.mul_term(self.monos, self.coeffs, mono, c, ring.p)
        if c != 1:
            ring.counter.mul_count += len(cs)
        return Polynomial(ring, m, cs)

    def monic(self) -> "Polynomial":
        if not self.monos or self.coeffs[0] == 1:
            return self
        return self.scale(self.ring.inv(self.coeffs[0]))

    def _check_shift(self, mono: int) -> None:
        if self.ring.mono_degree(mono) + self.degree() > MAX_EXPONENT:
            # the cheap degree bound failed; fall back to the exact check
            for k in self.monos:
                self.ring.mono_mul(k, mono)

    def _check_product(self, deg: int, other: "Polynomial") -> None:
        if deg + other.degree() > MAX_EXPONENT:
            for a in self.monos:
                for b in other.monos:
                    self.ring.mono_mul(a, b)

    # -- calculus / evaluation --------------------------------------------
    def derivative(self, var) -> "Polynomial":
        ring = self.ring
        i = ring.var_index(var) if isinstance(var, str) else var
        terms = []
        for exps, c in self.terms():
            e = exps[i]
            if e and (e * c) % ring.p:
                new = list(exps)
                new[i] -= 1
                terms.append((new, e * c))
        return ring.from_terms(terms)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for exps, c in self.terms():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def substitute(self, mapping: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variables (by index) with polynomials of the same ring."""
        ring = self.ring
        result = ring.zero()
        for exps, c in self.terms():
            t = ring.constant(c)
            rest = list(exps)
            for i, sub in mapping.items():
                if rest[i]:
                    t = t * sub ** rest[i]
                    rest[i] = 0
            result = result + t * Polynomial(ring, [ring.monomial(rest)], [1])
        return result


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Full remainder of ``f`` by ``basis``; the earliest listed reducer wins."""
    ring = f.ring
    basis = [g for g in basis if g.monos]
    if not f.monos or not basis:
        return f
    index = kernels.DivisorIndex(ring.nvars, ring.guard)
    info = ring.info
    for g in basis:
        k = g.monos[0]
        e, pk = info(k)
        index.add(e, ring.packed(k))
    return _reduce_with_index(f, basis, index, [ring.inv(g.coeffs[0]) if g.coeffs[0] != 1 else 1 for g in basis])


def _reduce_with_index(f, basis, index, inv_lcs, full=True):
    ring = f.ring
    p = ring.p
    cnt = ring.counter
    info = ring.info
    packed = ring.packed
    axpy = kernels.axpy
    fm, fc = f.monos, f.coeffs
    start = 0
    rm: list = []
    rc: list = []
    while start < len(fm):
        lead = fm[start]
        j = index.first(info(lead)[0], packed(lead), 0)
        if j < 0:
            if not full:
                break
            rm.append(lead)
            rc.append(fc[start])
            start += 1
            continue
        g = basis[j]
        c = fc[start]
        if inv_lcs[j] != 1:
            c = c * inv_lcs[j] % p
            cnt.mul_count += 1
        shift = lead - g.monos[0]
        g._check_shift(shift)
        fm, fc, nadd = axpy(fm, fc, start + 1, g.monos, g.coeffs, 1, shift, p - c, p)
        cnt.mul_count += len(g.monos) - 1
        cnt.addsub_count += nadd
        start = 0
    if full:
        rm.extend(fm[start:])
        rc.extend(fc[start:])
        return Polynomial(ring, rm, rc)
    return Polynomial(ring, fm[start:], fc[start:])


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises ``ValueError`` otherwise."""
    if not g.monos:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    p = ring.p
    inv = ring.inv(g.coeffs[0])
    qm: list = []
    qc: list = []
    fm, fc = f.monos, f.coeffs
    lg = g.monos[0]
    while fm:
        lead = fm[0]
        if not ring.mono_divides(lg, lead):
            raise ValueError("polynomial division is not exact")
        c = fc[0] * inv % p
        shift = lead - lg
        qm.append(shift)
        qc.append(c)
        fm, fc, nadd = kernels.axpy(fm, fc, 1, g.monos, g.coeffs, 1, shift, p - c, p)
        ring.counter.mul_count += len(g.monos)
        ring.counter.addsub_count += nadd
    return Polynomial(ring, qm, qc)


__all__ = [
    "DEFAULT_PRIME",
    "EXP_BITS",
    "MAX_EXPONENT",
    "ExponentOverflowError",
    "OpCounter",
    "PolyRing",
    "Polynomial",
    "check_exponents",
    "exact_divide",
    "is_prime",
    "normal_form",
]
