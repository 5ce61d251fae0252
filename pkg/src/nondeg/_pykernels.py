"""Pure-Python versions of the arithmetic kernels.

Polynomials are handled here as two parallel lists: monomial keys in strictly
decreasing order and coefficients in ``[1, p)``.  Every function returns fresh
lists and reports how many field additions it performed so that callers can
feed the operation counter.  ``_kernels.pyx`` implements the same functions.
"""

BACKEND = "python"


def axpy(am, ac, ai, bm, bc, bi, shift, c, p):
    """Return ``a[ai:] + c * x^shift * b[bi:]`` as ``(monos, coeffs, nadd)``."""
    rm = []
    rc = []
    push_m = rm.append
    push_c = rc.append
    na = len(am)
    nb = len(bm)
    nadd = 0
    i = ai
    j = bi
    if i < na and j < nb:
        x = am[i]
        y = bm[j] + shift
        while True:
            if x > y:
                push_m(x)
                push_c(ac[i])
                i += 1
                if i == na:
                    break
                x = am[i]
            elif x < y:
                push_m(y)
                push_c(bc[j] * c % p)
                j += 1
                if j == nb:
                    break
                y = bm[j] + shift
            else:
                v = (ac[i] + bc[j] * c) % p
                nadd += 1
                if v:
                    push_m(x)
                    push_c(v)
                i += 1
                j += 1
                if i == na or j == nb:
                    break
                x = am[i]
                y = bm[j] + shift
    if i < na:
        rm.extend(am[i:])
        rc.extend(ac[i:])
    while j < nb:
        push_m(bm[j] + shift)
        push_c(bc[j] * c % p)
        j += 1
    return rm, rc, nadd


def mul_term(bm, bc, shift, c, p):
    if c == 1:
        return [m + shift for m in bm], list(bc)
    return [m + shift for m in bm], [v * c % p for v in bc]


def mul(am, ac, bm, bc, p):
    """Full product; returns ``(monos, coeffs, nadd)``."""
    if len(am) < len(bm):
        am, ac, bm, bc = bm, bc, am, ac
    acc = {}
    nadd = 0
    get = acc.get
    for y, v in zip(bm, bc):
        for x, u in zip(am, ac):
            k = x + y
            old = get(k)
            if old is None:
                acc[k] = u * v
            else:
                acc[k] = old + u * v
                nadd += 1
    keys = sorted((k for k, v in acc.items() if v % p), reverse=True)
    return keys, [acc[k] % p for k in keys], nadd


class DivisorIndex:
    """Append-only list of monomials supporting "first divisor of" queries.

    Entries are packed exponent vectors; ``a`` divides ``b`` iff
    ``((b | G) - a) & G == G`` where ``G`` holds the top bit of every field.
    """

    __slots__ = ("packs", "guard", "alive")

    def __init__(self, nvars, guard):
        self.packs = []
        self.alive = []
        self.guard = guard

    def __len__(self):
        return len(self.packs)

    def add(self, exps, packed):
        self.packs.append(packed)
        self.alive.append(True)
        return len(self.packs) - 1

    def kill(self, idx):
        self.alive[idx] = False

    def first(self, exps, packed, start=0):
        g = self.guard
        t = packed | g
        packs = self.packs
        alive = self.alive
        for i in range(start, len(packs)):
            if (t - packs[i]) & g == g and alive[i]:
                return i
        return -1

    def any_divides(self, exps, packed):
        return self.first(exps, packed, 0) >= 0
