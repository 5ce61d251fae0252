# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the arithmetic kernels in ``_pykernels``.

Monomial keys stay Python ints (they may exceed 64 bits); coefficients are
handled as C integers.  ``DivisorIndex`` keeps exponent vectors in a flat C
array so the divisibility scan never touches Python objects.
"""

from cpython.list cimport PyList_New, PyList_SET_ITEM, PyList_GET_ITEM, PyList_GET_SIZE
from cpython.object cimport PyObject_RichCompareBool, Py_GT, Py_LT
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport malloc, realloc, free
from libc.stdint cimport int64_t, uint16_t, uint8_t

BACKEND = "cython"


def axpy(list am, list ac, Py_ssize_t ai, list bm, list bc, Py_ssize_t bi, shift, int64_t c, int64_t p):
    """Return ``a[ai:] + c * x^shift * b[bi:]`` as ``(monos, coeffs, nadd)``."""
    cdef Py_ssize_t na = PyList_GET_SIZE(am), nb = PyList_GET_SIZE(bm)
    cdef Py_ssize_t i = ai, j = bi, k = 0, cap
    cdef int64_t v
    cdef long nadd = 0
    cdef object x, y, o
    cdef bint zero_shift = shift == 0
    if i > na:
        i = na
    if j > nb:
        j = nb
    cap = (na - i) + (nb - j)
    cdef list rm = PyList_New(cap)
    cdef list rc = PyList_New(cap)
    # PyList_New leaves NULL slots; every slot below k is filled, the rest
    # are cut off by _fill_and_cut before the lists are returned
    if i < na and j < nb:
        x = <object>PyList_GET_ITEM(am, i)
        y = <object>PyList_GET_ITEM(bm, j)
        if not zero_shift:
            y = y + shift
        while True:
            if PyObject_RichCompareBool(x, y, Py_GT):
                Py_INCREF(x)
                PyList_SET_ITEM(rm, k, x)
                o = <object>PyList_GET_ITEM(ac, i)
                Py_INCREF(o)
                PyList_SET_ITEM(rc, k, o)
                k += 1
                i += 1
                if i == na:
                    break
                x = <object>PyList_GET_ITEM(am, i)
            elif PyObject_RichCompareBool(x, y, Py_LT):
                v = (<int64_t>(<object>PyList_GET_ITEM(bc, j))) * c % p
                Py_INCREF(y)
                PyList_SET_ITEM(rm, k, y)
                o = v
                Py_INCREF(o)
                PyList_SET_ITEM(rc, k, o)
                k += 1
                j += 1
                if j == nb:
                    break
                y = <object>PyList_GET_ITEM(bm, j)
                if not zero_shift:
                    y = y + shift
            else:
                v = ((<int64_t>(<object>PyList_GET_ITEM(ac, i))) + (<int64_t>(<object>PyList_GET_ITEM(bc, j))) * c) % p
                nadd += 1
                if v:
                    Py_INCREF(x)
                    PyList_SET_ITEM(rm, k, x)
                    o = v
                    Py_INCREF(o)
                    PyList_SET_ITEM(rc, k, o)
                    k += 1
                i += 1
                j += 1
                if i == na or j == nb:
                    break
                x = <object>PyList_GET_ITEM(am, i)
                y = <object>PyList_GET_ITEM(bm, j)
                if not zero_shift:
                    y = y + shift
    while i < na:
        o = <object>PyList_GET_ITEM(am, i)
        Py_INCREF(o)
        PyList_SET_ITEM(rm, k, o)
        o = <object>PyList_GET_ITEM(ac, i)
        Py_INCREF(o)
        PyList_SET_ITEM(rc, k, o)
        k += 1
        i += 1
    while j < nb:
        o = <object>PyList_GET_ITEM(bm, j)
        if not zero_shift:
            o = o + shift
        Py_INCREF(o)
        PyList_SET_ITEM(rm, k, o)
        v = (<int64_t>(<object>PyList_GET_ITEM(bc, j))) * c % p
        o = v
        Py_INCREF(o)
        PyList_SET_ITEM(rc, k, o)
        k += 1
        j += 1
    if k < cap:
        _fill_and_cut(rm, rc, k, cap)
    return rm, rc, nadd


cdef void _fill_and_cut(list rm, list rc, Py_ssize_t k, Py_ssize_t cap):
    # NULL slots must become real objects before the list is resized
    cdef Py_ssize_t t
    for t in range(k, cap):
        Py_INCREF(None)
        PyList_SET_ITEM(rm, t, None)
        Py_INCREF(None)
        PyList_SET_ITEM(rc, t, None)
    del rm[k:]
    del rc[k:]


def mul_term(list bm, list bc, shift, int64_t c, int64_t p):
    cdef Py_ssize_t n = PyList_GET_SIZE(bm), j
    cdef list rm, rc
    cdef object o
    if shift == 0:
        rm = list(bm)
    else:
        rm = [m + shift for m in bm]
    if c == 1:
        return rm, list(bc)
    rc = PyList_New(n)
    for j in range(n):
        o = (<int64_t>(<object>PyList_GET_ITEM(bc, j))) * c % p
        Py_INCREF(o)
        PyList_SET_ITEM(rc, j, o)
    return rm, rc


def mul(list am, list ac, list bm, list bc, int64_t p):
    """Full product; returns ``(monos, coeffs, nadd)``."""
    if len(am) < len(bm):
        am, ac, bm, bc = bm, bc, am, ac
    cdef dict acc = {}
    cdef long nadd = 0
    cdef Py_ssize_t na = len(am), nb = len(bm), i, j
    cdef int64_t v, w
    cdef object y, k, old
    cdef int64_t *acoef = <int64_t *>malloc(max(na, 1) * sizeof(int64_t))
    try:
        for i in range(na):
            acoef[i] = <int64_t>(<object>PyList_GET_ITEM(ac, i))
        for j in range(nb):
            y = <object>PyList_GET_ITEM(bm, j)
            v = <int64_t>(<object>PyList_GET_ITEM(bc, j))
            for i in range(na):
                k = <object>PyList_GET_ITEM(am, i) + y
                w = acoef[i] * v % p
                old = acc.get(k)
                if old is None:
                    acc[k] = w
                else:
                    acc[k] = (<int64_t>old + w) % p
                    nadd += 1
    finally:
        free(acoef)
    keys = sorted([k for k, c in acc.items() if c], reverse=True)
    return keys, [acc[k] for k in keys], nadd


cdef class DivisorIndex:
    """Append-only list of monomials supporting "first divisor of" queries."""

    cdef uint16_t *exps
    cdef uint8_t *alive_flags
    cdef Py_ssize_t n, cap
    cdef int nvars
    cdef object guard

    def __cinit__(self, int nvars, guard):
        self.nvars = nvars
        self.guard = guard
        self.n = 0
        self.cap = 16
        self.exps = <uint16_t *>malloc(self.cap * max(nvars, 1) * sizeof(uint16_t))
        self.alive_flags = <uint8_t *>malloc(self.cap)
        if self.exps == NULL or self.alive_flags == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.exps)
        free(self.alive_flags)

    def __len__(self):
        return self.n

    @property
    def alive(self):
        return [bool(self.alive_flags[i]) for i in range(self.n)]

    cdef void _grow(self) except *:
        cdef Py_ssize_t cap = self.cap * 2
        cdef uint16_t *e = <uint16_t *>realloc(self.exps, cap * max(self.nvars, 1) * sizeof(uint16_t))
        if e == NULL:
            raise MemoryError()
        self.exps = e
        cdef uint8_t *a = <uint8_t *>realloc(self.alive_flags, cap)
        if a == NULL:
            raise MemoryError()
        self.alive_flags = a
        self.cap = cap

    def add(self, exps, packed):
        if self.n == self.cap:
            self._grow()
        cdef uint16_t *row = self.exps + self.n * self.nvars
        cdef int t
        for t in range(self.nvars):
            row[t] = exps[t]
        self.alive_flags[self.n] = 1
        self.n += 1
        return self.n - 1

    def kill(self, Py_ssize_t idx):
        self.alive_flags[idx] = 0

    def first(self, exps, packed, Py_ssize_t start=0):
        cdef int nv = self.nvars, t
        cdef uint16_t q[256]
        cdef uint16_t *qq = q
        cdef uint16_t *row
        cdef Py_ssize_t i
        if nv > 256:
            qq = <uint16_t *>malloc(nv * sizeof(uint16_t))
        try:
            for t in range(nv):
                qq[t] = exps[t]
            for i in range(start, self.n):
                if not self.alive_flags[i]:
                    continue
                row = self.exps + i * nv
                for t in range(nv):
                    if row[t] > qq[t]:
                        break
                else:
                    return i
            return -1
        finally:
            if qq != q:
                free(qq)

    def any_divides(self, exps, packed):
        return self.first(exps, packed, 0) >= 0
