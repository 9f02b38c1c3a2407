# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-combination kernels; same contracts as ``pure.py``."""


cdef inline void _acc(dict out, object e, object c):
    prev = out.get(e)
    if prev is None:
        out[e] = c
    else:
        prev = prev + c
        if prev:
            out[e] = prev
        else:
            del out[e]


cdef tuple _tadd(tuple ea, tuple eb):
    cdef Py_ssize_t n = len(ea)
    cdef Py_ssize_t i
    cdef list parts = [0] * n
    for i in range(n):
        parts[i] = ea[i] + eb[i]
    return tuple(parts)


def term_mul(dict a, dict b):
    """Multiply two exponent-dict polynomials ``{exp tuple: coeff}``."""
    cdef dict out = {}
    cdef dict big = a
    cdef dict small = b
    if len(a) < len(b):
        big, small = b, a
    for eb, cb in small.items():
        for ea, ca in big.items():
            _acc(out, _tadd(<tuple> ea, <tuple> eb), ca * cb)
    return out


def add_scaled(dict acc, dict terms, object coeff, object shift=None):
    """In place ``acc += coeff * x^shift * terms``; returns ``acc``."""
    cdef tuple sh
    if shift is None:
        for e, c in terms.items():
            _acc(acc, e, coeff * c)
    else:
        sh = <tuple> shift
        for e, c in terms.items():
            _acc(acc, _tadd(<tuple> e, sh), coeff * c)
    return acc


def bilinear(dict a, dict b, dict table):
    """Structure-constant product of coordinate dicts."""
    cdef dict out = {}
    for i, ca in a.items():
        for j, cb in b.items():
            entries = table.get((i, j))
            if entries is None:
                continue
            cab = ca * cb
            for pair in <tuple> entries:
                _acc(out, (<tuple> pair)[0], cab * (<tuple> pair)[1])
    return out
