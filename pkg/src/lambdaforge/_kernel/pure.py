"""Pure-Python term-combination kernels.

These three loops carry almost all of the arithmetic load of the package:
polynomial products, scaled accumulation during symmetric-function
reductions, and structure-constant (wedge) products.  The compiled twin in
``_native.pyx`` implements the same contracts.
"""

from operator import add as _add


def term_mul(a, b):
    """Multiply two exponent-dict polynomials ``{exp tuple: coeff}``.

    Exponent tuples must all have equal length.  Coefficients may be any
    exact scalar with ``*``, ``+`` and truthiness (int, Fraction, mpq).
    """
    if len(a) < len(b):
        a, b = b, a
    out = {}
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(map(_add, ea, eb))
            c = ca * cb
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                prev = prev + c
                if prev:
                    out[e] = prev
                else:
                    del out[e]
    return out


def add_scaled(acc, terms, coeff, shift=None):
    """In place ``acc += coeff * x^shift * terms``; returns ``acc``.

    ``coeff`` must be nonzero; ``shift`` is an exponent tuple or None.
    """
    if shift is None:
        for e, c in terms.items():
            prev = acc.get(e)
            if prev is None:
                acc[e] = coeff * c
            else:
                prev = prev + coeff * c
                if prev:
                    acc[e] = prev
                else:
                    del acc[e]
    else:
        for e, c in terms.items():
            e = tuple(map(_add, e, shift))
            prev = acc.get(e)
            if prev is None:
                acc[e] = coeff * c
            else:
                prev = prev + coeff * c
                if prev:
                    acc[e] = prev
                else:
                    del acc[e]
    return acc


def bilinear(a, b, table):
    """Structure-constant product of coordinate dicts.

    ``a`` and ``b`` map basis id -> coeff; ``table`` maps an id pair to a
    tuple of ``(result id, scalar)`` entries.  Pairs absent from the table
    multiply to zero.
    """
    out = {}
    for i, ca in a.items():
        for j, cb in b.items():
            entries = table.get((i, j))
            if entries is None:
                continue
            cab = ca * cb
            for k, s in entries:
                c = cab * s
                prev = out.get(k)
                if prev is None:
                    out[k] = c
                else:
                    prev = prev + c
                    if prev:
                        out[k] = prev
                    else:
                        del out[k]
    return out
