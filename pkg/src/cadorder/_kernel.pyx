# cython: language_level=3
"""Sparse term-map kernels, compiled edition.

Behavioural twin of ``cadorder._kernel_py`` (same data model: exponent tuple
of length n -> nonzero int).  Coefficients stay arbitrary-precision Python
ints; the speedup comes from C-level loops over the exponent tuples.  The two
modules are kept in lockstep by tests/test_backend.py.
"""

from math import gcd as _int_gcd

IMPL = "cython"


cdef inline long _tsum(tuple e):
    cdef Py_ssize_t i
    cdef long s = 0
    for i in range(len(e)):
        s += <long> e[i]
    return s


cdef inline tuple _tadd(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = (<long> ea[i]) + (<long> eb[i])
    return tuple(out)


cdef inline object _tsub_checked(tuple ea, tuple eb):
    # None when any component would go negative
    cdef Py_ssize_t i, n = len(ea)
    cdef long x
    cdef list out = [None] * n
    for i in range(n):
        x = (<long> ea[i]) - (<long> eb[i])
        if x < 0:
            return None
        out[i] = x
    return tuple(out)


def grlex_key(e):
    """Sort key putting the graded-lex largest monomial last."""
    return (_tsum(e), e)


def kleading(dict a):
    """Return (monomial, coefficient) of the graded-lex leading term of a."""
    cdef tuple best = None
    cdef tuple e
    cdef long best_sum = 0
    cdef long s
    for e in a:
        s = _tsum(e)
        if best is None or s > best_sum or (s == best_sum and e > best):
            best, best_sum = e, s
    if best is None:
        raise ValueError("leading term of the zero polynomial")
    return best, a[best]


def kadd(dict a, dict b):
    cdef dict out = dict(a)
    cdef tuple e
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def ksub(dict a, dict b):
    cdef dict out = dict(a)
    cdef tuple e
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def kneg(dict a):
    cdef dict out = {}
    cdef tuple e
    for e, c in a.items():
        out[e] = -c
    return out


def kscale(dict a, c):
    if c == 0:
        return {}
    cdef dict out = {}
    cdef tuple e
    for e, v in a.items():
        out[e] = c * v
    return out


def kmul(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple ea, eb, k
    for eb, cb in b.items():
        for ea, ca in a.items():
            k = _tadd(ea, eb)
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def kterm_mul(dict a, tuple mono, c):
    """Multiply a by the single term c * X^mono (c may be negative, not 0)."""
    if c == 0:
        return {}
    cdef dict out = {}
    cdef tuple e
    for e, v in a.items():
        out[_tadd(e, mono)] = c * v
    return out


def kderiv(dict a, Py_ssize_t v):
    cdef dict out = {}
    cdef tuple e
    for e, c in a.items():
        k = e[v]
        if k:
            out[e[:v] + (k - 1,) + e[v + 1:]] = c * k
    return out


def kint_content(dict a):
    """Positive gcd of all integer coefficients (0 for the zero polynomial)."""
    g = 0
    for c in a.values():
        g = _int_gcd(g, c)
        if g == 1:
            return 1
    return g


def kexact_div(dict a, dict b):
    """Quotient dict of the exact division a / b, or None when b does not
    divide a over the integers."""
    cdef dict rem, quot
    cdef tuple ea, eb, e2, k
    cdef object em
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    eb, cb = kleading(b)
    rem = dict(a)
    quot = {}
    while rem:
        ea, ca = kleading(rem)
        em = _tsub_checked(ea, eb)
        if em is None:
            return None
        q, r = divmod(ca, cb)
        if r:
            return None
        quot[em] = q
        for e2, c2 in b.items():
            k = _tadd(<tuple> em, e2)
            s = rem.get(k, 0) - q * c2
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quot
