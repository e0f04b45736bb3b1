"""Counting distinct real roots of univariate integer polynomials.

Sturm chains are built fraction-free: each new entry is the negated
pseudo-remainder of the previous two, rescaled so the implicit multiplier is
positive (otherwise pseudo-division by a negative leading coefficient would
corrupt the sign sequence), then divided by its positive integer content to
keep coefficients small.  The number of distinct real roots is the drop in
sign variations between -infinity and +infinity.
"""

from __future__ import annotations

from typing import Iterable

from cadorder.polys import Polynomial, prem, sign_normalize, squarefree_part

__all__ = ["sturm_chain", "count_real_roots", "ndrr"]


def _univariate_in(f: Polynomial) -> int | None:
    """Index of the single variable of f, or None for constants; raises on
    genuinely multivariate input."""
    vs = f.variables()
    if len(vs) > 1:
        raise ValueError(f"{f} is not univariate")
    return next(iter(vs)) if vs else None


def _strip_content(f: Polynomial) -> Polynomial:
    c = f.int_content()
    if c > 1:
        return Polynomial._raw(f.nvars, {e: v // c for e, v in f.terms.items()})
    return f


def sturm_chain(f: Polynomial) -> list[Polynomial]:
    """Sturm chain of the squarefree part of f (nonzero, univariate)."""
    if f.is_zero():
        raise ValueError("Sturm chain of the zero polynomial is undefined")
    v = _univariate_in(f)
    f0 = squarefree_part(f)
    if v is None or f0.is_const():
        return [f0]
    chain = [f0, _strip_content(f0.derivative(v))]
    while True:
        a, b = chain[-2], chain[-1]
        da, db = a.degree(v), b.degree(v)
        r = prem(a, b, v)
        if r.is_zero():
            break
        lb = next(iter(b.lcoeff(v).terms.values()))
        if lb < 0 and (da - db + 1) % 2 == 1:
            # make the implicit multiplier positive
            r = -r
        chain.append(_strip_content(-r))
    return chain


def _variations(signs: Iterable[int]) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def count_real_roots(f: Polynomial) -> int:
    """Number of distinct real roots of a nonzero univariate polynomial."""
    chain = sturm_chain(f)
    if len(chain) == 1 and chain[0].is_const():
        return 0
    v = _univariate_in(chain[0])
    at_neg = []
    at_pos = []
    for p in chain:
        d = p.degree(v)
        lead = next(iter(p.lcoeff(v).terms.values()))
        s = 1 if lead > 0 else -1
        at_pos.append(s)
        at_neg.append(s if d % 2 == 0 else -s)
    return _variations(at_neg) - _variations(at_pos)


def ndrr(polys: Iterable[Polynomial]) -> int:
    """Sum of distinct-real-root counts over a deduplicated set.

    Root counts shared between different polynomials are counted once per
    polynomial; only exact duplicates (after squarefree sign normalization)
    collapse.  Constants contribute zero.
    """
    seen: set[Polynomial] = set()
    total = 0
    for f in polys:
        if f.is_zero():
            continue
        g = sign_normalize(squarefree_part(f))
        if g.is_const() or g in seen:
            continue
        seen.add(g)
        total += count_real_roots(g)
    return total
