"""Projection operators for sign- and truth-invariant decompositions.

Two operators are provided: the full projection of a polynomial set (taking
contents, coefficients, discriminants and pairwise resultants of a primitive
squarefree basis) and the reduced projection of a problem whose QFFs carry
equational constraints, where only the first equational constraint of each
QFF is expanded and the remaining interactions enter through resultants.

Projection output is always normalized: zero and constant polynomials are
dropped and the survivors are made primitive, squarefree, sign-normalized
and deduplicated.  The special sets used by the equational-constraint
ordering heuristic keep raw (non-primitive, non-squarefree) polynomials
because only their degrees are measured.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from cadorder.formula import Problem, VariableOrdering
from cadorder.polys import (
    Polynomial,
    content_primitive,
    discriminant,
    resultant,
    sign_normalize,
    squarefree_part,
)

__all__ = [
    "ProjectionSet",
    "ProjectionCascade",
    "normalize_set",
    "mccallum_project",
    "ttiprojection",
    "project_cascade",
    "newh_set",
    "newh_omitted_set",
]


@dataclass(frozen=True)
class ProjectionSet:
    """Result of eliminating one variable.

    ``level`` is the number of variables still in play after the elimination
    when the set was produced by a cascade; standalone projections leave it
    as None.
    """

    polys: frozenset[Polynomial]
    eliminated: int
    level: int | None = None

    def __post_init__(self):
        for f in self.polys:
            if self.eliminated in f.variables():
                raise AssertionError(
                    f"projection output {f} still mentions the eliminated variable"
                )

    def sorted_polys(self) -> list[Polynomial]:
        return sorted(self.polys, key=lambda f: tuple(f.sorted_terms()))


@dataclass(frozen=True)
class ProjectionCascade:
    """Stages of repeated projection along an ordering, greatest first."""

    ordering: VariableOrdering
    stages: tuple[ProjectionSet, ...]


def normalize_set(polys: Iterable[Polynomial]) -> frozenset[Polynomial]:
    """Primitive squarefree sign-normalized deduplication; drops constants."""
    out = set()
    for f in polys:
        if f.is_zero() or f.is_const():
            continue
        g = squarefree_part(f)
        c = g.int_content()
        if c > 1:
            g = Polynomial._raw(g.nvars, {e: v // c for e, v in g.terms.items()})
        if not g.is_const():
            out.add(sign_normalize(g))
    return frozenset(out)


def _normalize_raw(polys: Iterable[Polynomial]) -> frozenset[Polynomial]:
    """Dedup and sign-normalize only; degrees must stay untouched."""
    return frozenset(
        sign_normalize(f) for f in polys if not (f.is_zero() or f.is_const())
    )


def _full_contributions(
    A: Iterable[Polynomial], v: int
) -> tuple[list[Polynomial], list[Polynomial]]:
    """Raw members of the full projection (contents, coefficients of the
    primitive squarefree basis, discriminants and pairwise resultants),
    together with the basis itself."""
    out: list[Polynomial] = []
    basis: list[Polynomial] = []
    seen: set[Polynomial] = set()
    for f in A:
        if f.is_zero():
            raise ValueError("cannot project the zero polynomial")
        cont, prim = content_primitive(f, v)
        out.append(cont)
        p = squarefree_part(prim)
        if not p.is_const() and p not in seen:
            seen.add(p)
            basis.append(p)
    for f in basis:
        out.extend(f.coefficients(v))
        if f.degree(v) >= 2:
            out.append(discriminant(f, v))
    for i, f in enumerate(basis):
        for g in basis[i + 1:]:
            out.append(resultant(f, g, v))
    return out, basis


def mccallum_project(A: Iterable[Polynomial], v: int, level: int | None = None) -> ProjectionSet:
    """Full projection of the set A eliminating variable v."""
    return ProjectionSet(normalize_set(_full_contributions(A, v)[0]), v, level)


def _first_ec_poly(qff) -> Polynomial | None:
    for c in qff.constraints:
        if c.is_equational:
            return c.poly
    return None


def ttiprojection(problem: Problem, v: int, level: int | None = None) -> ProjectionSet:
    """Reduced projection of a problem eliminating variable v.

    QFFs with an equational constraint contribute the coefficients and
    discriminant of their first EC polynomial plus its resultants with the
    QFF's other polynomials; EC-free QFFs contribute their full projection.
    Across QFFs, resultants are taken between the designated polynomials of
    each pair of QFFs, where a QFF's designation is its first EC polynomial
    when it has one and its primitive squarefree basis otherwise (so that on
    a problem with no equational constraints at all the operator coincides
    exactly with the full projection of the combined polynomial set).
    """
    out: list[Polynomial] = []
    designated: list[list[Polynomial]] = []
    for qff in problem.qffs:
        A: list[Polynomial] = []
        for c in qff.constraints:
            if c.poly not in A:
                A.append(c.poly)
        e = _first_ec_poly(qff)
        if e is not None:
            out.extend(e.coefficients(v))
            if e.degree(v) >= 2:
                out.append(discriminant(e, v))
            for g in A:
                if g != e:
                    out.append(resultant(e, g, v))
            designated.append([e])
        else:
            contrib, basis = _full_contributions(A, v)
            out.extend(contrib)
            designated.append(basis)
    for i, Ei in enumerate(designated):
        for Ej in designated[i + 1:]:
            for f in Ei:
                for g in Ej:
                    if f != g:
                        out.append(resultant(f, g, v))
    return ProjectionSet(normalize_set(out), v, level)


def project_cascade(source, ordering: VariableOrdering, kind: str = "full") -> ProjectionCascade:
    """Repeatedly project along the ordering until one variable remains.

    ``source`` is a Problem; with kind="full" it may also be a bare iterable
    of polynomials.  kind="tti" uses the reduced operator for the first
    elimination and the full operator afterwards.
    """
    if kind not in ("full", "tti"):
        raise ValueError(f"unknown projection kind {kind!r}")
    n = len(ordering)
    stages: list[ProjectionSet] = []
    if n >= 2:
        v0 = ordering.variables[0].index
        if kind == "tti":
            if not isinstance(source, Problem):
                raise TypeError("the reduced projection needs a Problem")
            stage = ttiprojection(source, v0, level=n - 1)
        else:
            A = source.defining_polynomials() if isinstance(source, Problem) else source
            stage = mccallum_project(A, v0, level=n - 1)
        stages.append(stage)
        for k, var in enumerate(ordering.variables[1:-1], start=1):
            stage = mccallum_project(stages[-1].polys, var.index, level=n - k - 1)
            stages.append(stage)
    return ProjectionCascade(ordering, tuple(stages))


def newh_set(problem: Problem, v: int) -> frozenset[Polynomial]:
    """Special set feeding the equational-constraint heuristic.

    With respect to v: discriminants, leading coefficients and pairwise
    resultants of the first-constraint polynomial of each QFF; the same
    closure over all polynomials of each EC-free QFF; and, for QFFs with two
    or more ECs, the resultant of the first EC polynomial with the second.
    Kept raw (no primitive/squarefree reduction) since only degrees matter.
    """
    out: list[Polynomial] = []
    first: list[Polynomial] = []
    for qff in problem.qffs:
        f = qff.constraints[0].poly
        if f not in first:
            first.append(f)
    for f in first:
        if f.degree(v) >= 2:
            out.append(discriminant(f, v))
        out.append(f.lcoeff(v))
    for i, f in enumerate(first):
        for g in first[i + 1:]:
            out.append(resultant(f, g, v))
    for qff in problem.qffs:
        ecs = [c.poly for c in qff.constraints if c.is_equational]
        if not ecs:
            A: list[Polynomial] = []
            for c in qff.constraints:
                if c.poly not in A:
                    A.append(c.poly)
            for f in A:
                if f.degree(v) >= 2:
                    out.append(discriminant(f, v))
                out.append(f.lcoeff(v))
            for i, f in enumerate(A):
                for g in A[i + 1:]:
                    out.append(resultant(f, g, v))
        elif len(ecs) >= 2 and ecs[0] != ecs[1]:
            out.append(resultant(ecs[0], ecs[1], v))
    return _normalize_raw(out)


def newh_omitted_set(problem: Problem, v: int) -> frozenset[Polynomial]:
    """Everything the full first projection closure has beyond newh_set."""
    polys = sorted(problem.defining_polynomials(), key=lambda f: tuple(f.sorted_terms()))
    closure: list[Polynomial] = []
    for f in polys:
        if f.degree(v) >= 2:
            closure.append(discriminant(f, v))
        closure.append(f.lcoeff(v))
    for i, f in enumerate(polys):
        for g in polys[i + 1:]:
            closure.append(resultant(f, g, v))
    return _normalize_raw(closure) - newh_set(problem, v)
