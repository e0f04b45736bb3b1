"""The twelve variable-ordering heuristics.

Two families:

* positional heuristics order variables directly by per-variable measures
  (triangular-style m1/m2/m3 keys, brown-style m1/m4/m5 keys, greedy
  projection growth, and the equational-constraint strategy with its
  extended form);
* enumeration heuristics build the projection cascade for every ordering
  and pick the minimizer of a measure (sum of total degrees of all
  monomials, or the number of distinct real roots of the final univariate
  stage), optionally tie-breaking one measure with the other, over either
  the full or the reduced (equational-constraint aware) first projection.

All ties fall back to the first candidate in declaration order; reports say
when that happened.  Smaller measures make a variable *greater* in the
returned ordering, which lists variables greatest first.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

from cadorder.formula import Problem, Variable, VariableOrdering
from cadorder.polys import Polynomial
from cadorder.projection import (
    ProjectionCascade,
    mccallum_project,
    newh_omitted_set,
    newh_set,
    project_cascade,
    ttiprojection,
)
from cadorder.realroots import ndrr

__all__ = [
    "HeuristicId",
    "HeuristicReport",
    "OrderingCapError",
    "ORDERING_CAP",
    "Measures",
    "variable_measures",
    "sotd",
    "triangular_order",
    "brown_order",
    "ordering_search",
    "combined_order",
    "greedy_sotd_order",
    "newh_order",
    "suggest",
]

ORDERING_CAP = 8


class OrderingCapError(ValueError):
    """Raised when full ordering enumeration would exceed the cap."""


class HeuristicId(enum.Enum):
    TRIANGULAR = "triangular"
    BROWN = "brown"
    SOTD = "sotd"
    NDRR = "ndrr"
    SN = "sn"
    NS = "ns"
    GS = "gs"
    S_TTI = "s-tti"
    N_TTI = "n-tti"
    GS_TTI = "gs-tti"
    NEWH = "newh"
    NEWH_EXT = "newh-ext"


class Measures(NamedTuple):
    """Per-variable degree measures over a polynomial set.

    m1: max degree in v; m2: max total degree of the leading coefficient in
    v among polynomials containing v; m3: sum of degrees in v; m4: max total
    degree of monomials containing v; m5: number of distinct monomials
    containing v.  Empty ranges give 0.
    """

    m1: int
    m2: int
    m3: int
    m4: int
    m5: int


@dataclass
class HeuristicReport:
    id: HeuristicId
    choice: VariableOrdering
    candidates: dict[VariableOrdering, dict[str, int]] = field(default_factory=dict)
    tiebreaks_used: tuple[str, ...] = ()
    elapsed: float = 0.0
    fallback_lex: bool = False
    notes: tuple[str, ...] = ()


def variable_measures(P: Iterable[Polynomial], v: int) -> Measures:
    m1 = m2 = m3 = 0
    monos: set[tuple[int, ...]] = set()
    for f in P:
        d = f.degree(v)
        if d > 0:
            m1 = max(m1, d)
            m3 += d
            m2 = max(m2, f.lcoeff(v).total_degree())
        for e in f.monomials():
            if e[v]:
                monos.add(e)
    m4 = max((sum(e) for e in monos), default=0)
    return Measures(m1, m2, m3, m4, len(monos))


def sotd(*sets: Iterable[Polynomial]) -> int:
    """Sum of total degrees of every monomial of every polynomial given."""
    total = 0
    for S in sets:
        for f in S:
            for e in f.monomials():
                total += sum(e)
    return total


# -- positional heuristics ----------------------------------------------------


def _order_by_keys(
    problem: Problem, keys: dict[Variable, tuple]
) -> tuple[VariableOrdering, bool]:
    ordered = sorted(problem.variables, key=lambda v: keys[v])
    fallback = any(
        keys[a] == keys[b] for a, b in zip(ordered, ordered[1:])
    )
    return VariableOrdering(tuple(ordered)), fallback


def triangular_order(problem: Problem) -> HeuristicReport:
    """Sort by (m1, m2, m3) ascending; smaller measures mean greater."""
    P = problem.defining_polynomials()
    keys = {}
    for v in problem.variables:
        m = variable_measures(P, v.index)
        keys[v] = (m.m1, m.m2, m.m3)
    choice, fallback = _order_by_keys(problem, keys)
    return HeuristicReport(
        HeuristicId.TRIANGULAR,
        choice,
        fallback_lex=fallback,
        tiebreaks_used=("lex",) if fallback else (),
        notes=tuple(f"{v.name}: m1={k[0]} m2={k[1]} m3={k[2]}" for v, k in keys.items()),
    )


def brown_order(problem: Problem) -> HeuristicReport:
    """Sort by (m1, m4, m5) ascending; smaller measures mean greater."""
    P = problem.defining_polynomials()
    keys = {}
    for v in problem.variables:
        m = variable_measures(P, v.index)
        keys[v] = (m.m1, m.m4, m.m5)
    choice, fallback = _order_by_keys(problem, keys)
    return HeuristicReport(
        HeuristicId.BROWN,
        choice,
        fallback_lex=fallback,
        tiebreaks_used=("lex",) if fallback else (),
        notes=tuple(f"{v.name}: m1={k[0]} m4={k[1]} m5={k[2]}" for v, k in keys.items()),
    )


# -- enumeration heuristics ---------------------------------------------------


def _all_orderings(problem: Problem) -> list[VariableOrdering]:
    if problem.nvars > ORDERING_CAP:
        raise OrderingCapError(
            f"{problem.nvars} variables would need {problem.nvars}! cascades; "
            f"the enumeration cap is {ORDERING_CAP}"
        )
    return [
        VariableOrdering(perm)
        for perm in itertools.permutations(problem.variables)
    ]


def _cascade_for(problem: Problem, ordering: VariableOrdering, kind: str) -> ProjectionCascade:
    return project_cascade(problem, ordering, kind)


def _measure_sotd(problem: Problem, cascade: ProjectionCascade) -> int:
    return sotd(problem.defining_polynomials(), *(st.polys for st in cascade.stages))


def _measure_ndrr(problem: Problem, cascade: ProjectionCascade) -> int:
    if cascade.stages:
        return ndrr(cascade.stages[-1].polys)
    # single-variable problem: the input already is the univariate stage
    return ndrr(problem.defining_polynomials())


_MEASURES: dict[str, Callable[[Problem, ProjectionCascade], int]] = {
    "sotd": _measure_sotd,
    "ndrr": _measure_ndrr,
}


def ordering_search(
    problem: Problem, measure: str, kind: str = "full", heuristic: HeuristicId | None = None
) -> HeuristicReport:
    """Evaluate one measure over every ordering's cascade, keep the minimum.

    Ties go to the candidate that enumerates first, i.e. lexicographically by
    declaration index sequence.
    """
    measure_fn = _MEASURES[measure]
    orderings = _all_orderings(problem)
    candidates: dict[VariableOrdering, dict[str, int]] = {}
    best: VariableOrdering | None = None
    best_val: int | None = None
    tied = 0
    for ordering in orderings:
        cascade = _cascade_for(problem, ordering, kind)
        val = measure_fn(problem, cascade)
        candidates[ordering] = {measure: val}
        if best_val is None or val < best_val:
            best, best_val, tied = ordering, val, 1
        elif val == best_val:
            tied += 1
    fallback = tied > 1
    hid = heuristic or (HeuristicId.SOTD if measure == "sotd" else HeuristicId.NDRR)
    return HeuristicReport(
        hid,
        best,
        candidates=candidates,
        fallback_lex=fallback,
        tiebreaks_used=("lex",) if fallback else (),
    )


def combined_order(
    problem: Problem,
    primary: str,
    secondary: str,
    kind: str = "full",
    heuristic: HeuristicId | None = None,
) -> HeuristicReport:
    """Minimize the primary measure, break ties with the secondary measure."""
    primary_fn, secondary_fn = _MEASURES[primary], _MEASURES[secondary]
    orderings = _all_orderings(problem)
    cascades = {}
    candidates: dict[VariableOrdering, dict[str, int]] = {}
    best_val: int | None = None
    for ordering in orderings:
        cascade = _cascade_for(problem, ordering, kind)
        cascades[ordering] = cascade
        val = primary_fn(problem, cascade)
        candidates[ordering] = {primary: val}
        if best_val is None or val < best_val:
            best_val = val
    tied = [o for o in orderings if candidates[o][primary] == best_val]
    tiebreaks: tuple[str, ...] = ()
    if len(tied) > 1:
        tiebreaks = (secondary,)
        best_secondary: int | None = None
        for ordering in tied:
            val = secondary_fn(problem, cascades[ordering])
            candidates[ordering][secondary] = val
            if best_secondary is None or val < best_secondary:
                best_secondary = val
        tied = [o for o in tied if candidates[o][secondary] == best_secondary]
    fallback = len(tied) > 1
    if fallback:
        tiebreaks = tiebreaks + ("lex",)
    hid = heuristic or (HeuristicId.SN if primary == "sotd" else HeuristicId.NS)
    return HeuristicReport(
        hid,
        tied[0],
        candidates=candidates,
        fallback_lex=fallback,
        tiebreaks_used=tiebreaks,
    )


def greedy_sotd_order(
    problem: Problem, kind: str = "full", heuristic: HeuristicId | None = None
) -> HeuristicReport:
    """Allocate the next-greatest variable as the one whose single projection
    step produces the set with the smallest sum of total degrees."""
    remaining = list(problem.variables)
    chosen: list[Variable] = []
    current: frozenset[Polynomial] | None = None
    fallback = False
    notes: list[str] = []
    while len(remaining) > 1:
        best_var = None
        best_val = None
        best_polys = None
        tied = 0
        step_vals = []
        for v in remaining:
            if current is None:
                if kind == "tti":
                    ps = ttiprojection(problem, v.index)
                else:
                    ps = mccallum_project(problem.defining_polynomials(), v.index)
            else:
                ps = mccallum_project(current, v.index)
            val = sotd(ps.polys)
            step_vals.append(f"{v.name}:{val}")
            if best_val is None or val < best_val:
                best_var, best_val, best_polys, tied = v, val, ps.polys, 1
            elif val == best_val:
                tied += 1
        if tied > 1:
            fallback = True
        notes.append(f"step {len(chosen) + 1}: " + " ".join(step_vals))
        chosen.append(best_var)
        remaining.remove(best_var)
        current = best_polys
    chosen.extend(remaining)
    hid = heuristic or (HeuristicId.GS_TTI if kind == "tti" else HeuristicId.GS)
    return HeuristicReport(
        hid,
        VariableOrdering(tuple(chosen)),
        fallback_lex=fallback,
        tiebreaks_used=("lex",) if fallback else (),
        notes=tuple(notes),
    )


def newh_order(problem: Problem, extended: bool = False) -> HeuristicReport:
    """Equational-constraint strategy.

    Stage 1 ranks variables by max degree over the input polynomials
    (ascending; a tie for the greatest position is broken by declaration
    order before anything else).  Stage 2 compares still-tied variables by
    their maximum degree in the special projection set taken with respect to
    the fixed greatest variable; the extended form adds a third stage over
    the complementary (omitted) set.
    """
    P = problem.defining_polynomials()
    m1 = {v: variable_measures(P, v.index).m1 for v in problem.variables}
    by_m1 = sorted(problem.variables, key=lambda v: (m1[v], v.index))
    v1 = by_m1[0]
    rest = by_m1[1:]
    first_tie = len([v for v in problem.variables if m1[v] == m1[v1]]) > 1
    tiebreaks: list[str] = []
    if first_tie:
        tiebreaks.append("lex-first")
    notes = [f"m1: " + " ".join(f"{v.name}={m1[v]}" for v in problem.variables)]

    d2: dict[Variable, int] = {}
    d3: dict[Variable, int] = {}
    need_stage2 = any(
        m1[a] == m1[b] for a, b in zip(rest, rest[1:])
    )
    if need_stage2 and rest:
        S = newh_set(problem, v1.index)
        for v in rest:
            d2[v] = max((g.degree(v.index) for g in S), default=0)
        tiebreaks.append("special-set-degree")
        notes.append(
            "special set degrees: " + " ".join(f"{v.name}={d2[v]}" for v in rest)
        )
        if extended:
            still_tied = any(
                (m1[a], d2[a]) == (m1[b], d2[b])
                for a, b in itertools.combinations(rest, 2)
            )
            if still_tied:
                O = newh_omitted_set(problem, v1.index)
                for v in rest:
                    d3[v] = max((g.degree(v.index) for g in O), default=0)
                tiebreaks.append("omitted-set-degree")
                notes.append(
                    "omitted set degrees: " + " ".join(f"{v.name}={d3[v]}" for v in rest)
                )

    def key(v: Variable):
        return (m1[v], d2.get(v, 0), d3.get(v, 0), v.index)

    rest_sorted = sorted(rest, key=key)
    residual_tie = any(
        key(a)[:-1] == key(b)[:-1] for a, b in zip(rest_sorted, rest_sorted[1:])
    )
    fallback = first_tie or residual_tie
    if residual_tie:
        tiebreaks.append("lex")
    return HeuristicReport(
        HeuristicId.NEWH_EXT if extended else HeuristicId.NEWH,
        VariableOrdering(tuple([v1] + rest_sorted)),
        fallback_lex=fallback,
        tiebreaks_used=tuple(tiebreaks),
        notes=tuple(notes),
    )


# -- dispatch ------------------------------------------------------------------


_DISPATCH: dict[HeuristicId, Callable[[Problem], HeuristicReport]] = {
    HeuristicId.TRIANGULAR: triangular_order,
    HeuristicId.BROWN: brown_order,
    HeuristicId.SOTD: lambda p: ordering_search(p, "sotd", "full", HeuristicId.SOTD),
    HeuristicId.NDRR: lambda p: ordering_search(p, "ndrr", "full", HeuristicId.NDRR),
    HeuristicId.SN: lambda p: combined_order(p, "sotd", "ndrr", "full", HeuristicId.SN),
    HeuristicId.NS: lambda p: combined_order(p, "ndrr", "sotd", "full", HeuristicId.NS),
    HeuristicId.GS: lambda p: greedy_sotd_order(p, "full", HeuristicId.GS),
    HeuristicId.S_TTI: lambda p: ordering_search(p, "sotd", "tti", HeuristicId.S_TTI),
    HeuristicId.N_TTI: lambda p: ordering_search(p, "ndrr", "tti", HeuristicId.N_TTI),
    HeuristicId.GS_TTI: lambda p: greedy_sotd_order(p, "tti", HeuristicId.GS_TTI),
    HeuristicId.NEWH: lambda p: newh_order(p, extended=False),
    HeuristicId.NEWH_EXT: lambda p: newh_order(p, extended=True),
}


def suggest(problem: Problem, heuristic: HeuristicId | str) -> HeuristicReport:
    """Run one heuristic on a problem; the report includes wall-clock time."""
    hid = HeuristicId(heuristic) if not isinstance(heuristic, HeuristicId) else heuristic
    start = time.perf_counter()
    report = _DISPATCH[hid](problem)
    report.elapsed = time.perf_counter() - start
    return report
