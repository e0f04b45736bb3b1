"""Problem model: variables, relational constraints, QFFs and orderings.

A problem is a declared variable list plus a sequence of quantifier-free
formulas (QFFs), each a conjunction of polynomial constraints.  Constraint
polynomials are stored sign-normalized; when normalization flips the sign,
the relation is mirrored so the constraint keeps its meaning.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from cadorder.polys import Polynomial, sign_normalize

__all__ = [
    "Variable",
    "Relop",
    "Constraint",
    "QFF",
    "Problem",
    "VariableOrdering",
]


@dataclass(frozen=True)
class Variable:
    name: str
    index: int

    def __str__(self):
        return self.name


class Relop(enum.Enum):
    EQ = "="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="

    @property
    def mirrored(self) -> "Relop":
        return _MIRROR[self]


_MIRROR = {
    Relop.EQ: Relop.EQ,
    Relop.NE: Relop.NE,
    Relop.LT: Relop.GT,
    Relop.GT: Relop.LT,
    Relop.LE: Relop.GE,
    Relop.GE: Relop.LE,
}


@dataclass(frozen=True)
class Constraint:
    """A single relation ``poly relop 0`` with poly sign-normalized."""

    poly: Polynomial
    relop: Relop

    def __post_init__(self):
        if self.poly.is_zero():
            raise ValueError("constraint polynomial must be nonzero")
        normalized = sign_normalize(self.poly)
        if normalized is not self.poly:
            object.__setattr__(self, "poly", normalized)
            object.__setattr__(self, "relop", self.relop.mirrored)

    @property
    def is_equational(self) -> bool:
        return self.relop is Relop.EQ


@dataclass(frozen=True)
class QFF:
    """Conjunction of constraints."""

    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.constraints:
            raise ValueError("a QFF needs at least one constraint")

    @property
    def ec_count(self) -> int:
        return sum(1 for c in self.constraints if c.is_equational)

    def equational_constraints(self) -> list[Constraint]:
        return [c for c in self.constraints if c.is_equational]

    def polynomials(self) -> list[Polynomial]:
        return [c.poly for c in self.constraints]


@dataclass(frozen=True)
class Problem:
    variables: tuple[Variable, ...]
    qffs: tuple[QFF, ...]

    def __post_init__(self):
        # Deliberately permissive: validate() reports violations so callers
        # (the parser, the CLI) can turn them into input errors.
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "qffs", tuple(self.qffs))

    # -- structure ----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable_by_name(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(f"undeclared variable '{name}'")

    def validate(self) -> list[str]:
        """Structural invariant check; returns a list of violations."""
        out: list[str] = []
        if not self.variables:
            out.append("no variables declared")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            out.append("duplicate variable names")
        for i, v in enumerate(self.variables):
            if v.index != i:
                out.append(f"variable '{v.name}' has index {v.index}, expected {i}")
            if not v.name or any(ch.isspace() for ch in v.name):
                out.append(f"invalid variable name {v.name!r}")
        if not self.qffs:
            out.append("no QFFs")
        n = len(self.variables)
        for qi, qff in enumerate(self.qffs, start=1):
            if not qff.constraints:
                out.append(f"QFF {qi} is empty")
            for c in qff.constraints:
                if c.poly.nvars != n:
                    out.append(
                        f"QFF {qi}: polynomial uses {c.poly.nvars} variable slots,"
                        f" {n} declared"
                    )
                elif c.poly.is_zero():
                    out.append(f"QFF {qi}: zero constraint polynomial")
        return out

    def system_type(self) -> str:
        """EC count of each QFF in sequence order, e.g. '21'."""
        digits = []
        for qff in self.qffs:
            k = qff.ec_count
            if k > 9:
                raise ValueError("system type digits only cover up to 9 ECs per QFF")
            digits.append(str(k))
        return "".join(digits)

    def system_type_sorted(self) -> str:
        """Order-insensitive form of system_type (digits sorted ascending)."""
        return "".join(sorted(self.system_type()))

    def defining_polynomials(self) -> frozenset[Polynomial]:
        """The deduplicated, sign-normalized set of constraint polynomials."""
        return frozenset(c.poly for qff in self.qffs for c in qff.constraints)

    # -- orderings ------------------------------------------------------------

    def ordering(self, spec) -> "VariableOrdering":
        """Build an ordering from names-greatest-first ('z>y>x'), a sequence of
        names, or a sequence of Variables."""
        if isinstance(spec, VariableOrdering):
            seq = spec.variables
        elif isinstance(spec, str):
            seq = tuple(self.variable_by_name(t.strip()) for t in spec.split(">"))
        else:
            seq = tuple(
                v if isinstance(v, Variable) else self.variable_by_name(v) for v in spec
            )
        if sorted(v.index for v in seq) != list(range(self.nvars)):
            raise ValueError(
                f"ordering {'>'.join(v.name for v in seq)} is not a permutation "
                "of the declared variables"
            )
        for v in seq:
            if self.variables[v.index] != v:
                raise ValueError(f"variable {v} does not belong to this problem")
        return VariableOrdering(seq)


@dataclass(frozen=True)
class VariableOrdering:
    """A total order on the problem variables, listed greatest-first."""

    variables: tuple[Variable, ...] = field()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        idx = [v.index for v in self.variables]
        if len(set(idx)) != len(idx):
            raise ValueError("ordering repeats a variable")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(v.index for v in self.variables)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def __str__(self):
        return ">".join(v.name for v in self.variables)

    def __len__(self):
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)
