"""Linear constraints ``normal . x  <rel>  offset`` with <, <= or = relations."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import kernel
from .errors import InputError
from .vectors import as_vector, is_zero_vector, rat


class Relation(Enum):
    STRICT_LT = "lt"
    LE = "le"
    EQ = "eq"


STRICT_LT = Relation.STRICT_LT
LE = Relation.LE
EQ = Relation.EQ


@dataclass(frozen=True)
class LinConstraint:
    """``normal . x <relation> offset`` over exact rationals.

    The normal must be nonzero (a 0-normal row is always degenerate: either a
    tautology or a contradiction, and callers must not encode those).
    """

    normal: tuple
    offset: Fraction
    relation: Relation

    def __post_init__(self):
        object.__setattr__(self, "normal", as_vector(self.normal))
        object.__setattr__(self, "offset", rat(self.offset))
        if is_zero_vector(self.normal):
            raise InputError("constraint normal must be nonzero")
        if not isinstance(self.relation, Relation):
            raise InputError(f"bad relation: {self.relation!r}")

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def excess(self, point) -> Fraction:
        """``normal . point - offset`` (negative inside for < / <=)."""
        return kernel.dot(self.normal, point) - self.offset

    def satisfied_by(self, point) -> bool:
        e = self.excess(point)
        if self.relation is STRICT_LT:
            return e < 0
        if self.relation is LE:
            return e <= 0
        return e == 0

    def closure(self) -> "LinConstraint":
        """The same constraint with strictness relaxed (< becomes <=)."""
        if self.relation is STRICT_LT:
            return LinConstraint(self.normal, self.offset, LE)
        return self

    def __repr__(self):
        rel = {STRICT_LT: "<", LE: "<=", EQ: "="}[self.relation]
        return f"LinConstraint({list(self.normal)} . x {rel} {self.offset})"


def constraint(normal, relation: Relation, offset) -> LinConstraint:
    """Convenience constructor with the argument order used throughout."""
    return LinConstraint(as_vector(normal), rat(offset), relation)


def check_dimension(constraints, d: int):
    for c in constraints:
        if c.dimension != d:
            raise InputError(
                f"constraint dimension {c.dimension} does not match ambient {d}"
            )
