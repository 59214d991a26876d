"""Affine flats in canonical form, with exact equality and containment.

A flat is stored as ``anchor + span(basis)`` where ``basis`` is the reduced
row echelon form of the direction space and ``anchor`` is the unique point of
the flat whose coordinates vanish on the basis pivot columns.  Two flats are
equal iff their canonical data are equal, so flats can be hashed and deduped.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .constraints import EQ, LinConstraint
from .errors import InputError
from .vectors import ZERO, as_vector


@dataclass(frozen=True)
class Flat:
    """Canonical affine subspace of R^d (possibly empty: dimension -1)."""

    dimension_ambient: int
    anchor: tuple | None         # None iff the flat is empty
    basis: tuple                 # RREF rows spanning the direction space

    @property
    def dimension(self) -> int:
        if self.anchor is None:
            return -1
        return len(self.basis)

    @property
    def is_empty(self) -> bool:
        return self.anchor is None

    def contains_point(self, point) -> bool:
        if self.anchor is None:
            return False
        point = as_vector(point)
        if len(point) != self.dimension_ambient:
            raise InputError(
                f"point has dimension {len(point)}, flat lives in "
                f"R^{self.dimension_ambient}"
            )
        delta = tuple(p - a for p, a in zip(point, self.anchor))
        return _in_row_space(delta, self.basis)

    def contains_flat(self, other: "Flat") -> bool:
        """True iff ``other`` is a subset of this flat."""
        if other.anchor is None:
            return True
        if self.anchor is None:
            return False
        if not self.contains_point(other.anchor):
            return False
        return all(_in_row_space(v, self.basis) for v in other.basis)

    def translate(self, point) -> "Flat":
        """The parallel flat through ``point``."""
        if self.anchor is None:
            raise InputError("cannot translate the empty flat")
        return make_flat(as_vector(point), self.basis)

    def equations(self):
        """Equality constraints cutting out this flat (empty list if full)."""
        if self.anchor is None:
            raise InputError("the empty flat has no finite equation system")
        d = self.dimension_ambient
        if not self.basis:
            return [
                LinConstraint(
                    tuple(Fraction(1 if j == i else 0) for j in range(d)),
                    self.anchor[i],
                    EQ,
                )
                for i in range(d)
            ]
        normals = kernel.nullspace([list(row) for row in self.basis], d)
        return [
            LinConstraint(tuple(n), kernel.dot(n, self.anchor), EQ)
            for n in normals
        ]

    def __repr__(self):
        if self.anchor is None:
            return f"Flat(empty, ambient={self.dimension_ambient})"
        return (
            f"Flat(dim={self.dimension}, ambient={self.dimension_ambient}, "
            f"anchor={self.anchor}, basis={self.basis})"
        )


def _in_row_space(vector, basis) -> bool:
    """Exact membership of ``vector`` in the span of RREF ``basis`` rows."""
    residue = list(vector)
    for row in basis:
        pivot = next(j for j, a in enumerate(row) if a != 0)
        coeff = residue[pivot]
        if coeff != 0:
            for j, a in enumerate(row):
                if a != 0:
                    residue[j] -= coeff * a
    return all(r == 0 for r in residue)


def empty_flat(d: int) -> Flat:
    return Flat(d, None, ())


def make_flat(anchor, directions) -> Flat:
    """Canonicalize ``anchor + span(directions)`` into a Flat."""
    anchor = as_vector(anchor)
    d = len(anchor)
    rows = [list(as_vector(v)) for v in directions]
    for row in rows:
        if len(row) != d:
            raise InputError("direction dimension mismatch with anchor")
    if rows:
        basis_rows, _pivots = kernel.rref(rows)
    else:
        basis_rows = []
    basis = tuple(tuple(row) for row in basis_rows)
    point = list(anchor)
    for row in basis:
        pivot = next(j for j, a in enumerate(row) if a != 0)
        coeff = point[pivot]
        if coeff != 0:
            for j, a in enumerate(row):
                if a != 0:
                    point[j] -= coeff * a
    return Flat(d, tuple(point), basis)


def full_space(d: int) -> Flat:
    eye = tuple(
        tuple(Fraction(1 if j == i else 0) for j in range(d)) for i in range(d)
    )
    return Flat(d, tuple(ZERO for _ in range(d)), eye)


def affine_hull(points, d: int | None = None) -> Flat:
    """Smallest flat containing ``points``; empty input gives dimension -1."""
    points = [as_vector(p) for p in points]
    if not points:
        if d is None:
            raise InputError(
                "affine hull of no points needs an explicit ambient dimension"
            )
        return empty_flat(d)
    if d is None:
        d = len(points[0])
    for p in points:
        if len(p) != d:
            raise InputError(
                f"point {p} has dimension {len(p)}, expected {d}"
            )
    base = points[0]
    directions = [
        tuple(a - b for a, b in zip(p, base)) for p in points[1:]
    ]
    return make_flat(base, directions)


def flat_from_equations(constraints, d: int) -> Flat:
    """Solution flat of a system of equality constraints (maybe empty)."""
    rows = []
    rhs = []
    for c in constraints:
        if c.relation is not EQ:
            raise InputError("flat_from_equations expects only equalities")
        rows.append(list(c.normal))
        rhs.append(c.offset)
    if not rows:
        return full_space(d)
    particular = kernel.solve_linear(rows, rhs)
    if particular is None:
        return empty_flat(d)
    directions = kernel.nullspace(rows, d)
    return make_flat(tuple(particular), [tuple(v) for v in directions])
