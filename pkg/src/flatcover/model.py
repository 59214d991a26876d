"""Semi-open polyhedral pieces, convex bodies, scenes, and local predicates.

A *piece* is the solution set of finitely many strict / non-strict / equality
constraints; a *body* is a named finite union of pieces whose union is convex
(checkable, not assumed); a *scene* is an ordered list of bodies in a common
ambient dimension.  All predicates are exact over the rationals.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernel
from .constraints import EQ, LE, STRICT_LT, LinConstraint, check_dimension
from .errors import InputError, PreconditionError
from .flats import Flat, flat_from_equations, full_space
from .lp import Feasibility, lp_feasible
from .vectors import ZERO, as_vector, is_zero_vector


class SemiOpenPiece:
    """Nonempty solution set of a finite mixed constraint system in R^d.

    Construction verifies nonemptiness and caches a relative-interior
    witness, the affine hull, and the dimension.
    """

    __slots__ = ("constraints", "dimension_ambient", "witness", "hull", "dim")

    def __init__(self, constraints, d: int):
        constraints = tuple(constraints)
        if d < 1:
            raise InputError(f"ambient dimension must be >= 1, got {d}")
        if not constraints:
            raise InputError(
                "piece needs at least one constraint (all of R^d is not a piece)"
            )
        check_dimension(constraints, d)
        self.constraints = constraints
        self.dimension_ambient = d

        base = lp_feasible(constraints, d)
        if not base.feasible:
            raise InputError("piece is empty (infeasible constraint system)")

        # Implicit equalities: LE rows that can never be slack on the piece.
        witnesses = [base.witness]
        equalities = [c for c in constraints if c.relation is EQ]
        for i, c in enumerate(constraints):
            if c.relation is not LE:
                continue
            relaxed = list(constraints)
            relaxed[i] = LinConstraint(c.normal, c.offset, STRICT_LT)
            slack = lp_feasible(relaxed, d)
            if slack.feasible:
                witnesses.append(slack.witness)
            else:
                equalities.append(LinConstraint(c.normal, c.offset, EQ))

        m = len(witnesses)
        self.witness = tuple(
            sum(w[j] for w in witnesses) / m for j in range(d)
        )
        self.hull = flat_from_equations(equalities, d)
        self.dim = self.hull.dimension

    def contains(self, point) -> bool:
        point = _check_point(point, self.dimension_ambient)
        return all(c.satisfied_by(point) for c in self.constraints)

    def closure_contains(self, point) -> bool:
        point = _check_point(point, self.dimension_ambient)
        return all(c.closure().satisfied_by(point) for c in self.constraints)

    def closure_constraints(self):
        return tuple(c.closure() for c in self.constraints)

    def __repr__(self):
        rows = ", ".join(repr(c) for c in self.constraints)
        return f"SemiOpenPiece(d={self.dimension_ambient}, [{rows}])"


def piece_contains(piece: SemiOpenPiece, point) -> bool:
    return piece.contains(point)


class ConvexBody:
    """Named union of semi-open pieces (convexity checkable on demand)."""

    __slots__ = ("name", "pieces", "dimension_ambient")

    def __init__(self, name: str, pieces):
        pieces = tuple(pieces)
        if not name or not isinstance(name, str):
            raise InputError("body name must be a nonempty string")
        if not pieces:
            raise InputError(f"body {name!r} has no pieces")
        dims = {p.dimension_ambient for p in pieces}
        if len(dims) != 1:
            raise InputError(f"body {name!r} mixes ambient dimensions {dims}")
        self.name = name
        self.pieces = pieces
        self.dimension_ambient = dims.pop()

    def contains(self, point) -> bool:
        return any(p.contains(point) for p in self.pieces)

    def closure_contains(self, point) -> bool:
        return any(p.closure_contains(point) for p in self.pieces)

    def __repr__(self):
        return f"ConvexBody({self.name!r}, {len(self.pieces)} pieces)"


def body_touches(body: ConvexBody, point) -> bool:
    """True iff ``point`` lies in the closure of the body but not in it."""
    point = _check_point(point, body.dimension_ambient)
    if body.contains(point):
        return False
    return body.closure_contains(point)


class Scene:
    """Ordered bodies K_1..K_n in a common ambient dimension d >= 1."""

    __slots__ = ("dimension", "bodies")

    def __init__(self, dimension: int, bodies):
        bodies = tuple(bodies)
        if dimension < 1:
            raise InputError(
                f"scene dimension must be >= 1, got {dimension}"
            )
        names = [b.name for b in bodies]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise InputError(f"duplicate body name {dup!r}")
        for b in bodies:
            if b.dimension_ambient != dimension:
                raise InputError(
                    f"body {b.name!r} lives in R^{b.dimension_ambient}, "
                    f"scene is R^{dimension}"
                )
        self.dimension = dimension
        self.bodies = bodies

    @property
    def n(self) -> int:
        return len(self.bodies)

    def body_containing(self, point):
        """The first body containing ``point``, or None."""
        for body in self.bodies:
            if body.contains(point):
                return body
        return None

    def in_union(self, point) -> bool:
        return self.body_containing(point) is not None

    def all_pieces(self):
        """Yield (body_index, body, piece) over the scene, in order."""
        for i, body in enumerate(self.bodies):
            for piece in body.pieces:
                yield i, body, piece

    def __repr__(self):
        return f"Scene(d={self.dimension}, n={self.n})"


@dataclass(frozen=True)
class DirectionCone:
    """Semi-open polyhedral cone of directions; the apex 0 is never a member."""

    dimension_ambient: int
    constraints: tuple          # homogeneous LinConstraints on v
    empty: bool = False

    def contains(self, v) -> bool:
        v = _check_point(v, self.dimension_ambient)
        if self.empty or is_zero_vector(v):
            return False
        return all(c.satisfied_by(v) for c in self.constraints)


def entry_cone(piece: SemiOpenPiece, point) -> DirectionCone:
    """Directions v (v != 0) with ``point + t v`` in the piece for all small t > 0.

    Inactive satisfied constraints impose nothing; constraints active at the
    point impose their own relation on ``normal . v``; a constraint whose
    closure is violated at the point empties the cone.
    """
    point = _check_point(point, piece.dimension_ambient)
    d = piece.dimension_ambient
    rows = []
    for c in piece.constraints:
        e = c.excess(point)
        if c.relation is EQ:
            if e != 0:
                return DirectionCone(d, (), True)
            rows.append(LinConstraint(c.normal, ZERO, EQ))
        else:
            if e > 0:
                return DirectionCone(d, (), True)
            if e == 0:
                rows.append(LinConstraint(c.normal, ZERO, c.relation))
    return DirectionCone(d, tuple(rows), False)


def max_step(piece: SemiOpenPiece, point, direction):
    """Largest t with ``point + s*direction`` in the piece for all s in (0, t).

    Requires the direction to be in the entry cone (else returns 0).  Returns
    None when the ray never leaves the piece.  The bound itself is attained
    for LE constraints and excluded for strict ones; callers stepping to a
    fraction of the bound stay strictly inside either way.
    """
    point = _check_point(point, piece.dimension_ambient)
    direction = _check_point(direction, piece.dimension_ambient)
    bound = None
    for c in piece.constraints:
        slope = kernel.dot(c.normal, direction)
        e = c.excess(point)
        if c.relation is EQ:
            if slope != 0:
                return Fraction(0)
            continue
        if slope <= 0:
            if e > 0 or (e == 0 and c.relation is STRICT_LT and slope == 0):
                return Fraction(0)
            continue
        limit = -e / slope  # excess(point + t v) = e + t*slope
        if limit <= 0:
            return Fraction(0)
        if bound is None or limit < bound:
            bound = limit
    return bound


@dataclass(frozen=True)
class DisjointnessReport:
    disjoint: bool
    violating_pair: tuple | None = None   # (name_i, name_j)
    witness: tuple | None = None

    def __bool__(self):
        return self.disjoint


def bodies_pairwise_disjoint(scene: Scene) -> DisjointnessReport:
    """Exact pairwise disjointness via feasibility of combined piece systems."""
    for (i, bi, pi), (j, bj, pj) in itertools.combinations(
        scene.all_pieces(), 2
    ):
        if i == j:
            continue
        result = lp_feasible(
            list(pi.constraints) + list(pj.constraints), scene.dimension
        )
        if result.feasible:
            return DisjointnessReport(False, (bi.name, bj.name), result.witness)
    return DisjointnessReport(True)


@dataclass(frozen=True)
class ConvexityReport:
    convex: bool
    counterexample: tuple | None = None   # point outside the union
    segment: tuple | None = None          # (endpoint_a, endpoint_b)

    def __bool__(self):
        return self.convex


def random_point_in(constraints, d, witness, hull, rng):
    """A pseudo-random rational point of the constraint system.

    Walks from ``witness`` along a random direction inside ``hull`` (the
    system's affine hull) to a random fraction of the exact exit bound.
    """
    basis = hull.basis
    if not basis:
        return witness
    for _ in range(32):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in basis]
        direction = tuple(
            sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(d)
        )
        if is_zero_vector(direction):
            continue
        bound = None
        dead = False
        for c in constraints:
            slope = kernel.dot(c.normal, direction)
            if c.relation is EQ:
                if slope != 0:
                    dead = True
                    break
                continue
            if slope <= 0:
                continue
            limit = -c.excess(witness) / slope
            if limit == 0:
                dead = True
                break
            if bound is None or limit < bound:
                bound = limit
        if dead:
            continue
        if bound is None:
            bound = Fraction(rng.randint(1, 16))
        t = bound * Fraction(rng.randint(1, 7), 8)
        return tuple(w + t * v for w, v in zip(witness, direction))
    return witness


def verify_convex_union(body: ConvexBody, budget: int, seed: int) -> ConvexityReport:
    """Probabilistic convexity check of a body's piece union.

    Samples point pairs from distinct pieces and midpoint-refines each
    connecting segment; any segment point outside the union is an exact
    counterexample.  A pass is probabilistic, a fail is exact.
    """
    if budget == 0:
        raise InputError("verify_convex_union needs a positive sample budget")
    if budget < 0:
        raise InputError(f"sample budget must be positive, got {budget}")
    if len(body.pieces) == 1:
        return ConvexityReport(True)

    import random

    rng = random.Random(seed)
    d = body.dimension_ambient

    def segment_fails(a, b):
        """Refine [a, b]; return an outside point or None."""
        stack = [(a, b, 0)]
        while stack:
            lo, hi, depth = stack.pop()
            mid = tuple((x + y) / 2 for x, y in zip(lo, hi))
            if not body.contains(mid):
                return mid
            if depth < 4:
                stack.append((lo, mid, depth + 1))
                stack.append((mid, hi, depth + 1))
        return None

    pairs = list(itertools.combinations(body.pieces, 2))
    # Deterministic first pass through the cached witnesses, then random.
    samples = 0
    for pa, pb in pairs:
        bad = segment_fails(pa.witness, pb.witness)
        if bad is not None:
            return ConvexityReport(False, bad, (pa.witness, pb.witness))
        samples += 1
        if samples >= budget:
            return ConvexityReport(True)
    while samples < budget:
        pa, pb = pairs[rng.randrange(len(pairs))]
        a = random_point_in(pa.constraints, d, pa.witness, pa.hull, rng)
        b = random_point_in(pb.constraints, d, pb.witness, pb.hull, rng)
        bad = segment_fails(a, b)
        if bad is not None:
            return ConvexityReport(False, bad, (a, b))
        samples += 1
    return ConvexityReport(True)


def _check_point(point, d):
    point = as_vector(point)
    if len(point) != d:
        raise InputError(
            f"point has dimension {len(point)}, expected {d}"
        )
    return point
