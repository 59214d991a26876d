"""Complement analysis: touch sets, encapsulated points, local dimension,
ordinary flats, and the strong cover with its nu-counts.

Everything is computed exactly on the scene's hyperplane arrangement.  The
complement S of the body union is a union of relatively open cells; all local
notions (touch, encapsulation, local dimension, ordinariness) are constant on
cells, which is both exploited and — where the mathematics only asserts it —
re-verified at random cell points with loud failures.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .arrangement import (
    ArrangementIndex,
    Cell,
    DEFAULT_HYPERPLANE_BUDGET,
    canonical_hyperplane,
    enumerate_cells,
    enumerate_sign_cells,
)
from .errors import InputError, InvariantError, PreconditionError
from .flats import Flat, make_flat
from .lp import lp_feasible
from .model import Scene, body_touches, entry_cone
from .vectors import ZERO, as_vector

_RETEST_SEED = 0x5EED
_ORDINARY_RETESTS = 3


@dataclass(frozen=True)
class TouchSet:
    """The bodies (1-based indices) whose closures contain a complement point."""

    point: tuple
    indices: frozenset


def touch_set(scene: Scene, point) -> TouchSet:
    point = _scene_point(scene, point)
    inside = scene.body_containing(point)
    if inside is not None:
        raise PreconditionError(
            f"touch_set requires a point outside every body; {point} lies "
            f"inside body {inside.name!r}"
        )
    indices = frozenset(
        i + 1 for i, body in enumerate(scene.bodies) if body_touches(body, point)
    )
    return TouchSet(point, indices)


@dataclass(frozen=True)
class EncapsulationResult:
    """Outcome of the encapsulation test, with a checkable certificate.

    ``encapsulated`` — both decision routes agreed that every direction from
    the point immediately enters some body.  When false, exactly one of
    ``in_body`` (the point is not even in the complement) or
    ``uncovered_direction`` (an exact direction whose short segments stay in
    the complement) is set.
    """

    encapsulated: bool
    point: tuple
    touch_indices: frozenset | None = None
    in_body: str | None = None
    uncovered_direction: tuple | None = None

    def __bool__(self):
        return self.encapsulated


def _direction_cover_gap(scene: Scene, point):
    """Route A: a direction not covered by any touching piece's entry cone,
    or None when the cones cover every direction v != 0."""
    d = scene.dimension
    cones = []
    for _, _, piece in scene.all_pieces():
        cone = entry_cone(piece, point)
        if not cone.empty:
            cones.append(cone)

    if not cones:
        gap = [ZERO] * d
        gap[0] = Fraction(1)
        return tuple(gap)

    seen = {}
    hyperplanes = []
    for cone in cones:
        for c in cone.constraints:
            n, b = canonical_hyperplane(c.normal, ZERO)
            if (n, b) not in seen:
                seen[(n, b)] = True
                hyperplanes.append((n, b))

    normal_rows = [list(map(Fraction, n)) for n, _ in hyperplanes]
    for sign, _dim, witness in enumerate_sign_cells(hyperplanes, d):
        if all(s == 0 for s in sign):
            # This cell is the common linear subspace; 0 itself is not a
            # direction, so test a kernel basis vector if one exists.
            basis = kernel.nullspace(normal_rows, d)
            if not basis:
                continue
            witness = tuple(basis[0])
        if not any(cone.contains(witness) for cone in cones):
            return witness
    return None


def _star_is_encapsulated(index: ArrangementIndex, cell: Cell) -> bool:
    """Route B: a 0-dimensional complement cell with no positive-dimensional
    complement cell closure-adjacent to it."""
    if not cell.in_S or cell.dim != 0:
        return False
    return not any(
        d.in_S and d.dim >= 1 for d in index.cofaces(cell)
    )


def is_encapsulated(scene: Scene, point, index: ArrangementIndex | None = None,
                    budget: int = DEFAULT_HYPERPLANE_BUDGET) -> EncapsulationResult:
    """Exact encapsulation test, decided by two independent routes.

    Route A covers the direction sphere by the entry cones of all touching
    pieces; route B inspects the point's cell in the arrangement.  The two
    must agree (InvariantError otherwise); the result carries a certificate.
    """
    point = _scene_point(scene, point)
    inside = scene.body_containing(point)
    if inside is not None:
        return EncapsulationResult(False, point, in_body=inside.name)

    gap = _direction_cover_gap(scene, point)
    route_a = gap is None

    if index is None:
        index = enumerate_cells(scene, budget)
    cell = index.cell_of_point(point)
    route_b = _star_is_encapsulated(index, cell)

    if route_a != route_b:
        raise InvariantError(
            f"encapsulation routes disagree at {point}: direction cover says "
            f"{route_a}, arrangement star says {route_b}"
        )

    touches = touch_set(scene, point).indices
    if route_a:
        return EncapsulationResult(True, point, touch_indices=touches)
    return EncapsulationResult(
        False, point, touch_indices=touches, uncovered_direction=gap
    )


def enumerate_encapsulated(scene: Scene,
                           budget: int = DEFAULT_HYPERPLANE_BUDGET,
                           index: ArrangementIndex | None = None):
    """All encapsulated points of the scene, sorted lexicographically."""
    if index is None:
        index = enumerate_cells(scene, budget)
    points = []
    for cell in index.cells:
        if not (cell.in_S and cell.dim == 0):
            continue
        if _star_is_encapsulated(index, cell):
            check = is_encapsulated(scene, cell.witness, index)
            if not check.encapsulated:  # pragma: no cover - raises inside
                raise InvariantError(
                    f"star test accepted {cell.witness} but the full "
                    "encapsulation test rejected it"
                )
            points.append(cell.witness)
    points.sort()
    return points


def local_dimension(scene: Scene, point,
                    index: ArrangementIndex | None = None,
                    budget: int = DEFAULT_HYPERPLANE_BUDGET) -> int:
    """max dim of complement cells whose closure contains the point's cell."""
    point = _scene_point(scene, point)
    inside = scene.body_containing(point)
    if inside is not None:
        raise PreconditionError(
            f"local_dimension requires a complement point; {point} lies "
            f"inside body {inside.name!r}"
        )
    if index is None:
        index = enumerate_cells(scene, budget)
    cell = index.cell_of_point(point)
    return max(d.dim for d in index.cofaces(cell) if d.in_S)


def _cell_flat(index: ArrangementIndex, cell: Cell) -> Flat:
    """Affine hull of a cell: its witness plus the zero-set directions."""
    cached = index.cell_flat_cache.get(cell.sign)
    if cached is not None:
        return cached
    d = index.scene.dimension
    zero_rows = [
        list(map(Fraction, index.hyperplanes[i][0]))
        for i, s in enumerate(cell.sign)
        if s == 0
    ]
    if zero_rows:
        directions = [tuple(v) for v in kernel.nullspace(zero_rows, d)]
    else:
        directions = [
            tuple(Fraction(1 if j == i else 0) for j in range(d))
            for i in range(d)
        ]
    flat = make_flat(cell.witness, directions)
    index.cell_flat_cache[cell.sign] = flat
    return flat


def _ordinary_flat_of_cell(index: ArrangementIndex, cell: Cell):
    """The ordinary flat of (any point of) a complement cell, or None.

    With k the local dimension: H is the affine hull of all adjacent
    complement cells; the cell is ordinary iff dim H = k and no adjacent
    non-complement cell meets H (then S coincides with H near the cell).
    """
    adjacent = index.cofaces(cell)
    adj_s = [c for c in adjacent if c.in_S]
    k = max(c.dim for c in adj_s)

    anchor = cell.witness
    directions = []
    for c in adj_s:
        directions.append(tuple(w - a for w, a in zip(c.witness, anchor)))
        directions.extend(_cell_flat(index, c).basis)
    hull = make_flat(anchor, directions)
    if hull.dimension != k:
        return None

    body_cells = [c for c in adjacent if not c.in_S]
    if not _flat_avoids_cells(index, hull, body_cells):
        return None
    return hull


def _flat_avoids_cells(index: ArrangementIndex, flat: Flat, cells) -> bool:
    """True iff ``flat`` meets none of the given open cells.  Exact.

    A point flat can only meet a cell that carries its own sign vector; a
    line flat meets a cell iff a one-dimensional interval intersection over
    the cell's sign conditions is nonempty.  Higher-dimensional flats fall
    back to the LP on the cell constraints plus the flat equations.
    """
    if not cells:
        return True
    d = index.scene.dimension
    if flat.dimension == d:
        # A full-dimensional flat is all of space: any nonempty cell meets it.
        return False
    if flat.dimension == 0:
        target = index.sign_of_point(flat.anchor)
        return all(c.sign != target for c in cells)
    if flat.dimension == 1:
        slopes, bases = _line_profile(index, flat)
        return not any(
            _line_meets_sign_region(slopes, bases, c.sign) for c in cells
        )
    equations = flat.equations()
    for c in cells:
        meet = lp_feasible(c.constraints(index.hyperplanes) + equations, d)
        if meet.feasible:
            return False
    return True


def _line_profile(index: ArrangementIndex, flat: Flat):
    """Per-hyperplane slope and anchored excess of a 1-flat, memoised."""
    key = (flat.anchor, flat.basis)
    hit = index.line_profile_cache.get(key)
    if hit is None:
        u = flat.basis[0]
        a = flat.anchor
        slopes = tuple(kernel.dot(n, u) for n, _ in index.hyperplanes)
        bases = tuple(kernel.dot(n, a) - b for n, b in index.hyperplanes)
        hit = (slopes, bases)
        index.line_profile_cache[key] = hit
    return hit


def _line_meets_sign_region(slopes, bases, sign) -> bool:
    """Does the line ``{anchor + t*u}`` meet the open cell of ``sign``?

    Row j demands sign(bases[j] + t * slopes[j]) == sign[j]; equality rows
    pin t, strict rows open a half-line in t, and the cell is met iff the
    intersection of all these one-dimensional conditions is nonempty.
    """
    lo = hi = None
    pinned = None
    for s, slope, base in zip(sign, slopes, bases):
        if s == 0:
            if slope == 0:
                if base != 0:
                    return False
                continue
            t = -base / slope
            if pinned is None:
                pinned = t
            elif pinned != t:
                return False
        elif slope == 0:
            if base == 0 or (base < 0) != (s < 0):
                return False
        else:
            t = -base / slope
            if (slope > 0) == (s > 0):
                if lo is None or t > lo:
                    lo = t
            else:
                if hi is None or t < hi:
                    hi = t
    if pinned is not None:
        return (lo is None or lo < pinned) and (hi is None or pinned < hi)
    return lo is None or hi is None or lo < hi


def ordinary_flat_at(scene: Scene, point,
                     index: ArrangementIndex | None = None,
                     budget: int = DEFAULT_HYPERPLANE_BUDGET):
    """The flat witnessing that the complement looks flat at ``point``.

    Returns the affine hull H of the nearby complement cells when (a) its
    dimension equals the local dimension at the point and (b) near the point
    the complement fills all of H (no nearby body cell meets H); otherwise
    returns None.
    """
    point = _scene_point(scene, point)
    inside = scene.body_containing(point)
    if inside is not None:
        raise PreconditionError(
            f"ordinary_flat_at requires a complement point; {point} lies "
            f"inside body {inside.name!r}"
        )
    if index is None:
        index = enumerate_cells(scene, budget)
    return _ordinary_flat_of_cell(index, index.cell_of_point(point))


@dataclass(frozen=True)
class StrongCover:
    """The deduplicated ordinary flats of a scene, with per-dimension counts.

    ``nu[k]`` is the number of k-flats in the cover; ``flats`` is sorted by
    (dimension, canonical anchor, canonical basis).
    """

    flats: tuple
    nu: tuple

    def flats_of_dimension(self, k: int):
        return [f for f in self.flats if f.dimension == k]


def strong_cover(scene: Scene,
                 budget: int = DEFAULT_HYPERPLANE_BUDGET,
                 index: ArrangementIndex | None = None) -> StrongCover:
    """Collect every ordinary flat, assert the cover laws, count by dimension.

    Ordinariness is evaluated at one witness per complement cell, re-tested
    at random extra points of the cell, deduplicated by canonical flat
    equality, and then two global assertions are made: every complement
    cell's witness lies on a collected flat of its local dimension (cover
    property), and every flat covers some point no other flat of the same
    dimension covers (minimality).  Assertion failures raise InvariantError
    because the mathematics guarantees both properties.
    """
    if index is None:
        index = enumerate_cells(scene, budget)
    d = scene.dimension
    rng = random.Random(_RETEST_SEED)

    s_cells = [c for c in index.cells if c.in_S]
    flat_of_cell = {}
    local_dim_of_cell = {}
    for cell in s_cells:
        flat = _ordinary_flat_of_cell(index, cell)
        flat_of_cell[cell.sign] = flat
        local_dim_of_cell[cell.sign] = max(
            c.dim for c in index.cofaces(cell) if c.in_S
        )
        # Constancy re-test: the classification must not depend on which
        # point of the cell is asked.
        for q in _sample_cell_points(index, cell, rng, _ORDINARY_RETESTS):
            other = index.cell_of_point(q)
            if other.sign != cell.sign:
                raise InvariantError(
                    f"random point {q} sampled from cell {cell.sign} fell "
                    f"into cell {other.sign}"
                )
            if _ordinary_flat_of_cell(index, other) != flat:
                raise InvariantError(
                    f"ordinariness is not constant on cell {cell.sign}"
                )

    flats = sorted(
        {f for f in flat_of_cell.values() if f is not None},
        key=lambda f: (f.dimension, f.anchor, f.basis),
    )

    # Cover property: every complement point lies on a flat of its local dim.
    for cell in s_cells:
        k = local_dim_of_cell[cell.sign]
        if not any(
            f.dimension == k and f.contains_point(cell.witness) for f in flats
        ):
            raise InvariantError(
                f"cover property failed: cell {cell.sign} (local dimension "
                f"{k}) is covered by no collected flat"
            )

    # Minimality: each flat covers a point that no other same-dim flat covers.
    for flat in flats:
        k = flat.dimension
        rivals = [g for g in flats if g.dimension == k and g != flat]
        witnesses = [
            c for c in s_cells
            if c.dim == k and flat_of_cell[c.sign] == flat
        ]
        if not _minimality_witness(index, flat, rivals, witnesses, rng):
            raise InvariantError(
                f"minimality failed: every point of {flat} is covered by "
                "another flat of the same dimension"
            )

    nu = [0] * (d + 1)
    for f in flats:
        nu[f.dimension] += 1
    return StrongCover(tuple(flats), tuple(nu))


def _minimality_witness(index, flat, rivals, candidate_cells, rng) -> bool:
    if not rivals:
        return bool(candidate_cells)
    for cell in candidate_cells:
        if not any(g.contains_point(cell.witness) for g in rivals):
            return True
        for q in _sample_cell_points(index, cell, rng, 16):
            if not any(g.contains_point(q) for g in rivals):
                return True
    return False


def _sample_cell_points(index, cell, rng, count):
    """Pseudo-random points of a cell: witness walks inside the affine hull.

    Same scheme as :func:`flatcover.model.random_point_in`, but driven by
    the cell's sign vector through the kernel's batched ray query instead of
    materialised constraint rows.
    """
    d = index.scene.dimension
    basis = _cell_flat(index, cell).basis
    if not basis:
        return [cell.witness] * count
    prepared = index.prepared_rows()
    points = []
    for _ in range(count):
        point = cell.witness
        for _attempt in range(32):
            coeffs = [Fraction(rng.randint(-9, 9)) for _ in basis]
            direction = tuple(
                sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(d)
            )
            if all(v == 0 for v in direction):
                continue
            ok, bound = kernel.ray_bound(
                prepared, cell.sign, cell.witness, direction
            )
            if not ok:  # pragma: no cover - basis directions stay in the hull
                continue
            if bound is None:
                bound = Fraction(rng.randint(1, 16))
            t = bound * Fraction(rng.randint(1, 7), 8)
            point = tuple(
                w + t * v for w, v in zip(cell.witness, direction)
            )
            break
        points.append(point)
    return points


def _scene_point(scene, point):
    point = as_vector(point)
    if len(point) != scene.dimension:
        raise InputError(
            f"point has dimension {len(point)}, scene is R^{scene.dimension}"
        )
    return point
