"""Independent verification paths that must agree with the exact engine.

Three cross-checks live here, deliberately built on much simpler machinery
than the arrangement pipeline so that a bug would have to strike twice:

* :func:`sample_check_encapsulated` — probabilistic encapsulation testing.
  Directions are sampled from rational points on the unit-box boundary and
  each one is decided *exactly* by restricting every piece to the ray, so a
  falsifying direction is a hard certificate while confirmation remains
  sampled.
* :func:`grid_cover_check` — reconstructs an estimated flat-cover signature
  from exact membership along a rational grid (dimension at most 2).
* :func:`euler_audit` — rebuilds the contact graph of a pairwise-disjoint
  planar scene and re-derives the counting inequalities that cap the number
  of isolated complement points at ``5f - 11``.
"""

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arrangement import DEFAULT_HYPERPLANE_BUDGET, enumerate_cells
from .constraints import EQ, LE, STRICT_LT
from .errors import InputError, PreconditionError, UnsupportedError
from .kernel import dot
from .lp import lp_feasible
from .model import Scene, bodies_pairwise_disjoint

AGREE_TRUE = "AGREE_TRUE"
FALSE_WITH_CERTIFICATE = "FALSE_WITH_CERTIFICATE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SampleCheck:
    """Outcome of sampled encapsulation testing at one point.

    ``verdict`` is one of the module constants: AGREE_TRUE when every sampled
    direction had a body covering an initial ray segment (confirmation is
    only as strong as the sample), FALSE_WITH_CERTIFICATE when some direction
    provably stays outside every body near the point (``certificate`` holds
    that direction, and the refutation is exact), INCONCLUSIVE when no
    direction could be sampled at all (dimension 0).
    """

    verdict: str
    point: tuple
    trials_used: int
    certificate: Optional[tuple] = None

    def __bool__(self):
        return self.verdict == AGREE_TRUE


def _piece_covers_initial_segment(piece, point, direction) -> bool:
    """Exact 1-D test: does ``piece`` contain ``point + t*direction`` for all
    sufficiently small t > 0?  Restricting each constraint to the ray gives
    an affine function of t whose sign near 0+ is decided by its value and
    slope."""
    for c in piece.constraints:
        value = dot(c.normal, point) - c.offset
        slope = dot(c.normal, direction)
        if c.relation is EQ:
            if value != 0 or slope != 0:
                return False
        elif value > 0:
            return False
        elif value == 0:
            if c.relation is STRICT_LT:
                if slope >= 0:
                    return False
            elif slope > 0:  # LE
                return False
    return True


def _direction_is_covered(scene, point, direction) -> bool:
    """True iff some body covers an initial segment of the ray.  For convex
    pieces the restriction to the ray is an interval, so the union covers an
    initial segment iff a single piece does."""
    return any(
        _piece_covers_initial_segment(piece, point, direction)
        for _, _, piece in scene.all_pieces()
    )


def _box_directions(d: int, trials: int, seed: int):
    """Deterministic stream of rational directions on the unit-box boundary.

    Axis directions and diagonal corners come first (they falsify the common
    axis-aligned scenes immediately); after that, one coordinate is pinned to
    +/-1 and the rest are drawn uniformly from a rational lattice in [-1, 1].
    """
    fixed = []
    for j in range(d):
        for s in (1, -1):
            u = [Fraction(0)] * d
            u[j] = Fraction(s)
            fixed.append(tuple(u))
    if d <= 4:
        for signs in itertools.product((1, -1), repeat=d):
            fixed.append(tuple(Fraction(s) for s in signs))
    rng = random.Random(seed)
    emitted = 0
    for u in fixed:
        if emitted == trials:
            return
        emitted += 1
        yield u
    denom = 257
    while emitted < trials:
        u = [Fraction(rng.randint(-denom, denom), denom) for _ in range(d)]
        pin = rng.randrange(d)
        u[pin] = Fraction(rng.choice((1, -1)))
        emitted += 1
        yield tuple(u)


def sample_check_encapsulated(scene: Scene, point, trials: int,
                              seed: int = 0) -> SampleCheck:
    """Sampled encapsulation check with exact per-direction decisions.

    Draws ``trials`` rational directions on the unit-box boundary.  Each
    direction is decided exactly: if no body covers an initial segment of
    the ray from ``point``, that direction is returned as a falsifying
    certificate (the point is provably not encapsulated).  If every sampled
    direction is covered the verdict is AGREE_TRUE — a sampled confirmation,
    not a proof.
    """
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    point = tuple(Fraction(x) for x in point)
    if len(point) != scene.dimension:
        raise InputError(
            f"point has {len(point)} coordinates in a {scene.dimension}-dim scene"
        )
    inside = scene.body_containing(point)
    if inside is not None:
        raise PreconditionError(
            f"sample check requires a complement point; {point} lies inside "
            f"body {inside.name!r}"
        )
    if scene.dimension == 0:
        return SampleCheck(INCONCLUSIVE, point, 0)
    used = 0
    for direction in _box_directions(scene.dimension, trials, seed):
        used += 1
        if not _direction_is_covered(scene, point, direction):
            return SampleCheck(FALSE_WITH_CERTIFICATE, point, used,
                               certificate=direction)
    return SampleCheck(AGREE_TRUE, point, used)


# ---------------------------------------------------------------------------
# Grid reconstruction of the cover signature (d <= 2)
# ---------------------------------------------------------------------------


def _piece_interval_on_line(piece, anchor, direction):
    """Restrict a piece to the line ``anchor + t*direction``.

    Returns None if the restriction is empty, else ``(lo, lo_open, hi,
    hi_open)`` with None standing for an unbounded end.
    """
    lo, hi = None, None            # bounds on t
    lo_open, hi_open = False, False
    for c in piece.constraints:
        value = dot(c.normal, anchor) - c.offset
        slope = dot(c.normal, direction)
        if c.relation is EQ:
            if slope == 0:
                if value != 0:
                    return None
                continue
            root = -Fraction(value) / slope
            if lo is None or root > lo or (root == lo and not lo_open):
                lo, lo_open = root, False
            if hi is None or root < hi or (root == hi and not hi_open):
                hi, hi_open = root, False
            continue
        strict = c.relation is STRICT_LT
        if slope == 0:
            if value > 0 or (value == 0 and strict):
                return None
            continue
        root = -Fraction(value) / slope
        if slope > 0:
            if hi is None or root < hi or (root == hi and strict and not hi_open):
                hi, hi_open = root, strict
        else:
            if lo is None or root > lo or (root == lo and strict and not lo_open):
                lo, lo_open = root, strict
    if lo is not None and hi is not None:
        if lo > hi:
            return None
        if lo == hi and (lo_open or hi_open):
            return None
    return (lo, lo_open, hi, hi_open)


def _uncovered_on_line(scene, anchor, direction, t_min, t_max):
    """Exact complement structure of the scene on one line, within
    [t_min, t_max]: returns (isolated_ts, open_interval_midpoints)."""
    intervals = []
    for _, _, piece in scene.all_pieces():
        clip = _piece_interval_on_line(piece, anchor, direction)
        if clip is None:
            continue
        lo, lo_open, hi, hi_open = clip
        if lo is None or lo < t_min:
            lo, lo_open = t_min, False
        if hi is None or hi > t_max:
            hi, hi_open = t_max, False
        if lo > hi or (lo == hi and (lo_open or hi_open)):
            continue
        intervals.append((lo, lo_open, hi, hi_open))
    # Sweep: event points are all interval endpoints plus the window ends.
    cuts = {t_min, t_max}
    for lo, _, hi, _ in intervals:
        cuts.add(lo)
        cuts.add(hi)
    cuts = sorted(cuts)

    def covered_at(t):
        return any(
            (lo < t or (lo == t and not lo_open))
            and (t < hi or (t == hi and not hi_open))
            for lo, lo_open, hi, hi_open in intervals
        )

    isolated, midpoints = [], []
    open_runs = []  # maximal uncovered open intervals between cuts
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2
        if not covered_at(mid):
            open_runs.append((a, b))
    merged = []
    for a, b in open_runs:
        if merged and merged[-1][1] == a and not covered_at(a):
            merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    for a, b in merged:
        midpoints.append((a + b) / 2)
    for t in cuts:
        if covered_at(t):
            continue
        in_run = any(a < t < b for a, b in merged)
        at_edge = any(t in (a, b) for a, b in merged)
        if not in_run and not at_edge:
            isolated.append(t)
        elif at_edge and not in_run:
            # Uncovered endpoint of an uncovered run: part of the same
            # 1-D locus, not an isolated point.
            pass
    return isolated, midpoints


def _angular_sort(vectors):
    """Sort exact 2-D direction vectors counterclockwise starting at +x."""
    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    import functools

    def cmp(u, v):
        hu, hv = half(u), half(v)
        if hu != hv:
            return -1 if hu < hv else 1
        cr = u[0] * v[1] - u[1] * v[0]
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    out = []
    for v in sorted(vectors, key=functools.cmp_to_key(cmp)):
        if not out or cmp(out[-1], v) != 0:
            out.append(v)
    return out


def _local_signature(scene, point):
    """Exact local classification of a complement point in the plane.

    Returns ``(kind, directions)`` where kind is 0 (encapsulated: every
    direction covered), 1 (the uncovered directions are isolated — the point
    sits on one or more 1-D complement loci, whose directions are returned),
    or 2 (an uncovered open cone exists: locally 2-D complement).
    """
    criticals = []
    for _, _, piece in scene.all_pieces():
        near = True
        for c in piece.constraints:
            value = dot(c.normal, point) - c.offset
            if value > 0 or (value != 0 and c.relation is EQ):
                near = False
                break
        if not near:
            continue
        for c in piece.constraints:
            if dot(c.normal, point) == c.offset:
                n1, n2 = c.normal
                criticals.append((-n2, n1))
                criticals.append((n2, -n1))
    if not criticals:
        # No body closure touches the point: every direction is uncovered.
        return 2, []
    ordered = _angular_sort(criticals)
    probes = []  # (direction, is_critical)
    count = len(ordered)
    for i, u in enumerate(ordered):
        probes.append((u, True))
        v = ordered[(i + 1) % count]
        mid = (u[0] + v[0], u[1] + v[1])
        if mid == (0, 0):
            # Antipodal criticals: bisect via a quarter turn instead.
            mid = (-u[1], u[0])
        probes.append((mid, False))
    locus_dirs = []
    has_open_gap = False
    for direction, is_critical in probes:
        if _direction_is_covered(scene, point, direction):
            continue
        if is_critical:
            locus_dirs.append(direction)
        else:
            has_open_gap = True
    if has_open_gap:
        return 2, []
    if locus_dirs:
        return 1, locus_dirs
    return 0, []


def _canonical_line_through(point, direction):
    """Integer canonical form (a1, a2, b) of the line through ``point`` along
    ``direction`` (a.x = b, content 1, positive leading coefficient)."""
    from math import gcd

    normal = (-direction[1], direction[0])
    offset = normal[0] * point[0] + normal[1] * point[1]
    denom = 1
    for v in (Fraction(normal[0]), Fraction(normal[1]), Fraction(offset)):
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(Fraction(v) * denom) for v in (normal[0], normal[1], offset)]
    g = gcd(gcd(abs(ints[0]), abs(ints[1])), abs(ints[2]))
    if g:
        ints = [v // g for v in ints]
    lead = ints[0] if ints[0] else ints[1]
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _grid_window(scene):
    """An integer, power-of-two half-width window that contains every
    bounded feature of the scene's constraint arrangement."""
    lines = []
    for _, _, piece in scene.all_pieces():
        for c in piece.constraints:
            lines.append((c.normal, c.offset))
    radius = Fraction(1)
    for normal, b in lines:
        scale = max(abs(a) for a in normal)
        if scale:
            radius = max(radius, abs(Fraction(b)) / scale)
    if scene.dimension == 2:
        for (n1, b1), (n2, b2) in itertools.combinations(lines, 2):
            det = n1[0] * n2[1] - n1[1] * n2[0]
            if det == 0:
                continue
            radius = max(
                radius,
                abs(Fraction(b1 * n2[1] - b2 * n1[1], 1) / det),
                abs(Fraction(n1[0] * b2 - n2[0] * b1, 1) / det),
            )
    half = 1
    while half < radius + 2:
        half *= 2
    return half


def grid_cover_check(scene: Scene, resolution: int):
    """Estimate the cover signature from exact membership along a grid.

    Every grid row and column is restricted exactly (interval arithmetic per
    piece), producing complement points and open complement runs on that
    line; each finding is then classified by an exact local direction probe.
    The result is a (d+1)-tuple estimating (nu_0, ..., nu_d).  The estimate
    can only miss features that dodge every grid line — it never invents
    them — so agreement with the exact engine is meaningful evidence.
    """
    if scene.dimension > 2:
        raise UnsupportedError(
            f"grid check supports dimensions 1 and 2, got {scene.dimension}"
        )
    if scene.dimension < 1:
        raise UnsupportedError("grid check needs a positive dimension")
    if resolution < 16:
        raise InputError(f"resolution must be >= 16, got {resolution}")

    if scene.dimension == 1:
        isolated, midpoints = _uncovered_on_line(
            scene, (Fraction(0),), (Fraction(1),),
            -_grid_window(scene), _grid_window(scene),
        )
        return (len(isolated), 1 if midpoints else 0)

    half = _grid_window(scene)
    step = Fraction(2 * half, resolution)
    points = set()      # isolated complement points (nu_0 candidates)
    lines = set()       # canonical 1-D locus lines
    has_area = False
    coords = [-half + k * step for k in range(resolution + 1)]
    sweeps = [((Fraction(1), Fraction(0)), lambda c: (-half, c)),
              ((Fraction(0), Fraction(1)), lambda c: (c, -half))]
    for direction, anchor_at in sweeps:
        for c in coords:
            anchor = anchor_at(c)
            isolated, midpoints = _uncovered_on_line(
                scene, anchor, direction, Fraction(0), 2 * half
            )
            witnesses = [
                (anchor[0] + t * direction[0], anchor[1] + t * direction[1])
                for t in isolated + midpoints
            ]
            for w in witnesses:
                kind, dirs = _local_signature(scene, w)
                if kind == 0:
                    points.add(w)
                elif kind == 1:
                    for u in dirs:
                        lines.add(_canonical_line_through(w, u))
                else:
                    has_area = True
    return (len(points), len(lines), 1 if has_area else 0)


# ---------------------------------------------------------------------------
# Euler-formula audit of pairwise-disjoint planar scenes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    """Contact-graph counts of a pairwise-disjoint planar scene.

    ``v``, ``e``, ``f`` are the vertex, edge, and face (= body) counts of
    the contact graph; ``e_r`` and ``e_l`` count its unbounded edges (rays
    and full lines); ``X`` counts vertex-edge incidences.  ``checks`` lists
    (name, passed, detail) for each counting inequality, and ``bound_value``
    is the resulting cap 5f - 11 on the number of isolated complement
    points.
    """

    v: int
    e: int
    f: int
    e_r: int
    e_l: int
    X: int
    s_count: int
    bound_value: int
    checks: tuple = field(default_factory=tuple)

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _closure_rows(piece):
    rows = []
    for c in piece.constraints:
        relation = LE if c.relation is STRICT_LT else c.relation
        rows.append(type(c)(c.normal, c.offset, relation))
    return rows


def _implicit_equality_directions(rows, witness, d):
    """Rows of a feasible closed system that hold with equality everywhere."""
    forced = []
    for i, row in enumerate(rows):
        if row.relation is EQ:
            forced.append(row)
            continue
        probe = list(rows)
        probe[i] = type(row)(row.normal, row.offset, STRICT_LT)
        if not lp_feasible(probe, d).feasible:
            forced.append(row)
    return forced


def _body_is_full_dimensional(body, d) -> bool:
    for piece in body.pieces:
        if any(c.relation is EQ for c in piece.constraints):
            continue
        strict = [
            type(c)(c.normal, c.offset, STRICT_LT) for c in piece.constraints
        ]
        if lp_feasible(strict, d).feasible:
            return True
    return False


def _contact_interval(rows, d):
    """For a feasible closed system whose solution set is 1-D, return
    (anchor, direction, lo, hi) with None for unbounded ends."""
    feas = lp_feasible(rows, d)
    if not feas.feasible:
        return None
    witness = feas.witness
    forced = _implicit_equality_directions(rows, witness, d)
    normals = [list(r.normal) for r in forced]
    from .kernel import nullspace, rank

    if not normals:
        return ("full", witness)
    r = rank(normals)
    if r == 0:
        return ("full", witness)
    if r == d:
        return ("point", witness)
    directions = nullspace(normals, d)
    direction = tuple(directions[0])
    lo, hi = None, None
    for row in rows:
        slope = dot(row.normal, direction)
        if slope == 0:
            continue
        root = Fraction(row.offset - dot(row.normal, witness)) / slope
        if slope > 0:
            if hi is None or root < hi:
                hi = root
        else:
            if lo is None or root > lo:
                lo = root
    return ("segment", witness, direction, lo, hi)


def _edge_key(witness, direction, lo, hi):
    line = _canonical_line_through(witness, direction)

    def endpoint(t):
        if t is None:
            return None
        return (witness[0] + t * direction[0], witness[1] + t * direction[1])

    a, b = endpoint(lo), endpoint(hi)
    ends = sorted([p for p in (a, b) if p is not None])
    infinite = (a is None) + (b is None)
    return line, tuple(ends), infinite


def euler_audit(scene: Scene, budget: int = DEFAULT_HYPERPLANE_BUDGET) -> AuditReport:
    """Rebuild the contact graph of a disjoint planar scene and audit the
    counting argument that caps isolated complement points at 5f - 11.

    The graph's edges are the 1-dimensional pairwise closure intersections
    (split at vertices), its vertices are the points lying in at least three
    body closures, and its faces are the bodies themselves.
    """
    if scene.dimension != 2:
        raise UnsupportedError(
            f"the audit is planar only; scene has dimension {scene.dimension}"
        )
    if len(scene.bodies) < 3:
        raise PreconditionError(
            f"the audit needs at least 3 bodies, got {len(scene.bodies)}"
        )
    for body in scene.bodies:
        if not _body_is_full_dimensional(body, 2):
            raise PreconditionError(
                f"body {body.name!r} is not full-dimensional"
            )
    disjoint = bodies_pairwise_disjoint(scene)
    if not disjoint.disjoint:
        a, b = disjoint.pair
        raise PreconditionError(f"bodies {a!r} and {b!r} overlap")

    index = enumerate_cells(scene, budget)
    s_cells = [cell for cell in index.cells if cell.in_S]
    if any(cell.dim > 0 for cell in s_cells):
        bad = next(cell for cell in s_cells if cell.dim > 0)
        raise PreconditionError(
            f"complement is not finite: a {bad.dim}-dimensional complement "
            f"region exists near {bad.witness}"
        )
    s_count = len(s_cells)

    closures = []
    for body in scene.bodies:
        closures.append((body.name, [_closure_rows(p) for p in body.pieces]))

    raw_edges = {}   # (line, pair) -> list of (ends, infinite, witness, direction)
    point_contacts = []
    for (name_i, pieces_i), (name_j, pieces_j) in itertools.combinations(
        closures, 2
    ):
        for rows_i in pieces_i:
            for rows_j in pieces_j:
                shape = _contact_interval(rows_i + rows_j, 2)
                if shape is None:
                    continue
                if shape[0] == "full":
                    raise PreconditionError(
                        f"bodies {name_i!r} and {name_j!r} overlap"
                    )
                if shape[0] == "point":
                    point_contacts.append(shape[1])
                    continue
                _, witness, direction, lo, hi = shape
                line, ends, infinite = _edge_key(witness, direction, lo, hi)
                raw_edges.setdefault((line, (name_i, name_j)), []).append(
                    (ends, infinite, witness, direction, lo, hi)
                )

    def closure_count(point):
        total = 0
        for _name, pieces in closures:
            for rows in pieces:
                if all(r.satisfied_by(point) for r in rows):
                    total += 1
                    break
        return total

    # Candidate vertices: all finite edge endpoints and point contacts.
    candidates = set(tuple(p) for p in point_contacts)
    for pieces in raw_edges.values():
        for ends, _inf, _w, _u, _lo, _hi in pieces:
            for p in ends:
                candidates.add(tuple(p))
    vertices = sorted(p for p in candidates if closure_count(p) >= 3)
    vertex_set = set(vertices)

    edges = []  # (finite_end_count, vertex_incidences)
    e_r = e_l = 0
    for (line, _pair), variants in raw_edges.items():
        # Merge piece-pair fragments lying on the same line: the contact set
        # of two convex bodies is convex, so its fragments form one interval
        # whose ends are the extreme fragment ends in a shared parameter.
        _e0, _i0, witness, direction, _lo0, _hi0 = variants[0]
        norm = dot(direction, direction)

        def param_of(p):
            return dot((p[0] - witness[0], p[1] - witness[1]),
                       direction) / norm

        lo = hi = None
        lo_bounded = hi_bounded = True
        for _ends, _inf, w_k, u_k, lo_k, hi_k in variants:
            same_sense = dot(u_k, direction) > 0
            for t_k, is_upper in ((lo_k, False), (hi_k, True)):
                if t_k is None:
                    # Unbounded fragment end; map its sense onto the shared
                    # direction to know which shared end opens up.
                    if is_upper == same_sense:
                        hi_bounded = False
                    else:
                        lo_bounded = False
                    continue
                p = (w_k[0] + t_k * u_k[0], w_k[1] + t_k * u_k[1])
                t = param_of(p)
                if lo is None or t < lo:
                    lo = t
                if hi is None or t > hi:
                    hi = t
        lo = lo if lo_bounded else None
        hi = hi if hi_bounded else None
        if lo is None and hi is None:
            e_l += 1
            edges.append((0, 0))
            continue
        # Split the (possibly half-infinite) edge at interior vertices.
        interior = []
        for vtx in vertices:
            if _canonical_line_through(vtx, direction) != line:
                continue
            t = param_of(vtx)
            if (lo is None or t > lo) and (hi is None or t < hi):
                interior.append(t)
        cuts = sorted(set(interior))
        bounds = [lo] + cuts + [hi]
        for a, b in zip(bounds, bounds[1:]):
            finite_ends = []
            for t in (a, b):
                if t is None:
                    continue
                p = (witness[0] + t * direction[0],
                     witness[1] + t * direction[1])
                finite_ends.append(p)
            if len(finite_ends) < 2:
                e_r += 1
            incid = sum(1 for p in finite_ends if tuple(p) in vertex_set)
            edges.append((len(finite_ends), incid))

    v = len(vertices)
    e = len(edges)
    f = len(scene.bodies)
    X = sum(incid for _, incid in edges)
    bound_value = 5 * f - 11

    checks = (
        ("euler_formula", v - e + f == 1, f"v - e + f = {v - e + f}"),
        ("vertex_degree", 3 * v <= X, f"3v = {3 * v}, X = {X}"),
        ("incidence_cap", X <= 2 * e - e_r - 2 * e_l,
         f"X = {X}, 2e - e_r - 2e_l = {2 * e - e_r - 2 * e_l}"),
        ("unbounded_edges", e_r + 2 * e_l >= 3,
         f"e_r + 2e_l = {e_r + 2 * e_l}"),
        ("isolated_vs_graph", s_count <= v + e,
         f"|S| = {s_count}, v + e = {v + e}"),
        ("graph_vs_bound", v + e <= bound_value,
         f"v + e = {v + e}, 5f - 11 = {bound_value}"),
    )
    return AuditReport(
        v=v, e=e, f=f, e_r=e_r, e_l=e_l, X=X,
        s_count=s_count, bound_value=bound_value, checks=checks,
    )


__all__ = [
    "AGREE_TRUE",
    "FALSE_WITH_CERTIFICATE",
    "INCONCLUSIVE",
    "SampleCheck",
    "sample_check_encapsulated",
    "grid_cover_check",
    "AuditReport",
    "euler_audit",
]
