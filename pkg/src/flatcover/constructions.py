"""Scene generators realizing the extremal families with known invariants.

Every generator returns a :class:`ConstructionReport` whose expectation
fields are exact values the analysis layer is expected to reproduce; the
test-suite (and the CLI ``verify`` command) re-derive them with the
arrangement engine.  All coordinates are exact rationals.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .constraints import EQ, LE, STRICT_LT, LinConstraint, constraint
from .errors import (
    DocumentedInconsistencyError,
    InputError,
    InvariantError,
    ResourceBudgetError,
    UnsupportedError,
)
from .kernel import dot, nullspace, rank, solve_linear
from .lp import lp_feasible
from .model import ConvexBody, Scene, SemiOpenPiece, piece_contains
from .vectors import Rational, rat, vec

__all__ = [
    "ConstructionReport",
    "gen_interval_chain",
    "gen_grid",
    "gen_three_sets",
    "gen_two_sets_profile",
    "gen_turan_planar",
    "gen_disjoint_planar",
    "gen_neighborly_tiling",
    "gen_carved_tiling",
    "random_scene",
]


@dataclass(frozen=True)
class ConstructionReport:
    """A generated scene together with its expected invariants.

    ``expected_encapsulated`` / ``expected_nu`` are ``None`` when the
    construction does not pin them exactly; ``provenance`` is a short
    human-readable tag describing which construction produced the scene.
    """

    scene: Scene
    expected_encapsulated: Optional[int]
    expected_nu: Optional[tuple]
    expected_disjoint: bool
    provenance: str


# ---------------------------------------------------------------------------
# small builders
# ---------------------------------------------------------------------------


def _piece(d: int, rows: Iterable[tuple]) -> SemiOpenPiece:
    cons = [constraint(normal, rel, offset) for (rel, normal, offset) in rows]
    return SemiOpenPiece(cons, d)


def _body(name: str, d: int, piece_rows: Sequence[Sequence[tuple]]) -> ConvexBody:
    return ConvexBody(name, [_piece(d, rows) for rows in piece_rows])


def _axis(d: int, k: int, value=1) -> tuple:
    v = [0] * d
    v[k] = value
    return tuple(v)


# ---------------------------------------------------------------------------
# interval chain
# ---------------------------------------------------------------------------


def gen_interval_chain(n: int) -> ConstructionReport:
    """``n`` consecutive open intervals on the line with ``n-1`` gap points."""
    if n < 1:
        raise InputError("interval chain needs n >= 1")
    bodies = []
    if n == 1:
        bodies.append(_body("I1", 1, [[(STRICT_LT, (-1,), 0)]]))
        nu = (0, 1)
    else:
        bodies.append(_body("I1", 1, [[(STRICT_LT, (1,), 0)]]))
        for j in range(n - 2):
            bodies.append(
                _body(
                    "I%d" % (j + 2),
                    1,
                    [[(STRICT_LT, (-1,), -j), (STRICT_LT, (1,), j + 1)]],
                )
            )
        bodies.append(_body("I%d" % n, 1, [[(STRICT_LT, (-1,), -(n - 2))]]))
        nu = (n - 1, 0)
    scene = Scene(1, bodies)
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=n - 1,
        expected_nu=nu,
        expected_disjoint=True,
        provenance="interval chain (%d intervals)" % n,
    )


# ---------------------------------------------------------------------------
# axis-parallel slab grid
# ---------------------------------------------------------------------------


def gen_grid(d: int, n: int) -> ConstructionReport:
    """``n`` open slabs, ``n/d`` per axis, missing exactly a lattice of points."""
    if d < 1 or n < 1:
        raise InputError("grid needs d >= 1 and n >= 1")
    if n % d != 0:
        raise InputError("grid needs d to divide n (got d=%d, n=%d)" % (d, n))
    m = n // d
    if m < 2:
        raise InputError("grid needs at least two slabs per axis (n/d >= 2)")
    bodies = []
    for k in range(d):
        axis = _axis(d, k)
        neg_axis = _axis(d, k, -1)
        bodies.append(_body("slab_%d_0" % (k + 1), d, [[(STRICT_LT, axis, 0)]]))
        for j in range(m - 2):
            bodies.append(
                _body(
                    "slab_%d_%d" % (k + 1, j + 1),
                    d,
                    [[(STRICT_LT, neg_axis, -j), (STRICT_LT, axis, j + 1)]],
                )
            )
        bodies.append(
            _body("slab_%d_%d" % (k + 1, m - 1), d, [[(STRICT_LT, neg_axis, -(m - 2))]])
        )
    scene = Scene(d, bodies)
    count = (m - 1) ** d
    nu = tuple([count] + [0] * d)
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=count,
        expected_nu=nu,
        expected_disjoint=(d == 1),
        provenance="axis slab grid (%d slabs per axis in dimension %d)" % (m, d),
    )


# ---------------------------------------------------------------------------
# two bodies realizing an arbitrary 0/1 profile
# ---------------------------------------------------------------------------


def gen_two_sets_profile(profile: Sequence[int]) -> ConstructionReport:
    """Two convex bodies whose cover profile equals ``profile`` exactly.

    ``profile[k]`` is the number of ordinary k-flats (each 0 or 1); the
    construction stacks one extra coordinate per profile bit on top of an
    explicit two-body base on the line.
    """
    profile = tuple(int(b) for b in profile)
    if len(profile) < 2:
        raise InputError("profile needs at least two entries (d >= 1)")
    if any(b not in (0, 1) for b in profile):
        raise InputError("profile entries must be 0 or 1")
    a0, a1 = profile[0], profile[1]
    # 1-dimensional bases for each (a0, a1).
    if (a0, a1) == (0, 0):
        k1 = [[(LE, (1,), 0)]]
        k2 = [[(STRICT_LT, (-1,), 0)]]
    elif (a0, a1) == (1, 0):
        k1 = [[(STRICT_LT, (1,), 0)]]
        k2 = [[(STRICT_LT, (-1,), 0)]]
    elif (a0, a1) == (0, 1):
        k1 = [[(STRICT_LT, (1,), 0)]]
        k2 = [[(STRICT_LT, (-1,), -1)]]
    else:
        k1 = [[(STRICT_LT, (1,), 0)]]
        k2 = [[(STRICT_LT, (-1,), 0), (LE, (1,), 1)]]
    dim = 1
    for bit in profile[2:]:
        dim += 1
        # lift existing pieces into the hyperplane x_dim = 0
        def lift(rows):
            out = []
            for (rel, normal, offset) in rows:
                out.append((rel, tuple(normal) + (0,), offset))
            out.append((EQ, _axis(dim, dim - 1), 0))
            return out

        k1 = [lift(rows) for rows in k1]
        k2 = [lift(rows) for rows in k2]
        k1.append([(STRICT_LT, _axis(dim, dim - 1), 0)])
        if bit:
            k2.append([(STRICT_LT, _axis(dim, dim - 1, -1), 0), (LE, _axis(dim, dim - 1), 1)])
        else:
            k2.append([(STRICT_LT, _axis(dim, dim - 1, -1), 0)])
    scene = Scene(dim, [_body("K1", dim, k1), _body("K2", dim, k2)])
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=profile[0],
        expected_nu=profile,
        expected_disjoint=True,
        provenance="two-body profile stack %s" % (profile,),
    )


# ---------------------------------------------------------------------------
# three bodies encapsulating floor(3d/2)+1 points
# ---------------------------------------------------------------------------

_THREE_SETS_MAX_DIM = 5

# ray directions in the two fresh coordinates used by each induction step
_RAY_1 = (Fraction(1), Fraction(0))
_RAY_2 = (Fraction(-1), Fraction(1))
_RAY_3 = (Fraction(-1), Fraction(-1))


def _three_sets_base_1() -> list:
    return [
        [[(STRICT_LT, (1,), 0)]],
        [[(STRICT_LT, (-1,), 0), (STRICT_LT, (1,), 1)]],
        [[(STRICT_LT, (-1,), -1)]],
    ]


def _three_sets_base_2() -> list:
    # rays r1=(1,0), r2=(-1,1), r3=(-1,-1); wedge W_i spans the two rays
    # other than r_i; near segments and far rays split each ray around the
    # excluded point on it.
    k1 = [
        [(STRICT_LT, (1, 1), 0), (STRICT_LT, (1, -1), 0)],        # wedge(r2, r3)
        [(EQ, (1, 1), 0), (STRICT_LT, (0, -1), 0), (STRICT_LT, (0, 1), 1)],   # (0, x2)
        [(EQ, (1, -1), 0), (STRICT_LT, (0, 1), 0), (STRICT_LT, (0, -1), 1)],  # (0, x3)
    ]
    k2 = [
        [(STRICT_LT, (-1, 1), 0), (STRICT_LT, (0, 1), 0)],        # wedge(r3, r1)
        [(EQ, (0, 1), 0), (STRICT_LT, (-1, 0), 0), (STRICT_LT, (1, 0), 1)],   # (0, x1)
        [(EQ, (1, -1), 0), (STRICT_LT, (0, 1), -1)],              # ray beyond x3
    ]
    k3 = [
        [(STRICT_LT, (0, -1), 0), (STRICT_LT, (-1, -1), 0)],      # wedge(r1, r2)
        [(EQ, (0, 1), 0), (STRICT_LT, (-1, 0), -1)],              # ray beyond x1
        [(EQ, (1, 1), 0), (STRICT_LT, (0, -1), -1)],              # ray beyond x2
    ]
    return [k1, k2, k3]


def _pad_rows(rows, extra):
    out = []
    for (rel, normal, offset) in rows:
        out.append((rel, tuple(normal) + (0,) * extra, offset))
    return out


def _closure_rows(rows):
    """Relax strict rows to weak ones (closure of the piece)."""
    out = []
    for (rel, normal, offset) in rows:
        out.append((LE if rel is STRICT_LT else rel, normal, offset))
    return out


def _find_weak_separator(d, piece_sets_a, piece_sets_b, direction_basis):
    """Affine c.x <= gamma valid on every A piece, >= gamma on every B piece,
    with c not constant along the given direction basis.  Farkas multipliers
    make validity over each (closed) piece a linear condition."""
    pieces_a = [_closure_rows(rows) for rows in piece_sets_a]
    pieces_b = [_closure_rows(rows) for rows in piece_sets_b]
    mu_sizes = [len(rows) for rows in pieces_a]
    nu_sizes = [len(rows) for rows in pieces_b]
    n_vars = d + 1 + sum(mu_sizes) + sum(nu_sizes)

    def var_c(i):
        return i

    gamma = d

    def build(rows_list, sizes, start, sign):
        cons = []
        base = start
        for rows, size in zip(rows_list, sizes):
            # sum_r mult_r * normal_r == sign * c   (d equality rows)
            for coord in range(d):
                coeffs = [Fraction(0)] * n_vars
                for r, (rel, normal, offset) in enumerate(rows):
                    coeffs[base + r] = Fraction(normal[coord])
                coeffs[var_c(coord)] = Fraction(-sign)
                cons.append(constraint(tuple(coeffs), EQ, 0))
            # sum_r mult_r * offset_r <= sign * gamma
            coeffs = [Fraction(0)] * n_vars
            for r, (rel, normal, offset) in enumerate(rows):
                coeffs[base + r] = Fraction(offset)
            coeffs[gamma] = Fraction(-sign)
            cons.append(constraint(tuple(coeffs), LE, 0))
            # inequality multipliers are nonnegative (EQ rows stay free)
            for r, (rel, normal, offset) in enumerate(rows):
                if rel is not EQ:
                    coeffs = [Fraction(0)] * n_vars
                    coeffs[base + r] = Fraction(-1)
                    cons.append(constraint(tuple(coeffs), LE, 0))
            base += size
        return cons, base

    base_cons, after_a = build(pieces_a, mu_sizes, d + 1, 1)
    more, _ = build(pieces_b, nu_sizes, after_a, -1)
    base_cons += more

    for u in direction_basis:
        for sign in (1, -1):
            coeffs = [Fraction(0)] * n_vars
            for coord in range(d):
                coeffs[coord] = Fraction(u[coord])
            norm_row = constraint(tuple(coeffs), EQ, sign)
            res = lp_feasible(base_cons + [norm_row], n_vars)
            if res:
                point = res.witness
                c = tuple(point[i] for i in range(d))
                return c, point[gamma]
    raise InvariantError("no weak separator found for half-flat split")


def _split_half_flat(d, eq_rows, sigma_normal, sigma_z, z_point, pieces_a, pieces_b):
    """Distribute the open half-flat {eq_rows, sigma > 0} minus the point z
    between the two sides so that each side stays convex when united with its
    base pieces.  Returns (new_pieces_a, new_pieces_b)."""
    out_a: list = []
    out_b: list = []

    def recurse(eq_rows, pieces_a, pieces_b):
        eq_normals = [list(normal) for (rel, normal, offset) in eq_rows]
        normals = eq_normals + [list(sigma_normal)]
        if rank(eq_normals) >= d - 1:
            # the half-flat is one-dimensional: split around z
            near = list(eq_rows) + [
                (STRICT_LT, tuple(-x for x in sigma_normal), 0),
                (STRICT_LT, sigma_normal, sigma_z),
            ]
            far = list(eq_rows) + [(STRICT_LT, tuple(-x for x in sigma_normal), -sigma_z)]
            anchor = _solve_affine(eq_rows + [(EQ, sigma_normal, 0)], d)
            owner_b = anchor is not None and any(
                _rows_contain(rows, anchor, d) for rows in pieces_b
            )
            if owner_b:
                out_b.append(near)
                out_a.append(far)
            else:
                out_a.append(near)
                out_b.append(far)
            return
        dir_basis = nullspace([list(nm) for nm in normals], d)
        c, gamma = _find_weak_separator(d, pieces_a, pieces_b, dir_basis)
        # g(x) = c.x - gamma + alpha * sigma(x), forced to vanish at z
        h_z = dot(c, z_point) - gamma
        alpha = -h_z / sigma_z
        g_normal = tuple(Fraction(c[i]) + alpha * Fraction(sigma_normal[i]) for i in range(d))
        g_offset = gamma
        neg_sigma = tuple(-x for x in sigma_normal)
        out_a.append(list(eq_rows) + [(STRICT_LT, neg_sigma, 0), (STRICT_LT, g_normal, g_offset)])
        out_b.append(
            list(eq_rows)
            + [(STRICT_LT, neg_sigma, 0), (STRICT_LT, tuple(-x for x in g_normal), -g_offset)]
        )
        g_eq = (EQ, g_normal, g_offset)
        next_a = [rows + [g_eq] for rows in pieces_a if _rows_feasible(rows + [g_eq], d)]
        next_b = [rows + [g_eq] for rows in pieces_b if _rows_feasible(rows + [g_eq], d)]
        recurse(list(eq_rows) + [g_eq], next_a, next_b)

    recurse(list(eq_rows), list(pieces_a), list(pieces_b))
    return out_a, out_b


def _rows_feasible(rows, d):
    cons = [constraint(normal, rel, offset) for (rel, normal, offset) in rows]
    return bool(lp_feasible(cons, d))


def _rows_contain(rows, point, d):
    for (rel, normal, offset) in rows:
        c = constraint(normal, rel, offset)
        if not c.satisfied_by(point):
            return False
    return True


def _solve_affine(eq_rows, d):
    """A point satisfying the given equality rows, or None."""
    rows = [list(normal) for (rel, normal, offset) in eq_rows]
    rhs = [Fraction(offset) for (rel, normal, offset) in eq_rows]
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    return tuple(sol)


def gen_three_sets(d: int) -> ConstructionReport:
    """Three pairwise disjoint bodies leaving exactly floor(3d/2)+1 points.

    Recursive over d -> d-2: the plane spanned by the two fresh coordinates
    carries three rays; each of the three open half-hyperplanes around the
    old flat is split between two of the bodies, excluding one new point.
    """
    if d < 0:
        raise InputError("dimension must be nonnegative")
    if d == 0:
        raise DocumentedInconsistencyError(
            "the 0-dimensional case is inconsistent between the counting "
            "formula (1) and the tabulated value (0); the generator starts at d=1"
        )
    if d > _THREE_SETS_MAX_DIM:
        raise ResourceBudgetError(
            "three-body construction is budgeted to d <= %d" % _THREE_SETS_MAX_DIM,
            count=d,
        )
    if d == 1:
        piece_lists = _three_sets_base_1()
    elif d == 2:
        piece_lists = _three_sets_base_2()
    else:
        prev = gen_three_sets(d - 2)
        lifted = []
        for body in prev.scene.bodies:
            rows_list = []
            for piece in body.pieces:
                rows = [(c.relation, c.normal, c.offset) for c in piece.constraints]
                rows = _pad_rows(rows, 2)
                rows.append((EQ, _axis(d, d - 2), 0))
                rows.append((EQ, _axis(d, d - 1), 0))
                rows_list.append(rows)
            lifted.append(rows_list)

        rays = (_RAY_1, _RAY_2, _RAY_3)

        def plane_vec(pair):
            return tuple([Fraction(0)] * (d - 2) + [pair[0], pair[1]])

        # wedge W_i = open cone spanned by the two rays other than r_i
        wedges = [
            [
                (STRICT_LT, plane_vec((Fraction(1), Fraction(1))), 0),
                (STRICT_LT, plane_vec((Fraction(1), Fraction(-1))), 0),
            ],
            [
                (STRICT_LT, plane_vec((Fraction(-1), Fraction(1))), 0),
                (STRICT_LT, plane_vec((Fraction(0), Fraction(1))), 0),
            ],
            [
                (STRICT_LT, plane_vec((Fraction(0), Fraction(-1))), 0),
                (STRICT_LT, plane_vec((Fraction(-1), Fraction(-1))), 0),
            ],
        ]
        piece_lists = [list(rows) + [wedges[i]] for i, rows in enumerate(lifted)]

        # pair (i, j) shares the half-hyperplane around ray r_k
        for (i, j, k) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            r = rays[k]
            perp = plane_vec((-r[1], r[0]))
            sigma = plane_vec(r)
            sigma_z = Fraction(r[0] * r[0] + r[1] * r[1])
            z_pt = tuple([Fraction(0)] * (d - 2) + [r[0], r[1]])
            eq_rows = [(EQ, perp, 0)]
            new_a, new_b = _split_half_flat(
                d, eq_rows, sigma, sigma_z, z_pt, lifted[i], lifted[j]
            )
            piece_lists[i] += new_a
            piece_lists[j] += new_b

    bodies = [
        _body("K%d" % (i + 1), d, rows_list) for i, rows_list in enumerate(piece_lists)
    ]
    scene = Scene(d, bodies)
    count = (3 * d) // 2 + 1
    nu = tuple([count] + [0] * d)
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=count,
        expected_nu=nu,
        expected_disjoint=True,
        provenance="three-body recursive construction (d=%d)" % d,
    )


# ---------------------------------------------------------------------------
# planar complete 4-partite contact family
# ---------------------------------------------------------------------------


def _hull_2d(points):
    """Convex hull (Andrew monotone chain) of exact 2-d points, CCW order."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return list(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _open_polygon_rows(hull):
    """Strict H-representation of the open interior of a CCW polygon."""
    rows = []
    m = len(hull)
    for idx in range(m):
        a = hull[idx]
        b = hull[(idx + 1) % m]
        # inward side of edge a->b for CCW polygons: normal (dy, -dx) gives
        # normal . x < normal . a
        normal = (b[1] - a[1], a[0] - b[0])
        offset = normal[0] * a[0] + normal[1] * a[1]
        rows.append((STRICT_LT, normal, offset))
    return rows


def _edge_on_hull(hull, a, b):
    m = len(hull)
    for idx in range(m):
        p, q = hull[idx], hull[(idx + 1) % m]
        if (p, q) == (a, b) or (p, q) == (b, a):
            return True
    return False


def _segment_meets_open_rows(a, b, rows):
    """Exact test: does the open segment (a, b) meet the open polygon?

    ``rows`` is the strict H-representation produced by
    ``_open_polygon_rows``.  Clips the parameter interval of the segment
    against every strict half-plane.
    """
    lo, hi = Fraction(0), Fraction(1)
    dx, dy = b[0] - a[0], b[1] - a[1]
    for _rel, normal, offset in rows:
        base = normal[0] * a[0] + normal[1] * a[1]
        slope = normal[0] * dx + normal[1] * dy
        if slope == 0:
            if base >= offset:
                return False
        elif slope > 0:
            hi = min(hi, Fraction(offset - base, 1) / slope)
        else:
            lo = max(lo, Fraction(offset - base, 1) / slope)
        if lo >= hi:
            return False
    return lo < hi


def _canonical_line(a, b):
    """Canonical (normal, offset) key for the line through two exact points."""
    normal = (b[1] - a[1], a[0] - b[0])
    offset = normal[0] * a[0] + normal[1] * a[1]
    denom = 1
    for value in (normal[0], normal[1], offset):
        denom = denom * value.denominator // gcd(denom, value.denominator)
    ints = [int(v * denom) for v in (normal[0], normal[1], offset)]
    g = gcd(gcd(abs(ints[0]), abs(ints[1])), abs(ints[2]))
    if g:
        ints = [v // g for v in ints]
    lead = ints[0] if ints[0] else ints[1]
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _turan_band(w0, along, nrm, n_fangs, n_slots, depth_scale):
    """Vertex grid of one contact band hugging one scaffold wall.

    The band lives on the ``nrm`` side of the wall, spanning the middle
    three quarters of the segment ``w0 + s * along``.  It carries
    ``n_fangs`` disjoint chords of a concave dip profile; fang ``t`` is
    subdivided into ``n_slots`` sub-chords, each lifted toward the wall by
    a strictly concave cap so that consecutive sub-chords never share a
    line.  Fang ``t``'s whole sub-chord chain bounds one body of the
    wall-owning family, while sub-chord ``ell`` of every fang bounds body
    ``ell`` of the family across the wall.
    """
    eps = depth_scale / (1024 * n_fangs * n_fangs * n_slots * n_slots)
    pitch = Fraction(3, 4) / n_fangs

    def dip(s):
        u = (s - Fraction(1, 8)) * Fraction(4, 3)
        return 4 * depth_scale * u * (1 - u)

    fangs = []
    for t in range(n_fangs):
        left = Fraction(1, 8) + t * pitch + pitch / 8
        right = left + 3 * pitch / 4
        d_left, d_right = dip(left), dip(right)
        row = []
        for m in range(n_slots + 1):
            frac = Fraction(m, n_slots)
            s = left + (right - left) * frac
            depth = d_left + (d_right - d_left) * frac - eps * m * (n_slots - m)
            row.append(
                (w0[0] + along[0] * s + nrm[0] * depth,
                 w0[1] + along[1] * s + nrm[1] * depth)
            )
        fangs.append(row)
    return fangs


def gen_turan_planar(n1: int, n2: int, n3: int, n4: int) -> ConstructionReport:
    """Four families of open polygons realizing every cross-family contact.

    Bodies of the same family overlap; bodies of different families share
    exactly one boundary edge per pair, so the cover has exactly
    ``sum n_p n_q`` ordinary lines.  Along each of the six scaffold walls
    the lower-index family digs ``n_p`` dipped fang chains into its own
    territory and the higher-index family reaches across the wall, riding
    one sub-chord of every fang.  Each sub-chord is then a common boundary
    edge of one body from each side, and the line it spans weakly
    separates that pair and no other.
    """
    parts = (n1, n2, n3, n4)
    if any(p < 1 for p in parts):
        raise InputError("all four part sizes must be >= 1")

    corner_a = (rat(0), rat(4))
    corner_b = (rat(-4), rat(-2))
    corner_c = (rat(4), rat(-2))
    far_a = (rat(0), rat(8))
    far_b = (rat(-8), rat(-4))
    far_c = (rat(8), rat(-4))
    # family territories: 0 upper-left, 1 upper-right, 2 bottom, 3 the
    # central triangle; each pair of territories shares one wall segment.
    walls = {
        (0, 1): (corner_a, far_a),
        (0, 2): (corner_b, far_b),
        (0, 3): (corner_a, corner_b),
        (1, 2): (corner_c, far_c),
        (1, 3): (corner_a, corner_c),
        (2, 3): (corner_b, corner_c),
    }
    anchors = [(rat(-3), rat(3)), (rat(3), rat(3)), (rat(0), rat(-5)), (rat(0), rat(0))]

    lines_wanted = sum(parts[i] * parts[j] for i in range(4) for j in range(i + 1, 4))
    problem = None
    for attempt in range(5):
        depth_scale = Fraction(1, 32 * (1 << attempt))
        point_sets = {}
        for f in range(4):
            for ell in range(1, parts[f] + 1):
                point_sets[(f, ell)] = []
        chords = []
        for (p, q), (w0, w1) in walls.items():
            along = (w1[0] - w0[0], w1[1] - w0[1])
            nrm = (-along[1], along[0])
            side = nrm[0] * (anchors[p][0] - w0[0]) + nrm[1] * (anchors[p][1] - w0[1])
            if side < 0:
                nrm = (-nrm[0], -nrm[1])
            fangs = _turan_band(w0, along, nrm, parts[p], parts[q], depth_scale)
            for t in range(1, parts[p] + 1):
                row = fangs[t - 1]
                point_sets[(p, t)].extend(row)
                for ell in range(1, parts[q] + 1):
                    point_sets[(q, ell)].extend([row[ell - 1], row[ell]])
                    chords.append(((p, t), (q, ell), row[ell - 1], row[ell]))

        hulls = {}
        rows_by_key = {}
        problem = None
        for key, pts in point_sets.items():
            hull = _hull_2d(pts)
            if len(hull) != len(set(pts)):
                problem = "vertex of body %s fell off its hull" % (key,)
                break
            hulls[key] = hull
            rows_by_key[key] = _open_polygon_rows(hull)
        if problem is None:
            for owner_a, owner_b, pa, pb in chords:
                if not (_edge_on_hull(hulls[owner_a], pa, pb)
                        and _edge_on_hull(hulls[owner_b], pa, pb)):
                    problem = "contact %s|%s is not an edge of both hulls" % (owner_a, owner_b)
                    break
                for key, rows in rows_by_key.items():
                    if _segment_meets_open_rows(pa, pb, rows):
                        problem = "contact %s|%s is covered by body %s" % (owner_a, owner_b, key)
                        break
                if problem is not None:
                    break
        if problem is None:
            if len({_canonical_line(pa, pb) for _, _, pa, pb in chords}) != lines_wanted:
                problem = "contact lines are not pairwise distinct"
        if problem is None:
            break
    else:
        raise InvariantError("contact bands failed exact checks: %s" % problem)

    bodies = []
    for f in range(4):
        for ell in range(1, parts[f] + 1):
            bodies.append(_body("K%d_%d" % (f + 1, ell), 2, [rows_by_key[(f, ell)]]))
    scene = Scene(2, bodies)
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=0,
        expected_nu=(0, lines_wanted, 1),
        expected_disjoint=max(parts) == 1,
        provenance="four-family contact polygons %s" % (parts,),
    )


# ---------------------------------------------------------------------------
# planar pairwise-disjoint family with |S| = 5n - 11
# ---------------------------------------------------------------------------


def gen_disjoint_planar(n: int) -> ConstructionReport:
    """``n`` pairwise disjoint planar bodies tiling the plane minus 5n-11 points."""
    if n < 3:
        raise InputError("needs n >= 3 bodies")
    if n == 3:
        base = gen_three_sets(2)
        return ConstructionReport(
            scene=base.scene,
            expected_encapsulated=4,
            expected_nu=(4, 0, 0),
            expected_disjoint=True,
            provenance="disjoint planar family (n=3 wedge base)",
        )

    steps = n - 3
    # upper/lower frontier lines; step k (1-based) cuts at x = -2k and tilts
    # the outer side lines by the shear 1/(8 * (k+3)).
    up_slope = [Fraction(1)]
    lo_slope = [Fraction(1)]
    up_pts = [(rat(0), rat(0))]   # placeholder; p2^(0) is the origin
    lo_pts = [(rat(0), rat(0))]
    for k in range(1, steps + 1):
        shear = Fraction(1, 8 * (k + 3))
        up_slope.append(up_slope[-1] + shear)
        lo_slope.append(lo_slope[-1] + shear)
    # p2^(k): point on upper line k-1 at x = -2k
    p_up = [(Fraction(0), Fraction(0))]
    for k in range(1, steps + 1):
        x = Fraction(-2 * k)
        prev_x, prev_y = p_up[k - 1]
        y = prev_y + (prev_x - x) * up_slope[k - 1]
        p_up.append((x, y))
    p_lo = [(x, -y) for (x, y) in p_up]  # mirror symmetry

    def up_line_row(k, strict_side):
        """Constraint row for the upper side line number k (0 = the ray
        through the origin).  ``strict_side`` +1 keeps the region above/right
        (the shrinking upper body), -1 keeps below (chain bodies)."""
        # line through p_up[k] with direction (-1, up_slope[k]):
        # normal (up_slope[k], 1), value at points on the line constant
        nx, ny = up_slope[k], Fraction(1)
        px, py = p_up[k]
        off = nx * px + ny * py
        if strict_side > 0:
            return (STRICT_LT, (-nx, -ny), -off)
        return (STRICT_LT, (nx, ny), off)

    def up_line_eq(k):
        nx, ny = up_slope[k], Fraction(1)
        px, py = p_up[k]
        return (EQ, (nx, ny), nx * px + ny * py)

    def lo_line_row(k, strict_side):
        nx, ny = lo_slope[k], Fraction(-1)
        px, py = p_lo[k]
        off = nx * px + ny * py
        if strict_side > 0:
            return (STRICT_LT, (-nx, -ny), -off)
        return (STRICT_LT, (nx, ny), off)

    def lo_line_eq(k):
        nx, ny = lo_slope[k], Fraction(-1)
        px, py = p_lo[k]
        return (EQ, (nx, ny), nx * px + ny * py)

    def x_between(lo, hi):
        rows = []
        if lo is not None:
            rows.append((STRICT_LT, (-1, 0), -lo))
        if hi is not None:
            rows.append((STRICT_LT, (1, 0), hi))
        return rows

    # --- the two shrinking outer bodies -----------------------------------
    up_rows = [[(STRICT_LT, (0, -1), 0), (STRICT_LT, (-1, -1), 0)]
               + [up_line_row(k, +1) for k in range(1, steps + 1)]]
    lo_rows = [[(STRICT_LT, (0, 1), 0), (STRICT_LT, (-1, 1), 0)]
               + [lo_line_row(k, +1) for k in range(1, steps + 1)]]
    # boundary bits of the upper body: far ray on the horizontal axis,
    # far sub-bit on each side line (between its midpoint marker and the next
    # frontier point), and the far tail of the last side line.
    up_rows.append([(EQ, (0, 1), 0), (STRICT_LT, (-1, 0), -1)])
    lo_rows.append([(EQ, (0, 1), 0), (STRICT_LT, (-1, 0), 0), (STRICT_LT, (1, 0), 1)])
    # segment (x2, p_up[1]) on the ray x+y=0: parameter y in (1, 2)
    up_rows.append([(EQ, (1, 1), 0), (STRICT_LT, (0, -1), -1), (STRICT_LT, (0, 1), 2)])
    lo_rows.append([(EQ, (1, -1), 0), (STRICT_LT, (0, 1), -1), (STRICT_LT, (0, -1), 2)])
    for k in range(1, steps + 1):
        # marker point q_k on line k at x = -2k - 1
        if k < steps:
            up_rows.append([up_line_eq(k)] + x_between(Fraction(-2 * (k + 1)), Fraction(-2 * k - 1)))
            lo_rows.append([lo_line_eq(k)] + x_between(Fraction(-2 * (k + 1)), Fraction(-2 * k - 1)))
        else:
            up_rows.append([up_line_eq(k)] + x_between(None, Fraction(-2 * k - 1)))
            lo_rows.append([lo_line_eq(k)] + x_between(None, Fraction(-2 * k - 1)))

    bodies_rows = [up_rows, lo_rows]

    # --- chain bodies -------------------------------------------------------
    chain = []
    # first chain body: wedge between the base rays, right of the first cut
    c_rows = [[(STRICT_LT, (1, 1), 0), (STRICT_LT, (1, -1), 0), (STRICT_LT, (-1, 0), 2)]]
    c_rows.append([(EQ, (1, 1), 0), (STRICT_LT, (0, -1), 0), (STRICT_LT, (0, 1), 1)])
    c_rows.append([(EQ, (1, -1), 0), (STRICT_LT, (0, 1), 0), (STRICT_LT, (0, -1), 1)])
    # upper bit of cut 1
    c_rows.append([(EQ, (1, 0), -2), (STRICT_LT, (0, -1), 0), (STRICT_LT, (0, 1), p_up[1][1])])
    chain.append(c_rows)
    for k in range(1, steps):
        rows = [[up_line_row(k, -1), lo_line_row(k, -1)]
                + x_between(Fraction(-2 * (k + 1)), Fraction(-2 * k))]
        # near bits of its side lines
        rows.append([up_line_eq(k)] + x_between(Fraction(-2 * k - 1), Fraction(-2 * k)))
        rows.append([lo_line_eq(k)] + x_between(Fraction(-2 * k - 1), Fraction(-2 * k)))
        # lower bit of its left-hand cut, upper bit of its right-hand cut
        rows.append([(EQ, (1, 0), Fraction(-2 * k)), (STRICT_LT, (0, 1), 0),
                     (STRICT_LT, (0, -1), -p_lo[k][1])])
        rows.append([(EQ, (1, 0), Fraction(-2 * (k + 1))), (STRICT_LT, (0, -1), 0),
                     (STRICT_LT, (0, 1), p_up[k + 1][1])])
        chain.append(rows)
    # unbounded last body
    rows = [[up_line_row(steps, -1), lo_line_row(steps, -1),
             (STRICT_LT, (1, 0), Fraction(-2 * steps))]]
    rows.append([up_line_eq(steps)] + x_between(Fraction(-2 * steps - 1), Fraction(-2 * steps)))
    rows.append([lo_line_eq(steps)] + x_between(Fraction(-2 * steps - 1), Fraction(-2 * steps)))
    rows.append([(EQ, (1, 0), Fraction(-2 * steps)), (STRICT_LT, (0, 1), 0),
                 (STRICT_LT, (0, -1), -p_lo[steps][1])])
    chain.append(rows)

    bodies_rows += chain
    names = ["K_up", "K_down"] + ["C%d" % (i + 1) for i in range(len(chain))]
    bodies = [_body(nm, 2, rows) for nm, rows in zip(names, bodies_rows)]
    scene = Scene(2, bodies)
    count = 5 * n - 11
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=count,
        expected_nu=(count, 0, 0),
        expected_disjoint=True,
        provenance="disjoint planar family (n=%d, corner-pivot splits)" % n,
    )


# ---------------------------------------------------------------------------
# dual-projection tilings (neighborly and carved)
# ---------------------------------------------------------------------------


def _moment_dual_data(d: int, n: int):
    """Dual-polytope projection data for the cyclic (d+1)-polytope on the
    moment curve: facet functionals of the dual live in the projection plane.

    Returns (g_rows, tiles, vertex_images) where ``g_rows[i][k]`` is the
    affine functional (normal, offset) with g_ik <= 0 exactly on tile i, and
    ``vertex_images`` are the projected dual vertices (minus the top one).
    """
    dim_up = d + 1
    # strictly increasing parameters with asymmetric spacing: the facet
    # combinatorics depend only on the order, and breaking the reflection
    # symmetry keeps the dual-vertex heights pairwise distinct
    ts = [Fraction(t) for t in range(1, n)] + [Fraction(2 * n + 1, 2)]
    raw = [tuple(t ** (j + 1) for j in range(dim_up)) for t in ts]
    centroid = tuple(sum(v[j] for v in raw) / n for j in range(dim_up))
    w = [tuple(v[j] - centroid[j] for j in range(dim_up)) for v in raw]

    # facets of the cyclic polytope via the evenness rule on index runs
    facets = []
    for F in itertools.combinations(range(n), dim_up):
        members = set(F)
        ok = True
        run = 0
        for idx in range(n):
            if idx in members:
                run += 1
            else:
                if run % 2 == 1:
                    # a maximal run ending strictly inside must be even,
                    # unless it started at the first index
                    if idx - run != 0:
                        ok = False
                        break
                run = 0
        # trailing run (touching the last index) is unconstrained
        if ok:
            facets.append(F)
    verts = {}
    for F in facets:
        rows = [list(w[i]) for i in F]
        rhs = [Fraction(1)] * dim_up
        sol = solve_linear(rows, rhs)
        if sol is None:
            raise InvariantError("degenerate dual vertex system")
        y = tuple(sol)
        for k in range(n):
            if k not in F and dot(w[k], y) >= 1:
                raise InvariantError("dual vertex fails a facet inequality")
        verts[F] = y

    heights = [(y[dim_up - 1], F) for F, y in verts.items()]
    heights.sort(reverse=True)
    if len(heights) > 1 and heights[0][0] == heights[1][0]:
        raise InvariantError("top dual vertex is not unique")
    h_top, top_facet = heights[0]
    top = verts[top_facet]
    h_second = heights[1][0] if len(heights) > 1 else h_top - 1
    q = tuple(sum(y[j] for y in verts.values()) / len(verts) for j in range(dim_up))
    h_q = q[dim_up - 1]
    t_step = min(Fraction(1, 2), (h_top - h_second) / (2 * (h_top - h_q)))
    x_prime = tuple(top[j] + t_step * (q[j] - top[j]) for j in range(dim_up))

    a = [1 - dot(w_k, x_prime) for w_k in w]
    if any(val <= 0 for val in a):
        raise InvariantError("projection center escaped the dual polytope")

    c_plane = min(y[dim_up - 1] for y in verts.values()) - 1

    def g_row(i, k):
        # g_ik(u) = a_i * (w_k . (u, c) - 1) - a_k * (w_i . (u, c) - 1)
        normal = tuple(a[i] * w[k][j] - a[k] * w[i][j] for j in range(d))
        const = (
            a[i] * (w[k][dim_up - 1] * c_plane - 1)
            - a[k] * (w[i][dim_up - 1] * c_plane - 1)
        )
        return (normal, -const)

    g_rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if i != k:
                g_rows[i][k] = g_row(i, k)

    images = []
    hx = x_prime[dim_up - 1]
    for F, y in verts.items():
        if F == top_facet:
            continue
        lam = (c_plane - hx) / (y[dim_up - 1] - hx)
        img = tuple(x_prime[j] + lam * (y[j] - x_prime[j]) for j in range(d))
        images.append(img)
    if len(set(images)) != len(images):
        raise InvariantError("projected dual vertices collide")
    return g_rows, len(facets), images


def _simplex_fan_rows(d: int):
    """Open cones of the central fan spanned by e_1..e_d and -(1,..,1)."""
    gens = [tuple(Fraction(1) if j == i else Fraction(0) for j in range(d)) for i in range(d)]
    gens.append(tuple(Fraction(-1) for _ in range(d)))
    bodies = []
    for i in range(d + 1):
        cols = [gens[j] for j in range(d + 1) if j != i]
        # solve M^-1 row by row: rows r with r . col_j = delta
        rows = []
        for r in range(d):
            mat = [[cols[c][j] for c in range(d)] for j in range(d)]
            rhs = [Fraction(1) if j == r else Fraction(0) for j in range(d)]
            # want row vector v with v . col_c = delta_rc: transpose system
            matT = [[cols[c][j] for j in range(d)] for c in range(d)]
            sol = solve_linear(matT, rhs)
            if sol is None:
                raise InvariantError("singular fan cone")
            rows.append(tuple(sol))
        body_rows = [(STRICT_LT, tuple(-x for x in row), 0) for row in rows]
        bodies.append([body_rows])
    return bodies


def gen_neighborly_tiling(d: int, n: int) -> ConstructionReport:
    """``n`` open bodies whose closures tile space with all pairs adjacent."""
    if d < 3:
        raise UnsupportedError("the dual-projection tiling needs dimension >= 3")
    if n < d + 1:
        raise InputError("needs at least d+1 bodies")
    if n == d + 1:
        piece_lists = _simplex_fan_rows(d)
    else:
        g_rows, _, _ = _moment_dual_data(d, n)
        piece_lists = []
        for i in range(n):
            rows = []
            for k in range(n):
                if k == i:
                    continue
                normal, offset = g_rows[i][k]
                rows.append((STRICT_LT, normal, offset))
            piece_lists.append([rows])
    bodies = [_body("T%d" % (i + 1), d, rows) for i, rows in enumerate(piece_lists)]
    scene = Scene(d, bodies)
    nu = [0] * (d + 1)
    nu[d - 1] = n * (n - 1) // 2
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=0,
        expected_nu=tuple(nu),
        expected_disjoint=True,
        provenance="dual-projection tiling (d=%d, n=%d)" % (d, n),
    )


def gen_carved_tiling(d: int, n: int) -> ConstructionReport:
    """Pairwise disjoint carving of the dual-projection tiling.

    Tile ``i`` keeps its shared faces with later tiles and drops those with
    earlier ones; each projected dual vertex is removed from the unique body
    that would contain it by one strict supporting cut.  Exactly the
    projected dual vertices remain uncovered; the top dual vertex has no
    projection, so the count is one less than the facet count.
    """
    if not (n > d + 1 >= 4):
        raise InputError("needs n > d+1 and d >= 3")
    g_rows, facet_count, images = _moment_dual_data(d, n)

    def g_value(i, k, u):
        normal, offset = g_rows[i][k]
        return dot(normal, u) - offset

    assignments = {idx: [] for idx in range(n)}
    for img in images:
        owner = None
        for i in range(n):
            if all(g_value(i, k, img) <= 0 for k in range(n) if k != i):
                owner = i
                break
        if owner is None:
            raise InvariantError("projected vertex not covered by any tile")
        assignments[owner].append(img)

    piece_lists = []
    for i in range(n):
        rows = []
        for k in range(n):
            if k == i:
                continue
            normal, offset = g_rows[i][k]
            if k < i:
                rows.append((STRICT_LT, normal, offset))
            else:
                rows.append((LE, normal, offset))
        for img in assignments[i]:
            active = [k for k in range(n) if k != i and g_value(i, k, img) == 0]
            if rank([list(g_rows[i][k][0]) for k in active]) < d:
                raise InvariantError("vertex cut is not pointed")
            cut_normal = tuple(
                sum(g_rows[i][k][0][j] for k in active) for j in range(d)
            )
            cut_offset = sum(g_rows[i][k][1] for k in active)
            # sum of active functionals is <= 0 on the tile, 0 at the vertex:
            # keep the strictly negative side
            rows.append((STRICT_LT, cut_normal, cut_offset))
        piece_lists.append([rows])

    bodies = [_body("K%d" % (i + 1), d, rows) for i, rows in enumerate(piece_lists)]
    scene = Scene(d, bodies)
    count = facet_count - 1
    nu = [0] * (d + 1)
    nu[0] = count
    return ConstructionReport(
        scene=scene,
        expected_encapsulated=count,
        expected_nu=tuple(nu),
        expected_disjoint=True,
        provenance="carved dual-projection tiling (d=%d, n=%d)" % (d, n),
    )


# ---------------------------------------------------------------------------
# seeded random scenes
# ---------------------------------------------------------------------------


def random_scene(seed: int, d: int = 2, max_bodies: int = 5, max_hyperplanes: int = 12) -> Scene:
    """Deterministic random scene for stress suites (small planar scenes)."""
    rng = random.Random(seed)
    for attempt in range(64):
        n_bodies = rng.randint(1, max_bodies)
        bodies = []
        seen = set()
        ok = True
        for b in range(n_bodies):
            pieces = []
            for p in range(rng.choice((1, 1, 1, 2))):
                rows = None
                for _ in range(16):
                    n_rows = rng.randint(1, 3)
                    cand = []
                    for _ in range(n_rows):
                        normal = tuple(rng.randint(-3, 3) for _ in range(d))
                        if all(x == 0 for x in normal):
                            normal = _axis(d, rng.randrange(d))
                        offset = Fraction(rng.randint(-8, 8), rng.choice((1, 2)))
                        rel = STRICT_LT if rng.random() < 0.8 else LE
                        cand.append((rel, normal, offset))
                    try:
                        piece = _piece(d, cand)
                    except InputError:
                        continue
                    rows = piece
                    break
                if rows is None:
                    ok = False
                    break
                pieces.append(rows)
            if not ok:
                break
            bodies.append(ConvexBody("B%d" % (b + 1), pieces))
        if not ok:
            continue
        scene = Scene(d, bodies)
        for _, _, piece in scene.all_pieces():
            for c in piece.constraints:
                seen.add((c.normal, c.offset))
        if len(seen) <= max_hyperplanes:
            return scene
    raise InvariantError("could not draw a random scene within the hyperplane budget")
