"""Exact cell enumeration of the hyperplane arrangement induced by a scene.

Every constraint hyperplane ``normal . x = offset`` is deduplicated under a
canonical orientation (primitive integer normal, first nonzero coordinate
positive).  Cells are the nonempty sign vectors over these hyperplanes,
enumerated depth-first with exact-LP pruning; a witness point is carried down
the tree so that at every node at most one child needs a fresh LP in the
typical case (the zero child is derived from the two strict children by exact
segment intersection whenever both are feasible).  Subtrees whose zero-set is
a line or a point are finished by an exact parameter sweep with no LP at all.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

try:  # fast exact rationals for the planar clipping sweep, when available
    from gmpy2 import mpq as _fastq
except ImportError:  # pragma: no cover - environment dependent
    _fastq = Fraction

from . import kernel
from .constraints import EQ, LE, STRICT_LT, LinConstraint
from .errors import InputError, InvariantError, ResourceBudgetError
from .lp import lp_feasible
from .model import Scene
from .vectors import ZERO, as_vector, primitive_integer

DEFAULT_HYPERPLANE_BUDGET = 25


def canonical_hyperplane(normal, offset):
    """Canonical (integer_normal, offset) pair for the hyperplane n.x = b.

    The normal is scaled to coprime integers with positive first nonzero
    coordinate; the offset is scaled by the same factor, so the hyperplane's
    point set is unchanged.
    """
    ints = primitive_integer(normal)
    lead = next((v for v in ints if v != 0), 0)
    if lead == 0:
        raise InputError("hyperplane normal must be nonzero")
    if lead < 0:
        ints = tuple(-v for v in ints)
    # Recover the scale from any nonzero coordinate.
    j = next(i for i, v in enumerate(ints) if v != 0)
    scale = Fraction(ints[j]) / normal[j]
    return ints, offset * scale


@dataclass(frozen=True)
class Cell:
    """A relatively open cell: one feasible sign vector of the arrangement."""

    sign: tuple                  # entries in {-1, 0, +1}, one per hyperplane
    dim: int
    witness: tuple               # a rational point inside the cell
    in_S: bool
    body_membership: tuple       # one boolean per scene body

    def constraints(self, hyperplanes):
        """The constraint system carving this cell out of R^d."""
        rows = []
        for s, (n, b) in zip(self.sign, hyperplanes):
            normal = tuple(Fraction(v) for v in n)
            if s == 0:
                rows.append(LinConstraint(normal, b, EQ))
            elif s < 0:
                rows.append(LinConstraint(normal, b, STRICT_LT))
            else:
                rows.append(
                    LinConstraint(tuple(-v for v in normal), -b, STRICT_LT)
                )
        return rows


def closure_adjacent(c: Cell, d: Cell) -> bool:
    """True iff cell ``c`` lies in the closure of cell ``d``.

    For sign vectors this is the covector order: wherever c's sign is
    nonzero, d's sign must equal it.
    """
    return all(sc == 0 or sc == sd for sc, sd in zip(c.sign, d.sign))


class ArrangementIndex:
    """All cells of a scene's arrangement plus lookup helpers."""

    def __init__(self, scene, hyperplanes, cells):
        self.scene = scene
        self.hyperplanes = hyperplanes
        self.cells = cells
        self.by_sign = {c.sign: c for c in cells}
        # Memoised helpers for the repeated point queries of the analysis
        # layer.  All three are pure caches: entries depend only on the
        # immutable hyperplane list and cell data.
        self._prepared_rows = None
        self.cell_flat_cache = {}
        self.line_profile_cache = {}

    def prepared_rows(self):
        """Kernel-side row table for batched point queries."""
        if self._prepared_rows is None:
            self._prepared_rows = kernel.prepare_rows(self.hyperplanes)
        return self._prepared_rows

    def sign_of_point(self, point):
        point = as_vector(point)
        return kernel.sign_profile(self.prepared_rows(), point)

    def cell_of_point(self, point) -> Cell:
        sig = self.sign_of_point(point)
        cell = self.by_sign.get(sig)
        if cell is None:
            raise InvariantError(
                f"point {point} has sign vector {sig} matching no cell; "
                "the enumeration missed a feasible cell"
            )
        return cell

    def cofaces(self, cell: Cell):
        """Cells whose closure contains ``cell`` (including itself).

        Enumerated by direct lookup over relaxations of the cell's zero
        signs when that is cheaper than a linear scan.
        """
        zero_positions = [i for i, s in enumerate(cell.sign) if s == 0]
        if 3 ** len(zero_positions) < len(self.cells):
            found = []
            sig = list(cell.sign)
            for combo in itertools.product((-1, 0, 1), repeat=len(zero_positions)):
                for pos, s in zip(zero_positions, combo):
                    sig[pos] = s
                hit = self.by_sign.get(tuple(sig))
                if hit is not None:
                    found.append(hit)
            for pos in zero_positions:
                sig[pos] = 0
            found.sort(key=lambda c: c.sign)
            return found
        return [d for d in self.cells if closure_adjacent(cell, d)]

    def faces(self, cell: Cell):
        """Cells contained in the closure of ``cell`` (including itself)."""
        return [d for d in self.cells if closure_adjacent(d, cell)]


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def collect_hyperplanes(scene: Scene):
    """Deduplicated canonical hyperplanes of all scene constraints, in
    first-appearance order."""
    seen = {}
    order = []
    for _, _, piece in scene.all_pieces():
        for c in piece.constraints:
            n, b = canonical_hyperplane(c.normal, c.offset)
            key = (n, b)
            if key not in seen:
                seen[key] = len(order)
                order.append(key)
    return order


def _constraint_sign_rule(constraint, hyperplane_index, hyperplanes):
    """How to evaluate ``constraint`` from a cell sign vector.

    Returns (index, mu_sign): sign(normal.x - offset) at a cell equals
    mu_sign * cell.sign[index].
    """
    n, b = hyperplanes[hyperplane_index]
    j = next(i for i, v in enumerate(n) if v != 0)
    mu = constraint.normal[j] / Fraction(n[j])
    return 1 if mu > 0 else -1


def _membership_from_signs(scene, hyperplanes, hyperplane_of, sign):
    """Per-body membership of a whole cell, read off the sign vector."""
    flags = []
    for body in scene.bodies:
        member = False
        for piece in body.pieces:
            ok = True
            for c in piece.constraints:
                idx, mu = hyperplane_of[(c.normal, c.offset)]
                s = mu * sign[idx]
                if c.relation is STRICT_LT:
                    good = s < 0
                elif c.relation is LE:
                    good = s <= 0
                else:
                    good = s == 0
                if not good:
                    ok = False
                    break
            if ok:
                member = True
                break
        flags.append(member)
    return tuple(flags)


def cell_in_S(cell: Cell, scene: Scene) -> bool:
    """True iff the cell lies in the complement S of the body union.

    Evaluated from the witness point and cross-checked against the cached
    sign-vector evaluation.
    """
    witness_says = not scene.in_union(cell.witness)
    if witness_says != cell.in_S:
        raise InvariantError(
            f"cell {cell.sign}: witness membership {not witness_says} "
            f"disagrees with sign-vector membership {not cell.in_S}"
        )
    return cell.in_S


def enumerate_sign_cells(hyperplanes, d: int, _generic: bool = False):
    """Raw cell enumeration over explicit canonical hyperplanes.

    Returns a lexicographically sorted list of ``(sign, dim, witness)``
    triples, one per nonempty cell of the arrangement in R^d.  No budget is
    enforced here; callers own that policy.  ``_generic`` forces the
    LP-driven sign DFS even where a specialised path exists (the planar
    clipping path); the two must agree cell for cell.
    """
    m = len(hyperplanes)
    normals = [tuple(Fraction(v) for v in n) for n, _ in hyperplanes]
    offsets = [b for _, b in hyperplanes]
    origin = tuple(ZERO for _ in range(d))

    raw_cells = []  # (sign tuple, dim, witness)

    def emit(signs, dim, witness):
        raw_cells.append((tuple(signs), dim, witness))

    def child_constraint(k, s):
        if s == 0:
            return LinConstraint(normals[k], offsets[k], EQ)
        if s < 0:
            return LinConstraint(normals[k], offsets[k], STRICT_LT)
        return LinConstraint(
            tuple(-v for v in normals[k]), -offsets[k], STRICT_LT
        )

    def sweep_line(k, prefix_constraints, witness, signs, zero_rows):
        """Finish a subtree whose zero-set flat is a line: exact 1-D sweep."""
        directions = kernel.nullspace([list(r) for r in zero_rows], d)
        if len(directions) != 1:  # pragma: no cover - guarded by caller
            raise InvariantError("line sweep called off a 1-dim zero set")
        u = tuple(directions[0])
        a = witness  # lies on the line and inside the open prefix interval

        lo, hi = None, None  # open bounds; None = unbounded
        for c in prefix_constraints:
            if c.relation is EQ:
                continue
            slope = kernel.dot(c.normal, u)
            e = c.excess(a)  # e + t*slope < 0 required (t relative to a)
            if slope == 0:
                continue
            t_root = -e / slope
            if slope > 0:
                if hi is None or t_root < hi:
                    hi = t_root
            else:
                if lo is None or t_root > lo:
                    lo = t_root

        fixed = []      # (index, forced sign) for remaining hyperplanes
        moving = []     # (index, slope, root parameter)
        for j in range(k, m):
            slope = kernel.dot(normals[j], u)
            e = kernel.dot(normals[j], a) - offsets[j]
            if slope == 0:
                fixed.append((j, _sign(e)))
            else:
                moving.append((j, slope, -e / slope))

        roots = sorted(
            {r for _, _, r in moving if (lo is None or r > lo) and (hi is None or r < hi)}
        )

        def point_at(t):
            return tuple(x + t * v for x, v in zip(a, u))

        def emit_at(t, zero_roots):
            local = list(signs)
            pt = point_at(t)
            pad = {j: 0 for j in zero_roots}
            for j, s in fixed:
                pad[j] = s
            for j, slope, r in moving:
                if j in pad:
                    continue
                pad[j] = _sign(slope * (t - r))
            local.extend(pad[j] for j in range(k, m))
            dim_cell = 0 if zero_roots else 1
            emit(local, dim_cell, pt)

        # Interval cells between consecutive roots (and the two end pieces),
        # then the point cell at each root.
        cuts = []
        if not roots:
            cuts.append(_interior_parameter(lo, hi))
        else:
            cuts.append(_interior_parameter(lo, roots[0]))
            for r1, r2 in zip(roots, roots[1:]):
                cuts.append((r1 + r2) / 2)
            cuts.append(_interior_parameter(roots[-1], hi))
        for t in cuts:
            emit_at(t, frozenset())
        for r in roots:
            at_root = frozenset(
                j for j, _, root in moving if root == r
            )
            emit_at(r, at_root)

    def dfs(k, prefix_constraints, witness, signs, zero_rows, zero_rank):
        if k == m:
            emit(signs, d - zero_rank, witness)
            return
        if zero_rank == d - 1:
            sweep_line(k, prefix_constraints, witness, signs, zero_rows)
            return
        if zero_rank == d:
            # The zero set is a single point: all remaining signs are forced.
            local = list(signs)
            for j in range(k, m):
                local.append(_sign(kernel.dot(normals[j], witness) - offsets[j]))
            emit(local, 0, witness)
            return

        e = kernel.dot(normals[k], witness) - offsets[k]
        sig_w = _sign(e)
        child_witness = {sig_w: witness}
        for s in (-1, 1):
            if s in child_witness:
                continue
            probe = lp_feasible(
                prefix_constraints + [child_constraint(k, s)], d
            )
            if probe.feasible:
                child_witness[s] = probe.witness
        if 0 not in child_witness:
            if -1 in child_witness and 1 in child_witness:
                wl, wr = child_witness[-1], child_witness[1]
                el = kernel.dot(normals[k], wl) - offsets[k]
                er = kernel.dot(normals[k], wr) - offsets[k]
                lam = el / (el - er)
                child_witness[0] = tuple(
                    x + lam * (y - x) for x, y in zip(wl, wr)
                )
            else:
                probe = lp_feasible(
                    prefix_constraints + [child_constraint(k, 0)], d
                )
                if probe.feasible:
                    child_witness[0] = probe.witness

        for s in (-1, 0, 1):
            w = child_witness.get(s)
            if w is None:
                continue
            if s == 0:
                new_rows = zero_rows + [normals[k]]
                new_rank = kernel.rank([list(r) for r in new_rows])
            else:
                new_rows, new_rank = zero_rows, zero_rank
            dfs(
                k + 1,
                prefix_constraints + [child_constraint(k, s)],
                w,
                signs + [s],
                new_rows,
                new_rank,
            )

    if d == 1 and m > 0:
        sweep_line(0, [], origin, [], [])
    elif d == 2 and m > 0 and not _generic:
        return _enumerate_sign_cells_2d(normals, offsets)
    else:
        dfs(0, [], origin, [], [], 0)

    raw_cells.sort(key=lambda item: item[0])
    return raw_cells


def _enumerate_sign_cells_2d(normals, offsets):
    """Planar cell enumeration by incremental exact polygon clipping.

    Produces the same (sign, dim, witness) triples as the generic DFS but
    without any LP calls: each pending region is carried explicitly as the
    closure of a convex polygon, an open segment, or a point, and the next
    line splits it geometrically.  Every vertex that ever appears is the
    intersection of two input lines (or of a line with the bounding box), so
    coordinates never compound across levels.
    """
    m = len(normals)
    normals = [(_fastq(a1), _fastq(a2)) for a1, a2 in normals]
    offsets = [_fastq(b) for b in offsets]

    # Bounding box beyond every arrangement vertex and every line's closest
    # axis-aligned approach to the origin, with margin: every nonempty cell
    # of the true arrangement then keeps a piece of its own dimension
    # strictly inside the box, so clipped witnesses are genuine interior
    # points of the true cells.
    radius = _fastq(1)
    for (a1, a2), b in zip(normals, offsets):
        radius = max(radius, abs(b) / max(abs(a1), abs(a2)))
    for i in range(m):
        ai, bi = normals[i], offsets[i]
        for j in range(i + 1, m):
            aj, bj = normals[j], offsets[j]
            det = ai[0] * aj[1] - ai[1] * aj[0]
            if det == 0:
                continue
            radius = max(
                radius,
                abs((bi * aj[1] - bj * ai[1]) / det),
                abs((ai[0] * bj - aj[0] * bi) / det),
            )
    radius += 2
    box = (
        (-radius, -radius),
        (radius, -radius),
        (radius, radius),
        (-radius, radius),
    )

    raw_cells = []
    signs = []

    def emit(dim, witness):
        point = tuple(
            Fraction(int(q.numerator), int(q.denominator)) for q in witness
        )
        raw_cells.append((tuple(signs), dim, point))

    def excess_at(k, point):
        n = normals[k]
        return n[0] * point[0] + n[1] * point[1] - offsets[k]

    def cut_point(a, ea, b, eb):
        lam = ea / (ea - eb)
        return (a[0] + lam * (b[0] - a[0]), a[1] + lam * (b[1] - a[1]))

    def walk_poly(k, verts):
        if k == m:
            count = len(verts)
            emit(2, (sum(v[0] for v in verts) / count,
                     sum(v[1] for v in verts) / count))
            return
        exc = [excess_at(k, v) for v in verts]
        has_neg = any(e < 0 for e in exc)
        has_pos = any(e > 0 for e in exc)
        if not (has_neg or has_pos):  # pragma: no cover - 2-D region on a line
            raise InvariantError("full-dimensional region inside a hyperplane")
        if not has_pos:
            signs.append(-1)
            walk_poly(k + 1, verts)
            signs.pop()
            return
        if not has_neg:
            signs.append(1)
            walk_poly(k + 1, verts)
            signs.pop()
            return
        left, right, cuts = [], [], []
        count = len(verts)
        for i in range(count):
            a, ea = verts[i], exc[i]
            b, eb = verts[(i + 1) % count], exc[(i + 1) % count]
            if ea < 0:
                left.append(a)
            elif ea > 0:
                right.append(a)
            else:
                left.append(a)
                right.append(a)
                cuts.append(a)
            if (ea < 0 < eb) or (eb < 0 < ea):
                p = cut_point(a, ea, b, eb)
                left.append(p)
                right.append(p)
                cuts.append(p)
        cuts = sorted(set(cuts))
        if len(cuts) != 2:  # pragma: no cover - convexity guarantees a chord
            raise InvariantError(
                f"line cut a convex region in {len(cuts)} boundary points"
            )
        signs.append(-1)
        walk_poly(k + 1, left)
        signs.pop()
        signs.append(0)
        walk_seg(k + 1, cuts[0], cuts[1])
        signs.pop()
        signs.append(1)
        walk_poly(k + 1, right)
        signs.pop()

    def walk_seg(k, a, b):
        if k == m:
            emit(1, ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
            return
        ea, eb = excess_at(k, a), excess_at(k, b)
        if ea == 0 and eb == 0:
            s = 0
        elif ea <= 0 and eb <= 0:
            s = -1
        elif ea >= 0 and eb >= 0:
            s = 1
        else:
            r = cut_point(a, ea, b, eb)
            first, second = (-1, 1) if ea < 0 else (1, -1)
            signs.append(first)
            walk_seg(k + 1, a, r)
            signs.pop()
            signs.append(0)
            walk_point(k + 1, r)
            signs.pop()
            signs.append(second)
            walk_seg(k + 1, r, b)
            signs.pop()
            return
        signs.append(s)
        walk_seg(k + 1, a, b)
        signs.pop()

    def walk_point(k, p):
        if k == m:
            emit(0, p)
            return
        e = excess_at(k, p)
        signs.append(-1 if e < 0 else (1 if e > 0 else 0))
        walk_point(k + 1, p)
        signs.pop()

    walk_poly(0, box)
    raw_cells.sort(key=lambda item: item[0])
    return raw_cells


def enumerate_cells(scene: Scene, budget: int = DEFAULT_HYPERPLANE_BUDGET) -> ArrangementIndex:
    """Enumerate every nonempty cell of the scene's hyperplane arrangement."""
    d = scene.dimension
    hyperplanes = collect_hyperplanes(scene)
    m = len(hyperplanes)
    if m > budget:
        raise ResourceBudgetError(
            f"{m} distinct hyperplanes exceed the budget of {budget}",
            count=m,
        )

    # Orientation of every distinct (normal, offset) constraint datum.
    hyperplane_of = {}
    for _, _, piece in scene.all_pieces():
        for c in piece.constraints:
            key = (c.normal, c.offset)
            if key in hyperplane_of:
                continue
            n, b = canonical_hyperplane(c.normal, c.offset)
            idx = hyperplanes.index((n, b))
            hyperplane_of[key] = (idx, _constraint_sign_rule(c, idx, hyperplanes))

    cells = []
    for sign, dim, witness in enumerate_sign_cells(hyperplanes, d):
        membership = _membership_from_signs(
            scene, hyperplanes, hyperplane_of, sign
        )
        cell = Cell(sign, dim, witness, not any(membership), membership)
        cell_in_S(cell, scene)  # asserts witness/sign consistency
        cells.append(cell)
    return ArrangementIndex(scene, hyperplanes, cells)


def _interior_parameter(lo, hi):
    """A rational strictly between lo and hi (None meaning unbounded)."""
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    if not lo < hi:  # pragma: no cover - callers guarantee a real gap
        raise InvariantError(f"empty parameter interval ({lo}, {hi})")
    return (lo + hi) / 2
