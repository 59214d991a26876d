"""Pure-Python computational kernel: exact rational linear algebra and LP.

Everything here operates on ``fractions.Fraction`` values and plain lists.
``flatcover._kernel_cy`` is a compiled twin of this module with identical
semantics; ``flatcover.kernel`` selects between the two at import time.
Keep the two implementations in sync function-for-function.
"""

from fractions import Fraction

IMPLEMENTATION = "python"

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# vector / matrix primitives
# ---------------------------------------------------------------------------

def dot(a, b):
    """Exact dot product of two equal-length sequences of Fractions."""
    acc = _ZERO
    for x, y in zip(a, b):
        if x and y:
            acc += x * y
    return acc


def sign(value):
    """-1, 0 or +1."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def prepare_rows(hyperplanes):
    """Precompute an opaque row table for repeated point queries.

    ``hyperplanes`` is a sequence of ``(normal, offset)`` pairs.  The result
    is only meant to be passed back into :func:`sign_profile` and
    :func:`ray_bound` of the *same* kernel implementation.
    """
    return [([Fraction(x) for x in n], Fraction(b)) for n, b in hyperplanes]


def sign_profile(prepared, point):
    """Tuple of signs of ``normal . point - offset`` over prepared rows."""
    pt = [Fraction(x) for x in point]
    out = []
    for row, b in prepared:
        acc = -b
        for r, x in zip(row, pt):
            if r and x:
                acc += r * x
        out.append(1 if acc > 0 else (-1 if acc < 0 else 0))
    return tuple(out)


def ray_bound(prepared, signs, witness, direction):
    """Exit parameter of ``{witness + t*direction : t > 0}`` from a cell.

    The cell is the region where each prepared row's excess has the sign
    given in ``signs`` (witness must lie in it).  Returns ``(ok, bound)``:
    ``ok`` is False when the direction leaves a zero-sign row's hyperplane,
    ``bound`` is None when the ray never exits, else the exact positive
    parameter at which the first strict inequality closes.
    """
    pt = [Fraction(x) for x in witness]
    dr = [Fraction(x) for x in direction]
    bound = None
    for (row, b), s in zip(prepared, signs):
        slope = _ZERO
        for r, x in zip(row, dr):
            if r and x:
                slope += r * x
        if s == 0:
            if slope != 0:
                return False, None
            continue
        if s < 0:
            if slope <= 0:
                continue
        elif slope >= 0:
            continue
        excess = -b
        for r, x in zip(row, pt):
            if r and x:
                excess += r * x
        limit = -excess / slope
        if bound is None or limit < bound:
            bound = limit
    return True, bound


def row_echelon(rows):
    """Gaussian elimination (copy); returns (echelon_rows, pivot_cols).

    ``echelon_rows`` contains only the nonzero rows; ``pivot_cols[i]`` is the
    pivot column of row i.  Rows are lists of Fractions.
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    out = []
    r = 0
    for col in range(ncols):
        picked = -1
        for i in range(r, len(work)):
            if work[i][col]:
                picked = i
                break
        if picked < 0:
            continue
        work[r], work[picked] = work[picked], work[r]
        prow = work[r]
        pval = prow[col]
        for i in range(r + 1, len(work)):
            f = work[i][col]
            if f:
                row_i = work[i]
                factor = f / pval
                for j in range(col, ncols):
                    if prow[j]:
                        row_i[j] -= factor * prow[j]
        pivots.append(col)
        out.append(prow)
        r += 1
        if r == len(work):
            break
    return out, pivots


def rank(rows):
    """Rank of the matrix given as a list of rows."""
    return len(row_echelon(rows)[0])


def rref(rows):
    """Reduced row echelon form; returns (rref_rows, pivot_cols).

    Pivot entries are normalized to 1 and cleared above; zero rows dropped.
    The result is canonical for the row space.
    """
    ech, pivots = row_echelon(rows)
    for i in range(len(ech) - 1, -1, -1):
        col = pivots[i]
        prow = ech[i]
        pval = prow[col]
        if pval != 1:
            ech[i] = prow = [v / pval for v in prow]
        for k in range(i):
            f = ech[k][col]
            if f:
                row_k = ech[k]
                for j in range(col, len(prow)):
                    if prow[j]:
                        row_k[j] -= f * prow[j]
    return ech, pivots


def solve_linear(rows, rhs):
    """One exact solution x of ``rows @ x = rhs`` or None if inconsistent.

    Free variables are set to 0.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = rref(aug)
    x = [_ZERO] * ncols
    for prow, col in zip(ech, pivots):
        if col == ncols:  # row 0 = 1 -> inconsistent
            return None
        x[col] = prow[ncols]
    return x


def nullspace(rows, ncols):
    """Basis of the kernel of the matrix (list of length-``ncols`` vectors)."""
    ech, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [_ZERO] * ncols
        vec[free] = _ONE
        for prow, col in zip(ech, pivots):
            vec[col] = -prow[free]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# exact two-phase simplex (Bland's rule; always terminates)
# ---------------------------------------------------------------------------

def simplex_maximize(num_vars, rows, objective):
    """Maximize ``objective . y`` over ``{y >= 0 : rows}`` exactly.

    ``rows``: iterable of ``(coeffs, sense, rhs)`` with ``sense`` one of
    ``"le"``, ``"ge"``, ``"eq"``.  Returns ``(status, value, point)`` where
    ``status`` is ``"optimal"``, ``"infeasible"`` or ``"unbounded"``.
    """
    # Normalize: rhs >= 0 everywhere.
    norm = []
    for coeffs, sense, rhs in rows:
        coeffs = list(coeffs)
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            sense = {"le": "ge", "ge": "le", "eq": "eq"}[sense]
        norm.append((coeffs, sense, rhs))

    m = len(norm)
    n_slack = sum(1 for _, s, _ in norm if s != "eq")
    n_art = sum(1 for _, s, _ in norm if s != "le")
    width = num_vars + n_slack + n_art  # columns, rhs kept separately
    art_start = num_vars + n_slack

    tab = []
    basis = []
    slack_at = num_vars
    art_at = art_start
    for coeffs, sense, rhs in norm:
        row = list(coeffs) + [_ZERO] * (width - num_vars) + [rhs]
        if sense == "le":
            row[slack_at] = _ONE
            basis.append(slack_at)
            slack_at += 1
        elif sense == "ge":
            row[slack_at] = -_ONE
            slack_at += 1
            row[art_at] = _ONE
            basis.append(art_at)
            art_at += 1
        else:
            row[art_at] = _ONE
            basis.append(art_at)
            art_at += 1
        tab.append(row)

    def run_phase(cost, scan_width):
        """Optimize ``max cost . columns`` from the current basis.

        Only columns ``< scan_width`` may enter the basis (phase 2 passes the
        artificial-column boundary here so artificials never re-enter).
        """
        # Reduced-cost row: z[j] = cost[j] - sum_i cost[basis[i]] * tab[i][j]
        z = list(cost) + [_ZERO]
        for i, b in enumerate(basis):
            cb = cost[b]
            if cb:
                row = tab[i]
                for j in range(width + 1):
                    if row[j]:
                        z[j] -= cb * row[j]
        while True:
            enter = -1
            for j in range(scan_width):
                if z[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal", -z[width]
            # ratio test (Bland tie-break: smallest basis column)
            leave = -1
            best = None
            for i in range(m):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][width] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded", None
            # pivot on (leave, enter)
            prow = tab[leave]
            pval = prow[enter]
            if pval != 1:
                tab[leave] = prow = [v / pval for v in prow]
            for i in range(m):
                if i != leave:
                    f = tab[i][enter]
                    if f:
                        row_i = tab[i]
                        for j in range(width + 1):
                            if prow[j]:
                                row_i[j] -= f * prow[j]
            f = z[enter]
            if f:
                for j in range(width + 1):
                    if prow[j]:
                        z[j] -= f * prow[j]
            basis[leave] = enter

    if n_art:
        cost1 = [_ZERO] * width
        for j in range(art_start, width):
            cost1[j] = -_ONE
        status, value = run_phase(cost1, width)
        if value != 0:
            return "infeasible", None, None
        # Drive remaining artificials (all at value 0) out of the basis.
        for i in range(m):
            if basis[i] >= art_start:
                row = tab[i]
                swap = -1
                for j in range(art_start):
                    if row[j]:
                        swap = j
                        break
                if swap >= 0:
                    pval = row[swap]
                    if pval != 1:
                        tab[i] = row = [v / pval for v in row]
                    for k in range(m):
                        if k != i:
                            f = tab[k][swap]
                            if f:
                                row_k = tab[k]
                                for j in range(width + 1):
                                    if row[j]:
                                        row_k[j] -= f * row[j]
                    basis[i] = swap
                # else: redundant row; its artificial stays basic at zero,
                # which is harmless because phase 2 never re-enters
                # artificial columns.

    cost2 = list(objective) + [_ZERO] * (width - num_vars)
    status, value = run_phase(cost2, art_start)
    point = [_ZERO] * num_vars
    for i, b in enumerate(basis):
        if b < num_vars:
            point[b] = tab[i][width]
    if status == "unbounded":
        return "unbounded", None, None
    return "optimal", value, point
