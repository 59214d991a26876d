# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled computational kernel: exact rational linear algebra and LP.

Twin of ``flatcover._kernel_py`` with identical semantics.  Public inputs
and outputs are ``fractions.Fraction``; internally the matrix and simplex
routines run on ``gmpy2.mpq`` (exact rationals with C arithmetic) when
gmpy2 is importable, falling back to Fraction otherwise.  Keep the two
implementations in sync function-for-function.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - environment dependent
    _Q = Fraction

IMPLEMENTATION = "cython"

_ZERO = Fraction(0)
_ONE = Fraction(1)


cdef inline object _fr(object v):
    """Convert an exact rational back to Fraction."""
    if type(v) is Fraction:
        return v
    return Fraction(int(v.numerator), int(v.denominator))


cdef list _q_matrix(rows):
    """Copy a row iterable into lists of internal rationals."""
    cdef list out = []
    for r in rows:
        out.append([_Q(x) for x in r])
    return out


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
    cdef list out = []
    for n, b in hyperplanes:
        out.append(([_Q(x) for x in n], _Q(b)))
    return out


def sign_profile(prepared, point):
    """Tuple of signs of ``normal . point - offset`` over prepared rows."""
    cdef list pt = [_Q(x) for x in point]
    cdef list out = []
    cdef Py_ssize_t j, width = len(pt)
    for row, b in prepared:
        acc = -b
        r = row
        for j in range(width):
            v = (<list>r)[j]
            if v:
                acc = acc + v * pt[j]
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
    cdef list pt = [_Q(x) for x in witness]
    cdef list dr = [_Q(x) for x in direction]
    cdef Py_ssize_t j, width = len(pt)
    cdef int s
    bound = None
    zero = _Q(0)
    for (row, b), s_obj in zip(prepared, signs):
        s = s_obj
        slope = zero
        for j in range(width):
            v = (<list>row)[j]
            if v:
                slope = slope + v * dr[j]
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
        for j in range(width):
            v = (<list>row)[j]
            if v:
                excess = excess + v * pt[j]
        limit = -excess / slope
        if bound is None or limit < bound:
            bound = limit
    if bound is None:
        return True, None
    return True, _fr(bound)


cdef tuple _row_echelon_q(list work):
    """In-place Gaussian elimination on internal-rational rows."""
    cdef Py_ssize_t ncols, r, i, j, col, picked, nrows
    cdef list out = []
    cdef list pivots = []
    cdef list prow, row_i
    nrows = len(work)
    if nrows == 0:
        return out, pivots
    ncols = len(<list>work[0])
    r = 0
    for col in range(ncols):
        picked = -1
        for i in range(r, nrows):
            if (<list>work[i])[col]:
                picked = i
                break
        if picked < 0:
            continue
        work[r], work[picked] = work[picked], work[r]
        prow = <list>work[r]
        pval = prow[col]
        for i in range(r + 1, nrows):
            f = (<list>work[i])[col]
            if f:
                row_i = <list>work[i]
                factor = f / pval
                for j in range(col, ncols):
                    if prow[j]:
                        row_i[j] = row_i[j] - factor * prow[j]
        pivots.append(col)
        out.append(prow)
        r += 1
        if r == nrows:
            break
    return out, pivots


cdef tuple _rref_q(list work):
    """Reduced row echelon form on internal-rational rows."""
    cdef Py_ssize_t i, j, k, col, ncols
    cdef list ech, pivots, prow, row_k
    ech, pivots = _row_echelon_q(work)
    for i in range(len(ech) - 1, -1, -1):
        col = <Py_ssize_t>pivots[i]
        prow = <list>ech[i]
        pval = prow[col]
        ncols = len(prow)
        if pval != 1:
            prow = [v / pval for v in prow]
            ech[i] = prow
        for k in range(i):
            f = (<list>ech[k])[col]
            if f:
                row_k = <list>ech[k]
                for j in range(col, ncols):
                    if prow[j]:
                        row_k[j] = row_k[j] - f * prow[j]
    return ech, pivots


def row_echelon(rows):
    """Gaussian elimination (copy); returns (echelon_rows, pivot_cols)."""
    ech, pivots = _row_echelon_q(_q_matrix(rows))
    return [[_fr(v) for v in r] for r in ech], pivots


def rank(rows):
    """Rank of the matrix given as a list of rows."""
    ech, _ = _row_echelon_q(_q_matrix(rows))
    return len(ech)


def rref(rows):
    """Reduced row echelon form; returns (rref_rows, pivot_cols)."""
    ech, pivots = _rref_q(_q_matrix(rows))
    return [[_fr(v) for v in r] for r in ech], pivots


def solve_linear(rows, rhs):
    """One exact solution x of ``rows @ x = rhs`` or None if inconsistent.

    Free variables are set to 0.
    """
    cdef Py_ssize_t ncols
    cdef list aug, ech, pivots, x
    if not rows:
        return []
    ncols = len(rows[0])
    aug = []
    for r, b in zip(rows, rhs):
        aug.append([_Q(v) for v in r] + [_Q(b)])
    ech, pivots = _rref_q(aug)
    zero = _Q(0)
    x = [zero] * ncols
    for prow, col in zip(ech, pivots):
        if col == ncols:  # row 0 = 1 -> inconsistent
            return None
        x[col] = (<list>prow)[ncols]
    return [_fr(v) for v in x]


def nullspace(rows, ncols_arg):
    """Basis of the kernel of the matrix (list of length-``ncols`` vectors)."""
    cdef Py_ssize_t ncols = ncols_arg
    cdef Py_ssize_t free
    cdef list ech, pivots, vec, basis
    ech, pivots = _rref_q(_q_matrix(rows))
    pivot_set = set(pivots)
    basis = []
    zero = _Q(0)
    one = _Q(1)
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for prow, col in zip(ech, pivots):
            vec[col] = -(<list>prow)[free]
        basis.append([_fr(v) for v in vec])
    return basis


# ---------------------------------------------------------------------------
# exact two-phase simplex (Bland's rule; always terminates)
# ---------------------------------------------------------------------------

cdef class _Tableau:
    cdef list tab
    cdef list basis
    cdef Py_ssize_t m
    cdef Py_ssize_t width

    cdef tuple run_phase(self, list cost, Py_ssize_t scan_width):
        """Optimize ``max cost . columns`` from the current basis.

        Only columns ``< scan_width`` may enter the basis (phase 2 passes the
        artificial-column boundary here so artificials never re-enter).
        """
        cdef Py_ssize_t width = self.width
        cdef Py_ssize_t m = self.m
        cdef list tab = self.tab
        cdef list basis = self.basis
        cdef list z, row, prow, row_i
        cdef Py_ssize_t i, j, enter, leave
        # Reduced-cost row: z[j] = cost[j] - sum_i cost[basis[i]] * tab[i][j]
        z = list(cost)
        z.append(_Q(0))
        for i in range(m):
            cb = cost[<Py_ssize_t>basis[i]]
            if cb:
                row = <list>tab[i]
                for j in range(width + 1):
                    if row[j]:
                        z[j] = z[j] - cb * row[j]
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
                a = (<list>tab[i])[enter]
                if a > 0:
                    ratio = (<list>tab[i])[width] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded", None
            # pivot on (leave, enter)
            prow = <list>tab[leave]
            pval = prow[enter]
            if pval != 1:
                prow = [v / pval for v in prow]
                tab[leave] = prow
            for i in range(m):
                if i != leave:
                    f = (<list>tab[i])[enter]
                    if f:
                        row_i = <list>tab[i]
                        for j in range(width + 1):
                            if prow[j]:
                                row_i[j] = row_i[j] - f * prow[j]
            f = z[enter]
            if f:
                for j in range(width + 1):
                    if prow[j]:
                        z[j] = z[j] - f * prow[j]
            basis[leave] = enter


def simplex_maximize(num_vars_arg, rows, objective):
    """Maximize ``objective . y`` over ``{y >= 0 : rows}`` exactly.

    ``rows``: iterable of ``(coeffs, sense, rhs)`` with ``sense`` one of
    ``"le"``, ``"ge"``, ``"eq"``.  Returns ``(status, value, point)`` where
    ``status`` is ``"optimal"``, ``"infeasible"`` or ``"unbounded"``.
    """
    cdef Py_ssize_t num_vars = num_vars_arg
    cdef Py_ssize_t m, n_slack, n_art, width, art_start, slack_at, art_at
    cdef Py_ssize_t i, j, k, swap
    cdef list norm = []
    cdef list tab, basis, row, cost1, cost2, point, row_k
    zero = _Q(0)
    one = _Q(1)

    # Normalize: rhs >= 0 everywhere.
    for coeffs, sense, rhs in rows:
        coeffs = [_Q(c) for c in coeffs]
        rhs = _Q(rhs)
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            sense = {"le": "ge", "ge": "le", "eq": "eq"}[sense]
        norm.append((coeffs, sense, rhs))

    m = len(norm)
    n_slack = 0
    n_art = 0
    for _, s, _ in norm:
        if s != "eq":
            n_slack += 1
        if s != "le":
            n_art += 1
    width = num_vars + n_slack + n_art  # columns, rhs kept separately
    art_start = num_vars + n_slack

    tab = []
    basis = []
    slack_at = num_vars
    art_at = art_start
    for coeffs, sense, rhs in norm:
        row = list(coeffs) + [zero] * (width - num_vars) + [rhs]
        if sense == "le":
            row[slack_at] = one
            basis.append(slack_at)
            slack_at += 1
        elif sense == "ge":
            row[slack_at] = -one
            slack_at += 1
            row[art_at] = one
            basis.append(art_at)
            art_at += 1
        else:
            row[art_at] = one
            basis.append(art_at)
            art_at += 1
        tab.append(row)

    cdef _Tableau T = _Tableau()
    T.tab = tab
    T.basis = basis
    T.m = m
    T.width = width

    if n_art:
        cost1 = [zero] * width
        for j in range(art_start, width):
            cost1[j] = -one
        status, value = T.run_phase(cost1, width)
        if value != 0:
            return "infeasible", None, None
        # Drive remaining artificials (all at value 0) out of the basis.
        for i in range(m):
            if <Py_ssize_t>basis[i] >= art_start:
                row = <list>tab[i]
                swap = -1
                for j in range(art_start):
                    if row[j]:
                        swap = j
                        break
                if swap >= 0:
                    pval = row[swap]
                    if pval != 1:
                        row = [v / pval for v in row]
                        tab[i] = row
                    for k in range(m):
                        if k != i:
                            f = (<list>tab[k])[swap]
                            if f:
                                row_k = <list>tab[k]
                                for j in range(width + 1):
                                    if row[j]:
                                        row_k[j] = row_k[j] - f * row[j]
                    basis[i] = swap
                # else: redundant row; its artificial stays basic at zero,
                # which is harmless because phase 2 never re-enters
                # artificial columns.

    cost2 = [_Q(c) for c in objective] + [zero] * (width - num_vars)
    status, value = T.run_phase(cost2, art_start)
    point = [zero] * num_vars
    for i in range(m):
        b = basis[i]
        if <Py_ssize_t>b < num_vars:
            point[<Py_ssize_t>b] = (<list>tab[i])[width]
    if status == "unbounded":
        return "unbounded", None, None
    return "optimal", _fr(value), [_fr(v) for v in point]
