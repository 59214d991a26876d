"""Exact combinatorial bounds on encapsulated-point counts and cover sizes.

All values are arbitrary-precision integers; the recursive bound is memoized.
These functions double as invariant ceilings in the property tests.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .errors import DocumentedInconsistencyError, InputError


def f_three(d: int) -> int:
    """Maximal number of encapsulated points for three bodies in R^d."""
    if d < 0:
        raise InputError(f"dimension must be >= 0, got {d}")
    if d == 0:
        raise DocumentedInconsistencyError(
            "f_three(0) has two conflicting conventions (the empty-triple "
            "construction encapsulates one point in R^0, the general table "
            "says 0); refusing to pick one"
        )
    return (3 * d) // 2 + 1


@lru_cache(maxsize=None)
def f_upper(d: int, n: int) -> int:
    """Recursive upper bound on encapsulated points for n bodies in R^d.

    Bases: f(0, n) = 0, f(d, 1) = 0, f(d, 2) = 1, f(1, n) = n - 1,
    f(d, 3) = floor(3d/2) + 1; recursion
    f(d, n) = sum_{i=2}^{n-1} C(n, i) f(d, i) + f(d-2, n).
    The d = 0 row takes precedence where the bases overlap (f(0, 2) = 0).
    """
    if d < 0:
        raise InputError(f"dimension must be >= 0, got {d}")
    if n < 1:
        raise InputError(f"body count must be >= 1, got {n}")
    if d == 0:
        return 0
    if n == 1:
        return 0
    if n == 2:
        return 1
    if d == 1:
        return n - 1
    if n == 3:
        return f_three(d)
    total = sum(comb(n, i) * f_upper(d, i) for i in range(2, n))
    return total + f_upper(d - 2, n)


def f_closed(d: int, n: int) -> int:
    """Closed-form (weaker) bound 2 * d^(n-2) * n!."""
    if d < 2:
        raise InputError(f"f_closed needs d >= 2, got {d}")
    if n < 2:
        raise InputError(f"f_closed needs n >= 2, got {n}")
    return 2 * d ** (n - 2) * factorial(n)


def _balanced_parts(n: int, r: int):
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


def turan_t(n: int) -> int:
    """Edge count of the balanced complete 4-partite graph on n vertices."""
    if n < 1:
        raise InputError(f"vertex count must be >= 1, got {n}")
    parts = _balanced_parts(n, 4)
    return (n * n - sum(p * p for p in parts)) // 2


def lm_bounds(n: int, d: int):
    """The two classical ceilings on the number of isolated complement points
    of n open (first value) or arbitrary (second value) convex sets in R^d:
    C(n-1, d) and (n-1) * C(n, floor(n/2))^(d-1)."""
    if n < 1:
        raise InputError(f"body count must be >= 1, got {n}")
    if d < 1:
        raise InputError(f"dimension must be >= 1, got {d}")
    open_case = comb(n - 1, d)
    general_case = (n - 1) * comb(n, n // 2) ** (d - 1)
    return open_case, general_case


def disjoint_planar_bound(n: int) -> int:
    """Sharp bound 5n - 11 on |S| for n >= 3 pairwise disjoint planar bodies."""
    if n < 3:
        raise InputError(f"disjoint_planar_bound needs n >= 3, got {n}")
    return 5 * n - 11


_COLUMNS = (
    "f_three",
    "f_upper",
    "f_closed",
    "lm_open",
    "lm_general",
    "turan4",
    "disjoint_planar",
)


@dataclass(frozen=True)
class BoundTable:
    """Bound values over a (d, n) grid; None marks out-of-domain entries."""

    rows: dict  # (d, n) -> {column: int | None}

    def to_text(self) -> str:
        header = ["d", "n", *_COLUMNS]
        body = [
            [str(d), str(n)]
            + ["-" if row[c] is None else str(row[c]) for c in _COLUMNS]
            for (d, n), row in sorted(self.rows.items())
        ]
        widths = [
            max(len(line[i]) for line in [header] + body)
            for i in range(len(header))
        ]
        out = []
        for line in [header] + body:
            out.append("  ".join(v.rjust(w) for v, w in zip(line, widths)))
        return "\n".join(out)

    def to_csv(self) -> str:
        lines = ["d,n," + ",".join(_COLUMNS)]
        for (d, n), row in sorted(self.rows.items()):
            vals = ["" if row[c] is None else str(row[c]) for c in _COLUMNS]
            lines.append(f"{d},{n}," + ",".join(vals))
        return "\n".join(lines)


def build_table(dims, counts) -> BoundTable:
    """Evaluate every bound over the given d and n ranges."""
    rows = {}
    for d in dims:
        for n in counts:
            if d < 0 or n < 1:
                raise InputError(f"table domain needs d >= 0, n >= 1; got ({d}, {n})")
            lm_open, lm_general = lm_bounds(n, d) if d >= 1 else (None, None)
            rows[(d, n)] = {
                "f_three": f_three(d) if d >= 1 else None,
                "f_upper": f_upper(d, n),
                "f_closed": f_closed(d, n) if d >= 2 and n >= 2 else None,
                "lm_open": lm_open,
                "lm_general": lm_general,
                "turan4": turan_t(n) if d == 2 else None,
                "disjoint_planar": disjoint_planar_bound(n)
                if d == 2 and n >= 3
                else None,
            }
    return BoundTable(rows)
