"""Exact feasibility of systems of strict / non-strict / equality constraints.

Strictness is handled by the epsilon reformulation: maximize a shared slack
``eps`` added to every strict row (capped at 1); the system is feasible iff
the optimum is positive.  Everything stays in exact rational arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .constraints import EQ, LE, STRICT_LT, LinConstraint, check_dimension
from .errors import InputError
from .vectors import ZERO, ONE


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: tuple | None  # rational point satisfying every constraint

    def __bool__(self):
        return self.feasible


INFEASIBLE = Feasibility(False, None)


def lp_feasible(constraints, d: int) -> Feasibility:
    """Decide nonemptiness of a semi-open polyhedron in R^d, with witness.

    Free variables are split into positive parts for the simplex kernel;
    the witness returned always satisfies every constraint (including the
    strict ones) exactly, and is re-checked before being returned.
    """
    constraints = list(constraints)
    if d < 0:
        raise InputError(f"dimension must be >= 0, got {d}")
    check_dimension(constraints, d)

    if d == 0:
        # R^0 has a single (empty-tuple) point; no nonzero normal exists.
        return Feasibility(True, ())

    has_strict = any(c.relation is STRICT_LT for c in constraints)
    num_vars = 2 * d + 1  # u, v with x = u - v, plus eps
    rows = []
    for c in constraints:
        coeffs = list(c.normal) + [-a for a in c.normal] + [ZERO]
        if c.relation is STRICT_LT:
            coeffs[2 * d] = ONE
            rows.append((coeffs, "le", c.offset))
        elif c.relation is LE:
            rows.append((coeffs, "le", c.offset))
        else:
            rows.append((coeffs, "eq", c.offset))
    cap = [ZERO] * num_vars
    cap[2 * d] = ONE
    rows.append((cap, "le", ONE))

    objective = [ZERO] * num_vars
    objective[2 * d] = ONE

    status, value, point = kernel.simplex_maximize(num_vars, rows, objective)
    if status == "infeasible":
        return INFEASIBLE
    if has_strict and (value is None or value <= 0):
        return INFEASIBLE
    witness = tuple(point[i] - point[d + i] for i in range(d))
    for c in constraints:
        if not c.satisfied_by(witness):  # pragma: no cover - kernel guarantee
            raise AssertionError(
                f"LP witness {witness} violates {c}; kernel bug"
            )
    return Feasibility(True, witness)


def lp_feasible_on_flat(constraints, flat, extra=()) -> Feasibility:
    """Feasibility of constraints restricted to a flat, in flat coordinates.

    ``flat`` provides ``anchor`` and ``basis``; a constraint ``n.x rel b``
    becomes ``(n.B) t rel (b - n.anchor)`` over the flat parameters t.
    Rows whose restricted normal vanishes become tautologies or global
    contradictions and are resolved immediately.  Returns feasibility with the
    witness mapped back to ambient coordinates.
    """
    k = len(flat.basis)
    reduced = []
    for c in constraints:
        coeffs = tuple(kernel.dot(c.normal, bvec) for bvec in flat.basis)
        rhs = c.offset - kernel.dot(c.normal, flat.anchor)
        if all(a == 0 for a in coeffs):
            if c.relation is STRICT_LT and not (0 < rhs):
                return INFEASIBLE
            if c.relation is LE and not (0 <= rhs):
                return INFEASIBLE
            if c.relation is EQ and rhs != 0:
                return INFEASIBLE
            continue
        reduced.append(LinConstraint(coeffs, rhs, c.relation))
    for c in extra:
        reduced.append(c)
    result = lp_feasible(reduced, k)
    if not result.feasible:
        return INFEASIBLE
    point = flat.anchor
    for coeff, bvec in zip(result.witness, flat.basis):
        point = tuple(p + coeff * b for p, b in zip(point, bvec))
    return Feasibility(True, point)
