"""flatcover: exact analysis of complements of unions of semi-open convex polyhedra.

The library models scenes of convex bodies (finite unions of semi-open
polyhedral pieces) with exact rational arithmetic, enumerates the induced
hyperplane arrangement, and computes the complement's encapsulated points,
local dimensions, and its unique strong cover by flats, together with
generators for extremal configurations and verified combinatorial bounds.
"""

from .constraints import EQ, LE, STRICT_LT, LinConstraint, Relation, constraint
from .errors import (
    DocumentedInconsistencyError,
    FlatcoverError,
    InputError,
    InvariantError,
    ParseError,
    PreconditionError,
    ResourceBudgetError,
    UnsupportedError,
    VerificationFailure,
)
from .flats import Flat, affine_hull, make_flat
from .lp import Feasibility, lp_feasible
from .model import (
    ConvexBody,
    DirectionCone,
    Scene,
    SemiOpenPiece,
    bodies_pairwise_disjoint,
    body_touches,
    entry_cone,
    piece_contains,
    verify_convex_union,
)
from .vectors import Rational, rat, vec

__version__ = "0.1.0"

__all__ = [
    "EQ",
    "LE",
    "STRICT_LT",
    "LinConstraint",
    "Relation",
    "constraint",
    "DocumentedInconsistencyError",
    "FlatcoverError",
    "InputError",
    "InvariantError",
    "ParseError",
    "PreconditionError",
    "ResourceBudgetError",
    "UnsupportedError",
    "VerificationFailure",
    "Flat",
    "affine_hull",
    "make_flat",
    "Feasibility",
    "lp_feasible",
    "ConvexBody",
    "DirectionCone",
    "Scene",
    "SemiOpenPiece",
    "bodies_pairwise_disjoint",
    "body_touches",
    "entry_cone",
    "piece_contains",
    "verify_convex_union",
    "Rational",
    "rat",
    "vec",
    "__version__",
]
