"""Line-oriented text format for scenes.

The format is deliberately small and diff-friendly::

    # comment
    dim 2
    body K1
    piece
    lt 1 0 0          # normal (1, 0), relation <, offset 0
    le -1/2 1 3/4     # rationals are p/q or integers, lowest terms on write

``dim`` must precede every body; ``body`` names must be unique; each
``piece`` needs at least one constraint line.  :func:`parse_scene` and
:func:`write_scene` round-trip exactly (rationals are re-emitted in lowest
terms, which is where the canonical form comes from).
"""

from fractions import Fraction

from .constraints import EQ, LE, STRICT_LT, LinConstraint
from .errors import ParseError
from .model import ConvexBody, Scene, SemiOpenPiece

_REL_BY_TOKEN = {"lt": STRICT_LT, "le": LE, "eq": EQ}
_TOKEN_BY_REL = {STRICT_LT: "lt", LE: "le", EQ: "eq"}


def _parse_rational(token: str, line_no: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line_no, f"bad rational token {token!r}") from None
    return value


class _Builder:
    """Accumulates bodies/pieces, flushing each level when the next starts."""

    def __init__(self):
        self.dimension = None
        self.bodies = []
        self.body_names = set()
        self.current_body = None     # (name, declared_at, pieces)
        self.current_piece = None    # (declared_at, constraints)

    def flush_piece(self):
        if self.current_piece is None:
            return
        declared_at, constraints = self.current_piece
        if not constraints:
            raise ParseError(declared_at, "empty piece (no constraint lines)")
        name, _, pieces = self.current_body
        pieces.append(SemiOpenPiece(constraints, self.dimension))
        self.current_piece = None

    def flush_body(self):
        self.flush_piece()
        if self.current_body is None:
            return
        name, declared_at, pieces = self.current_body
        if not pieces:
            raise ParseError(declared_at, f"body {name!r} has no pieces")
        self.bodies.append(ConvexBody(name, pieces))
        self.current_body = None


def parse_scene(text: str) -> Scene:
    """Parse the text format; every diagnostic carries its 1-based line."""
    state = _Builder()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        if head == "dim":
            if state.dimension is not None:
                raise ParseError(line_no, "dim declared twice")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(line_no, "expected: dim <positive integer>")
            state.dimension = int(tokens[1])
            if state.dimension < 1:
                raise ParseError(line_no, "dimension must be >= 1")
            continue

        if head == "body":
            if state.dimension is None:
                raise ParseError(line_no, "body before dim")
            if len(tokens) != 2:
                raise ParseError(line_no, "expected: body <name>")
            state.flush_body()
            name = tokens[1]
            if name in state.body_names:
                raise ParseError(line_no, f"duplicate body name {name!r}")
            state.body_names.add(name)
            state.current_body = (name, line_no, [])
            continue

        if head == "piece":
            if state.current_body is None:
                raise ParseError(line_no, "piece before any body")
            if len(tokens) != 1:
                raise ParseError(line_no, "piece takes no arguments")
            state.flush_piece()
            state.current_piece = (line_no, [])
            continue

        if head in _REL_BY_TOKEN:
            if state.current_piece is None:
                raise ParseError(line_no, "constraint before any piece")
            d = state.dimension
            if len(tokens) != d + 2:
                raise ParseError(
                    line_no,
                    f"arity mismatch: expected {d + 1} rational tokens "
                    f"after the relation, got {len(tokens) - 1}",
                )
            values = [_parse_rational(t, line_no) for t in tokens[1:]]
            normal, offset = tuple(values[:d]), values[d]
            if all(v == 0 for v in normal):
                raise ParseError(line_no, "zero normal vector")
            state.current_piece[1].append(
                LinConstraint(normal, offset, _REL_BY_TOKEN[head])
            )
            continue

        raise ParseError(
            line_no,
            f"bad relation or directive {head!r} "
            f"(expected dim/body/piece/lt/le/eq)",
        )

    if state.dimension is None:
        raise ParseError(1, "missing dim declaration")
    state.flush_body()
    return Scene(state.dimension, state.bodies)


def write_scene(scene: Scene) -> str:
    """Canonical text form: lowest-term rationals, one constraint per line."""
    out = [f"dim {scene.dimension}"]
    for body in scene.bodies:
        out.append(f"body {body.name}")
        for piece in body.pieces:
            out.append("piece")
            for c in piece.constraints:
                coeffs = " ".join(str(Fraction(v)) for v in c.normal)
                out.append(
                    f"{_TOKEN_BY_REL[c.relation]} {coeffs} {Fraction(c.offset)}"
                )
    return "\n".join(out) + "\n"


def load_scene(path: str) -> Scene:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_scene(handle.read())


def save_scene(scene: Scene, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(write_scene(scene))


__all__ = ["parse_scene", "write_scene", "load_scene", "save_scene"]
