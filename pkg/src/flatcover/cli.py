"""Command-line interface.

Subcommands::

    gen <name> [params] -o FILE     write a generated scene file
    analyze FILE [...]              encapsulated points / cover / local data
    verify FILE [--expect-...]      exit 1 if an expectation fails
    bounds --d A..B --n C..D        bound table over a (d, n) grid
    render FILE -o OUT.svg          SVG picture of a planar scene + cover
    oracle FILE --trials T --seed S independent sampled cross-check

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
budget exceeded.  All output is deterministic for a fixed argv and seed.
"""

import argparse
import sys
from fractions import Fraction

from .analysis import (
    enumerate_encapsulated,
    local_dimension,
    strong_cover,
    touch_set,
)
from .arrangement import DEFAULT_HYPERPLANE_BUDGET
from .bounds import build_table
from .constructions import (
    gen_carved_tiling,
    gen_disjoint_planar,
    gen_grid,
    gen_interval_chain,
    gen_neighborly_tiling,
    gen_three_sets,
    gen_turan_planar,
    gen_two_sets_profile,
    random_scene,
)
from .errors import (
    InputError,
    ResourceBudgetError,
    VerificationFailure,
)
from .model import bodies_pairwise_disjoint
from .oracle import (
    AGREE_TRUE,
    FALSE_WITH_CERTIFICATE,
    grid_cover_check,
    sample_check_encapsulated,
)
from .sceneio import load_scene, save_scene, write_scene
from .svgout import render_svg


def _point_arg(text: str):
    try:
        return tuple(Fraction(tok) for tok in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad point {text!r}; expected x,y,... rationals")


def _range_arg(text: str):
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"bad range {text!r}; expected A..B")
    if hi < lo:
        raise InputError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _int_list_arg(text: str):
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InputError(f"bad integer list {text!r}")


def _fmt_point(point) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in point) + ")"


def _nu_of(scene, budget):
    cover = strong_cover(scene, budget=budget)
    return cover, cover.nu


def _emit_scene(report_or_scene, out_path):
    scene = getattr(report_or_scene, "scene", report_or_scene)
    if out_path:
        save_scene(scene, out_path)
        print(f"wrote {out_path}: dim {scene.dimension}, "
              f"{len(scene.bodies)} bodies")
    else:
        sys.stdout.write(write_scene(scene))
    return 0


def _cmd_gen(args) -> int:
    name = args.name
    if name == "interval-chain":
        report = gen_interval_chain(args.n if args.n is not None else 3)
    elif name == "grid":
        report = gen_grid(args.d if args.d is not None else 2,
                          args.n if args.n is not None else 4)
    elif name == "two-sets":
        if args.profile is None:
            raise InputError("two-sets needs --profile v0,v1,...,vd of 0/1")
        report = gen_two_sets_profile(_int_list_arg(args.profile))
    elif name == "three-sets":
        report = gen_three_sets(args.d if args.d is not None else 2)
    elif name == "turan":
        parts = _int_list_arg(args.parts) if args.parts else (1, 1, 1, 1)
        if len(parts) != 4:
            raise InputError("turan needs --parts n1,n2,n3,n4")
        report = gen_turan_planar(*parts)
    elif name == "disjoint-planar":
        report = gen_disjoint_planar(args.n if args.n is not None else 4)
    elif name == "neighborly":
        report = gen_neighborly_tiling(args.d if args.d is not None else 3,
                                       args.n if args.n is not None else 5)
    elif name == "carved":
        report = gen_carved_tiling(args.d if args.d is not None else 3,
                                   args.n if args.n is not None else 5)
    elif name == "random":
        report = random_scene(args.seed, d=args.d if args.d is not None else 2)
    else:
        raise InputError(
            f"unknown generator {name!r}; choose from interval-chain, grid, "
            "two-sets, three-sets, turan, disjoint-planar, neighborly, "
            "carved, random"
        )
    return _emit_scene(report, args.output)


def _cmd_analyze(args) -> int:
    scene = load_scene(args.file)
    budget = args.budget

    if args.local_dim is not None:
        point = _point_arg(args.local_dim)
        dim = local_dimension(scene, point, budget=budget)
        print(f"local dimension at {_fmt_point(point)}: {dim}")
        return 0

    if args.touch is not None:
        point = _point_arg(args.touch)
        touching = touch_set(scene, point)
        names = [scene.bodies[i - 1].name for i in sorted(touching.indices)]
        print(f"bodies touching {_fmt_point(point)}: "
              f"{', '.join(names) if names else '(none)'}")
        return 0

    if args.encapsulated:
        points = enumerate_encapsulated(scene, budget=budget)
        print(f"encapsulated points: {len(points)}")
        for p in points:
            print(f"  {_fmt_point(p)}")
        return 0

    if args.strong_cover:
        cover, nu = _nu_of(scene, budget)
        print(f"nu = {tuple(nu)}")
        for flat in cover.flats:
            if flat.dimension == 0:
                print(f"  point {_fmt_point(flat.anchor)}")
            elif flat.dimension == scene.dimension:
                print(f"  full space R^{scene.dimension}")
            else:
                basis = "; ".join(_fmt_point(b) for b in flat.basis)
                print(f"  {flat.dimension}-flat through "
                      f"{_fmt_point(flat.anchor)} along {basis}")
        return 0

    # Default summary.
    points = enumerate_encapsulated(scene, budget=budget)
    cover, nu = _nu_of(scene, budget)
    print(f"dim {scene.dimension}, {len(scene.bodies)} bodies")
    print(f"encapsulated points: {len(points)}")
    print(f"nu = {tuple(nu)}")
    return 0


def _cmd_verify(args) -> int:
    scene = load_scene(args.file)
    budget = args.budget
    failures = []

    if args.expect_isolated is not None:
        points = enumerate_encapsulated(scene, budget=budget)
        if len(points) != args.expect_isolated:
            failures.append(
                f"isolated points: expected {args.expect_isolated}, "
                f"got {len(points)}"
            )
        else:
            print(f"isolated points: {len(points)} as expected")

    if args.expect_nu is not None:
        expected = _int_list_arg(args.expect_nu)
        _, nu = _nu_of(scene, budget)
        if tuple(nu) != expected:
            failures.append(f"nu: expected {expected}, got {tuple(nu)}")
        else:
            print(f"nu = {tuple(nu)} as expected")

    if args.disjoint:
        report = bodies_pairwise_disjoint(scene)
        if not report.disjoint:
            a, b = report.pair
            failures.append(f"bodies {a!r} and {b!r} overlap at "
                            f"{_fmt_point(report.witness)}")
        else:
            print("bodies pairwise disjoint as expected")

    if not (args.expect_isolated is not None or args.expect_nu is not None
            or args.disjoint):
        raise InputError(
            "verify needs at least one of --expect-isolated, --expect-nu, "
            "--disjoint"
        )

    if failures:
        for failure in failures:
            print(f"FAIL: {failure}")
        raise VerificationFailure("; ".join(failures))
    print("verify: all expectations met")
    return 0


def _cmd_bounds(args) -> int:
    dims = _range_arg(args.d)
    counts = _range_arg(args.n)
    table = build_table(dims, counts)
    print(table.to_csv() if args.csv else table.to_text())
    return 0


def _cmd_render(args) -> int:
    scene = load_scene(args.file)
    viewport = _point_arg(args.viewport)
    if len(viewport) != 4:
        raise InputError("viewport must be x0,y0,x1,y1")
    cover = None
    if not args.no_cover:
        cover = strong_cover(scene, budget=args.budget)
    svg = render_svg(scene, cover, viewport)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(svg)
    print(f"wrote {args.output}")
    return 0


def _cmd_oracle(args) -> int:
    scene = load_scene(args.file)
    points = enumerate_encapsulated(scene, budget=args.budget)
    print(f"exact engine: {len(points)} encapsulated points")
    disagreements = 0
    for i, point in enumerate(points):
        check = sample_check_encapsulated(
            scene, point, args.trials, seed=args.seed + i
        )
        status = check.verdict
        if check.verdict == FALSE_WITH_CERTIFICATE:
            disagreements += 1
            status += f" certificate={_fmt_point(check.certificate)}"
        print(f"  {_fmt_point(point)}: {status}")
    if scene.dimension <= 2:
        estimate = grid_cover_check(scene, args.resolution)
        _, nu = _nu_of(scene, args.budget)
        agree = tuple(estimate) == tuple(nu)
        print(f"grid estimate nu = {tuple(estimate)}, exact nu = {tuple(nu)}"
              f" ({'agree' if agree else 'DISAGREE'})")
        if not agree:
            disagreements += 1
    if disagreements:
        raise VerificationFailure(
            f"{disagreements} oracle disagreement(s) with the exact engine"
        )
    print("oracle: no disagreement found")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatcover",
        description="Exact complements, isolated points, and flat covers of "
        "unions of semi-open convex polyhedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a scene file")
    p_gen.add_argument("name")
    p_gen.add_argument("--n", type=int, default=None)
    p_gen.add_argument("--d", type=int, default=None)
    p_gen.add_argument("--profile", default=None,
                       help="two-sets cover profile, e.g. 1,1,1")
    p_gen.add_argument("--parts", default=None,
                       help="turan part sizes, e.g. 2,3,2,2")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--output", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_an = sub.add_parser("analyze", help="analyze a scene file")
    p_an.add_argument("file")
    p_an.add_argument("--strong-cover", action="store_true")
    p_an.add_argument("--encapsulated", action="store_true")
    p_an.add_argument("--local-dim", default=None, metavar="X,Y")
    p_an.add_argument("--touch", default=None, metavar="X,Y")
    p_an.add_argument("--budget", type=int, default=DEFAULT_HYPERPLANE_BUDGET)
    p_an.set_defaults(func=_cmd_analyze)

    p_ver = sub.add_parser("verify", help="check expectations, exit 1 if unmet")
    p_ver.add_argument("file")
    p_ver.add_argument("--expect-isolated", type=int, default=None)
    p_ver.add_argument("--expect-nu", default=None, metavar="V0,V1,...")
    p_ver.add_argument("--disjoint", action="store_true")
    p_ver.add_argument("--budget", type=int, default=DEFAULT_HYPERPLANE_BUDGET)
    p_ver.set_defaults(func=_cmd_verify)

    p_bnd = sub.add_parser("bounds", help="bound table over a (d, n) grid")
    p_bnd.add_argument("--d", required=True, metavar="A..B")
    p_bnd.add_argument("--n", required=True, metavar="C..D")
    p_bnd.add_argument("--csv", action="store_true")
    p_bnd.set_defaults(func=_cmd_bounds)

    p_rnd = sub.add_parser("render", help="render a planar scene to SVG")
    p_rnd.add_argument("file")
    p_rnd.add_argument("-o", "--output", required=True)
    p_rnd.add_argument("--viewport", default="-8,-8,8,8", metavar="X0,Y0,X1,Y1")
    p_rnd.add_argument("--no-cover", action="store_true")
    p_rnd.add_argument("--budget", type=int, default=DEFAULT_HYPERPLANE_BUDGET)
    p_rnd.set_defaults(func=_cmd_render)

    p_orc = sub.add_parser("oracle", help="independent sampled cross-check")
    p_orc.add_argument("file")
    p_orc.add_argument("--trials", type=int, default=100)
    p_orc.add_argument("--seed", type=int, default=0)
    p_orc.add_argument("--resolution", type=int, default=64)
    p_orc.add_argument("--budget", type=int, default=DEFAULT_HYPERPLANE_BUDGET)
    p_orc.set_defaults(func=_cmd_oracle)

    return parser


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help; preserve both.
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except ResourceBudgetError as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


__all__ = ["cli_main", "main"]
