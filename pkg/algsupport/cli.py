"""
Command-line interface: JSON in, JSON out, one subcommand per operation
"""

import argparse
import asyncio
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

from . import __version__
from .binom_ideal import decompose, dickson_oracle
from .charp.artin_schreier import as_root
from .constants import DEFAULT_DEPTH, DEFAULT_LEVELS, Branch, Command
from .exceptions import AlgSupportError, FixtureMismatchError, SchemaError
from .fixtures import FIXTURES, get_fixture, run_all_async, run_fixture
from .gapcheck import gap_verify
from .geom import dual, faces, hilbert_basis
from .jsonio import (
    decode_cone,
    decode_order,
    decode_poly,
    decode_rational,
    decode_shifts,
    decode_spec,
    decode_truncations,
    decode_vec,
    dumps,
    encode_asroot,
    encode_cone,
    encode_diagnostic,
    encode_dickson,
    encode_gap,
    encode_normalization,
    encode_tau,
    encode_vec,
    loads,
    validate,
)
from .plot import build_figure, render_csv, render_svg
from .support import non_polyhedral_diagnostic, normalize, tau_result

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    """Defaults for every tunable the commands expose"""
    depth: int = DEFAULT_DEPTH
    levels: int = DEFAULT_LEVELS
    oracle_radius: int = 2
    oracle_max_doublings: int = 6
    workers: Optional[int] = None


class Context:
    def __init__(self, args: argparse.Namespace, settings: Settings):
        self.args = args
        self.settings = settings

    def read(self) -> Any:
        path = self.args.input
        if path == "-":
            return loads(sys.stdin.read())
        with open(path, encoding="utf-8") as f:
            return loads(f.read())

    def write(self, text: str, path: Optional[str] = None) -> None:
        path = path if path is not None else self.args.output
        if path == "-":
            sys.stdout.write(text)
            return
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _cmd_cone(ctx: Context) -> int:
    c = decode_cone(ctx.read())
    out: Dict[str, Any] = {"cone": encode_cone(c)}
    if ctx.args.dual:
        out["dual"] = encode_cone(dual(c))
    if ctx.args.faces is not None:
        out["faces"] = [encode_cone(f) for f in faces(c, ctx.args.faces)]
    if ctx.args.hilbert:
        out["hilbert_basis"] = [encode_vec(h) for h in hilbert_basis(c)]
    ctx.write(dumps(out))
    return 0


def _cmd_dickson(ctx: Context) -> int:
    data = ctx.read()
    shifts = decode_shifts(data)
    result = decompose(shifts, certify=data.get("certify", True))
    out = encode_dickson(result)
    if ctx.args.oracle:
        s = ctx.settings
        oracle = dickson_oracle(shifts, s.oracle_radius, s.oracle_max_doublings)
        out["oracle_points"] = [encode_vec(x) for x in oracle]
        out["oracle_agrees"] = sorted(oracle) == sorted(result.C)
    ctx.write(dumps(out))
    return 0


def _cmd_tau(ctx: Context) -> int:
    ctx.write(dumps(encode_tau(tau_result(decode_spec(ctx.read())))))
    return 0


def _plots(ctx: Context, fig_args: Dict[str, Any]) -> None:
    if ctx.args.svg is None and ctx.args.csv is None:
        return
    fig = build_figure(**fig_args)
    if ctx.args.svg is not None:
        ctx.write(render_svg(fig), ctx.args.svg)
    if ctx.args.csv is not None:
        ctx.write(render_csv(fig), ctx.args.csv)


def _cmd_normalize(ctx: Context) -> int:
    spec = decode_spec(ctx.read())
    result = normalize(spec)
    ctx.write(dumps(encode_normalization(result)))
    _plots(ctx, {"spec": spec, "C": result.C, "sigma": result.sigma})
    return 0


def _cmd_asroot(ctx: Context) -> int:
    data = ctx.read()
    validate(data, "asroot.json")
    poly = decode_poly(data["poly"], "$.poly")
    order = decode_order(data["order"], "$.order")
    branch = Branch(data.get("branch", Branch.AUTO.value))
    depth = ctx.args.depth if ctx.args.depth is not None else data.get("depth", ctx.settings.depth)
    ctx.write(dumps(encode_asroot(as_root(poly, order, branch, depth))))
    return 0


def _cmd_gap(ctx: Context) -> int:
    data = ctx.read()
    validate(data, "gap.json")
    series = decode_poly(data["series"], "$.series")
    coeffs = [decode_poly(c, f"$.coefficients[{i}]") for i, c in enumerate(data["coefficients"])]
    weight = decode_vec(data["weight"], "$.weight", series.n)
    level = data.get("guaranteed_level")
    guaranteed = decode_rational(level, "$.guaranteed_level") if level is not None else None
    ctx.write(dumps(encode_gap(gap_verify(series, coeffs, weight, guaranteed))))
    return 0


def _cmd_diagnose(ctx: Context) -> int:
    truncations = decode_truncations(ctx.read())
    levels = ctx.args.levels if ctx.args.levels is not None else ctx.settings.levels
    ctx.write(dumps(encode_diagnostic(non_polyhedral_diagnostic(truncations, levels))))
    return 0


def _cmd_plot(ctx: Context) -> int:
    data = ctx.read()
    validate(data, "plot.json")
    spec = decode_spec(data)
    C = [decode_vec(c, f"$.C[{i}]", 2) for i, c in enumerate(data.get("C", []))]
    sigma = decode_cone(data["sigma"], "$.sigma") if "sigma" in data else None
    fig = build_figure(spec, C, sigma)
    ctx.write(render_svg(fig), ctx.args.svg)
    if ctx.args.csv is not None:
        ctx.write(render_csv(fig), ctx.args.csv)
    return 0


def _cmd_check_example(ctx: Context) -> int:
    if ctx.args.all:
        outcomes = asyncio.run(run_all_async(workers=ctx.settings.workers))
        ctx.write(dumps([o.to_json() for o in outcomes]))
        return 0 if all(o.ok for o in outcomes) else 1
    if ctx.args.name is None:
        raise SchemaError("a fixture name or --all is required", "$")
    outcome = run_fixture(get_fixture(ctx.args.name), strict=False)
    ctx.write(dumps(outcome.to_json()))
    if not outcome.ok:
        raise FixtureMismatchError(outcome.name, outcome.diffs)
    return 0


HANDLERS: Dict[Command, Callable[[Context], int]] = {
    Command.CONE: _cmd_cone,
    Command.DICKSON: _cmd_dickson,
    Command.TAU: _cmd_tau,
    Command.NORMALIZE: _cmd_normalize,
    Command.ASROOT: _cmd_asroot,
    Command.GAP: _cmd_gap,
    Command.DIAGNOSE: _cmd_diagnose,
    Command.PLOT: _cmd_plot,
    Command.CHECK_EXAMPLE: _cmd_check_example,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="JSON input file, - for stdin")
    common.add_argument("--output", default="-", help="output file, - for stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = argparse.ArgumentParser(
        prog="algsupport",
        description="Exact computations on supports of algebraic Laurent series",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(Command.CONE.value, parents=[common], help="cone operations")
    p.add_argument("--dual", action="store_true", help="also emit the dual cone")
    p.add_argument("--faces", type=int, metavar="D", help="emit the faces of dimension D")
    p.add_argument("--hilbert", action="store_true", help="emit the Hilbert basis")

    p = sub.add_parser(Command.DICKSON.value, parents=[common], help="decompose shifted cones")
    p.add_argument("--oracle", action="store_true", help="cross-check with enumeration")

    sub.add_parser(Command.TAU.value, parents=[common], help="tau, tau' and tau tilde of a support")

    p = sub.add_parser(Command.NORMALIZE.value, parents=[common], help="normalize a support")
    p.add_argument("--svg", metavar="FILE", help="write a planar figure")
    p.add_argument("--csv", metavar="FILE", help="write the plotted points")

    p = sub.add_parser(Command.ASROOT.value, parents=[common], help="Artin-Schreier root")
    p.add_argument("--depth", type=int, help=f"truncation depth (default {DEFAULT_DEPTH})")

    sub.add_parser(Command.GAP.value, parents=[common], help="check the level-gap bound")

    p = sub.add_parser(Command.DIAGNOSE.value, parents=[common], help="truncation diagnostic")
    p.add_argument("--levels", type=int, help=f"levels needed for a verdict (default {DEFAULT_LEVELS})")

    p = sub.add_parser(Command.PLOT.value, parents=[common], help="plot a planar support")
    p.add_argument("--svg", metavar="FILE", help="SVG destination (default: --output)")
    p.add_argument("--csv", metavar="FILE", help="write the plotted points")

    p = sub.add_parser(Command.CHECK_EXAMPLE.value, parents=[common], help="run bundled fixtures")
    p.add_argument("name", nargs="?", choices=sorted(FIXTURES), help="fixture name")
    p.add_argument("--all", action="store_true", help="run every fixture concurrently")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def run(argv: Optional[Sequence[str]] = None, settings: Optional[Settings] = None) -> int:
    """Parse the arguments and dispatch one subcommand.

    Args:
        argv: arguments without the program name; ``sys.argv[1:]`` when None.
        settings: defaults for the command tunables; ``Settings()`` when None.

    Returns:
        Exit status: 0 ok, 1 fixture mismatch, 2 bad input or failed
        precondition. Errors are logged rather than raised.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    _configure_logging(args.verbose)
    ctx = Context(args, settings or Settings())
    handler = HANDLERS[Command(args.command)]
    try:
        return handler(ctx)
    except FixtureMismatchError as e:
        logger.error("%s", e)
        return 1
    except AlgSupportError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return 2
    except OSError as e:
        logger.error("cannot access %s: %s", e.filename, e.strerror)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
