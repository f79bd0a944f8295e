"""
Command line front end.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 on invalid input. The JSON payload goes
to standard output (or ``--out``), diagnostics go to standard error as JSON log records.
"""
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import click
from pythonjsonlogger import jsonlogger

from . import __version__
from .a3suite import a3_run
from .coeff import FieldSpec
from .config import get_config, parse_int_list, parse_int_rows
from .errors import InvariantViolation, NashFanError, NonTermination
from .fan import default_order, groebner_fan_2d, is_trivial_fan
from .groebner import buchberger, staircase_dimension
from .nash import build_Jn, check_witness, construct_witness, nobile_decide
from .poly import TermOrder
from .semigroup import AffineSemigroup, Cone, dot, dual_generators
from .svg import render_svg

logger = logging.getLogger(__name__)

VERDICT_FAILED = 1
INPUT_ERROR = 2


def configure_logging(level: str):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(jsonlogger.JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s"))
    package_logger = logging.getLogger("nashfan")
    package_logger.handlers = [handler]
    package_logger.setLevel(level.upper())
    package_logger.propagate = False


def _rows(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_int_rows(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


def _vector(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(parse_int_list(value))
    except ValueError:
        raise click.BadParameter(f"Cannot parse integer vector {value!r}")


def _field(ctx, param, value) -> FieldSpec:
    try:
        return FieldSpec(value)
    except NashFanError as e:
        raise click.BadParameter(str(e))


def _emit(payload: dict, out: Optional[Path]):
    text = json.dumps(payload, indent=2) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text)
        logger.info("wrote %s", out)


def _semigroup(rays, gens, normals) -> AffineSemigroup:
    if rays is not None and gens is None and normals is None:
        return dual_generators(Cone.from_rays(rays))
    if rays is None and gens is not None and normals is not None:
        return AffineSemigroup.from_generators(gens, normals)
    raise click.UsageError("Give either --rays or both --gens and --normals")


def _input_rays(semigroup: AffineSemigroup, rays) -> list:
    """Rays in the coordinates of ``--rays``; weights pull back by the transpose of the exponent transform."""
    columns = list(zip(*semigroup.transform))
    return [[dot(column, ray) for column in columns] for ray in rays]


def _order(rows, semigroup: AffineSemigroup) -> TermOrder:
    if rows is None:
        return default_order(semigroup)
    return TermOrder(tuple(rows)).validate(semigroup)


rays_option = click.option("--rays", callback=_rows, help='Rays of sigma as rows, e.g. "0,1;4,-3".')
gens_option = click.option("--gens", callback=_rows, help="Minimal generators of the semigroup as rows.")
normals_option = click.option("--normals", callback=_rows, help="Facet normals of the dual cone as rows.")
n_option = click.option("-n", "n", type=int, required=True, help="Order of the blowup, J_n = J_0^(n+1).")
p_option = click.option("-p", "field", type=int, default=0, callback=_field, help="0 for Q or a prime p.")
order_option = click.option("--order", callback=_rows, help='Base order matrix, e.g. "2,-1;1,1".')
out_option = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write JSON here.")


@click.group()
@click.version_option(__version__)
@click.option("--log-level", default=None, help="Level of the JSON log records on standard error.")
def main(log_level: Optional[str]):
    configure_logging(log_level or get_config(ignore_local=True).log_level)


@main.command()
@click.option("--rays", callback=_rows, required=True, help='Rays of sigma as rows, e.g. "0,1;4,-3".')
@out_option
def dual(rays, out):
    """Minimal generators of the dual semigroup in nonnegative coordinates."""
    cone = Cone.from_rays(rays)
    semigroup = dual_generators(cone)
    _emit({"sigma": cone.to_dict(), "semigroup": semigroup.to_dict()}, out)
    return 0


@main.command()
@rays_option
@gens_option
@normals_option
@n_option
@p_option
@order_option
@click.option("--weight", callback=_vector, help="Refine the order by this weight and report initial forms.")
@click.option("--strategy", type=click.Choice(["normal", "fifo"]), default="normal", show_default=True)
@out_option
def gb(rays, gens, normals, n, field, order, weight, strategy, out):
    """Reduced marked Gröbner basis of J_n."""
    semigroup = _semigroup(rays, gens, normals)
    term_order = _order(order, semigroup)
    if weight is not None:
        term_order = term_order.refine(weight)
    basis = buchberger(build_Jn(semigroup, n, field), term_order, strategy=strategy)
    dimension = staircase_dimension(basis.marks, semigroup)
    names = get_config(ignore_local=True).generator_names
    payload = {
        "semigroup": semigroup.to_dict(),
        "n": n,
        "p": field.characteristic,
        "basis": basis.to_dict(),
        "rendered": [element.poly.render(term_order, names) for element in basis.elements],
        "staircase_dimension": dimension if dimension != float("inf") else "inf",
    }
    if weight is not None:
        payload["initial_forms"] = [
            element.poly.initial_form(weight).to_dict(term_order) for element in basis.elements
        ]
    _emit(payload, out)
    return 0


@main.command()
@click.option("--rays", callback=_rows, required=True, help='Rays of sigma as rows, e.g. "0,1;4,-3".')
@n_option
@p_option
@order_option
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False, path_type=Path), help="Draw the fan here.")
@out_option
def fan(rays, n, field, order, svg_path, out):
    """
    Gröbner fan of J_n on sigma.

    Cells and sigma are reported in the normalized coordinates of the semigroup (see its transform);
    input_rays lists the fan rays in the coordinates of --rays.
    """
    semigroup = dual_generators(Cone.from_rays(rays))
    result = groebner_fan_2d(build_Jn(semigroup, n, field), base_order=_order(order, semigroup))
    payload = result.to_dict()
    payload.update(
        {"n": n, "p": field.characteristic, "semigroup": semigroup.to_dict(), "trivial": is_trivial_fan(result)}
    )
    payload["input_rays"] = _input_rays(semigroup, result.rays)
    if svg_path is not None:
        svg_path.write_text(render_svg(result))
        logger.info("wrote %s", svg_path)
    _emit(payload, out)
    return 0


@main.command()
@click.option("--rays", callback=_rows, required=True, help='Rays of sigma as rows, e.g. "0,1;4,-3".')
@n_option
@p_option
@out_option
def nobile(rays, n, field, out):
    """
    Decide whether the normalized higher Nash blowup is trivial; certify singular cones.

    The fan is reported in normalized coordinates; input_rays lists its rays in the coordinates of --rays.
    """
    verdict = nobile_decide(Cone.from_rays(rays), n, field)
    payload = verdict.to_dict()
    payload.update(
        {"n": n, "p": field.characteristic, "input_rays": _input_rays(verdict.semigroup, verdict.fan.rays)}
    )
    _emit(payload, out)
    return 0


@main.command()
@rays_option
@gens_option
@normals_option
@click.option("-p", "p", type=int, required=True, help="A prime.")
@n_option
@out_option
def witness(rays, gens, normals, p, n, out):
    """Construct and independently verify a witness h in J_n."""
    semigroup = _semigroup(rays, gens, normals)
    result = construct_witness(semigroup, p, n)
    failed = check_witness(result, semigroup)
    payload = result.to_dict()
    payload.update({"semigroup": semigroup.to_dict(), "verified": not failed, "failed": failed})
    _emit(payload, out)
    return VERDICT_FAILED if failed else 0


@main.command()
@click.option("--nmax", type=int, default=None, help="Largest n to verify (configured default and cap).")
@click.option("--primes", default=None, help='Characteristics, e.g. "0,2,3,5".')
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel (n, p) runs.")
@click.option("--progress/--no-progress", default=False, help="Progress bar on standard error.")
@out_option
def a3(nmax, primes, jobs, progress, out):
    """Verification pipeline for the A_3 surface."""
    config = get_config(ignore_local=True)
    nmax = config.a3_nmax if nmax is None else nmax
    if not 1 <= nmax <= config.a3_nmax_cap:
        raise click.BadParameter(f"--nmax must be between 1 and {config.a3_nmax_cap}, got {nmax}")
    try:
        characteristics = config.a3_primes if primes is None else parse_int_list(primes)
        for p in characteristics:
            FieldSpec(p)
    except ValueError as e:
        raise click.BadParameter(str(e))
    reports = a3_run(range(1, nmax + 1), characteristics, jobs, progress, config.a3_fan_check_nmax, ignore_local=True)
    passed = all(report.passed for report in reports)
    _emit({"pass": passed, "reports": [report.to_dict() for report in reports]}, out)
    return 0 if passed else VERDICT_FAILED


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        result = main.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.Abort:
        click.echo("Aborted.", err=True)
        return INPUT_ERROR
    except click.ClickException as e:
        e.show()
        return INPUT_ERROR
    except (InvariantViolation, NonTermination) as e:
        click.echo(f"{type(e).__name__}: {e}", err=True)
        return VERDICT_FAILED
    except ValueError as e:
        click.echo(f"{type(e).__name__}: {e}", err=True)
        return INPUT_ERROR
    return result if isinstance(result, int) else 0


def entry_point():
    sys.exit(run())
