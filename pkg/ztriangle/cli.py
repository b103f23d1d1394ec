import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from ztriangle.patterns.verify.verify_model import SUITES, VerifyModel
from ztriangle.resources.engine_config import EngineConfig
from ztriangle.resources.errors import UsageError, ZTriangleError
from ztriangle.resources.sequences_stats import PUBLISHED_SORTED_PREFIX, SequenceRecord, prefix_stable, write_bfile
from ztriangle.ztriangle_core import SEQUENCE_NAMES, ZTriangleCore

_logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format=LOG_FORMAT,
                        stream=sys.stderr,
                        force=True)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        _logger.info("Wrote %s", out)


def _parse_support(text: str) -> list[int]:
    try:
        return [int(token) for token in text.split(',') if token.strip()]
    except ValueError:
        raise UsageError(f"--support expects comma-separated integers (received {text!r}).")


def _parse_cell(text: str) -> tuple[int, int]:
    try:
        m, n = (int(token) for token in text.split(','))
    except ValueError:
        raise UsageError(f"--highlight expects M,N (received {text!r}).")
    return m, n


@click.group()
@click.option('--threads', type=int, default=1, show_default=True, help='Worker cap for range statistics.')
@click.option('--prime-ceiling', type=int, default=2_000_000, show_default=True,
              help='Largest number of primes a table may hold.')
@click.option('--no-extend', is_flag=True, help='Fail instead of growing the prime table.')
@click.option('--cycle-budget', type=int, default=2 ** 16, show_default=True,
              help='Maximum number of phi steps in cycle searches.')
@click.option('--verbose', is_flag=True, help='Log progress to stderr.')
@click.pass_context
def cli(ctx: click.Context, threads: int, prime_ceiling: int, no_extend: bool, cycle_budget: int,
        verbose: bool) -> None:
    """
    Exact Z(a, b) = ab / gcd(a, b)^2 triangles, their GF(2) dynamics and figures.
    """
    _configure_logging(verbose)
    ctx.obj = EngineConfig(prime_ceiling=prime_ceiling,
                           auto_extend=not no_extend,
                           threads=threads,
                           cycle_budget=cycle_budget)


def _core(ctx: click.Context) -> ZTriangleCore:
    return ZTriangleCore(ctx.obj)


@cli.command()
@click.option('--start', default='primes', show_default=True,
              help='primes, naturals, fibonacci, binomial:N or file:PATH.')
@click.option('--depth', type=int, required=True, help='Number of rows.')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv', show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Output file (default: stdout).')
@click.pass_context
def triangle(ctx: click.Context, start: str, depth: int, fmt: str, out: Optional[str]) -> None:
    """Build a triangle slice and export it."""
    core = _core(ctx)
    _emit(core.export_triangle(core.triangle(start, depth), fmt), out)


@cli.command('left-edge')
@click.option('--rows', type=int, default=16, show_default=True)
@click.option('--format', 'fmt', type=click.Choice(['table', 'bfile']), default='table', show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def left_edge(ctx: click.Context, rows: int, fmt: str, out: Optional[str]) -> None:
    """Left edge d_0..d_{rows-1} of the prime-start triangle."""
    core = _core(ctx)
    _emit(core.export_left_edge(core.left_edge(rows), fmt), out)


@cli.command('closed-form')
@click.option('--m', 'm', type=int, required=True)
@click.option('--n', 'n', type=int, required=True)
@click.pass_context
def closed_form(ctx: click.Context, m: int, n: int) -> None:
    """Single entry a_{m,n} of the prime-start triangle."""
    core = _core(ctx)
    entry = core.closed_form(m, n)
    table = core.prime_table
    click.echo(f"{entry.value(table)} {entry.factorization(table)} omega={entry.omega}")


@cli.command()
@click.option('--suite', type=click.Choice([*SUITES, 'all']), required=True)
@click.option('--bound', type=int, default=None, help='Suite bound (default: the suite default).')
@click.option('--seed', type=int, default=2013, show_default=True, help='Seed of the randomized suites.')
@click.pass_context
def verify(ctx: click.Context, suite: str, bound: Optional[int], seed: int) -> None:
    """Run an invariant suite."""
    ctx.obj.verify_seed = seed
    model = VerifyModel(_core(ctx), suite, bound)
    for report in model.run():
        click.echo(report.line())
    model.raise_on_failure()


@cli.command()
@click.option('--k', 'k', type=int, default=None, help='Position of a unit sequence.')
@click.option('--support', default=None, help='Comma-separated support, e.g. 1,4.')
@click.option('--budget', type=int, default=None, help='Override of the cycle budget.')
@click.pass_context
def cycles(ctx: click.Context, k: Optional[int], support: Optional[str], budget: Optional[int]) -> None:
    """Cycle length of phi on a unit sequence or an arbitrary support."""
    if (k is None) == (support is None):
        raise UsageError("Give exactly one of --k and --support.")
    core = _core(ctx)
    if k is not None:
        if budget is not None:
            core.config.cycle_budget = budget
            core.config.validate()
        searched, closed = core.cycles_for_unit(k)
        click.echo(str(searched))
        if searched != closed:
            _logger.warning("Searched cycle length %d differs from L_k = %d", searched, closed)
    else:
        click.echo(str(core.cycles_for_support(_parse_support(support), budget)))


@cli.command()
@click.option('--name', type=click.Choice(SEQUENCE_NAMES), required=True)
@click.option('--count', type=int, default=500, show_default=True)
@click.option('--format', 'fmt', type=click.Choice(['bfile']), default='bfile', show_default=True)
@click.option('--offset', type=int, default=0, show_default=True, help='Index of the first term.')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def sequence(ctx: click.Context, name: str, count: int, fmt: str, offset: int, out: Optional[str]) -> None:
    """Derived sequences in b-file form."""
    core = _core(ctx)
    seq = core.sequence(name, count)
    if name == 'natural-left-edge-sorted':
        if prefix_stable(SequenceRecord("published", PUBLISHED_SORTED_PREFIX), seq):
            _logger.info("Sorted prefix over %d terms matches the published twelve terms", count)
        else:
            _logger.warning("Sorted prefix over %d terms does not match the published twelve terms", count)
    _emit(write_bfile(seq, offset=offset), out)


@cli.command()
@click.option('--from', 'x', type=int, required=True)
@click.option('--to', 'y', type=int, required=True)
@click.pass_context
def stats(ctx: click.Context, x: int, y: int) -> None:
    """Exact extrema and sums of d_m and omega(d_m) over a finite range."""
    core = _core(ctx)
    extrema, sums = core.stats(x, y)
    record = {'kind': 'exact finite-range computation',
              'from': x,
              'to': y,
              # big integers as decimal strings
              'min_d': str(extrema.min_d), 'min_d_at': extrema.min_d_at,
              'max_d': str(extrema.max_d), 'max_d_at': extrema.max_d_at,
              'min_omega': extrema.min_omega, 'min_omega_at': extrema.min_omega_at,
              'max_omega': extrema.max_omega, 'max_omega_at': extrema.max_omega_at,
              'sum_d': str(sums.sum_d),
              'sum_omega': sums.sum_omega}
    click.echo(json.dumps(record, indent=2))


@cli.command()
@click.option('--what', required=True, help='p-slice:K, psi:I,J,..., delta-square:T or omega-triangle.')
@click.option('--size', type=int, default=100, show_default=True, help='Rows of the figure (psi: generations).')
@click.option('--seed', type=int, default=0x5EED, show_default=True, help='Palette seed.')
@click.option('--out', type=click.Path(dir_okay=False), required=True)
@click.option('--format', 'formats', type=click.Choice(['ppm', 'svg']), multiple=True, default=('ppm',),
              show_default=True, help='PPM is always written; repeat to add svg.')
@click.option('--geometry', type=click.Choice(['offset', 'square']), default='offset', show_default=True)
@click.option('--cell-size', type=int, default=None,
              help='Cell edge in pixels (default: 6, or 256 // 2^T for delta squares).')
@click.option('--highlight', multiple=True, help='M,N cell of a p-slice to frame; repeatable.')
@click.pass_context
def render(ctx: click.Context, what: str, size: int, seed: int, out: str, formats: Sequence[str], geometry: str,
           cell_size: Optional[int], highlight: Sequence[str]) -> None:
    """Render a figure to PPM (and optionally SVG) plus a sidecar JSON."""
    config: EngineConfig = ctx.obj
    config.set_palette_seed(seed)
    config.geometry = geometry
    if cell_size is not None:
        config.cell_size = cell_size
    core = _core(ctx)
    image, operation, parameters = core.render(what, size, [_parse_cell(cell) for cell in highlight], cell_size)
    for path in core.save_image(image, Path(out), operation, parameters, formats):
        click.echo(str(path))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the CLI and maps failures onto the exit code contract: 0 ok, 1 usage, 2 verification
    failure, 3 range or resource limit.
    """
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name='ztriangle',
                          standalone_mode=False)
    except click.ClickException as e:
        click.echo(f"error: code=1 kind={type(e).__name__} message={e.format_message()}", err=True)
        return 1
    except click.Abort:
        click.echo("error: code=1 kind=Abort message=aborted", err=True)
        return 1
    except ZTriangleError as e:
        click.echo(f"error: code={e.exit_code} kind={type(e).__name__} message={e}", err=True)
        return e.exit_code
    except OSError as e:
        # filesystem failures, e.g. an unwritable --out or cache directory
        click.echo(f"error: code=1 kind={type(e).__name__} message={e}", err=True)
        return 1
    return result if isinstance(result, int) else 0


def run() -> None:
    sys.exit(main())
