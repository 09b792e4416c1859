"""Command-line interface.

Exit codes: 0 success (or CP verdict), 1 usage error, 2 NCP verdict,
3 window starts at a point where the map is non-invertible.
"""
from __future__ import annotations

import datetime as _dt
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import click

from nmpauli import __version__
from nmpauli.channels import ChannelParams, Family, alpha_pm
from nmpauli.dynmap import IntermediateWindow, check_window
from nmpauli.errors import MapNonInvertible, NMError
from nmpauli import figures
from nmpauli.figures import DEFAULT_GRID, FigureData, FigureId
from nmpauli.measures import MeasureReport, measure_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NCP = 2
EXIT_SINGULAR = 3

FLOAT_FORMAT = ".12g"


def fmt(x) -> str:
    return "" if x is None else format(x, FLOAT_FORMAT)


def _rounded(x):
    return None if x is None else float(fmt(x))


def render_csv(title: str, columns, rows, meta: dict) -> str:
    lines = [f"# nmpauli {title}", f"# version: {__version__}"]
    lines += [f"# {k}: {_meta_value(v)}" for k, v in meta.items()]
    lines.append(",".join(columns))
    lines += [",".join(fmt(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _meta_value(v):
    if isinstance(v, float):
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_meta_value(x) for x in v)
    return str(v)


def render_json(title: str, columns, rows, meta: dict) -> str:
    doc = {
        "metadata": {"title": title, "version": __version__, **meta},
        "records": [{c: _rounded(x) for c, x in zip(columns, row)} for row in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def emit(text: str, out, title: str, meta: dict) -> None:
    """Write data to ``out`` (or stdout); timestamps go to a ``.meta.json`` sidecar only."""
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    sidecar = {
        "title": title,
        "version": __version__,
        "params": meta,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    with open(f"{out}.meta.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=2)
        fh.write("\n")


def _params(family, alpha, eta, omega) -> ChannelParams:
    try:
        return ChannelParams(Family(family), alpha, eta, omega)
    except (NMError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc


def _singular_message(params: ChannelParams, p) -> str:
    msg = f"map E(s,0) is non-invertible at p_lo = {fmt(p)}"
    if params.family is Family.DEPHASING and params.alpha > 0:
        msg += f" (alpha_minus = {fmt(alpha_pm(params.alpha)[0])}, maximal dephasing)"
    return msg


family_option = click.option(
    "--family", type=click.Choice([f.value for f in Family]), default="dephasing", show_default=True
)
eta_option = click.option("--eta", type=float, default=0.5, show_default=True, help="Toy sine strength.")
omega_option = click.option("--omega", type=float, default=50.0, show_default=True, help="Toy sine frequency.")
format_option = click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv", show_default=True)


@click.group()
@click.version_option(__version__)
def cli():
    """Non-Markovian qubit Pauli channels: CP-divisibility and non-Markovianity measures."""


@cli.command()
@click.argument("figure_id", type=click.Choice([f.value for f in FigureId]))
@click.option("--alpha", type=float, multiple=True, help="Repeat for several trace-distance series.")
@family_option
@eta_option
@omega_option
@click.option("--p-lo", type=float, default=None, help="Lower window end for eigenvalue figures.")
@click.option("--theta", type=float, default=math.pi / 2, show_default=True, help="Polar angle for trace-distance.")
@click.option("--grid", type=int, default=DEFAULT_GRID, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout).")
@format_option
def figure(figure_id, alpha, family, eta, omega, p_lo, theta, grid, out, fmt_):
    """Emit the data behind one figure as CSV or JSON."""
    fid = FigureId(figure_id)
    defaults = {
        FigureId.CROSSOVER: (0.3,),
        FigureId.NCP_WINDOW: (0.3,),
        FigureId.GAMMA_RATE: (0.7,),
        FigureId.TRACE_DISTANCE: (0.0, 0.5, 0.9),
        FigureId.MEASURES_VS_ALPHA: (),
        FigureId.TOY_KAPPA: (),
    }
    alphas = alpha or defaults[fid]
    try:
        if fid in (FigureId.CROSSOVER, FigureId.NCP_WINDOW):
            params = _params(family, alphas[0], eta, omega)
            if p_lo is not None and not 0.0 <= p_lo <= 0.5:
                raise click.UsageError("--p-lo must lie in [0, 1/2]")
            try:
                data = figures.eigenvalue_sweep(fid, params, p_lo, grid)
            except MapNonInvertible as exc:
                click.echo(f"error: {_singular_message(params, exc.p)}", err=True)
                raise click.exceptions.Exit(EXIT_SINGULAR)
        elif fid is FigureId.GAMMA_RATE:
            params = _params(family, alphas[0], eta, omega)
            data = figures.gamma_rate(params, grid)
        elif fid is FigureId.MEASURES_VS_ALPHA:
            data = figures.measures_vs_alpha(grid)
        elif fid is FigureId.TRACE_DISTANCE:
            data = figures.trace_distance(alphas, grid, theta)
        else:
            data = figures.toy_kappa(eta, omega, grid)
    except (NMError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    _write_figure(data, out, fmt_)


def _write_figure(data: FigureData, out, fmt_: str) -> None:
    title = f"figure {data.figure.value}"
    render = render_csv if fmt_ == "csv" else render_json
    emit(render(title, data.columns, data.rows, data.params), out, title, data.params)


def report_record(rep: MeasureReport) -> dict:
    d = asdict(rep)
    d["witness_interval"] = list(rep.witness_interval)
    d["markovian"] = rep.markovian
    return d


@cli.command()
@click.option("--alpha", type=float, required=True)
@family_option
@eta_option
@omega_option
@click.option("--theta-grid", type=int, default=257, show_default=True)
@format_option
def measure(alpha, family, eta, omega, theta_grid, fmt_):
    """Print the singularity, N'_HCLA, N_BLP and witness interval."""
    params = _params(family, alpha, eta, omega)
    if params.family is not Family.DEPHASING:
        raise click.UsageError(
            f"measures are closed-form for the dephasing family only (got {params.family.value})"
        )
    try:
        rep = measure_report(alpha, theta_grid)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    record = json.dumps(report_record(rep), sort_keys=True)
    if fmt_ == "json":
        click.echo(record)
        return
    lo, hi = rep.witness_interval
    click.echo(f"alpha              {alpha:.6f}")
    if rep.markovian:
        click.echo("note               Markovian (alpha = 0): no singularity, all measures vanish")
    click.echo(f"alpha_minus        {rep.alpha_minus:.6f}")
    click.echo(f"N'_HCLA            {rep.n_hcla_normalized:.6f}")
    click.echo(f"N_BLP              {rep.n_blp:.6f}")
    click.echo(f"theta_opt          {rep.theta_opt:.6f}")
    click.echo(f"witness interval   ({lo:.6f}, {hi:.6f}]")
    click.echo(record)


@cli.command()
@click.option("--alpha", type=float, default=0.0, show_default=True)
@family_option
@eta_option
@omega_option
@click.option("--p-lo", type=float, required=True)
@click.option("--p-hi", type=float, required=True)
@format_option
def check(alpha, family, eta, omega, p_lo, p_hi, fmt_):
    """CP/NCP verdict for the intermediate map E(p_hi, p_lo). Exit 0 = CP, 2 = NCP, 3 = singular."""
    params = _params(family, alpha, eta, omega)
    try:
        window = IntermediateWindow(p_lo, p_hi)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        res = check_window(params, window)
    except MapNonInvertible as exc:
        click.echo(f"error: {_singular_message(params, exc.p)}", err=True)
        raise click.exceptions.Exit(EXIT_SINGULAR)
    verdict = "CP" if res.cp else "NCP"
    kraus = [{"epsilon": el.epsilon, "coeff": el.coeff, "pauli": el.pauli} for el in res.kraus]
    if fmt_ == "json":
        click.echo(json.dumps({
            "window": [p_lo, p_hi],
            "choi_eigenvalues": [float(x) for x in res.eigenvalues],
            "pauli_eigenvalues": res.pauli_eigenvalues,
            "verdict": verdict,
            "trace_norm": res.trace_norm,
            "kraus": kraus,
        }, sort_keys=True))
    else:
        click.echo(f"window             [{fmt(p_lo)}, {fmt(p_hi)}]")
        click.echo("choi eigenvalues   " + " ".join(fmt(x) for x in res.eigenvalues))
        click.echo("pauli eigenvalues  " + " ".join(f"{k}={fmt(v)}" for k, v in res.pauli_eigenvalues.items()))
        click.echo(f"trace norm         {fmt(res.trace_norm)}")
        click.echo(f"verdict            {verdict}")
        for k in kraus:
            click.echo(f"kraus              epsilon={k['epsilon']:+d} coeff={fmt(k['coeff'])} pauli={k['pauli']}")
    raise click.exceptions.Exit(EXIT_OK if res.cp else EXIT_NCP)


@dataclass
class SweepReport:
    rows: list
    metadata: dict = field(default_factory=dict)


def run_sweep(alphas, theta_grid: int = 257) -> SweepReport:
    alphas = sorted({float(a) for a in alphas})
    rows = [measure_report(a, theta_grid) for a in alphas]
    meta = {
        "version": __version__,
        "params": {"family": "dephasing", "alphas": alphas, "theta_grid": theta_grid},
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    return SweepReport(rows, meta)


SWEEP_COLUMNS = ("alpha", "alpha_minus", "n_hcla_normalized", "n_blp", "theta_opt", "witness_lo", "witness_hi")


@cli.command()
@click.option("--alpha", type=float, multiple=True, help="Explicit alpha values (repeatable).")
@click.option("--grid", type=int, default=20, show_default=True, help="Points on [0.05, 1] if no --alpha.")
@click.option("--theta-grid", type=int, default=257, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@format_option
def sweep(alpha, grid, theta_grid, out, fmt_):
    """Measure report for each alpha of the dephasing family."""
    if alpha:
        alphas = alpha
    else:
        if grid < 2:
            raise click.UsageError("--grid must be >= 2")
        alphas = [0.05 + (1.0 - 0.05) * k / (grid - 1) for k in range(grid)]
    try:
        for a in alphas:
            ChannelParams(Family.DEPHASING, a)
        report = run_sweep(alphas, theta_grid)
    except (NMError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [(r.alpha, r.alpha_minus, r.n_hcla_normalized, r.n_blp, r.theta_opt, *r.witness_interval)
            for r in report.rows]
    meta = dict(report.metadata["params"])
    render = render_csv if fmt_ == "csv" else render_json
    emit(render("sweep", SWEEP_COLUMNS, rows, meta), out, "sweep", meta)


def run(argv=None) -> int:
    """Invoke the CLI and return its exit code instead of exiting."""
    try:
        rv = cli.main(args=argv, prog_name="nmpauli", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run())
