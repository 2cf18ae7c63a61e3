"""CLI commands for svdperturb."""

import json
import sys
import time
from pathlib import Path
from typing import NoReturn, Optional

import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from svdperturb import __logo__, __version__
from svdperturb.cli.matrix_io import parse_matrix_file
from svdperturb.cli.report import (
    BoundEntry,
    ComparisonSection,
    CorrectedSection,
    ErrorReport,
    GapSection,
    ImprovedSigmaSection,
    PropertySection,
    Report,
    RotationSection,
    SinThetaSection,
    dump_json,
    report_schema,
)
from svdperturb.config import Config, load_config
from svdperturb.errors import MatrixFileError, ShapeError, SvdPerturbError
from svdperturb.linalg import NormKind, Pairing, PairingNorm, svd
from svdperturb.utils.helpers import file_digest, ms_since

app = typer.Typer(
    name="svdperturb",
    help=f"{__logo__} svdperturb - perturbation bounds for singular subspaces",
    no_args_is_help=True,
)

# stdout carries only the JSON document.
console = Console(stderr=True)

USAGE_ERRORS = (ShapeError, MatrixFileError)


def version_callback(value: bool):
    if value:
        typer.echo(f"{__logo__} svdperturb v{__version__}")
        raise typer.Exit()


def setup_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")
    logger.enable("svdperturb")


@app.callback()
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        None, "--version", callback=version_callback, is_eager=True
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr"),
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="Config file (default ~/.svdperturb/config.json)"),
):
    """svdperturb - perturbation bounds for singular subspaces."""
    setup_logging(verbose)
    ctx.obj = load_config(config_path)


def _config(ctx: typer.Context) -> Config:
    return ctx.obj if isinstance(ctx.obj, Config) else load_config()


def _fail(command: str, err: SvdPerturbError) -> NoReturn:
    """Machine-readable error object on stdout; exit 2 for input errors, 1 otherwise."""
    code = 2 if isinstance(err, USAGE_ERRORS) else 1
    typer.echo(dump_json(ErrorReport(tool_version=__version__, command=command, error=err.to_dict())))
    console.print(f"[red]Error ({type(err).__name__}):[/red] {err.message}")
    raise typer.Exit(code)


def _emit(report: Report, out: Path | None, indent: int | None) -> None:
    text = dump_json(report, indent)
    if out is None:
        typer.echo(text)
        return
    out.write_text(text + "\n", encoding="utf-8")
    console.print(f"[green]✓[/green] Wrote {report.command} report to {out}")


def _finish(report: Report, out: Path | None, indent: int | None) -> None:
    _emit(report, out, indent)
    if not report.ok:
        console.print(f"[yellow]{report.command}: some checks failed[/yellow]")
        raise typer.Exit(1)


# ============================================================================
# bound
# ============================================================================


@app.command()
def bound(
    ctx: typer.Context,
    g_path: Path = typer.Option(..., "--g", help="Matrix file for G"),
    e_path: Path = typer.Option(..., "--e", help="Matrix file for the perturbation E"),
    r: int = typer.Option(..., "--r", min=1, help="Split index, 1 <= r < min(m, n)"),
    u_path: Optional[Path] = typer.Option(None, "--u", help="Left unitary U (computed from G when absent)"),
    v_path: Optional[Path] = typer.Option(None, "--v", help="Right unitary V (computed from G when absent)"),
    norm: NormKind = typer.Option(NormKind.SPECTRAL, "--norm", help="Unitarily invariant norm"),
    pairing: Pairing = typer.Option(Pairing.BLOCKDIAG, "--pairing", help="How pairs (X, Y) are normed"),
    force: bool = typer.Option(False, "--force", help="Solve even when the small-perturbation condition fails"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report here instead of stdout"),
):
    """Rotation pair, corrected decomposition and every bound for G + E."""
    from svdperturb.perturb import (
        build_corrected,
        corollary_suite,
        gap_quantities,
        improved_sigma_bounds,
        improvement_applies,
        project_perturbation,
        solve_rotations,
        split_context,
    )

    if (u_path is None) != (v_path is None):
        raise typer.BadParameter("--u and --v must be given together")

    cfg = _config(ctx)
    certs = cfg.certificates
    timings: dict[str, float] = {}
    try:
        start = time.perf_counter()
        g = parse_matrix_file(g_path)
        e = parse_matrix_file(e_path)
        inputs = {"g": file_digest(g_path), "e": file_digest(e_path)}
        if u_path is not None and v_path is not None:
            u, v = parse_matrix_file(u_path), parse_matrix_file(v_path)
            inputs.update(u=file_digest(u_path), v=file_digest(v_path))
        else:
            u, _, v = svd(g)
        inputs.update(r=str(r), norm=norm.value, pairing=pairing.value, force=str(force).lower())
        timings["parse"] = ms_since(start, time.perf_counter())

        start = time.perf_counter()
        block_ctx = split_context(g, u, v, r, contamination_tol=certs.contamination_tol, tol_unitary=certs.tol_unitary)
        eb = project_perturbation(block_ctx, e)
        rep = gap_quantities(block_ctx, eb, PairingNorm(pairing, norm))
        timings["gap"] = ms_since(start, time.perf_counter())
        logger.info(f"gap: delta={rep.delta:.6g} delta_under={rep.delta_under:.6g} kappa2={rep.kappa2:.6g}")

        start = time.perf_counter()
        rot = solve_rotations(
            block_ctx,
            eb,
            rep,
            tol_fp=cfg.fixed_point.tol_fp,
            max_iters=cfg.fixed_point.max_iters,
            tol_solve=certs.tol_solve,
            force=force,
        )
        timings["rotations"] = ms_since(start, time.perf_counter())

        start = time.perf_counter()
        cd = build_corrected(
            block_ctx,
            eb,
            rot,
            rep,
            agreement_tol=certs.agreement_tol,
            spectrum_tol=certs.spectrum_tol,
            tol_solve=certs.tol_solve,
            distance_tol=certs.distance_tol,
            bound_rel_slack=certs.bound_rel_slack,
            tol_unitary=certs.tol_unitary,
        )
        timings["corrected"] = ms_since(start, time.perf_counter())

        start = time.perf_counter()
        comparison = corollary_suite(block_ctx, eb)
        improved = None
        if improvement_applies(rep):
            improved = improved_sigma_bounds(block_ctx, eb, cd, rep, spectrum_tol=certs.spectrum_tol)
        timings["compare"] = ms_since(start, time.perf_counter())
    except SvdPerturbError as err:
        _fail("bound", err)

    ok = (
        all(c.satisfied for c in cd.certificates if c.condition_met)
        and comparison.chain_ok
        and comparison.dominance_ok
        and (improved is None or improved.ok)
    )
    if not rot.guaranteed:
        logger.warning("condition not met; certificates are reported but not guaranteed")

    report = Report(
        tool_version=__version__,
        command="bound",
        inputs=inputs,
        ok=ok,
        gap_report=GapSection.of(rep),
        rotation=RotationSection.of(rot),
        corrected=CorrectedSection.of(cd),
        comparison=ComparisonSection.of(comparison),
        improved_sigma=ImprovedSigmaSection.of(improved) if improved is not None else None,
        bounds=[BoundEntry.of(c) for c in cd.certificates],
        timings=timings,
    )
    _finish(report, out, cfg.report.indent)


# ============================================================================
# verify
# ============================================================================


@app.command()
def verify(
    ctx: typer.Context,
    suite: str = typer.Option("all", "--suite", help="sylvester, perturb, sintheta or all"),
    trials: Optional[int] = typer.Option(None, "--trials", "-n", min=0, help="Trials per property"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="First trial seed"),
    max_dim: Optional[int] = typer.Option(None, "--max-dim", min=1, help="Largest matrix dimension"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report here instead of stdout"),
):
    """Run the seeded property suites."""
    from svdperturb.verify import default_registry

    cfg = _config(ctx)
    vc = cfg.verify
    trials = vc.trials if trials is None else trials
    seed = vc.seed if seed is None else seed
    max_dim = vc.max_dim if max_dim is None else max_dim

    registry = default_registry(kappa_target=vc.kappa_target, gap_anchor=vc.gap_anchor, max_r=vc.max_r)
    try:
        registry.names(suite)
    except KeyError:
        raise typer.BadParameter(f"unknown suite {suite!r}", param_hint="--suite") from None

    start = time.perf_counter()
    tallies = registry.run_suite(suite, trials=trials, seed=seed, max_dim=max_dim)
    elapsed = ms_since(start, time.perf_counter())

    table = Table(title=f"Properties ({suite}, {trials} trial(s) from seed {seed})")
    table.add_column("Property", style="cyan")
    table.add_column("Passed", style="green")
    table.add_column("Failed", style="red")
    table.add_column("Skipped", style="dim")
    table.add_column("Worst slack")
    for t in tallies:
        table.add_row(t.name, str(t.passed), str(t.failed), str(t.skipped), f"{t.worst_slack:.3e}")
    console.print(table)

    report = Report(
        tool_version=__version__,
        command="verify",
        inputs={"suite": suite, "trials": str(trials), "seed": str(seed), "max_dim": str(max_dim)},
        ok=all(t.failed == 0 for t in tallies),
        properties=[PropertySection.of(t) for t in tallies],
        timings={"verify": elapsed},
    )
    _finish(report, out, cfg.report.indent)


# ============================================================================
# sintheta
# ============================================================================


@app.command()
def sintheta(
    ctx: typer.Context,
    g_path: Path = typer.Option(..., "--g", help="Matrix file for G"),
    u1t_path: Path = typer.Option(..., "--u1t", help="Approximate left basis U1_t (m x r)"),
    v1t_path: Path = typer.Option(..., "--v1t", help="Approximate right basis V1_t (n x r)"),
    g1t_path: Path = typer.Option(..., "--g1t", help="Approximate block G1_t (r x r)"),
    norm: NormKind = typer.Option(NormKind.SPECTRAL, "--norm", help="Unitarily invariant norm"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report here instead of stdout"),
):
    """Generalized sin-theta certificate for an approximate singular triplet."""
    from svdperturb.perturb.context import check_unitary
    from svdperturb.sintheta import SinThetaInput, sin_theta_certificate

    cfg = _config(ctx)
    timings: dict[str, float] = {}
    paths = {"g": g_path, "u1t": u1t_path, "v1t": v1t_path, "g1t": g1t_path}
    try:
        start = time.perf_counter()
        mats = {k: parse_matrix_file(p) for k, p in paths.items()}
        timings["parse"] = ms_since(start, time.perf_counter())

        start = time.perf_counter()
        inp = SinThetaInput.from_svd(mats["g"], mats["u1t"], mats["v1t"], mats["g1t"])
        check_unitary(inp.u1_t, "u1t", cfg.certificates.tol_unitary)
        check_unitary(inp.v1_t, "v1t", cfg.certificates.tol_unitary)
        cert = sin_theta_certificate(inp, norm, rel_slack=cfg.certificates.bound_rel_slack)
        timings["certificate"] = ms_since(start, time.perf_counter())
    except SvdPerturbError as err:
        _fail("sintheta", err)

    inputs = {k: file_digest(p) for k, p in paths.items()}
    inputs["norm"] = norm.value
    report = Report(
        tool_version=__version__,
        command="sintheta",
        inputs=inputs,
        ok=cert.satisfied,
        sintheta=SinThetaSection.of(cert),
        timings=timings,
    )
    _finish(report, out, cfg.report.indent)


# ============================================================================
# schema / config
# ============================================================================


@app.command()
def schema():
    """Print the JSON schema of the report document."""
    typer.echo(json.dumps(report_schema(), indent=2))


config_app = typer.Typer(help="Manage configuration")
app.add_typer(config_app, name="config")


@config_app.command("init")
def config_init(
    path: Optional[Path] = typer.Option(None, "--path", help="Target file (default ~/.svdperturb/config.json)"),
):
    """Write the default configuration file."""
    from svdperturb.config.loader import get_config_path, save_config

    config_path = path or get_config_path()
    if config_path.exists():
        console.print(f"[yellow]Config already exists at {config_path}[/yellow]")
        if not typer.confirm("Overwrite?"):
            raise typer.Exit()

    written = save_config(Config(), config_path)
    console.print(f"[green]✓[/green] Created config at {written}")


if __name__ == "__main__":
    app()
