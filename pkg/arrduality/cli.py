"""Command-line interface for arrduality."""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import click
import tabulate
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from . import polynomials
from .arrangement import (
    Arrangement,
    abelian_duality_constraints,
    build_flat_poset,
    corank,
    duality_dimension,
    euler_characteristic,
    whitney_poincare,
)
from .charvar import (
    SweepOptions,
    check_generic_vanishing,
    check_propagation,
    gamma_classes,
    is_nonresonant,
    resonance_locus_summary,
)
from .config import RunConfig
from .exceptions import ArrDualityError, ConfigurationError, FieldError
from .orbitconfig import OrbitConfigSpec, orbit_summary
from .parsing import parse_arrangement, parse_toric
from .salvetti import Character, character_space, characteristic_variety, model_for, twisted_betti
from .schema import ReportConfig, ReportEnvelope
from .toric import layer_poset, toric_duality_check, toric_poincare
from .wonderful import all_gamma_classes, building_set, nested_set_complex, projective_gamma_classes

console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

Result = Tuple[Dict[str, Any], int]


def configure_logging(config: RunConfig) -> None:
    if not config.enable_logging:
        return
    logging.basicConfig(
        level=getattr(logging, config.log_level.upper(), logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        stream=sys.stderr,
    )


def _sweep_options(config: RunConfig) -> SweepOptions:
    return SweepOptions(
        mode=config.mode,
        samples=config.samples,
        seed=config.seed,
        workers=config.workers,
        budget=config.exhaustive_budget,
        max_hyperplanes=config.max_hyperplanes,
        max_dimension=config.max_dimension,
    )


def _arrangement(config: RunConfig) -> Arrangement:
    if not config.input_path:
        raise ConfigurationError(f"{config.command} needs an arrangement file")
    return parse_arrangement(config.input_path)


def _parse_character(text: str, prime: int, size: int) -> Character:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise FieldError(f"character must be comma-separated integers, got {text!r}")
    if len(values) != size:
        raise FieldError(f"character has {len(values)} coordinates for {size} hyperplanes")
    return Character(prime, values)


def _run_flats(config: RunConfig) -> Result:
    a = _arrangement(config)
    poset = build_flat_poset(a)
    rank_counts = [len(poset.of_rank(r)) for r in range(poset.max_rank + 1)]
    flats = [
        {"indices": sorted(f.indices), "codim": f.codim, "mobius": mu}
        for f, mu in zip(poset.flats, poset.mobius)
    ]
    return {
        "ambient_dim": a.ambient_dim,
        "hyperplanes": len(a),
        "flat_count": len(poset.flats),
        "rank_counts": rank_counts,
        "flats": flats,
    }, EXIT_OK


def _run_poincare(config: RunConfig) -> Result:
    a = _arrangement(config)
    poset = build_flat_poset(a)
    poin = whitney_poincare(poset)
    r = corank(a, poset)
    d = duality_dimension("linear", a.ambient_dim, r)
    return {
        "poincare": list(poin),
        "formatted": polynomials.format_polynomial(poin),
        "euler_characteristic": euler_characteristic(poset),
        "corank": r,
        "duality_dimension": d,
        "constraints": abelian_duality_constraints(poin, d).to_dict(),
    }, EXIT_OK


def _run_nested(config: RunConfig) -> Result:
    a = _arrangement(config)
    g = building_set(a, config.building)
    complex_ = nested_set_complex(g)
    return {
        "building": config.building,
        "members": [sorted(m.indices) for m in g.members],
        "f_vector": list(complex_.f_vector),
        "facets": [[sorted(m.indices) for m in complex_.face_flats(f)] for f in complex_.facets],
    }, EXIT_OK


def _run_gamma(config: RunConfig) -> Result:
    a = _arrangement(config)
    result: Dict[str, Any] = {"classes": [list(v) for v in all_gamma_classes(a, config.building)]}
    if config.compactify:
        result["classes_at_infinity"] = [list(v) for v in projective_gamma_classes(a, config.building)]
    return result, EXIT_OK


def _run_betti(config: RunConfig) -> Result:
    a = _arrangement(config)
    if config.character:
        rho = _parse_character(config.character, config.prime, len(a))
    else:
        rho = Character.trivial(config.prime, len(a))
    model = model_for(a, config.max_hyperplanes, config.max_dimension)
    betti = twisted_betti(model, rho, config.prime)
    certificate = is_nonresonant(rho, gamma_classes(a, config.building, config.compactify))
    return {
        "character": list(rho.values),
        "betti": list(betti),
        "euler_characteristic": model.euler_characteristic(),
        "cell_counts": list(model.cell_counts()),
        "nonresonance": certificate.to_dict(),
    }, EXIT_OK


def _run_charvar(config: RunConfig) -> Result:
    if config.degree is None:
        raise ConfigurationError("charvar needs --degree")
    a = _arrangement(config)
    options = _sweep_options(config)
    checked = character_space(
        config.prime, len(a), options.mode, options.samples, options.seed, options.budget
    )
    members = characteristic_variety(
        a,
        config.prime,
        config.degree,
        mode=options.mode,
        samples=options.samples,
        seed=options.seed,
        workers=options.workers,
        budget=options.budget,
        model=model_for(a, config.max_hyperplanes, config.max_dimension),
    )
    return {
        "degree": config.degree,
        "characters_checked": len(checked),
        "count": len(members),
        "members": [list(rho.values) for rho in members],
    }, EXIT_OK


def _run_propagate(config: RunConfig) -> Result:
    report = check_propagation(_arrangement(config), config.prime, _sweep_options(config))
    return report.to_dict(), EXIT_OK if report.passed else EXIT_VIOLATION


def _run_generic_vanish(config: RunConfig) -> Result:
    a = _arrangement(config)
    options = _sweep_options(config)
    report = check_generic_vanishing(a, config.prime, options, config.building, config.compactify)
    result = report.to_dict()
    cells = resonance_locus_summary(a, config.prime, options, config.building, characters=report.betti)
    result["resonance_cells"] = [c.to_dict() for c in cells]
    return result, EXIT_OK if report.passed else EXIT_VIOLATION


def _run_toric(config: RunConfig) -> Result:
    if not config.input_path:
        raise ConfigurationError("toric needs a toric arrangement file")
    t = parse_toric(config.input_path)
    lp = layer_poset(t, t.ambient_dim)
    poin = toric_poincare(lp, t.ambient_dim)
    return {
        "ambient_dim": t.ambient_dim,
        "hypersurfaces": len(t),
        "layers_by_codim": [len(lp.of_codim(c)) for c in range(lp.max_codim + 1)],
        "poincare": list(poin),
        "formatted": polynomials.format_polynomial(poin),
        "duality": toric_duality_check(t).to_dict(),
    }, EXIT_OK


RUNNERS: Dict[str, Callable[[RunConfig], Result]] = {
    "flats": _run_flats,
    "poincare": _run_poincare,
    "nested": _run_nested,
    "gamma": _run_gamma,
    "betti": _run_betti,
    "charvar": _run_charvar,
    "propagate": _run_propagate,
    "generic-vanish": _run_generic_vanish,
    "toric": _run_toric,
}


def _render_table(command: str, result: Dict[str, Any]) -> None:
    table = Table(title=f"arrduality {command}")
    table.add_column("Field", style="cyan")
    table.add_column("Value", style="white")
    nested = []
    for key, value in result.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            nested.append((key, value))
        elif isinstance(value, dict):
            nested.append((key, [value]))
        else:
            table.add_row(key, json.dumps(value) if isinstance(value, list) else str(value))
    console.print(table)
    for key, rows in nested:
        click.echo(f"\n{key}:")
        click.echo(tabulate.tabulate(rows, headers="keys"))


def emit(config: RunConfig, result: Dict[str, Any]) -> None:
    if config.output == "table":
        _render_table(config.command, result)
        return
    envelope = ReportEnvelope(
        command=config.command,
        input=Path(config.input_path).name if config.input_path else None,
        config=ReportConfig(**config.report_dict()),
        result=result,
    )
    click.echo(json.dumps(envelope.to_json_dict(), indent=2))


def run(config: RunConfig, orbit: Optional[OrbitConfigSpec] = None) -> int:
    """Validate, compute and print one report; returns the exit code."""
    try:
        config.validate()
        configure_logging(config)
        if config.command == "orbit":
            if orbit is None:
                raise ConfigurationError("orbit needs --g, --k, --n and --gamma")
            result, code = orbit_summary(orbit), EXIT_OK
        else:
            result, code = RUNNERS[config.command](config)
    except ArrDualityError as e:
        err_console.print(f"Error: {e}", style="red", markup=False)
        return EXIT_USAGE
    emit(config, result)
    if code == EXIT_VIOLATION:
        logger.info("%s found violations", config.command)
    return code


def _base_config(ctx: click.Context) -> RunConfig:
    config_file = ctx.obj.get('config_file')
    if config_file:
        return RunConfig.from_file(config_file)
    return RunConfig.from_env()


def _invoke(ctx: click.Context, command: str, orbit: Optional[OrbitConfigSpec] = None, **overrides: Any) -> None:
    try:
        config = _base_config(ctx).merged(command=command, log_level=ctx.obj.get('log_level'), **overrides)
    except ConfigurationError as e:
        err_console.print(f"Error: {e}", style="red", markup=False)
        ctx.exit(EXIT_USAGE)
    ctx.exit(run(config, orbit))


def sweep_options(func: Callable) -> Callable:
    """Character-sweep flags shared by the sweeping commands."""
    func = click.option('--workers', type=int, help='Parallel worker processes')(func)
    func = click.option('--seed', type=int, help='Seed for sample mode')(func)
    func = click.option('--samples', type=int, help='Sample N characters (requires --seed)')(func)
    func = click.option('--exhaustive', is_flag=True, help='Sweep every character')(func)
    return func


def common_options(func: Callable) -> Callable:
    func = click.option('--output', '-o', type=click.Choice(['json', 'table']), help='Output format')(func)
    func = click.option('--building', type=click.Choice(['minimal', 'maximal']), help='Building set')(func)
    func = click.option('--prime', '-p', type=int, help='Prime p of the field GF(p)')(func)
    return func


def _mode(exhaustive: bool, samples: Optional[int]) -> Optional[str]:
    if exhaustive and samples:
        raise click.UsageError("--exhaustive and --samples are mutually exclusive")
    if samples:
        return "sample"
    return "exhaustive" if exhaustive else None


@click.group()
@click.option('--config', '-c', help='Path to configuration file')
@click.option('--log-level', help='Logging level (DEBUG, INFO, WARNING, ...)')
@click.pass_context
def cli(ctx, config, log_level):
    """arrduality - invariants of arrangement complements."""
    load_dotenv()
    ctx.ensure_object(dict)
    ctx.obj['config_file'] = config
    ctx.obj['log_level'] = log_level


@cli.command()
@click.argument('path', type=click.Path())
@common_options
@click.pass_context
def flats(ctx, path, prime, building, output):
    """Intersection poset with Moebius values."""
    _invoke(ctx, "flats", input_path=path, prime=prime, building=building, output=output)


@cli.command()
@click.argument('path', type=click.Path())
@common_options
@click.pass_context
def poincare(ctx, path, prime, building, output):
    """Poincare polynomial, Euler characteristic and duality constraints."""
    _invoke(ctx, "poincare", input_path=path, prime=prime, building=building, output=output)


@cli.command()
@click.argument('path', type=click.Path())
@common_options
@click.pass_context
def nested(ctx, path, prime, building, output):
    """Building set and nested set complex."""
    _invoke(ctx, "nested", input_path=path, prime=prime, building=building, output=output)


@cli.command()
@click.argument('path', type=click.Path())
@common_options
@click.option('--compactify', is_flag=True, default=None, help='Add classes at infinity')
@click.pass_context
def gamma(ctx, path, prime, building, output, compactify):
    """Meridian classes of the building-set divisors."""
    _invoke(ctx, "gamma", input_path=path, prime=prime, building=building, output=output,
            compactify=compactify)


@cli.command()
@click.argument('path', type=click.Path())
@common_options
@click.option('--character', help='Comma-separated character values, e.g. 2,4,1')
@click.option('--compactify', is_flag=True, default=None, help='Add classes at infinity')
@click.pass_context
def betti(ctx, path, prime, building, output, character, compactify):
    """Twisted Betti numbers for one character (trivial by default)."""
    _invoke(ctx, "betti", input_path=path, prime=prime, building=building, output=output,
            character=character, compactify=compactify)


@cli.command()
@click.argument('path', type=click.Path())
@common_options
@sweep_options
@click.option('--degree', '-q', type=int, help='Cohomological degree q')
@click.pass_context
def charvar(ctx, path, prime, building, output, exhaustive, samples, seed, workers, degree):
    """GF(p)-points of the characteristic variety V^q."""
    _invoke(ctx, "charvar", input_path=path, prime=prime, building=building, output=output,
            mode=_mode(exhaustive, samples), samples=samples, seed=seed, workers=workers, degree=degree)


@cli.command()
@click.argument('path', type=click.Path())
@common_options
@sweep_options
@click.pass_context
def propagate(ctx, path, prime, building, output, exhaustive, samples, seed, workers):
    """Check propagation of characteristic varieties (exit 2 on violations)."""
    _invoke(ctx, "propagate", input_path=path, prime=prime, building=building, output=output,
            mode=_mode(exhaustive, samples), samples=samples, seed=seed, workers=workers)


@cli.command('generic-vanish')
@click.argument('path', type=click.Path())
@common_options
@sweep_options
@click.option('--compactify', is_flag=True, default=None, help='Add classes at infinity')
@click.pass_context
def generic_vanish(ctx, path, prime, building, output, exhaustive, samples, seed, workers, compactify):
    """Check vanishing on nonresonant characters (exit 2 on failures)."""
    _invoke(ctx, "generic-vanish", input_path=path, prime=prime, building=building, output=output,
            mode=_mode(exhaustive, samples), samples=samples, seed=seed, workers=workers,
            compactify=compactify)


@cli.command()
@click.argument('path', type=click.Path())
@click.option('--output', '-o', type=click.Choice(['json', 'table']), help='Output format')
@click.pass_context
def toric(ctx, path, output):
    """Layer poset, Poincare polynomial and duality check of a toric arrangement."""
    _invoke(ctx, "toric", input_path=path, output=output)


@cli.command()
@click.option('--g', 'genus', type=int, required=True, help='Genus of the surface')
@click.option('--k', 'punctures', type=int, default=0, help='Number of punctures')
@click.option('--n', 'points', type=int, required=True, help='Number of points')
@click.option('--gamma', 'order', type=int, default=1, help='Order of the group Gamma')
@click.option('--cyclic', is_flag=True, help='Gamma is cyclic')
@click.option('--output', '-o', type=click.Choice(['json', 'table']), help='Output format')
@click.pass_context
def orbit(ctx, genus, punctures, points, order, cyclic, output):
    """Strata, Euler characteristic and duality class of an orbit configuration space."""
    try:
        spec = OrbitConfigSpec(genus, punctures, points, order, cyclic)
    except ArrDualityError as e:
        err_console.print(f"Error: {e}", style="red", markup=False)
        ctx.exit(EXIT_USAGE)
    _invoke(ctx, "orbit", orbit=spec, output=output)


def main():
    """Main entry point for the CLI."""
    try:
        code = cli.main(standalone_mode=False)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        console.print("\n[yellow]Operation cancelled[/yellow]")
        sys.exit(EXIT_USAGE)
    sys.exit(code or EXIT_OK)


if __name__ == '__main__':
    main()
