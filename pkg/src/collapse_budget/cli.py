"""
Command-line front end.

    collapse-budget budget --preset fig2
    collapse-budget evolve --preset fig2 --moments --out evolve.csv
    collapse-budget cool --preset fig2
    collapse-budget sweep --preset fig3a --out fig3a.csv
    collapse-budget optimize --pressures 1e-13..1e-9:20log --tints 20,40,60,80 --out fig4.csv
    collapse-budget discriminate --preset fig2 --truth csl --samples 100
    collapse-budget presets --show fig3a

Exit codes: 0 success, 1 validation or computation error, 2 usage error.
"""

import argparse
import json
import os
import sys

import numpy as np
import polars as pl
from loguru import logger

from . import __version__
from .analysis import (
    SweepSpec,
    final_phonons,
    immunity_region,
    likelihood_ratio_test,
    run_sweep,
    sweep_table,
    trajectories_table,
)
from .cooling import run_cooling
from .core import MBAR_TO_PA, TWO_PI, GridScale, Hypothesis, IntegratorMethod, SweepAxis
from .core.scenario import ScenarioConfig
from .dynamics import (
    EvolutionParams,
    IntegrationError,
    MomentState,
    asymptotic_ratio,
    evolve_closed_form,
    initial_heating_rate,
    integrate_moments,
    sample_final_phonons,
)
from .file_io import (
    PRESETS,
    SWEEP_PRESETS,
    ConfigError,
    RangePreset,
    RunManifest,
    export_csv,
    get_preset,
    load_config,
    preset_json,
)
from .optimizer import OptimizeSpec, testable_range_curve, testable_table
from .utils import canonical_digest, parse_range, parse_values

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

# Factor from the command-line unit of each sweep axis to SI
AXIS_CLI_FACTORS = {
    SweepAxis.PRESSURE: MBAR_TO_PA,  # mbar
    SweepAxis.T_INT: 1.0,  # K
    SweepAxis.OMEGA_M: TWO_PI,  # Hz
    SweepAxis.RADIUS: 1.0,  # m
    SweepAxis.LAMBDA_CSL: 1.0,  # Hz, a rate
    SweepAxis.T_EVOLVE: 1.0,  # s
}


def configure_logging(verbose: bool, quiet: bool) -> None:
    level = "DEBUG" if verbose else "WARNING" if quiet else "INFO"
    logger.remove()
    logger.add(sys.stderr, level=level)


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    if args.config:
        config = load_config(args.config)
    else:
        preset = get_preset(args.preset)
        if not isinstance(preset, ScenarioConfig):
            raise ValueError(f"Preset '{args.preset}' is not a scenario preset")
        config = preset
    if getattr(args, "seed", None) is not None:
        config = config.replace(seed=args.seed)
    return config


def _emit(
    df: pl.DataFrame, out: str | None, digest: str, subcommand: str, seed: int
) -> None:
    """CSV to a file with its manifest, or to standard output."""
    if out:
        export_csv(df, out, RunManifest.create(digest, subcommand, seed))
    else:
        sys.stdout.write(df.write_csv())


def cmd_budget(args: argparse.Namespace) -> int:
    config = _scenario(args)
    budget_csl, budget_cqm = config.budget_pair()
    rows = []
    for name, budget in (("csl", budget_csl), ("cqm", budget_cqm)):
        rows.append(
            {
                "budget": name,
                **budget.model_dump(),
                "initial_heating_rate": initial_heating_rate(config.n0, budget),
            }
        )
    df = pl.DataFrame(rows)
    _emit(df, args.out, config.digest(), "budget", config.seed)
    if budget_cqm.D_diff_total > 0:
        logger.info(
            f"Asymptotic heating ratio csl/cqm: {asymptotic_ratio(budget_csl, budget_cqm):.6g}"
        )
    return EXIT_OK


def _trajectory(
    config: ScenarioConfig, lambda_csl: float, args: argparse.Namespace, t_final: float
):
    budget = config.budget(lambda_csl=lambda_csl)
    params = EvolutionParams.from_budget(budget, config.trap)
    label = f"lambda_{lambda_csl:g}"
    if args.moments:
        trajectory, _ = integrate_moments(
            MomentState.thermal(config.n0),
            params,
            t_final,
            method=IntegratorMethod(args.method),
            dt=args.dt,
        )
        return trajectory.model_copy(update={"label": label})
    t_grid = np.linspace(0.0, t_final, args.points)
    return evolve_closed_form(config.n0, params, t_grid, label=label)


def cmd_evolve(args: argparse.Namespace) -> int:
    config = _scenario(args)
    t_final = args.t_final if args.t_final is not None else config.t_evolve
    digest = config.digest()
    trajectory = _trajectory(config, config.csl.lambda_csl, args, t_final)
    baseline = _trajectory(config, 0.0, args, t_final) if args.compare else None
    if baseline is not None and not args.out:
        if args.moments:
            raise ValueError("--compare with --moments needs --out")
        sys.stdout.write(trajectories_table([trajectory, baseline]).write_csv())
    else:
        _emit(trajectory.data, args.out, digest, "evolve", config.seed)
    if baseline is not None and args.out:
        stem, ext = os.path.splitext(args.out)
        baseline_path = f"{stem}_lambda0{ext or '.csv'}"
        _emit(baseline.data, baseline_path, digest, "evolve", config.seed)
    logger.info(f"n({t_final:g} s) = {trajectory.final:.6g}")
    return EXIT_OK


def cmd_cool(args: argparse.Namespace) -> int:
    config = _scenario(args)
    if config.cooling is None:
        raise ValueError("The scenario has no cooling section")
    result = run_cooling(config.cooling, config.sphere, config.trap, config.environment)
    df = pl.DataFrame([result.model_dump()])
    _emit(df, args.out, config.digest(), "cool", config.seed)
    return EXIT_OK


def _sweep_spec(args: argparse.Namespace) -> SweepSpec:
    if args.preset:
        spec = get_preset(args.preset)
        assert isinstance(spec, SweepSpec)
    else:
        if not (args.config and args.axis and args.range):
            raise ValueError("Without --preset, sweep needs --config, --axis and --range")
        axis = SweepAxis(args.axis)
        lo, hi, points, is_log = parse_range(args.range)
        factor = AXIS_CLI_FACTORS[axis]
        spec = SweepSpec(
            axis=axis,
            lo=lo * factor,
            hi=hi * factor,
            points=points,
            scale=GridScale.LOG if is_log else GridScale.LINEAR,
            base_config=load_config(args.config),
        )
    if args.lambda_csl is not None:
        base = spec.base_config.with_axis(SweepAxis.LAMBDA_CSL, args.lambda_csl)
        spec = spec.model_copy(update={"base_config": base})
    return spec


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = _sweep_spec(args)
    rows = run_sweep(spec)
    _emit(
        sweep_table(rows, spec.axis),
        args.out,
        canonical_digest(spec),
        "sweep",
        spec.base_config.seed,
    )
    if args.immunity is not None:
        region = immunity_region(rows, args.immunity)
        if region is None:
            logger.info("No immunity region at this threshold")
        else:
            logger.info(
                f"Immunity region: {spec.axis.value} in [{region[0]:.6g}, {region[1]:.6g}]"
            )
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    default = get_preset("fig4")
    assert isinstance(default, RangePreset)
    pressures = (
        [p * MBAR_TO_PA for p in parse_values(args.pressures)]
        if args.pressures
        else default.pressures
    )
    T_ints = parse_values(args.tints) if args.tints else default.T_int_values
    base = load_config(args.config) if args.config else default.template.base_config
    template = OptimizeSpec(
        pressure=pressures[0],
        T_int=T_ints[0],
        ratio_threshold=args.threshold,
        horizon=args.horizon,
        n0=args.n0,
        grid_points=args.grid_points,
        base_config=base,
    )
    run = RangePreset(pressures=pressures, T_int_values=T_ints, template=template)
    bounds = testable_range_curve(pressures, T_ints, template)
    _emit(
        testable_table(bounds), args.out, canonical_digest(run), "optimize", base.seed
    )
    return EXIT_OK


def cmd_discriminate(args: argparse.Namespace) -> int:
    config = _scenario(args)
    budget_csl, budget_cqm = config.budget_pair()
    mean_H1 = final_phonons(config, budget_csl)
    mean_H0 = final_phonons(config, budget_cqm)
    truth = Hypothesis(args.truth)
    samples = sample_final_phonons(
        mean_H1 if truth == Hypothesis.CSL else mean_H0, args.samples, config.seed
    )
    report = likelihood_ratio_test(
        samples, mean_H0, mean_H1, mc_trials=args.mc_trials, seed=config.seed + 1
    )
    sys.stdout.write(json.dumps(report.model_dump(), indent=2, sort_keys=True) + "\n")
    if args.out:
        export_csv(
            pl.DataFrame({"n": samples}),
            args.out,
            RunManifest.create(config.digest(), "discriminate", config.seed),
        )
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    if args.show:
        sys.stdout.write(preset_json(args.show) + "\n")
    else:
        for name in PRESETS:
            sys.stdout.write(name + "\n")
    return EXIT_OK


def _add_scenario_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="scenario JSON file")
    source.add_argument(
        "--preset",
        default="fig2",
        choices=["fig2"],
        help="scenario preset (default: fig2)",
    )
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", help="CSV output path (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collapse-budget",
        description="Heating budgets and testable bounds for a levitated-nanosphere collapse test.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = sub.add_parser("budget", help="noise budget with and without collapse")
    _add_scenario_arguments(p)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("evolve", help="phonon-number trajectory")
    _add_scenario_arguments(p)
    p.add_argument("--t-final", type=float, help="final time in s (default: t_evolve)")
    p.add_argument("--points", type=int, default=101, help="closed-form grid points")
    p.add_argument("--moments", action="store_true", help="integrate the moment equations")
    p.add_argument(
        "--method",
        choices=[m.value for m in IntegratorMethod],
        default=IntegratorMethod.ADAPTIVE.value,
    )
    p.add_argument("--dt", type=float, help="fixed step, or maximum adaptive step, in s")
    p.add_argument("--compare", action="store_true", help="also evolve with lambda = 0")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("cool", help="cavity cooling and initial occupation")
    _add_scenario_arguments(p)
    p.set_defaults(func=cmd_cool)

    p = sub.add_parser("sweep", help="parameter sweep")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--preset", choices=list(SWEEP_PRESETS))
    source.add_argument("--config", help="base scenario JSON file")
    p.add_argument("--axis", choices=[a.value for a in SweepAxis])
    p.add_argument(
        "--range",
        help="lo..hi:N[log|lin] in CLI units (pressure mbar, omega_m Hz, others SI)",
    )
    p.add_argument("--lambda-csl", type=float, help="override lambda_csl in Hz")
    p.add_argument(
        "--immunity", type=float, nargs="?", const=0.1, help="report the immunity region"
    )
    p.add_argument("--out", help="CSV output path (default: standard output)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="minimal testable lambda_csl")
    p.add_argument("--pressures", help="pressures in mbar, list or range")
    p.add_argument("--tints", help="internal temperatures in K, list or range")
    p.add_argument("--config", help="base scenario JSON file")
    p.add_argument("--threshold", type=float, default=1.2)
    p.add_argument("--horizon", type=float, default=100.0, help="s")
    p.add_argument("--n0", type=float, default=50.0)
    p.add_argument("--grid-points", type=int, default=16)
    p.add_argument("--out", help="CSV output path (default: standard output)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("discriminate", help="likelihood-ratio test on synthetic data")
    _add_scenario_arguments(p)
    p.add_argument("--truth", choices=[h.value for h in Hypothesis], default="csl")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--mc-trials", type=int, default=1000)
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser("presets", help="list presets or show one")
    p.add_argument("--show", choices=list(PRESETS))
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    configure_logging(args.verbose, args.quiet)
    try:
        return args.func(args)
    except (ConfigError, IntegrationError, ValueError, OSError) as e:
        logger.error(str(e))
        return EXIT_ERROR
