import argparse
import logging
import sys
from datetime import datetime
from pathlib import Path

from pydantic import ValidationError

from soppi.config import configure_logging, settings
from soppi.domain.errors import ConfigurationError
from soppi.harness.orchestrator import rerun_from_manifest, run_experiment, summarize_run
from soppi.harness.plotdata import emit_plot_data
from soppi.repository.config_store import ExperimentConfigStore
from soppi.repository.run_store import RunStore
from soppi.schemas.experiment import ExperimentConfig
from soppi.schemas.summary import Summary

logger = logging.getLogger("soppi")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="soppi", description="MPPI / SOPPI benchmark harness")
    parser.add_argument("--log-level", default=None, help="Override SOPPI_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run a paired-seed trial battery")
    run.add_argument("--config", default=settings.config_file, help="Experiment JSON file")
    run.add_argument("--algo", choices=["mppi", "soppi"], help="Only run variants of this algorithm")
    run.add_argument("--trials", type=int, help="Override experiment.n_trials")
    run.add_argument("--seed", type=int, help="Override experiment.base_seed")
    run.add_argument("--out", help="Output directory")
    run.add_argument("--workers", type=int, default=settings.max_workers, help="Parallel trial workers")

    summarize = sub.add_parser("summarize", help="Recompute summary tables of a run directory")
    summarize.add_argument("--in", dest="in_dir", required=True)

    plot = sub.add_parser("plotdata", help="Write per-signal time series of a run directory")
    plot.add_argument("--in", dest="in_dir", required=True)
    plot.add_argument("--out", dest="out_dir", required=True)

    rerun = sub.add_parser("rerun", help="Reproduce a run from its manifest")
    rerun.add_argument("--manifest", required=True)
    rerun.add_argument("--out", help="Output directory")
    rerun.add_argument("--workers", type=int, default=settings.max_workers)
    return parser


def apply_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    experiment = config.experiment.model_dump()
    if args.algo:
        experiment["algos"] = [v for v in experiment["algos"] if v["algo"] == args.algo] or [args.algo]
    if args.trials is not None:
        experiment["n_trials"] = args.trials
    if args.seed is not None:
        experiment["base_seed"] = args.seed
    data = config.model_dump(by_alias=True)
    data["experiment"] = experiment
    try:
        return ExperimentConfig.model_validate(data)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _default_out(config: ExperimentConfig) -> Path:
    if config.experiment.output_dir:
        return Path(config.experiment.output_dir)
    stamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    return Path(settings.output_root) / f"{config.system.id}-{stamp}"


def format_summary(summary: Summary) -> str:
    lines = [f"{'algo':<16}{'metric':<20}{'mean':>12}{'std':>12}{'median':>12}{'n':>4}{'nc':>4}"]
    for row in summary.rows:
        cells = ["-" if v is None else f"{v:.4f}" for v in (row.mean, row.std, row.median)]
        lines.append(f"{row.algo:<16}{row.metric:<20}{cells[0]:>12}{cells[1]:>12}{cells[2]:>12}{row.n:>4}{row.n_nonconverged:>4}")
    for row in summary.p_values:
        p = "-" if row.p_value is None else f"{row.p_value:.4g}"
        lines.append(f"p({row.algo_a} better than {row.algo_b}) {row.metric}: {p}")
    return "\n".join(lines)


def _run(args: argparse.Namespace) -> int:
    config = apply_overrides(ExperimentConfigStore(args.config).load(), args)
    out_dir = Path(args.out) if args.out else _default_out(config)
    manifest = run_experiment(config, out_dir, args.workers, settings.record_timing)
    try:
        print(format_summary(RunStore(out_dir).load_summary()))
    except FileNotFoundError:
        logger.error("no trial completed; nothing to summarize")
    return 0 if manifest.status == "complete" else 1


def _summarize(args: argparse.Namespace) -> int:
    store = RunStore(args.in_dir)
    manifest = store.load_manifest()
    summary = summarize_run(manifest.config, store.load_groups(manifest))
    store.save_summary(summary)
    print(format_summary(summary))
    return 0


def _plotdata(args: argparse.Namespace) -> int:
    store = RunStore(args.in_dir)
    manifest = store.load_manifest()
    written = emit_plot_data(store.load_groups(manifest), manifest.config.build_system(), args.out_dir)
    logger.info("wrote %d plot data file(s) to %s", len(written), args.out_dir)
    return 0


def _rerun(args: argparse.Namespace) -> int:
    out_dir = Path(args.out) if args.out else Path(args.manifest).parent.with_name(Path(args.manifest).parent.name + "-rerun")
    manifest = rerun_from_manifest(args.manifest, out_dir, args.workers)
    return 0 if manifest.status == "complete" else 1


COMMANDS = {"run": _run, "summarize": _summarize, "plotdata": _plotdata, "rerun": _rerun}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, ValidationError, FileNotFoundError) as exc:
        logger.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
