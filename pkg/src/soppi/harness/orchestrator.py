import logging
from collections.abc import Iterator
from concurrent.futures import Executor, Future, ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from datetime import datetime, timezone
from pathlib import Path

from soppi import __version__
from soppi.domain.errors import TrialFailedError
from soppi.domain.records import TrialRecord
from soppi.engine.episode import run_episode
from soppi.metrics.summary import summarize_groups
from soppi.repository.run_store import RunStore
from soppi.schemas.experiment import AlgoVariant, ExperimentConfig
from soppi.schemas.manifest import RunManifest, TrialEntry
from soppi.schemas.summary import Summary

logger = logging.getLogger(__name__)


def _now() -> datetime:
    return datetime.now(timezone.utc)


def run_trial(config: ExperimentConfig, label: str, trial: int, record_timing: bool = True) -> TrialRecord:
    """One episode of one algo variant; module level so process pools can pickle it."""
    variant = config.variant(label)
    cfg = config.controller_config(variant, config.trial_seed(trial))
    return run_episode(
        config.build_system(),
        config.cost,
        cfg,
        config.initial_state(),
        variant.algo,
        config.num_steps(),
        record_timing=record_timing,
    )


def _timed_trial(
    config: ExperimentConfig, label: str, trial: int, record_timing: bool
) -> tuple[datetime, TrialRecord]:
    started_at = _now()
    try:
        return started_at, run_trial(config, label, trial, record_timing)
    except Exception as exc:
        raise TrialFailedError(str(exc), started_at) from exc


def summarize_run(config: ExperimentConfig, groups: dict[str, list[TrialRecord]]) -> Summary:
    mse_signals, settling = config.metric_criteria()
    return summarize_groups(groups, [*mse_signals, *settling])


class ExperimentOrchestrator:
    """Runs the paired-seed battery of a config and persists records, manifest and summary."""

    def __init__(self, config: ExperimentConfig, run_store: RunStore, max_workers: int = 1, record_timing: bool = True):
        self.config = config
        self.run_store = run_store
        self.max_workers = max(1, max_workers)
        self.record_timing = record_timing

    def _jobs(self) -> Iterator[tuple[AlgoVariant, int]]:
        for trial in range(self.config.experiment.n_trials):
            for variant in self.config.experiment.algos:
                yield variant, trial

    def _executor(self) -> Executor:
        if self.max_workers == 1:
            return ThreadPoolExecutor(max_workers=1)
        return ProcessPoolExecutor(max_workers=self.max_workers)

    def run(self) -> RunManifest:
        manifest = RunManifest(
            config=self.config,
            code_version=__version__,
            record_timing=self.record_timing,
            created_at=_now(),
        )
        self.run_store.save_manifest(manifest)
        logger.info("run directory: %s", self.run_store.run_dir)

        groups: dict[str, dict[int, TrialRecord]] = {variant.label: {} for variant in self.config.experiment.algos}
        try:
            with self._executor() as executor:
                pending: dict[Future, TrialEntry] = {}
                for variant, trial in self._jobs():
                    entry = TrialEntry(
                        label=variant.label,
                        algo=variant.algo,
                        trial=trial,
                        seed=self.config.trial_seed(trial),
                        record_file=str(self.run_store.record_path(variant.label, trial).relative_to(self.run_store.run_dir)),
                    )
                    future = executor.submit(_timed_trial, self.config, variant.label, trial, self.record_timing)
                    pending[future] = entry

                for future in as_completed(pending):
                    entry = pending[future]
                    entry.finished_at = _now()
                    try:
                        entry.started_at, record = future.result()
                    except Exception as exc:
                        if isinstance(exc, TrialFailedError):
                            entry.started_at = exc.started_at
                        logger.error("%s trial %d failed: %s", entry.label, entry.trial, exc)
                        entry.status = "failed"
                        entry.error = str(exc)
                        manifest.status = "incomplete"
                        manifest.error = f"{entry.label} trial {entry.trial}: {exc}"
                    else:
                        self.run_store.save_record(entry.label, entry.trial, record)
                        groups[entry.label][entry.trial] = record
                        logger.info("%s trial %d done (seed %d)", entry.label, entry.trial, entry.seed)
                    manifest.trials.append(entry)
                    self.run_store.save_manifest(manifest)
        except BaseException as exc:
            manifest.status = "incomplete"
            manifest.error = manifest.error or f"interrupted: {exc!r}"
            raise
        finally:
            manifest.trials.sort(key=lambda item: (item.trial, item.label))
            ordered = {label: [by_trial[i] for i in sorted(by_trial)] for label, by_trial in groups.items() if by_trial}
            if ordered:
                self.run_store.save_summary(summarize_run(self.config, ordered))
            if manifest.status == "running":
                manifest.status = "complete"
            manifest.finished_at = _now()
            self.run_store.save_manifest(manifest)
        return manifest


def run_experiment(
    config: ExperimentConfig, out_dir: str | Path, max_workers: int = 1, record_timing: bool = True
) -> RunManifest:
    return ExperimentOrchestrator(config, RunStore(out_dir), max_workers, record_timing).run()


def rerun_from_manifest(manifest_path: str | Path, out_dir: str | Path, max_workers: int = 1) -> RunManifest:
    manifest_path = Path(manifest_path)
    source = RunStore(manifest_path.parent)
    if manifest_path.name != source.manifest_path.name:
        raise FileNotFoundError(f"Expected a {source.manifest_path.name} file, got {manifest_path}")
    manifest = source.load_manifest()
    return run_experiment(manifest.config, out_dir, max_workers, manifest.record_timing)
