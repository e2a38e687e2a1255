from .orchestrator import ExperimentOrchestrator, rerun_from_manifest, run_experiment, run_trial
from .plotdata import emit_plot_data, read_plot_table

__all__ = [
    "ExperimentOrchestrator",
    "emit_plot_data",
    "read_plot_table",
    "rerun_from_manifest",
    "run_experiment",
    "run_trial",
]
