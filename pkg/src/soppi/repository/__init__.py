from .config_store import ExperimentConfigStore
from .record_store import read_record, record_header, write_record
from .run_store import RunStore

__all__ = ["ExperimentConfigStore", "RunStore", "read_record", "record_header", "write_record"]
