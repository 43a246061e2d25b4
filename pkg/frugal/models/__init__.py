from .transition import Transition, TransitionBatch
from .partition_spec import AbstractStateId, PartitionSpec
from .gate_config import GateConfig
from .decomposition import DimensionSelection, QrPivotResult
from .outcome import GateDecision, InsertOutcome
from .train_config import TrainConfig
from .env_spec import EnvSpec, StepResult
from .run_log import RunLog
from .metrics_row import MetricDeltas, MetricsRow
from .run_config import RunConfig

__all__ = [
    'Transition',
    'TransitionBatch',
    'AbstractStateId',
    'PartitionSpec',
    'GateConfig',
    'DimensionSelection',
    'QrPivotResult',
    'GateDecision',
    'InsertOutcome',
    'TrainConfig',
    'EnvSpec',
    'StepResult',
    'RunLog',
    'MetricDeltas',
    'MetricsRow',
    'RunConfig',
]
