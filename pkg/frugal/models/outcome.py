from dataclasses import dataclass
from typing import Optional

from frugal.models.partition_spec import AbstractStateId


@dataclass(frozen=True)
class GateDecision:
    accepted: bool
    rde_value: float
    threshold: float


@dataclass(frozen=True)
class InsertOutcome:
    accepted: bool
    rde_value: float
    cell: Optional[AbstractStateId]
