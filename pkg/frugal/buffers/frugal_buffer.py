import logging

from frugal.buffers.base import ReplayBuffer
from frugal.errors import InvariantViolation
from frugal.models import GateConfig, InsertOutcome
from frugal.utils.density import RewardLedger, gate_decision
from frugal.utils.partition import StateMapper

logger = logging.getLogger(__name__)


class FrugalBuffer(ReplayBuffer):
    """Replay buffer whose insert path runs the reward-density gate.

    Until a partition is attached every transition is stored and also kept in
    an arrival list; attaching one re-gates that whole list in order, so
    warm-up transitions already evicted from storage are still seen by the gate.
    """

    kind = 'frugal'

    def __init__(self, capacity, state_dim, action_dim, cfg=None, spec=None):
        super().__init__(capacity, state_dim, action_dim)
        self.cfg = cfg or GateConfig()
        self.ledger = RewardLedger()
        self._mapper = None
        # every ungated arrival, including ones storage has already evicted
        self._arrivals = []
        # cell of each stored transition, parallel to store slots
        self._cells = [None] * self.store.capacity
        if spec is not None:
            self.attach_partition(spec)

    @property
    def gated(self):
        return self._mapper is not None

    def cell_of(self, state):
        return self._mapper(state)

    def attach_partition(self, spec):
        pending, self._arrivals = self._arrivals, []
        self.spec = spec
        self._mapper = StateMapper(spec)
        self.store.clear()
        self.ledger.clear()
        self._cells = [None] * self.store.capacity
        self.inserted = self.rejected = self.evicted = 0

        for t in pending:
            self.insert(t)
        logger.info("Re-gated %d warm-up transitions: kept %d, rejected %d",
                    len(pending), len(self), self.rejected)

    def insert(self, t):
        self.store.check(t)
        if not self.gated:
            self._arrivals.append(t)
            self._push(t, None)
            return InsertOutcome(accepted=True, rde_value=0.0, cell=None)

        cell = self._mapper(t.s)
        decision = gate_decision(t.r, cell, self.ledger, self.cfg)
        if not decision.accepted:
            self.rejected += 1
            return InsertOutcome(accepted=False, rde_value=decision.rde_value, cell=cell)

        self._push(t, cell)
        self.ledger.append(cell, t.r)
        return InsertOutcome(accepted=True, rde_value=decision.rde_value, cell=cell)

    def _push(self, t, cell):
        slot = self.store.next_slot()
        evicted = self.store.push(t)
        if evicted is not None:
            old_cell = self._cells[slot]
            if old_cell is not None:
                self.ledger.remove(old_cell, evicted.r)
            self.evicted += 1
        self._cells[slot] = cell
        self.inserted += 1

    def stored_cells(self):
        """Cell ids of stored transitions in FIFO order."""
        return [self._cells[self.store.slot(i)] for i in range(len(self.store))]

    def check_invariants(self):
        if len(self) > self.capacity:
            raise InvariantViolation(f"{len(self)} transitions stored in capacity {self.capacity}")
        if self.gated and self.ledger.total() != len(self):
            raise InvariantViolation(
                f"ledger holds {self.ledger.total()} rewards for {len(self)} stored transitions")
        if self.inserted != len(self) + self.evicted:
            raise InvariantViolation(
                f"inserted {self.inserted} != stored {len(self)} + evicted {self.evicted}")

    def restore(self, rows, spec=None, groups=()):
        self.spec = spec
        self._mapper = StateMapper(spec) if spec is not None else None
        self._cells = [None] * self.store.capacity
        self._restore_rows(rows)
        self._arrivals = [] if self._mapper is not None else list(self.store)
        if self._mapper is not None:
            for i in range(len(self.store)):
                self._cells[self.store.slot(i)] = self._mapper(self.store.states[self.store.slot(i)])

        self.ledger.clear()
        for cell, values in groups:
            for value in values:
                self.ledger.append(cell, value)
