from frugal.buffers.base import ReplayBuffer
from frugal.models import InsertOutcome


class PlainBuffer(ReplayBuffer):
    """Baseline buffer: every transition goes in, oldest out when full."""

    kind = 'plain'

    def insert(self, t):
        self.store.check(t)
        if self.store.push(t) is not None:
            self.evicted += 1
        self.inserted += 1
        return InsertOutcome(accepted=True, rde_value=0.0, cell=None)

    def attach_partition(self, spec):
        # kept only so duplicate_census can group the baseline's contents
        self.spec = spec
