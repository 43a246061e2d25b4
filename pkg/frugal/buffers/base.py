from abc import ABC, abstractmethod

from frugal.buffers.storage import TransitionStore
from frugal.models import Transition


class ReplayBuffer(ABC):
    """Interface the learner trains against."""

    kind = None

    def __init__(self, capacity, state_dim, action_dim):
        self.store = TransitionStore(capacity, state_dim, action_dim)
        self.spec = None
        self.inserted = 0
        self.rejected = 0
        self.evicted = 0

    @property
    def capacity(self):
        return self.store.capacity

    @property
    def state_dim(self):
        return self.store.state_dim

    @property
    def action_dim(self):
        return self.store.action_dim

    def __len__(self):
        return len(self.store)

    def __iter__(self):
        return iter(self.store)

    @abstractmethod
    def insert(self, t):
        """Offer one transition; returns an InsertOutcome."""

    @abstractmethod
    def attach_partition(self, spec):
        """Called once the warm-up rollout has produced a partition."""

    def sample_minibatch(self, batch_size, rng):
        return self.store.sample(batch_size, rng)

    def counters(self):
        return {'inserted': self.inserted, 'rejected': self.rejected, 'evicted': self.evicted}

    def _restore_rows(self, rows):
        self.store.clear()
        for s, a, r, s_next, done in rows:
            self.store.push(Transition.make(s, a, r, s_next, done))

    def restore(self, rows, spec=None):
        """Reload FIFO contents from a snapshot (counters are set by the caller)."""
        self.spec = spec
        self._restore_rows(rows)
