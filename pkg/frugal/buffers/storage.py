import numpy as np

from frugal.errors import EmptyBuffer, ShapeMismatch
from frugal.models import Transition, TransitionBatch


class TransitionStore:
    """Fixed-capacity FIFO of transitions backed by preallocated arrays.

    Logical index 0 is the oldest stored transition.
    """

    def __init__(self, capacity, state_dim, action_dim):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = int(capacity)
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)

        self.states = np.zeros((self.capacity, self.state_dim))
        self.actions = np.zeros((self.capacity, self.action_dim))
        self.rewards = np.zeros(self.capacity)
        self.next_states = np.zeros((self.capacity, self.state_dim))
        self.dones = np.zeros(self.capacity, dtype=bool)

        self._head = 0  # slot of the oldest entry
        self._size = 0

    def __len__(self):
        return self._size

    def is_full(self):
        return self._size == self.capacity

    def slot(self, index):
        """Physical slot of logical index."""
        return (self._head + index) % self.capacity

    def next_slot(self):
        """Slot the next push writes to."""
        return self._head if self.is_full() else self.slot(self._size)

    def check(self, t):
        return t.validate(self.state_dim, self.action_dim)

    def get(self, index):
        if not 0 <= index < self._size:
            raise IndexError(index)
        i = self.slot(index)
        return Transition.make(self.states[i], self.actions[i], self.rewards[i],
                               self.next_states[i], self.dones[i])

    def __iter__(self):
        for index in range(self._size):
            yield self.get(index)

    def push(self, t):
        """Append t, returning the evicted oldest transition if full."""
        evicted = None
        if self._size == self.capacity:
            evicted = self.get(0)
            slot = self._head
            self._head = (self._head + 1) % self.capacity
        else:
            slot = self.slot(self._size)
            self._size += 1

        self.states[slot] = t.s
        self.actions[slot] = t.a
        self.rewards[slot] = t.r
        self.next_states[slot] = t.s_next
        self.dones[slot] = t.done
        return evicted

    def clear(self):
        self._head = 0
        self._size = 0

    def sample(self, batch_size, rng):
        """batch_size uniform draws with replacement."""
        if self._size == 0:
            raise EmptyBuffer("cannot sample from an empty buffer")
        if batch_size < 1:
            raise ShapeMismatch(f"batch size must be >= 1, got {batch_size}")
        logical = rng.integers(0, self._size, size=batch_size)
        slots = (self._head + logical) % self.capacity
        return TransitionBatch(
            states=self.states[slots],
            actions=self.actions[slots],
            rewards=self.rewards[slots],
            next_states=self.next_states[slots],
            dones=self.dones[slots],
            indices=logical,
        )

    def ordered(self):
        """Column arrays in FIFO order (copies)."""
        order = (self._head + np.arange(self._size)) % self.capacity
        return (self.states[order], self.actions[order], self.rewards[order],
                self.next_states[order], self.dones[order])
