from dataclasses import dataclass

import numpy as np

from frugal.errors import NonFiniteTransition, ShapeMismatch


@dataclass(frozen=True, eq=False)
class Transition:
    """One experience tuple (s, a, r, s', done)."""

    s: np.ndarray
    a: np.ndarray
    r: float
    s_next: np.ndarray
    done: bool = False

    @classmethod
    def make(cls, s, a, r, s_next, done=False):
        return cls(
            s=np.asarray(s, dtype=np.float64).reshape(-1),
            a=np.asarray(a, dtype=np.float64).reshape(-1),
            r=float(r),
            s_next=np.asarray(s_next, dtype=np.float64).reshape(-1),
            done=bool(done),
        )

    def validate(self, state_dim=None, action_dim=None):
        """Raise unless every field is finite and shaped consistently."""
        if self.s.shape != self.s_next.shape:
            raise ShapeMismatch(f"s has shape {self.s.shape}, s_next has {self.s_next.shape}")
        if state_dim is not None and self.s.shape[0] != state_dim:
            raise ShapeMismatch(f"expected state dimension {state_dim}, got {self.s.shape[0]}")
        if action_dim is not None and self.a.shape[0] != action_dim:
            raise ShapeMismatch(f"expected action dimension {action_dim}, got {self.a.shape[0]}")

        finite = (
            np.isfinite(self.s).all()
            and np.isfinite(self.a).all()
            and np.isfinite(self.s_next).all()
            and np.isfinite(self.r)
        )
        if not finite:
            raise NonFiniteTransition("transition contains NaN or Inf")
        return self

    def key(self):
        """Bytes identity used to count distinct transitions."""
        return (
            self.s.tobytes() + self.a.tobytes() + np.float64(self.r).tobytes()
            + self.s_next.tobytes() + (b'\x01' if self.done else b'\x00')
        )

    def __eq__(self, other):
        if not isinstance(other, Transition):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


@dataclass(frozen=True)
class TransitionBatch:
    """b sampled rows stored column-wise for the learner."""

    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray
    indices: np.ndarray

    def __len__(self):
        return self.rewards.shape[0]

    def to_transitions(self):
        return [
            Transition.make(self.states[i], self.actions[i], self.rewards[i],
                            self.next_states[i], self.dones[i])
            for i in range(len(self))
        ]
