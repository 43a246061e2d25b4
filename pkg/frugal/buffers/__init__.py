from .base import ReplayBuffer
from .plain_buffer import PlainBuffer
from .frugal_buffer import FrugalBuffer

BUFFER_CLASSES = {
    'plain': PlainBuffer,
    'frugal': FrugalBuffer,
}

__all__ = ['ReplayBuffer', 'PlainBuffer', 'FrugalBuffer', 'BUFFER_CLASSES', 'make_buffer']


def make_buffer(kind, capacity, state_dim, action_dim, cfg=None):
    if kind == 'frugal':
        return FrugalBuffer(capacity, state_dim, action_dim, cfg=cfg)
    if kind == 'plain':
        return PlainBuffer(capacity, state_dim, action_dim)
    raise ValueError(f"unknown buffer kind '{kind}'")
