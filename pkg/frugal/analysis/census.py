import numpy as np

from frugal.errors import ShapeMismatch
from frugal.utils.partition import StateMapper


def duplicate_census(buffer, beta=None, spec=None):
    """Unordered stored pairs sharing a cell with |r_i - r_j| <= beta.

    beta defaults to the buffer's gate beta (0.2 for plain buffers); spec
    defaults to the partition attached to the buffer.
    """
    spec = spec if spec is not None else buffer.spec
    if spec is None:
        raise ShapeMismatch("duplicate census needs a partition spec")
    if beta is None:
        beta = buffer.cfg.beta if hasattr(buffer, 'cfg') else 0.2

    states, _, rewards, _, _ = buffer.store.ordered()
    if len(rewards) < 2:
        return 0

    cells = StateMapper(spec).cells(states)
    _, groups = np.unique(cells, axis=0, return_inverse=True)
    groups = groups.reshape(-1)

    pairs = 0
    for g in np.unique(groups):
        values = np.sort(rewards[groups == g])
        # for each value, how many later values sit within beta
        ends = np.searchsorted(values, values + beta, side='right')
        pairs += int(np.sum(ends - np.arange(1, len(values) + 1)))
    return pairs
