from .mlp import Mlp, mlp_forward, mlp_gradient, soft_update
from .optim import AdamState, SgdState, make_optimizer
from .agent import Td3Agent, td_delta
from .training import evaluate, split_seed, train

__all__ = [
    'Mlp',
    'mlp_forward',
    'mlp_gradient',
    'soft_update',
    'AdamState',
    'SgdState',
    'make_optimizer',
    'Td3Agent',
    'td_delta',
    'evaluate',
    'split_seed',
    'train',
]
