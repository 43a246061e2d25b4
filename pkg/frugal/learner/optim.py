import numpy as np


class AdamState:
    """Adam moments for one parameter list, updated in place."""

    beta1 = 0.9
    beta2 = 0.999
    eps = 1e-8

    def __init__(self, params):
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, params, grads, lr):
        """Descend: params -= lr * m_hat / (sqrt(v_hat) + eps)."""
        self.t += 1
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= lr * (m / c1) / (np.sqrt(v / c2) + self.eps)


class SgdState:
    """Plain gradient descent with the same interface."""

    def __init__(self, params):
        self.t = 0

    def step(self, params, grads, lr):
        self.t += 1
        for p, g in zip(params, grads):
            p -= lr * g


OPTIMIZERS = {
    'adam': AdamState,
    'sgd': SgdState,
}


def make_optimizer(name, params):
    return OPTIMIZERS[name](params)
