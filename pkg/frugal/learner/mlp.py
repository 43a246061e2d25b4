"""Small fully connected networks with hand-written backpropagation."""

import numpy as np

from frugal.errors import ShapeMismatch

OUTPUT_IDENTITY = 'identity'
OUTPUT_TANH = 'tanh'


class Mlp:
    """tanh hidden layers; identity output (critic) or scaled tanh (actor).

    With a tanh output the result is ``offset + scale * tanh(z)`` so actions
    land inside [offset - scale, offset + scale].
    """

    def __init__(self, weights, biases, output=OUTPUT_IDENTITY, scale=None, offset=None):
        if len(weights) != len(biases) or not weights:
            raise ShapeMismatch("need one bias vector per weight matrix")
        for i, (w, b) in enumerate(zip(weights, biases)):
            if b.shape != (w.shape[1],):
                raise ShapeMismatch(f"layer {i}: bias {b.shape} does not match weight {w.shape}")
            if i and weights[i - 1].shape[1] != w.shape[0]:
                raise ShapeMismatch(f"layer {i}: input width {w.shape[0]} != {weights[i - 1].shape[1]}")
        if output not in (OUTPUT_IDENTITY, OUTPUT_TANH):
            raise ValueError(f"unknown output activation '{output}'")

        self.weights = [np.array(w, dtype=np.float64) for w in weights]
        self.biases = [np.array(b, dtype=np.float64) for b in biases]
        self.output = output
        out = self.weights[-1].shape[1]
        self.scale = np.ones(out) if scale is None else np.asarray(scale, dtype=np.float64).reshape(out)
        self.offset = np.zeros(out) if offset is None else np.asarray(offset, dtype=np.float64).reshape(out)

    @classmethod
    def create(cls, widths, rng, output=OUTPUT_IDENTITY, scale=None, offset=None, final_init=3e-3):
        """Fan-in uniform init; the last layer starts near zero."""
        weights, biases = [], []
        for i, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:])):
            bound = final_init if i == len(widths) - 2 else 1.0 / np.sqrt(fan_in)
            weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            biases.append(rng.uniform(-bound, bound, size=fan_out))
        return cls(weights, biases, output=output, scale=scale, offset=offset)

    @property
    def widths(self):
        return [self.weights[0].shape[0]] + [w.shape[1] for w in self.weights]

    def copy(self):
        return Mlp([w.copy() for w in self.weights], [b.copy() for b in self.biases],
                   output=self.output, scale=self.scale.copy(), offset=self.offset.copy())

    def parameters(self):
        """Parameter arrays, interleaved W0, b0, W1, b1, ..."""
        params = []
        for w, b in zip(self.weights, self.biases):
            params.extend((w, b))
        return params

    def is_finite(self):
        return all(np.isfinite(p).all() for p in self.parameters())

    def _check_input(self, x):
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        if single:
            x = x[None, :]
        if x.ndim != 2 or x.shape[1] != self.weights[0].shape[0]:
            raise ShapeMismatch(f"input width {x.shape[-1]} != {self.weights[0].shape[0]}")
        return x, single

    def forward(self, x, keep=False):
        """Evaluate the net; keep=True also returns the activations cache."""
        x, single = self._check_input(x)
        activations = [x]
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ w + b
            if i < last:
                h = np.tanh(z)
            elif self.output == OUTPUT_TANH:
                h = np.tanh(z)
            else:
                h = z
            activations.append(h)

        out = h if self.output == OUTPUT_IDENTITY else self.offset + self.scale * h
        if single:
            out = out[0]
        return (out, activations) if keep else out

    def backward(self, activations, upstream):
        """Gradients of sum(upstream * output) w.r.t. parameters and input.

        Returns (grads, dx) with grads ordered like parameters().
        """
        upstream = np.asarray(upstream, dtype=np.float64)
        if upstream.ndim == 1:
            upstream = upstream[None, :]

        last = len(self.weights) - 1
        top = activations[-1]
        if self.output == OUTPUT_TANH:
            delta = upstream * self.scale * (1.0 - top ** 2)
        else:
            delta = upstream

        grads = [None] * (2 * len(self.weights))
        for i in range(last, -1, -1):
            h_in = activations[i]
            grads[2 * i] = h_in.T @ delta
            grads[2 * i + 1] = delta.sum(axis=0)
            delta = delta @ self.weights[i].T
            if i > 0:
                delta = delta * (1.0 - activations[i] ** 2)
        return grads, delta

    def gradient(self, x, upstream):
        _, activations = self.forward(x, keep=True)
        return self.backward(activations, upstream)


def mlp_forward(net, x):
    return net.forward(x)


def mlp_gradient(net, x, upstream):
    """(parameter gradients, input gradient) of sum(upstream * net(x))."""
    return net.gradient(x, upstream)


def soft_update(target, online, tau):
    """Polyak step: target <- tau * online + (1 - tau) * target."""
    for t, o in zip(target.parameters(), online.parameters()):
        t *= 1.0 - tau
        t += tau * o
