# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Feedforward approximator of the observer transformation: two hidden
layers with logistic activations and a linear output layer,

    T(x) = W0 s(W2 s(W1 x + c1) + c2) + c0

All weights and biases live in one flat parameter vector with the layout
``W1`` (``N1 x n``, row-major), ``c1``, ``W2`` (``N2 x N1``), ``c2``, ``W0``
(``n x N2``), ``c0``:

    >>> from obslin import mlp
    >>> cfg = mlp.MlpConfig(2)
    >>> cfg.size
    57
    >>> params = mlp.init_random(cfg, seed=7)
    >>> mlp.forward(cfg, params, [0.0, 0.0]).shape
    (2,)
"""
import logging

import numpy as np
from scipy.special import expit

from obslin.error import InternalError
from obslin.maps import TransformMap

logger = logging.getLogger(__name__)

INIT_BOUND = 0.5


def _identity(x):
    return x


ACTIVATIONS = {
    # name: (function, derivative expressed with the activation value)
    'sigmoid': (expit, lambda s: s * (1.0 - s)),
    'identity': (_identity, lambda s: np.ones_like(s)),
}


class MlpConfig(object):
    """Architecture of the network: input and output dimension `n`, hidden
    widths ``(N1, N2)`` and activation. ``'identity'`` is only meant for
    tests.
    """

    def __init__(self, n, widths=(5, 5), activation='sigmoid'):
        widths = tuple(int(width) for width in widths)
        if n < 1 or len(widths) != 2 or min(widths) < 1:
            raise ValueError("Invalid network dimensions")
        if activation not in ACTIVATIONS:
            raise ValueError(
                "Unknown activation '{}'".format(activation)
            )
        self.n = n
        self.widths = widths
        self.activation = activation

    @property
    def shapes(self):
        """Shapes of the weight and bias blocks in parameter order."""
        n, (n1, n2) = self.n, self.widths
        return [(n1, n), (n1,), (n2, n1), (n2,), (n, n2), (n,)]

    @property
    def size(self):
        """Number of parameters."""
        return int(sum(np.prod(shape) for shape in self.shapes))

    def to_dict(self):
        return {
            'n': self.n,
            'widths': list(self.widths),
            'activation': self.activation,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data['n'],
            data.get('widths', (5, 5)),
            data.get('activation', 'sigmoid'),
        )

    def __eq__(self, other):
        return isinstance(other, MlpConfig) and (
            self.to_dict() == other.to_dict()
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "MlpConfig(n={}, widths={}, activation={!r})".format(
            self.n, self.widths, self.activation
        )


def unpack(cfg, params):
    """Split `params` into ``[W1, c1, W2, c2, W0, c0]`` (views).

    :raise: :class:`obslin.error.InternalError` (wrong length)
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (cfg.size,):
        raise InternalError(
            "Expected {} parameters, got {}".format(cfg.size, params.shape)
        )
    blocks, start = [], 0
    for shape in cfg.shapes:
        stop = start + int(np.prod(shape))
        blocks.append(params[start:stop].reshape(shape))
        start = stop
    return blocks


def pack(cfg, blocks):
    """Inverse of :func:`unpack`."""
    flat = np.concatenate([np.ravel(block) for block in blocks])
    if flat.size != cfg.size:
        raise InternalError(
            "Expected {} parameters, got {}".format(cfg.size, flat.size)
        )
    return flat


def _layers(cfg, params, points):
    W1, c1, W2, c2, W0, c0 = unpack(cfg, params)
    act = ACTIVATIONS[cfg.activation][0]
    s1 = act(points @ W1.T + c1)
    s2 = act(s1 @ W2.T + c2)
    return s1, s2, s2 @ W0.T + c0


def _as_points(cfg, x):
    points = np.asarray(x, dtype=float)
    single = points.ndim == 1
    points = np.atleast_2d(points)
    if points.shape[1] != cfg.n:
        raise InternalError(
            "Expected points of dimension {}, got {}".format(
                cfg.n, points.shape[1]
            )
        )
    return points, single


def forward(cfg, params, x):
    """Evaluate the network at `x`, a point or an ``(M, n)`` array of
    points.
    """
    points, single = _as_points(cfg, x)
    output = _layers(cfg, params, points)[2]
    return output[0] if single else output


def input_jacobian(cfg, params, x):
    """Exact Jacobian ``dT/dx`` at the point `x`:
    ``W0 diag(s2') W2 diag(s1') W1``.
    """
    points, _ = _as_points(cfg, x)
    W1, _, W2, _, W0, _ = unpack(cfg, params)
    derivative = ACTIVATIONS[cfg.activation][1]
    s1, s2, _ = _layers(cfg, params, points[:1])
    inner = derivative(s1[0])[:, None] * W1
    outer = derivative(s2[0])[:, None] * (W2 @ inner)
    return W0 @ outer


def init_random(cfg, seed):
    """Draw every parameter uniformly in ``[-0.5, 0.5]`` from a Philox
    counter-based generator keyed by `seed`. The same seed always gives the
    same vector.
    """
    generator = np.random.Generator(np.random.Philox(key=int(seed)))
    return generator.uniform(-INIT_BOUND, INIT_BOUND, cfg.size)


class MlpMap(TransformMap):
    """Network with fixed parameters seen as a
    :class:`obslin.maps.TransformMap`. `provenance` keeps how the parameters
    were obtained (problem, seed, schedule, training report).
    """

    kind = 'mlp'

    def __init__(self, cfg, params, provenance=None):
        super(MlpMap, self).__init__(cfg.n)
        params = np.array(params, dtype=float)
        unpack(cfg, params)
        params.flags.writeable = False
        self.cfg = cfg
        self.params = params
        self.provenance = dict(provenance or {})

    def __call__(self, x):
        return forward(self.cfg, self.params, np.asarray(x, dtype=float))

    def evaluate_batch(self, points):
        return forward(
            self.cfg, self.params, np.asarray(points, dtype=float)
        ).reshape(-1, self.n)

    def jacobian(self, x, step=None):
        return input_jacobian(self.cfg, self.params, x)

    def to_dict(self):
        return {
            'kind': self.kind,
            'config': self.cfg.to_dict(),
            'params': self.params.tolist(),
            'provenance': self.provenance,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            MlpConfig.from_dict(data['config']),
            data['params'],
            provenance=data.get('provenance'),
        )
