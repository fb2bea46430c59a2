"""Explicitly constructed global-minimum networks."""

import json

from . import _core
from ._core import ForgeError, IoError, Network, __version__, families

__all__ = [
    "ForgeError",
    "IoError",
    "Network",
    "__version__",
    "build",
    "extend",
    "families",
    "loss",
    "support",
    "verify_optimum",
]


def build(family, **params):
    """Build a network from a family name and recipe fields, e.g. build("relu-classifier-1d", n=6, b=0.9)."""
    return _core.build_network(json.dumps({"family": family, **params}))


def extend(net, mode="relu-exact", layers=1, widths=(), epsilon=None, c=None, shift=None):
    return _core.extend(net, mode, layers, list(widths), epsilon, c, shift)


def loss(net, x, y, kind="mse"):
    return _core.loss(net, x, y, kind)


def verify_optimum(net, loss="mse"):
    """Zero-loss report on the network's own training set, as a dict."""
    return json.loads(_core.verify_optimum(net, loss))


def support(net, samples=100_000, seed=1, threshold=None):
    return json.loads(_core.support(net, samples, seed, threshold))
