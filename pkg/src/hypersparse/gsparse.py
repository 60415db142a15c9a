"""Spectral sparsification of star underlying graphs by resistance sampling.

Edges are drawn i.i.d. with probability proportional to weight times
(approximate) effective resistance; each draw deposits c_f / (q p_f) on its
label, so expected output weights match the input exactly and the flattened
Laplacian is a (1 +- eps) spectral approximation with high probability.
"""

from __future__ import annotations

import math

import numpy as np

from .core import UnderlyingGraph, flatten
from .linalg import build_sketch, resistance_table, sketch_resistance_many
from .seeding import derive_seed

__all__ = ["sparsify_graph", "sample_size", "DEFAULT_OVERSAMPLE", "INTERNAL_SKETCH_EPS"]

DEFAULT_OVERSAMPLE = 9.0
# Constant-factor resistance error only perturbs sampling probabilities and is
# absorbed by the oversampling constant, so the internal sketch accuracy does
# not track the target eps.
INTERNAL_SKETCH_EPS = 0.3


def sample_size(n: int, eps: float, oversample: float = DEFAULT_OVERSAMPLE) -> int:
    """Number of i.i.d. edge draws: ceil(oversample * n * ln(n) / eps^2)."""
    return math.ceil(oversample * n * math.log(n) / eps**2)


def _support_resistances(U, support, exact_resistances, sketch_eps, seed):
    G = flatten(U)
    tails = np.repeat(U.anchors, U.star_sizes())
    if exact_resistances:
        table = resistance_table(G)
        return table[tails[support], U.star_v[support]]
    sketch = build_sketch(G, sketch_eps, derive_seed(seed, "gsparse/sketch"))
    return sketch_resistance_many(sketch, tails[support], U.star_v[support])


def sparsify_graph(
    U: UnderlyingGraph,
    eps: float,
    seed: int,
    *,
    oversample: float = DEFAULT_OVERSAMPLE,
    sketch_eps: float = INTERNAL_SKETCH_EPS,
    exact_resistances: bool = False,
) -> UnderlyingGraph:
    """Reweighted sub-multigraph over the same label space.

    Sampling masses c_f * R_f are evaluated per edge, and every positive-weight
    edge lies inside a single component, so disconnected inputs work without
    ever querying a cross-component resistance. Labels never sampled come back
    with weight 0; at most q distinct labels survive.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    weights = U.weights
    support = np.flatnonzero(weights > 0.0)
    if len(support) == 0:
        return U.with_weights(np.zeros_like(weights))

    res = _support_resistances(U, support, exact_resistances, sketch_eps, seed)
    masses = weights[support] * res
    probs = masses / masses.sum()

    q = sample_size(U.base.n, eps, oversample)
    rng = np.random.default_rng(derive_seed(seed, "gsparse/draw"))
    counts = rng.multinomial(q, probs)

    new_weights = np.zeros_like(weights)
    new_weights[support] = counts * weights[support] / (q * probs)
    return U.with_weights(new_weights)
