"""Shared instance generators and independent oracles for the test suite."""

from itertools import combinations

import numpy as np
import scipy.linalg

from hypersparse.core import Hypergraph, cut_value
from hypersparse.linalg import build_laplacian


def _vertices_connected(H: Hypergraph) -> bool:
    parent = list(range(H.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for vs, w in zip(H.vertex_sets, H.weights):
        if w <= 0.0:
            continue
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    return len({find(v) for v in range(H.n)}) == 1


def random_hypergraph(
    seed,
    n,
    m,
    rank,
    w_lo=0.5,
    w_hi=2.0,
    connected=True,
    integer_weights=False,
):
    rng = np.random.default_rng(seed)
    for _ in range(200):
        edges = []
        for _ in range(m):
            size = int(rng.integers(2, rank + 1))
            vs = rng.choice(n, size=size, replace=False)
            if integer_weights:
                w = float(rng.integers(1, 6))
            else:
                w = float(rng.uniform(w_lo, w_hi))
            edges.append((vs, w))
        H = Hypergraph(n, edges)
        if not connected or _vertices_connected(H):
            return H
    raise RuntimeError("could not draw a connected instance")


def random_weighted_graph(seed, n, m, w_lo=0.5, w_hi=2.0, connected=True):
    from hypersparse.core import WeightedGraph

    rng = np.random.default_rng(seed)
    edges = []
    if connected:
        order = rng.permutation(n)
        for i in range(1, n):
            edges.append((int(order[i - 1]), int(order[i]), float(rng.uniform(w_lo, w_hi))))
    while len(edges) < m:
        u, v = rng.choice(n, size=2, replace=False)
        edges.append((int(u), int(v), float(rng.uniform(w_lo, w_hi))))
    return WeightedGraph(n, edges)


def pencil_relative_eigs(G, Gt) -> np.ndarray:
    """Generalized eigenvalues of (L(Gt), L(G)) restricted to range(L(G))."""
    L = build_laplacian(G).matrix
    Lt = build_laplacian(Gt).matrix
    vals, vecs = np.linalg.eigh(L)
    keep = vals > 1e-9 * max(vals.max(), 1.0)
    basis = vecs[:, keep]
    A = basis.T @ Lt @ basis
    B = basis.T @ L @ basis
    return scipy.linalg.eigh(A, B, eigvals_only=True)


def brute_st_mincut(H: Hypergraph, s: int, t: int) -> float:
    """Exhaustive minimum over subsets containing s but not t."""
    others = [v for v in range(H.n) if v not in (s, t)]
    best = np.inf
    for mask in range(1 << len(others)):
        subset = {s}
        for i, v in enumerate(others):
            if mask >> i & 1:
                subset.add(v)
        best = min(best, cut_value(H, subset))
    return float(best)


def brute_global_mincut(H: Hypergraph) -> float:
    """Exhaustive minimum over all nontrivial cuts."""
    best = np.inf
    for mask in range(1, 1 << (H.n - 1)):
        subset = {v for v in range(H.n - 1) if mask >> v & 1}
        best = min(best, cut_value(H, subset))
    return float(best)


def all_pairs(vertices):
    return list(combinations(vertices, 2))
