"""Communication efficiency and its decay under ordered edge or vertex removal.

Efficiency is ``E = (1 / (n (n - 1))) * sum_{i<j} 1 / d_ij`` with disconnected
pairs contributing 0. Summing unordered pairs against the ordered-pair
normaliser caps ``E`` at 1/2 on complete graphs; ``normalization="ordered"``
doubles it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .forman import augmented_forman_edge, forman_edge
from .graph import Graph
from .metrics import betweenness, clustering_coefficient
from .ollivier import ollivier_edge_values

EDGE_STRATEGIES = ("random", "or_increasing", "fr_increasing", "afr_increasing",
                   "ebc_decreasing")
VERTEX_STRATEGIES = ("random", "or_increasing", "fr_increasing", "afr_increasing",
                     "bc_decreasing", "degree_decreasing", "cc_decreasing")


@njit(cache=True)
def _inverse_distance_sum(indptr, indices, adj_eid, edge_alive):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    total = 0.0
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                if not edge_alive[adj_eid[p]]:
                    continue
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue[tail] = w
                    tail += 1
                    if w > s:
                        total += 1.0 / dist[w]
    return total


def _efficiency(g: Graph, edge_alive: np.ndarray, n_eff: int, normalization: str) -> float:
    if n_eff < 2:
        return 0.0
    s = _inverse_distance_sum(g.indptr, g.indices, g.adj_eid, edge_alive)
    e = s / (n_eff * (n_eff - 1))
    return 2.0 * e if normalization == "ordered" else e


def communication_efficiency(g: Graph, normalization: str = "paper") -> float:
    if normalization not in ("paper", "ordered"):
        raise ValueError("normalization must be 'paper' or 'ordered'")
    if g.n < 2:
        raise ValueError("efficiency needs at least two vertices")
    return _efficiency(g, np.ones(g.m, dtype=np.bool_), g.n, normalization)


@dataclass
class RemovalCurve:
    strategy: str
    target: str
    fractions: np.ndarray
    efficiency: np.ndarray
    seed: Optional[int] = None
    meta: dict = field(default_factory=dict)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.fractions.tolist(), self.efficiency.tolist()))


def _scores(g: Graph, target: str, strategy: str, idleness: float) -> np.ndarray:
    """Per-element key; elements are removed in increasing key order."""
    if strategy in ("or_increasing", "fr_increasing", "afr_increasing"):
        if strategy == "or_increasing":
            vals = ollivier_edge_values(g, idleness)
        elif strategy == "fr_increasing":
            vals = forman_edge(g).values.astype(float)
        else:
            vals = augmented_forman_edge(g).values.astype(float)
        if target == "edges":
            return vals
        out = np.zeros(g.n)
        np.add.at(out, g.edges[:, 0], vals)
        np.add.at(out, g.edges[:, 1], vals)
        return out
    if strategy == "ebc_decreasing":
        return -betweenness(g)[1]
    if strategy == "bc_decreasing":
        return -betweenness(g)[0]
    if strategy == "degree_decreasing":
        return -g.degree.astype(float)
    if strategy == "cc_decreasing":
        return -clustering_coefficient(g)
    raise ValueError(f"unknown strategy {strategy!r}")


def removal_order(g: Graph, target: str, strategy: str, seed: int = 0,
                  idleness: float = 0.5) -> np.ndarray:
    """Element ids in removal order; ties go to the lower id."""
    if target not in ("edges", "vertices"):
        raise ValueError("target must be 'edges' or 'vertices'")
    allowed = EDGE_STRATEGIES if target == "edges" else VERTEX_STRATEGIES
    if strategy not in allowed:
        raise ValueError(f"unknown {target} strategy {strategy!r}; choose from {allowed}")
    size = g.m if target == "edges" else g.n
    if strategy == "random":
        return np.random.default_rng(seed).permutation(size)
    return np.argsort(_scores(g, target, strategy, idleness), kind="stable")


def _subgraph_alive(g: Graph, edge_alive: np.ndarray) -> Graph:
    return Graph(g.n, g.edges[edge_alive], labels=g.labels)


def removal_experiment(g: Graph, target: str = "edges", strategy: str = "random",
                       steps: int = 21, seed: int = 0, idleness: float = 0.5,
                       normalization: str = "paper", renormalize_vertices: bool = False,
                       adaptive: bool = False) -> RemovalCurve:
    """Efficiency recorded at ``steps`` evenly spaced removal fractions in [0, 1].

    The ordering is computed once on the intact network. With ``adaptive``
    it is recomputed on the surviving network at every recorded fraction.
    Vertex removal deletes incident edges; by default the original ``n``
    stays in the normaliser so curves of different strategies compare.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    size = g.m if target == "edges" else g.n
    fractions = np.linspace(0.0, 1.0, steps)
    counts = np.round(fractions * size).astype(np.int64)
    edge_alive = np.ones(g.m, dtype=np.bool_)
    vertex_alive = np.ones(g.n, dtype=np.bool_)
    order = removal_order(g, target, strategy, seed, idleness)
    removed = np.zeros(size, dtype=np.bool_)
    done = 0
    eff = np.empty(steps)
    for k, c in enumerate(counts):
        if adaptive and 0 < done < c and strategy != "random":
            sub = _subgraph_alive(g, edge_alive)
            keys = _scores(sub, target, strategy, idleness)
            if target == "edges":
                # map surviving-graph edge ids back to ids in g
                alive_ids = np.flatnonzero(edge_alive)
                order = alive_ids[np.argsort(keys, kind="stable")]
            else:
                cand = np.flatnonzero(vertex_alive)
                order = cand[np.argsort(keys[cand], kind="stable")]
            order = np.concatenate([np.flatnonzero(removed), order])
        for idx in order[done:c]:
            removed[idx] = True
            if target == "edges":
                edge_alive[idx] = False
            else:
                vertex_alive[idx] = False
                lo, hi = g.indptr[idx], g.indptr[idx + 1]
                edge_alive[g.adj_eid[lo:hi]] = False
        done = max(done, c)
        n_eff = int(vertex_alive.sum()) if (target == "vertices" and renormalize_vertices) else g.n
        eff[k] = _efficiency(g, edge_alive, n_eff, normalization)
    return RemovalCurve(strategy, target, fractions, eff,
                        seed if strategy == "random" else None,
                        {"adaptive": adaptive, "normalization": normalization})


def mean_curve(curves: Sequence[RemovalCurve]) -> RemovalCurve:
    c0 = curves[0]
    return RemovalCurve(c0.strategy, c0.target, c0.fractions.copy(),
                        np.mean([c.efficiency for c in curves], axis=0), None,
                        {**c0.meta, "samples": len(curves)})


def write_curves(curves: Sequence[RemovalCurve], path) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["strategy", "fraction", "efficiency"])
        for c in curves:
            for f, e in c.points:
                w.writerow([c.strategy, repr(f), repr(e)])
    return path
