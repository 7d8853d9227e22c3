"""Ollivier-Ricci curvature of edges and vertices.

Edge curvature is ``kappa(x, y) = 1 - W1(m_x, m_y) / d(x, y)`` where ``m_x``
is the one-step random-walk measure at ``x`` with idleness ``alpha``: mass
``alpha`` stays at ``x`` and ``(1 - alpha) / deg(x)`` goes to each neighbour.
Adjacent vertices are at hop distance 1, so ``kappa = 1 - W1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .curvature import EdgeCurvatureVector, VertexCurvatureVector, vertex_sum
from .graph import Graph, is_connected
from .transport import OK, SparseMeasure, TransportError, solve_transport, wasserstein1

LAZY = 0.5


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class WalkKind:
    """Random walk used to build neighbourhood measures."""

    idleness: float = LAZY

    def __post_init__(self):
        if not 0.0 <= self.idleness <= 1.0:
            raise ValueError(f"idleness must lie in [0, 1], got {self.idleness}")


def _as_walk(walk) -> WalkKind:
    if walk is None:
        return WalkKind()
    if isinstance(walk, WalkKind):
        return walk
    return WalkKind(float(walk))


def walk_measure(g: Graph, x: int, walk=None) -> SparseMeasure:
    walk = _as_walk(walk)
    nb = g.neighbors(x)
    if len(nb) == 0:
        raise ValueError(f"vertex {x} is isolated; its walk measure is undefined")
    support, mass = [], []
    if walk.idleness > 0:
        support.append(x)
        mass.append(walk.idleness)
    if walk.idleness < 1:
        support.extend(int(v) for v in nb)
        mass.extend([(1.0 - walk.idleness) / len(nb)] * len(nb))
    return SparseMeasure(np.array(support), np.array(mass))


@njit(cache=True)
def _fill_measure(indptr, indices, x, alpha, scale, share, sup, mass):
    # masses are multiplied by scale = deg(x) deg(y); share is (1 - alpha) deg(other)
    k = 0
    if alpha > 0.0:
        sup[k] = x
        mass[k] = alpha * scale
        k += 1
    if alpha < 1.0:
        for p in range(indptr[x], indptr[x + 1]):
            sup[k] = indices[p]
            mass[k] = share
            k += 1
    return k


@njit(cache=True)
def _hop_costs(indptr, indices, src, ks, dst, kd, stamp, hop, token, cost, transpose):
    # every support vertex is within one hop of x or y, so d <= 3
    for i in range(ks):
        a = src[i]
        token += 1
        stamp[a] = token
        hop[a] = 0
        for p in range(indptr[a], indptr[a + 1]):
            w = indices[p]
            stamp[w] = token
            hop[w] = 1
        for p in range(indptr[a], indptr[a + 1]):
            w = indices[p]
            for q in range(indptr[w], indptr[w + 1]):
                z = indices[q]
                if stamp[z] != token:
                    stamp[z] = token
                    hop[z] = 2
        for j in range(kd):
            b = dst[j]
            c = hop[b] if stamp[b] == token else 3.0
            if transpose:
                cost[j, i] = c
            else:
                cost[i, j] = c
    return token


@njit(cache=True)
def _merge_rows(cost, mass):
    """Merge rows with identical cost vectors, summing their mass.

    Splitting a merged row's flow pro rata recovers a plan for the original
    problem with the same cost, so the optimum is unchanged.
    """
    k, L = cost.shape
    keys = np.empty(k, dtype=np.uint64)
    for i in range(k):
        h = np.uint64(1469598103934665603)
        for j in range(L):
            h = (h ^ np.uint64(int(cost[i, j]) + 1)) * np.uint64(1099511628211)
        keys[i] = h
    order = np.argsort(keys, kind="mergesort")
    rep = np.empty(k, dtype=np.int64)
    out_mass = np.zeros(k)
    groups = 0
    start = 0
    while start < k:
        stop = start
        while stop < k and keys[order[stop]] == keys[order[start]]:
            stop += 1
        first = groups
        for t in range(start, stop):
            i = order[t]
            hit = -1
            for g in range(first, groups):
                same = True
                for j in range(L):
                    if cost[rep[g], j] != cost[i, j]:
                        same = False
                        break
                if same:
                    hit = g
                    break
            if hit < 0:
                rep[groups] = i
                out_mass[groups] = mass[i]
                groups += 1
            else:
                out_mass[hit] += mass[i]
        start = stop
    merged = np.empty((groups, L))
    for g in range(groups):
        merged[g] = cost[rep[g]]
    return merged, out_mass[:groups]


@njit(cache=True)
def _ollivier_edges(indptr, indices, eu, ev, alpha):
    n = len(indptr) - 1
    max_deg = 0
    for v in range(n):
        max_deg = max(max_deg, indptr[v + 1] - indptr[v])
    sx = np.empty(max_deg + 1, dtype=np.int64)
    sy = np.empty(max_deg + 1, dtype=np.int64)
    mx = np.empty(max_deg + 1)
    my = np.empty(max_deg + 1)
    stamp = np.full(n, -1, dtype=np.int64)
    hop = np.zeros(n, dtype=np.int64)
    out = np.empty(len(eu))
    status = np.zeros(len(eu), dtype=np.int64)
    token = 0
    for e in range(len(eu)):
        x = eu[e]
        y = ev[e]
        dx = indptr[x + 1] - indptr[x]
        dy = indptr[y + 1] - indptr[y]
        # integer-scaled masses keep dyadic idleness exact, e.g. star edges give 0.0
        scale = float(dx * dy)
        kx = _fill_measure(indptr, indices, x, alpha, scale, (1.0 - alpha) * dy, sx, mx)
        ky = _fill_measure(indptr, indices, y, alpha, scale, (1.0 - alpha) * dx, sy, my)
        cost = np.empty((kx, ky))
        # expand from the smaller support; hub neighbourhoods are expensive
        if kx <= ky:
            token = _hop_costs(indptr, indices, sx, kx, sy, ky, stamp, hop, token, cost, False)
        else:
            token = _hop_costs(indptr, indices, sy, ky, sx, kx, stamp, hop, token, cost, True)
        c1, a = _merge_rows(cost, mx[:kx])
        c2, b = _merge_rows(np.ascontiguousarray(c1.T), my[:ky])
        reduced = np.ascontiguousarray(c2.T)
        flow, _, _, st = solve_transport(a, b, reduced)
        w1 = 0.0
        for i in range(reduced.shape[0]):
            for j in range(reduced.shape[1]):
                w1 += flow[i, j] * reduced[i, j]
        out[e] = 1.0 - w1 / scale
        status[e] = st
    return out, status


def ollivier_edge_values(g: Graph, walk=None) -> np.ndarray:
    """Edge curvatures without the connectivity check.

    An edge's value depends only on vertices within three hops, so it is the
    same whether computed on the whole graph or on the edge's component.
    """
    walk = _as_walk(walk)
    if g.m == 0:
        return np.zeros(0)
    vals, status = _ollivier_edges(g.indptr, g.indices, g.edges[:, 0].copy(),
                                   g.edges[:, 1].copy(), float(walk.idleness))
    bad = np.flatnonzero(status != OK)
    if len(bad):
        raise TransportError(f"transport solver failed on edges {bad[:5].tolist()}")
    return vals


def ollivier_edge(g: Graph, walk=None) -> EdgeCurvatureVector:
    """Ollivier-Ricci curvature of every edge of a connected graph."""
    if not is_connected(g):
        raise DisconnectedGraphError(
            "Ollivier-Ricci curvature needs a connected graph; "
            "extract the largest connected component first")
    return EdgeCurvatureVector(ollivier_edge_values(g, walk), "OLLIVIER")


def ollivier_edge_reference(g: Graph, e: int, walk=None) -> float:
    """Curvature of one edge through the general measure/W1 path (slow)."""
    x, y = (int(v) for v in g.edges[e])
    plan = wasserstein1(g, walk_measure(g, x, walk), walk_measure(g, y, walk))
    return 1.0 - plan.cost


def ollivier_vertex(g: Graph, edge_curv: EdgeCurvatureVector) -> VertexCurvatureVector:
    return vertex_sum(g, edge_curv)
