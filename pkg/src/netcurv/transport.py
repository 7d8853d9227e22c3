"""Exact Wasserstein-1 between small discrete measures on a graph.

The transport problem is solved by the transportation simplex: Vogel's
approximation builds an initial basic feasible solution and MODI potentials
price the non-basic cells. The entering cell is the most negative reduced
cost (lowest index on ties); after a run of degenerate pivots the rule
switches to Bland's (lowest-index entering cell), so the method cannot cycle.
The leaving cell is always the lowest-index blocking cell, which makes results
reproducible bit for bit. Every solution is certified
by checking dual feasibility and a zero duality gap before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph

MASS_TOL = 1e-12
PLAN_TOL = 1e-9
_RC_TOL = 1e-9
# consecutive zero-step pivots tolerated before switching to Bland's rule
_DEGENERATE_LIMIT = 50

# solver status codes
OK = 0
NOT_CONVERGED = 1
CERTIFICATE_FAILED = 2


class TransportError(RuntimeError):
    pass


class UnreachableMassError(TransportError):
    """Some target support vertex is not reachable from the source support."""


@dataclass(frozen=True)
class SparseMeasure:
    """Probability measure with finite support on vertex ids."""

    support: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.support, dtype=np.int64)
        w = np.asarray(self.mass, dtype=float)
        if s.shape != w.shape or s.ndim != 1 or len(s) == 0:
            raise ValueError("support and mass must be equal-length nonempty vectors")
        if len(np.unique(s)) != len(s):
            raise ValueError("support entries must be distinct")
        if np.any(w <= 0):
            raise ValueError("every support mass must be positive")
        if abs(w.sum() - 1.0) > MASS_TOL:
            raise ValueError(f"masses sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "mass", w)

    @classmethod
    def point(cls, v: int) -> "SparseMeasure":
        return cls(np.array([v]), np.array([1.0]))

    def as_dict(self) -> dict[int, float]:
        return {int(v): float(w) for v, w in zip(self.support, self.mass)}


@dataclass(frozen=True)
class TransportPlan:
    rows: np.ndarray
    cols: np.ndarray
    flow: np.ndarray
    distance: np.ndarray
    cost: float


@njit(cache=True)
def _advance(order, alive, p1, p2, k):
    # first and second alive positions of line k in its cost-sorted order
    L = order.shape[1]
    a = p1[k]
    while a < L and not alive[order[k, a]]:
        a += 1
    p1[k] = a
    b = max(p2[k], a + 1)
    while b < L and not alive[order[k, b]]:
        b += 1
    p2[k] = b


@njit(cache=True)
def _vogel_start(supply, demand, cost, flow, basis):
    m, n = cost.shape
    s = supply.copy()
    d = demand.copy()
    row_alive = np.ones(m, dtype=np.bool_)
    col_alive = np.ones(n, dtype=np.bool_)
    # stable sorts: among equal costs the lowest index comes first
    row_order = np.empty((m, n), dtype=np.int64)
    for i in range(m):
        row_order[i] = np.argsort(cost[i], kind="mergesort")
    col_order = np.empty((n, m), dtype=np.int64)
    for j in range(n):
        col_order[j] = np.argsort(cost[:, j], kind="mergesort")
    rp1 = np.zeros(m, dtype=np.int64)
    rp2 = np.ones(m, dtype=np.int64)
    cp1 = np.zeros(n, dtype=np.int64)
    cp2 = np.ones(n, dtype=np.int64)
    rows_left = m
    cols_left = n
    for _ in range(m + n - 1):
        best_pen = -1.0
        best_row = True
        best = -1
        for i in range(m):
            if not row_alive[i]:
                continue
            _advance(row_order, col_alive, rp1, rp2, i)
            lo1 = cost[i, row_order[i, rp1[i]]]
            pen = cost[i, row_order[i, rp2[i]]] - lo1 if rp2[i] < n else lo1
            if pen > best_pen:
                best_pen = pen
                best_row = True
                best = i
        for j in range(n):
            if not col_alive[j]:
                continue
            _advance(col_order, row_alive, cp1, cp2, j)
            lo1 = cost[col_order[j, cp1[j]], j]
            pen = cost[col_order[j, cp2[j]], j] - lo1 if cp2[j] < m else lo1
            if pen > best_pen:
                best_pen = pen
                best_row = False
                best = j
        if best_row:
            i = best
            j = row_order[i, rp1[i]]
        else:
            j = best
            i = col_order[j, cp1[j]]
        x = min(s[i], d[j])
        flow[i, j] = x
        basis[i, j] = True
        # retire exactly one line per allocation so the basis stays a spanning tree
        if rows_left == 1:
            retire_row = False
        elif cols_left == 1:
            retire_row = True
        else:
            retire_row = s[i] <= d[j]
        if retire_row:
            row_alive[i] = False
            rows_left -= 1
            d[j] = max(d[j] - x, 0.0)
            s[i] = 0.0
        else:
            col_alive[j] = False
            cols_left -= 1
            s[i] = max(s[i] - x, 0.0)
            d[j] = 0.0


@njit(cache=True)
def _potentials(cost, basis, u, v, queue, seen):
    m, n = cost.shape
    seen[:] = False
    u[0] = 0.0
    seen[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        node = queue[head]
        head += 1
        if node < m:
            for j in range(n):
                if basis[node, j] and not seen[m + j]:
                    v[j] = cost[node, j] - u[node]
                    seen[m + j] = True
                    queue[tail] = m + j
                    tail += 1
        else:
            j = node - m
            for i in range(m):
                if basis[i, j] and not seen[i]:
                    u[i] = cost[i, j] - v[j]
                    seen[i] = True
                    queue[tail] = i
                    tail += 1


@njit(cache=True)
def _tree_path(basis, start_row, goal_col, parent, queue, seen):
    """Fill ``parent`` with a BFS tree from row ``start_row``; stop at ``goal_col``."""
    m, n = basis.shape
    seen[:] = False
    seen[start_row] = True
    parent[start_row] = -1
    queue[0] = start_row
    head = 0
    tail = 1
    goal = m + goal_col
    while head < tail:
        node = queue[head]
        head += 1
        if node == goal:
            return
        if node < m:
            for j in range(n):
                if basis[node, j] and not seen[m + j]:
                    seen[m + j] = True
                    parent[m + j] = node
                    queue[tail] = m + j
                    tail += 1
        else:
            j = node - m
            for i in range(m):
                if basis[i, j] and not seen[i]:
                    seen[i] = True
                    parent[i] = node
                    queue[tail] = i
                    tail += 1


@njit(cache=True)
def solve_transport(supply, demand, cost):
    """Minimum-cost transport plan between ``supply`` and ``demand``.

    Returns ``(flow, u, v, status)`` where ``u, v`` are optimal dual
    potentials and ``status`` is ``OK`` only when the certificate holds.
    """
    m, n = cost.shape
    flow = np.zeros((m, n))
    basis = np.zeros((m, n), dtype=np.bool_)
    u = np.zeros(m)
    v = np.zeros(n)
    queue = np.empty(m + n, dtype=np.int64)
    seen = np.empty(m + n, dtype=np.bool_)
    parent = np.empty(m + n, dtype=np.int64)
    cyc_i = np.empty(m + n, dtype=np.int64)
    cyc_j = np.empty(m + n, dtype=np.int64)

    _vogel_start(supply, demand, cost, flow, basis)
    status = NOT_CONVERGED
    max_iter = 50 * m * n + 1000
    degenerate_run = 0
    for _ in range(max_iter):
        _potentials(cost, basis, u, v, queue, seen)
        ei = -1
        ej = -1
        best = -_RC_TOL
        bland = degenerate_run >= _DEGENERATE_LIMIT
        for i in range(m):
            for j in range(n):
                if not basis[i, j]:
                    rc = cost[i, j] - u[i] - v[j]
                    if rc < best:
                        best = rc
                        ei = i
                        ej = j
                        if bland:
                            break
            if bland and ei >= 0:
                break
        if ei < 0:
            status = OK
            break
        _tree_path(basis, ei, ej, parent, queue, seen)
        # walk back from column ej to row ei; cells alternate -, +, -, ...
        k = 0
        node = m + ej
        while node != ei:
            p = parent[node]
            if node >= m:
                cyc_i[k] = p
                cyc_j[k] = node - m
            else:
                cyc_i[k] = node
                cyc_j[k] = p - m
            k += 1
            node = p
        theta = np.inf
        li = -1
        lj = -1
        for t in range(0, k, 2):
            f = flow[cyc_i[t], cyc_j[t]]
            idx = cyc_i[t] * n + cyc_j[t]
            if f < theta or (f == theta and idx < li * n + lj):
                theta = f
                li = cyc_i[t]
                lj = cyc_j[t]
        degenerate_run = degenerate_run + 1 if theta == 0.0 else 0
        flow[ei, ej] = theta
        for t in range(k):
            if t % 2 == 0:
                flow[cyc_i[t], cyc_j[t]] -= theta
            else:
                flow[cyc_i[t], cyc_j[t]] += theta
        basis[ei, ej] = True
        basis[li, lj] = False
        flow[li, lj] = 0.0

    if status == OK:
        primal = 0.0
        for i in range(m):
            for j in range(n):
                primal += flow[i, j] * cost[i, j]
        dual = 0.0
        for i in range(m):
            dual += supply[i] * u[i]
        for j in range(n):
            dual += demand[j] * v[j]
        if abs(primal - dual) > PLAN_TOL * max(1.0, abs(primal)):
            status = CERTIFICATE_FAILED
        for i in range(m):
            if abs(flow[i, :].sum() - supply[i]) > PLAN_TOL * max(1.0, supply[i]):
                status = CERTIFICATE_FAILED
        for j in range(n):
            if abs(flow[:, j].sum() - demand[j]) > PLAN_TOL * max(1.0, demand[j]):
                status = CERTIFICATE_FAILED
    return flow, u, v, status


def transport_cost(supply, demand, cost) -> float:
    """Optimal cost for dense inputs; raises if the solver cannot certify it."""
    supply = np.ascontiguousarray(supply, dtype=float)
    demand = np.ascontiguousarray(demand, dtype=float)
    cost = np.ascontiguousarray(cost, dtype=float)
    flow, _, _, status = solve_transport(supply, demand, cost)
    if status != OK:
        raise TransportError(f"transport solver failed (status {status})")
    return float((flow * cost).sum())


def support_distances(g: Graph, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Hop distances from each row vertex to each column vertex.

    One truncated BFS per row vertex, stopped as soon as every column vertex
    has been reached.
    """
    target_pos = {int(c): j for j, c in enumerate(cols)}
    out = np.empty((len(rows), len(cols)))
    indptr, indices = g.indptr, g.indices
    for i, s in enumerate(rows):
        s = int(s)
        remaining = len(target_pos)
        dist = {s: 0}
        if s in target_pos:
            out[i, target_pos[s]] = 0
            remaining -= 1
        frontier = [s]
        d = 0
        while remaining and frontier:
            d += 1
            nxt = []
            for x in frontier:
                for y in indices[indptr[x]:indptr[x + 1]]:
                    y = int(y)
                    if y not in dist:
                        dist[y] = d
                        nxt.append(y)
                        j = target_pos.get(y)
                        if j is not None:
                            out[i, j] = d
                            remaining -= 1
            frontier = nxt
        if remaining:
            raise UnreachableMassError(
                f"support vertex {s} cannot reach all target support vertices")
    return out


def wasserstein1(g: Graph, a: SparseMeasure, b: SparseMeasure) -> TransportPlan:
    """Optimal coupling of ``a`` and ``b`` under the hop-count metric of ``g``."""
    dist = support_distances(g, a.support, b.support)
    flow, _, _, status = solve_transport(a.mass, b.mass, dist)
    if status != OK:
        raise TransportError(f"transport solver failed (status {status})")
    return TransportPlan(a.support, b.support, flow, dist, float((flow * dist).sum()))
