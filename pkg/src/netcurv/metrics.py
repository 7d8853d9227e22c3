"""Classical edge and vertex measures, and the per-network metric table.

Edge columns: ``OR``, ``FR``, ``AFR``, ``EBC`` (edge betweenness), ``EMB``
(embeddedness), ``DIS`` (dispersion). Vertex columns: ``OR``, ``FR``, ``AFR``,
``DEG``, ``BC`` (betweenness), ``CC`` (clustering coefficient). Curvature
vertex columns are sums over incident edges.

Betweenness is left unnormalised: each unordered vertex pair contributes
once, split over its shortest paths.
"""

from __future__ import annotations

import csv
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
from numba import njit

from .forman import augmented_forman_edge, forman_edge
from .graph import Graph, triangle_counts
from .ollivier import ollivier_edge

log = logging.getLogger(__name__)

EDGE_METRICS = ("OR", "FR", "AFR", "EBC", "EMB", "DIS")
VERTEX_METRICS = ("OR", "FR", "AFR", "DEG", "BC", "CC")
BETWEENNESS_CONVENTION = "raw, unordered pairs"


@njit(cache=True)
def _brandes(indptr, indices, adj_eid, n, m):
    vb = np.zeros(n)
    eb = np.zeros(m)
    sigma = np.zeros(n)
    dist = np.full(n, -1, dtype=np.int64)
    delta = np.zeros(n)
    stack = np.empty(n, dtype=np.int64)
    for s in range(n):
        sigma[:] = 0.0
        dist[:] = -1
        delta[:] = 0.0
        sigma[s] = 1.0
        dist[s] = 0
        stack[0] = s
        head = 0
        tail = 1
        # stack doubles as the BFS queue: vertices end up in nondecreasing distance
        while head < tail:
            v = stack[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    stack[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        for t in range(tail - 1, 0, -1):
            w = stack[t]
            for p in range(indptr[w], indptr[w + 1]):
                v = indices[p]
                if dist[v] == dist[w] - 1:
                    c = sigma[v] / sigma[w] * (1.0 + delta[w])
                    eb[adj_eid[p]] += c
                    delta[v] += c
            vb[w] += delta[w]
    return vb / 2.0, eb / 2.0


def betweenness(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Vertex and edge betweenness in one all-source sweep."""
    if g.n == 0:
        return np.zeros(0), np.zeros(0)
    return _brandes(g.indptr, g.indices, g.adj_eid, g.n, g.m)


def edge_betweenness(g: Graph) -> np.ndarray:
    return betweenness(g)[1]


def vertex_betweenness(g: Graph) -> np.ndarray:
    return betweenness(g)[0]


def embeddedness(g: Graph) -> np.ndarray:
    """Common neighbours of each edge's endpoints (= triangles through it)."""
    return triangle_counts(g)


@njit(cache=True)
def _is_adjacent(indptr, indices, a, b):
    lo = indptr[a]
    hi = indptr[a + 1]
    while lo < hi:
        mid = (lo + hi) // 2
        if indices[mid] < b:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[a + 1] and indices[lo] == b


@njit(cache=True)
def _dispersion(indptr, indices, eu, ev, n, normalize, ego):
    out = np.zeros(len(eu))
    in_c = np.full(n, -1, dtype=np.int64)
    in_nu = np.full(n, -1, dtype=np.int64)
    common = np.empty(n, dtype=np.int64)
    for e in range(len(eu)):
        u, v = eu[e], ev[e]
        for p in range(indptr[u], indptr[u + 1]):
            in_nu[indices[p]] = e
        in_nu[v] = -1
        a, a_end = indptr[u], indptr[u + 1]
        b, b_end = indptr[v], indptr[v + 1]
        k = 0
        while a < a_end and b < b_end:
            x, y = indices[a], indices[b]
            if x == y:
                common[k] = x
                in_c[x] = e
                k += 1
                a += 1
                b += 1
            elif x < y:
                a += 1
            else:
                b += 1
        # witnesses for a short s-t path: the ego network of u, or C only
        mark = in_nu if ego else in_c
        total = 0.0
        for i in range(k):
            s = common[i]
            for j in range(i + 1, k):
                t = common[j]
                if _is_adjacent(indptr, indices, s, t):
                    continue
                shared = False
                for p in range(indptr[s], indptr[s + 1]):
                    w = indices[p]
                    if mark[w] == e and _is_adjacent(indptr, indices, t, w):
                        shared = True
                        break
                if not shared:
                    total += 1.0
        if normalize and k > 0:
            total /= k
        out[e] = total
    return out


def dispersion(g: Graph, normalize: bool = False, neighborhood: str = "ego") -> np.ndarray:
    """Dispersion with the binary distance of Backstrom and Kleinberg.

    For edge ``(u, v)`` (``u`` the lower label) with common neighbourhood
    ``C``, counts the pairs ``{s, t}`` in ``C`` that are not adjacent and have
    no common neighbour in the ego network of ``u`` other than ``u`` and
    ``v``. ``neighborhood="common"`` only accepts common neighbours inside
    ``C``, which makes the value symmetric in ``u`` and ``v``. With
    ``normalize`` the count is divided by ``|C|``.
    """
    if neighborhood not in ("ego", "common"):
        raise ValueError("neighborhood must be 'ego' or 'common'")
    if g.m == 0:
        return np.zeros(0)
    return _dispersion(g.indptr, g.indices, g.edges[:, 0].copy(), g.edges[:, 1].copy(),
                       g.n, normalize, neighborhood == "ego")


def degree_column(g: Graph) -> np.ndarray:
    return g.degree.astype(np.int64)


def clustering_coefficient(g: Graph) -> np.ndarray:
    links = np.zeros(g.n)
    tri = triangle_counts(g)
    np.add.at(links, g.edges[:, 0], tri)
    np.add.at(links, g.edges[:, 1], tri)
    links /= 2.0
    deg = g.degree.astype(float)
    out = np.zeros(g.n)
    ok = deg >= 2
    out[ok] = 2.0 * links[ok] / (deg[ok] * (deg[ok] - 1.0))
    return out


@dataclass
class MetricTable:
    network_id: str
    edge_labels: np.ndarray
    vertex_labels: np.ndarray
    edge_columns: dict[str, np.ndarray] = field(default_factory=dict)
    vertex_columns: dict[str, np.ndarray] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    meta: dict[str, str] = field(default_factory=dict)

    def add_edge_column(self, name: str, values) -> None:
        self._add(self.edge_columns, len(self.edge_labels), name, values)

    def add_vertex_column(self, name: str, values) -> None:
        self._add(self.vertex_columns, len(self.vertex_labels), name, values)

    @staticmethod
    def _add(cols, length, name, values):
        values = np.asarray(values)
        if name in cols:
            raise ValueError(f"duplicate column {name!r}")
        if len(values) != length:
            raise ValueError(f"column {name!r} has {len(values)} rows, expected {length}")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"column {name!r} has non-finite values")
        cols[name] = values

    def to_csv(self, out_dir) -> tuple[Path, Path]:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        ep = out_dir / f"{self.network_id}_edges.csv"
        vp = out_dir / f"{self.network_id}_vertices.csv"
        with open(ep, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["u", "v", *self.edge_columns])
            for r, (u, v) in enumerate(self.edge_labels):
                w.writerow([u, v, *(_fmt(c[r]) for c in self.edge_columns.values())])
        with open(vp, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["vertex", *self.vertex_columns])
            for r, x in enumerate(self.vertex_labels):
                w.writerow([x, *(_fmt(c[r]) for c in self.vertex_columns.values())])
        return ep, vp


def _fmt(x) -> str:
    if isinstance(x, (np.integer, int)):
        return str(int(x))
    return repr(float(x))


def _vertex_sum(g: Graph, vals: np.ndarray) -> np.ndarray:
    out = np.zeros(g.n, dtype=vals.dtype)
    np.add.at(out, g.edges[:, 0], vals)
    np.add.at(out, g.edges[:, 1], vals)
    return out


def compute_metrics(g: Graph, edge_metrics: Iterable[str] = EDGE_METRICS,
                    vertex_metrics: Iterable[str] = VERTEX_METRICS,
                    idleness: float = 0.5, network_id: str = "network",
                    normalize_dispersion: bool = False) -> MetricTable:
    """Compute the requested columns on ``g`` (which should already be an LCC
    whenever ``OR`` is requested). Wall-clock seconds per metric are kept in
    ``table.timings``."""
    edge_metrics = [m.upper() for m in edge_metrics]
    vertex_metrics = [m.upper() for m in vertex_metrics]
    for name in edge_metrics:
        if name not in EDGE_METRICS:
            raise ValueError(f"unknown edge metric {name!r}")
    for name in vertex_metrics:
        if name not in VERTEX_METRICS:
            raise ValueError(f"unknown vertex metric {name!r}")

    table = MetricTable(network_id, g.edge_labels(), g.labels.copy(),
                        meta={"betweenness": BETWEENNESS_CONVENTION,
                              "idleness": repr(idleness)})
    cache: dict[str, np.ndarray] = {}

    def timed(key, fn):
        if key not in cache:
            t0 = time.perf_counter()
            cache[key] = fn()
            table.timings[key] = time.perf_counter() - t0
        return cache[key]

    curv = {
        "OR": lambda: ollivier_edge(g, idleness).values,
        "FR": lambda: forman_edge(g).values,
        "AFR": lambda: augmented_forman_edge(g).values,
    }
    between: Optional[tuple] = None

    def brandes():
        nonlocal between
        if between is None:
            between = betweenness(g)
        return between

    edge_fns = {
        **curv,
        "EBC": lambda: brandes()[1],
        "EMB": lambda: embeddedness(g),
        "DIS": lambda: dispersion(g, normalize_dispersion),
    }
    vertex_fns = {
        "DEG": lambda: degree_column(g),
        "BC": lambda: brandes()[0],
        "CC": lambda: clustering_coefficient(g),
    }
    for name in edge_metrics:
        table.add_edge_column(name, timed(name, edge_fns[name]))
    for name in vertex_metrics:
        if name in curv:
            table.add_vertex_column(name, _vertex_sum(g, timed(name, curv[name])))
        else:
            table.add_vertex_column(name, timed(name, vertex_fns[name]))
    return table
