"""Immutable undirected simple graphs stored as CSR adjacency.

Vertices are dense integers ``0..n-1``. Each edge ``(u, v)`` is stored once
with ``u < v``; edges are sorted lexicographically so that an edge id is
simply its row in :attr:`Graph.edges`. The original vertex labels of loaded
files are kept in :attr:`Graph.labels`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
from numba import njit
from scipy.sparse import csr_array
from scipy.sparse.csgraph import connected_components


class GraphError(ValueError):
    """Raised for malformed graph input or invalid weights."""


@dataclass(frozen=True)
class LoadReport:
    duplicates: int = 0
    self_loops: int = 0


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Undirected simple graph with optional positive vertex and edge weights.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : array_like of shape (m, 2)
        Canonical edge list: ``u < v``, no duplicates. Order is normalised to
        lexicographic on construction.
    vertex_weight, edge_weight : array_like, optional
        Strictly positive weights; default 1. ``edge_weight`` is given in the
        same order as ``edges``.
    labels : array_like, optional
        Original vertex ids, one per dense vertex.
    """

    __slots__ = (
        "n", "edges", "vertex_weight", "edge_weight", "labels",
        "indptr", "indices", "adj_eid", "load_report", "_unit",
    )

    def __init__(self, n, edges, vertex_weight=None, edge_weight=None,
                 labels=None, load_report: Optional[LoadReport] = None):
        n = int(n)
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise GraphError("edge endpoint out of range")
            if np.any(e[:, 0] >= e[:, 1]):
                raise GraphError("edges must satisfy u < v (no self-loops)")
        order = np.lexsort((e[:, 1], e[:, 0]))
        e = e[order]
        if len(e) > 1 and np.any(np.all(e[1:] == e[:-1], axis=1)):
            raise GraphError("duplicate edge")

        if edge_weight is None:
            ew = np.ones(len(e))
        else:
            ew = np.asarray(edge_weight, dtype=float)[order]
        vw = np.ones(n) if vertex_weight is None else np.asarray(vertex_weight, dtype=float).copy()
        if ew.shape != (len(e),) or vw.shape != (n,):
            raise GraphError("weight arrays have the wrong length")
        if np.any(~(ew > 0)) or np.any(~(vw > 0)):
            raise GraphError("weights must be strictly positive")

        m = len(e)
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        eid = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)

        self.n = n
        self.edges = _frozen(e)
        self.vertex_weight = _frozen(vw)
        self.edge_weight = _frozen(ew)
        self.labels = _frozen(np.arange(n, dtype=np.int64) if labels is None
                              else np.asarray(labels, dtype=np.int64).copy())
        self.indptr = _frozen(indptr)
        self.indices = _frozen(np.ascontiguousarray(dst[order]))
        self.adj_eid = _frozen(np.ascontiguousarray(eid[order]))
        self.load_report = load_report or LoadReport()
        self._unit = bool(np.all(ew == 1.0) and np.all(vw == 1.0))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_unit_weighted(self) -> bool:
        return self._unit

    @property
    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edge_id(self, u: int, v: int) -> int:
        """Edge id of ``{u, v}``; raises ``KeyError`` if absent."""
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        if k < len(nb) and nb[k] == v:
            return int(self.adj_eid[self.indptr[u] + k])
        raise KeyError((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < len(nb) and nb[k] == v)

    def edge_labels(self) -> np.ndarray:
        """Edge endpoints expressed in original vertex labels."""
        return self.labels[self.edges]

    def with_weights(self, vertex_weight=None, edge_weight=None) -> "Graph":
        return Graph(self.n, self.edges, vertex_weight, edge_weight, self.labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable) -> "Graph":
        """Build a graph on exactly ``n`` vertices from already-clean pairs.

        Pairs may be given in either orientation; they must be simple.
        """
        e = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs,
                       dtype=np.int64).reshape(-1, 2)
        return cls(n, np.sort(e, axis=1))


def from_edge_list(pairs: Iterable) -> Graph:
    """Build a graph from raw ``(u, v)`` pairs with arbitrary nonnegative ids.

    Self-loops and repeated edges are dropped and counted in
    ``g.load_report``; ids are relabelled to ``0..n-1`` in increasing order
    of original id and kept in ``g.labels``.
    """
    raw = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs,
                     dtype=np.int64).reshape(-1, 2)
    if len(raw) and raw.min() < 0:
        raise GraphError("vertex ids must be nonnegative")
    loops = raw[:, 0] == raw[:, 1]
    labels = np.unique(raw)
    clean = np.sort(raw[~loops], axis=1)
    uniq = np.unique(clean, axis=0) if len(clean) else clean
    dense = np.searchsorted(labels, uniq)
    report = LoadReport(duplicates=int(len(clean) - len(uniq)), self_loops=int(loops.sum()))
    return Graph(len(labels), dense, labels=labels, load_report=report)


def induced_subgraph(g: Graph, keep: np.ndarray) -> Graph:
    """Subgraph induced by the sorted vertex array ``keep``."""
    keep = np.asarray(keep, dtype=np.int64)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    mask = (remap[g.edges[:, 0]] >= 0) & (remap[g.edges[:, 1]] >= 0)
    return Graph(len(keep), remap[g.edges[mask]], g.vertex_weight[keep],
                 g.edge_weight[mask], g.labels[keep])


def components(g: Graph) -> tuple[int, np.ndarray]:
    """Number of connected components and per-vertex component label."""
    if g.n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    a = csr_array((np.ones(len(g.indices)), g.indices, g.indptr), shape=(g.n, g.n))
    k, lab = connected_components(a, directed=False)
    return int(k), lab


def is_connected(g: Graph) -> bool:
    return components(g)[0] <= 1


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component.

    Ties go to the component holding the smallest original vertex label.
    A connected graph is returned unchanged.
    """
    k, lab = components(g)
    if k <= 1:
        return g
    sizes = np.bincount(lab, minlength=k)
    min_label = np.full(k, np.iinfo(np.int64).max)
    np.minimum.at(min_label, lab, g.labels)
    best = min(range(k), key=lambda c: (-sizes[c], min_label[c]))
    return induced_subgraph(g, np.flatnonzero(lab == best))


@njit(cache=True)
def _edge_triangles(indptr, indices, eu, ev):
    out = np.zeros(len(eu), dtype=np.int64)
    for e in range(len(eu)):
        a, a_end = indptr[eu[e]], indptr[eu[e] + 1]
        b, b_end = indptr[ev[e]], indptr[ev[e] + 1]
        c = 0
        while a < a_end and b < b_end:
            x, y = indices[a], indices[b]
            if x == y:
                c += 1
                a += 1
                b += 1
            elif x < y:
                a += 1
            else:
                b += 1
        out[e] = c
    return out


def triangle_counts(g: Graph) -> np.ndarray:
    """Number of triangles through every edge, indexed by edge id."""
    if g.m == 0:
        return np.zeros(0, dtype=np.int64)
    return _edge_triangles(g.indptr, g.indices, g.edges[:, 0].copy(), g.edges[:, 1].copy())


def triangles_through_edge(g: Graph, e: int) -> int:
    if not 0 <= e < g.m:
        raise IndexError(f"edge id {e} out of range")
    u, v = g.edges[e]
    return len(np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True))


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles as sorted vertex triples ``a < b < c``."""
    out = []
    for u, v in g.edges:
        for w in np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True):
            if w > v:
                out.append((int(u), int(v), int(w)))
    return out


def bfs_distances(g: Graph, source: int, cutoff: Optional[int] = None) -> dict[int, int]:
    """Hop distances from ``source`` to every vertex reachable within ``cutoff``."""
    if not 0 <= source < g.n:
        raise IndexError(f"vertex {source} not in graph")
    dist = {int(source): 0}
    queue = deque([int(source)])
    indptr, indices = g.indptr, g.indices
    while queue:
        x = queue.popleft()
        d = dist[x]
        if cutoff is not None and d >= cutoff:
            continue
        for y in indices[indptr[x]:indptr[x + 1]]:
            y = int(y)
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def read_edge_list(path) -> Graph:
    """Read a whitespace-separated edge list.

    Lines starting with ``%`` or ``#`` are comments; columns past the second
    (weights, timestamps) are ignored, so KONECT files load unchanged.
    """
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s[0] in "%#":
                continue
            tok = s.split()
            if len(tok) < 2:
                raise GraphError(f"{path}:{lineno}: expected two vertex ids")
            try:
                pairs.append((int(tok[0]), int(tok[1])))
            except ValueError:
                raise GraphError(f"{path}:{lineno}: non-integer vertex id") from None
    return from_edge_list(pairs)


def write_edge_list(g: Graph, path, header: Iterable[str] = ()) -> None:
    """Write ``u v`` lines in original labels after a ``% n m`` header."""
    path = Path(path)
    with open(path, "w") as fh:
        for line in header:
            fh.write(f"% {line}\n")
        fh.write(f"% {g.n} {g.m}\n")
        for u, v in g.edge_labels():
            fh.write(f"{u} {v}\n")


def bundled_fixture(name: str) -> Path:
    """Path of a small network shipped with the package (e.g. ``"zachary"``)."""
    p = Path(__file__).parent / "data" / f"{name}.edges"
    if not p.exists():
        raise FileNotFoundError(p)
    return p
