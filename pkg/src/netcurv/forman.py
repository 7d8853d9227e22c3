"""Forman-Ricci curvature of edges, plain and augmented with triangle faces.

On unit weights the plain curvature is ``4 - deg(u) - deg(v)`` and the
augmented one adds ``3`` per triangle through the edge; both are returned as
exact integers. Weighted graphs go through the full cell-complex formulas in
floating point.
"""

from __future__ import annotations

import math
from typing import Mapping, Optional

import numpy as np
from numba import njit

from .curvature import EdgeCurvatureVector, VertexCurvatureVector, vertex_sum
from .graph import Graph, triangle_counts


@njit(cache=True)
def _forman_weighted(indptr, indices, adj_eid, eu, ev, ew, vw):
    out = np.empty(len(eu))
    for e in range(len(eu)):
        v1 = eu[e]
        v2 = ev[e]
        we = ew[e]
        acc = vw[v1] / we + vw[v2] / we
        for p in range(indptr[v1], indptr[v1 + 1]):
            f = adj_eid[p]
            if f != e:
                acc -= vw[v1] / math.sqrt(we * ew[f])
        for p in range(indptr[v2], indptr[v2 + 1]):
            f = adj_eid[p]
            if f != e:
                acc -= vw[v2] / math.sqrt(we * ew[f])
        out[e] = we * acc
    return out


def forman_edge_weighted(g: Graph) -> EdgeCurvatureVector:
    """Weighted Forman curvature, evaluated term by term in floating point."""
    if g.m == 0:
        return EdgeCurvatureVector(np.zeros(0), "FORMAN")
    vals = _forman_weighted(g.indptr, g.indices, g.adj_eid, g.edges[:, 0].copy(),
                            g.edges[:, 1].copy(), np.asarray(g.edge_weight),
                            np.asarray(g.vertex_weight))
    return EdgeCurvatureVector(vals, "FORMAN")


def forman_edge(g: Graph) -> EdgeCurvatureVector:
    if not g.is_unit_weighted:
        return forman_edge_weighted(g)
    deg = g.degree
    vals = 4 - deg[g.edges[:, 0]] - deg[g.edges[:, 1]]
    return EdgeCurvatureVector(vals.astype(np.int64), "FORMAN")


def _face_key(a, b, c):
    return tuple(sorted((int(a), int(b), int(c))))


def augmented_forman_cellular(g: Graph,
                              face_weights: Optional[Mapping[tuple, float]] = None
                              ) -> EdgeCurvatureVector:
    """Augmented Forman curvature on the 2-complex whose faces are all triangles.

    Two distinct edges are parallel when they share a vertex or a face but
    not both. ``face_weights`` maps sorted vertex triples to weights; missing
    faces weigh 1.
    """
    fw = face_weights or {}
    ew = g.edge_weight
    vw = g.vertex_weight
    out = np.empty(g.m)
    for e, (u, v) in enumerate(g.edges):
        u, v = int(u), int(v)
        we = ew[e]
        apex = np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True)
        faces = {_face_key(u, v, w): fw.get(_face_key(u, v, w), 1.0) for w in apex}
        head = sum(we / wf for wf in faces.values()) + vw[u] / we + vw[v] / we

        tail = 0.0
        for shared in (u, v):
            lo, hi = g.indptr[shared], g.indptr[shared + 1]
            for w, f in zip(g.indices[lo:hi], g.adj_eid[lo:hi]):
                if f == e:
                    continue
                w_hat = ew[f]
                common_faces = [wt for key, wt in faces.items() if int(w) in key]
                # distinct edges of a simple graph share at most one vertex
                common_vertices = [vw[shared]]
                if common_faces and common_vertices:
                    continue
                s = math.sqrt(we * w_hat)
                tail += abs(sum(s / wf for wf in common_faces)
                            - sum(wv / s for wv in common_vertices))
        out[e] = we * (head - tail)
    return EdgeCurvatureVector(out, "AUGMENTED_FORMAN")


def augmented_forman_edge(g: Graph,
                          face_weights: Optional[Mapping[tuple, float]] = None
                          ) -> EdgeCurvatureVector:
    if g.is_unit_weighted and not face_weights:
        vals = forman_edge(g).values + 3 * triangle_counts(g)
        return EdgeCurvatureVector(vals.astype(np.int64), "AUGMENTED_FORMAN")
    return augmented_forman_cellular(g, face_weights)


def forman_vertex(g: Graph, edge_curv: EdgeCurvatureVector) -> VertexCurvatureVector:
    return vertex_sum(g, edge_curv)
