"""Containers shared by the curvature modules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

KINDS = ("FORMAN", "AUGMENTED_FORMAN", "OLLIVIER")


@dataclass(frozen=True)
class EdgeCurvatureVector:
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curvature kind {self.kind!r}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("curvature values must be finite")

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class VertexCurvatureVector:
    values: np.ndarray
    kind: str

    def __len__(self):
        return len(self.values)


def vertex_sum(g: Graph, edge_curv: EdgeCurvatureVector) -> VertexCurvatureVector:
    """Scalar curvature: sum of incident edge curvatures (0 when isolated)."""
    vals = np.asarray(edge_curv.values)
    if len(vals) != g.m:
        raise ValueError(f"edge curvature has {len(vals)} entries, graph has {g.m} edges")
    out = np.zeros(g.n, dtype=vals.dtype)
    np.add.at(out, g.edges[:, 0], vals)
    np.add.at(out, g.edges[:, 1], vals)
    return VertexCurvatureVector(out, edge_curv.kind)
