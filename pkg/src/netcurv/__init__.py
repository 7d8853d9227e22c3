"""Ollivier-Ricci and Forman-Ricci curvature of complex networks, with the
classic edge and vertex measures they are compared against."""

from .analysis import (CorrelationReport, MetricPair, UndefinedCorrelation, correlate_graph,
                       default_pairs, ensemble_correlate, pearson, spearman)
from .curvature import EdgeCurvatureVector, VertexCurvatureVector
from .forman import augmented_forman_edge, forman_edge, forman_vertex
from .generators import GeneratorSpec, SpecError, UnsupportedParameterError, generate
from .graph import (Graph, GraphError, bundled_fixture, from_edge_list,
                    largest_connected_component, read_edge_list, triangles_through_edge)
from .metrics import (MetricTable, betweenness, clustering_coefficient, compute_metrics,
                      dispersion, embeddedness)
from .ollivier import DisconnectedGraphError, WalkKind, ollivier_edge, ollivier_vertex
from .robustness import RemovalCurve, communication_efficiency, removal_experiment
from .transport import SparseMeasure, TransportPlan, wasserstein1

__version__ = "0.1.0"
