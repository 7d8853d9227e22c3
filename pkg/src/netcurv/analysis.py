"""Correlation between metric columns, on single networks and generator ensembles."""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .generators import GeneratorSpec, generate
from .graph import Graph, largest_connected_component
from .metrics import EDGE_METRICS, VERTEX_METRICS, MetricTable, compute_metrics


class UndefinedCorrelation(ValueError):
    """A column has zero variance, so no correlation coefficient exists."""


def _check(xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("columns must be 1-d and of equal length")
    if len(xs) < 2:
        raise UndefinedCorrelation("need at least two observations")
    return xs, ys


def pearson(xs, ys) -> float:
    xs, ys = _check(xs, ys)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0 or np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise UndefinedCorrelation("zero variance column")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def spearman(xs, ys) -> float:
    """Pearson correlation of average ranks."""
    xs, ys = _check(xs, ys)
    return pearson(rankdata(xs, method="average"), rankdata(ys, method="average"))


@dataclass(frozen=True)
class MetricPair:
    scope: str  # "edge" or "vertex"
    a: str
    b: str

    def __post_init__(self):
        allowed = EDGE_METRICS if self.scope == "edge" else VERTEX_METRICS
        if self.scope not in ("edge", "vertex"):
            raise ValueError(f"scope must be edge or vertex, got {self.scope!r}")
        for name in (self.a, self.b):
            if name not in allowed:
                raise ValueError(f"unknown {self.scope} metric {name!r}")

    @property
    def name(self) -> str:
        return f"{self.a}~{self.b}"


def curvature_pairs() -> list[MetricPair]:
    """OR against FR and AFR, on edges and on vertices."""
    return [MetricPair(s, "OR", b) for s in ("edge", "vertex") for b in ("FR", "AFR")]


def classic_pairs() -> list[MetricPair]:
    out = []
    for a in ("OR", "FR", "AFR"):
        out += [MetricPair("edge", a, b) for b in ("EBC", "EMB", "DIS")]
        out += [MetricPair("vertex", a, b) for b in ("DEG", "BC", "CC")]
    return out


def default_pairs() -> list[MetricPair]:
    return curvature_pairs() + classic_pairs()


@dataclass
class CorrelationRow:
    scope: str
    a: str
    b: str
    pearson: Optional[float]
    spearman: Optional[float]
    size: float
    samples: int = 1
    excluded: int = 0


@dataclass
class CorrelationReport:
    network_id: str
    rows: list[CorrelationRow] = field(default_factory=list)

    def get(self, scope: str, a: str, b: str) -> CorrelationRow:
        for r in self.rows:
            if (r.scope, r.a, r.b) == (scope, a, b):
                return r
        raise KeyError((scope, a, b))

    def to_csv(self, path) -> Path:
        path = Path(path)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["network", "scope", "a", "b", "pearson", "spearman",
                        "size", "samples", "excluded"])
            for r in self.rows:
                w.writerow([self.network_id, r.scope, r.a, r.b, _na(r.pearson),
                            _na(r.spearman), repr(r.size), r.samples, r.excluded])
        return path

    def to_json(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps({"network": self.network_id,
                                    "pairs": [asdict(r) for r in self.rows]},
                                   indent=2) + "\n")
        return path

    def render(self) -> str:
        lines = [f"{self.network_id}",
                 f"  {'scope':<7}{'pair':<10}{'spearman':>9}{'pearson':>9}"]
        for r in self.rows:
            lines.append(f"  {r.scope:<7}{r.a + '~' + r.b:<10}"
                         f"{_round(r.spearman):>9}{_round(r.pearson):>9}")
        return "\n".join(lines)


def _na(x) -> str:
    return "NA" if x is None else repr(float(x))


def _round(x) -> str:
    return "NA" if x is None else f"{x:.2f}"


def _coef(fn, xs, ys) -> Optional[float]:
    try:
        return fn(xs, ys)
    except UndefinedCorrelation:
        return None


def _needed(pairs: Sequence[MetricPair]) -> tuple[list[str], list[str]]:
    edge = sorted({m for p in pairs if p.scope == "edge" for m in (p.a, p.b)},
                  key=EDGE_METRICS.index)
    vertex = sorted({m for p in pairs if p.scope == "vertex" for m in (p.a, p.b)},
                    key=VERTEX_METRICS.index)
    return edge, vertex


def correlate_table(table: MetricTable, pairs: Sequence[MetricPair]) -> CorrelationReport:
    rep = CorrelationReport(table.network_id)
    for p in pairs:
        cols = table.edge_columns if p.scope == "edge" else table.vertex_columns
        xs, ys = cols[p.a], cols[p.b]
        pe = _coef(pearson, xs, ys)
        sp = _coef(spearman, xs, ys)
        rep.rows.append(CorrelationRow(p.scope, p.a, p.b, pe, sp, float(len(xs)),
                                       excluded=int(sp is None)))
    return rep


def correlate_graph(g: Graph, pairs: Sequence[MetricPair] = None, idleness: float = 0.5,
                    network_id: str = "network") -> CorrelationReport:
    """Correlations on the largest connected component of ``g``."""
    pairs = list(pairs or default_pairs())
    edge, vertex = _needed(pairs)
    lcc = largest_connected_component(g)
    table = compute_metrics(lcc, edge, vertex, idleness, network_id)
    return correlate_table(table, pairs)


def _sample(args):
    spec, pairs, idleness = args
    return correlate_graph(generate(spec), pairs, idleness, spec.label())


def ensemble_reports(spec: GeneratorSpec, samples: int, pairs: Sequence[MetricPair] = None,
                     idleness: float = 0.5, threads: Optional[int] = None
                     ) -> list[CorrelationReport]:
    """One report per ensemble member; member ``i`` uses seed ``spec.seed + i``."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    spec.validate()
    pairs = list(pairs or default_pairs())
    jobs = [(spec.with_seed(spec.seed + i), pairs, idleness) for i in range(samples)]
    threads = threads or os.cpu_count() or 1
    if threads <= 1 or samples == 1:
        return [_sample(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(threads, samples)) as pool:
        return list(pool.map(_sample, jobs))


def aggregate(reports: Sequence[CorrelationReport], network_id: str) -> CorrelationReport:
    """Mean coefficients per pair; NA samples are dropped and counted."""
    out = CorrelationReport(network_id)
    for k, row in enumerate(reports[0].rows):
        col = [r.rows[k] for r in reports]
        sp = [c.spearman for c in col if c.spearman is not None]
        pe = [c.pearson for c in col if c.pearson is not None]
        out.rows.append(CorrelationRow(
            row.scope, row.a, row.b,
            float(np.mean(pe)) if pe else None,
            float(np.mean(sp)) if sp else None,
            float(np.mean([c.size for c in col])),
            samples=len(col), excluded=len(col) - len(sp)))
    return out


def ensemble_correlate(spec: GeneratorSpec, samples: int, pairs: Sequence[MetricPair] = None,
                       idleness: float = 0.5, threads: Optional[int] = None
                       ) -> CorrelationReport:
    reports = ensemble_reports(spec, samples, pairs, idleness, threads)
    return aggregate(reports, spec.with_seed(spec.seed).label())
