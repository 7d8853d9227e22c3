"""Seedable model networks: Erdos-Renyi, Watts-Strogatz, Barabasi-Albert and
hyperbolic random geometric graphs (zero temperature).

Every call owns a private ``numpy.random.Generator`` derived from the seed and
the family, so equal specs give byte-identical edge lists.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from typing import Optional

import numpy as np
from numba import njit

from .graph import Graph

FAMILIES = ("er", "ws", "ba", "hgg")


class SpecError(ValueError):
    """Invalid generator parameter; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class UnsupportedParameterError(SpecError):
    pass


def _rng(seed: int, family: str) -> np.random.Generator:
    return np.random.default_rng([int(seed), FAMILIES.index(family)])


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    p: Optional[float] = None
    k: Optional[float] = None
    beta: Optional[float] = None
    m: Optional[int] = None
    m0: Optional[int] = None
    gamma: Optional[float] = None
    temperature: Optional[float] = None
    seed: int = 0

    def validate(self) -> "GeneratorSpec":
        f = self.family
        if f not in FAMILIES:
            raise SpecError("family", f"must be one of {', '.join(FAMILIES)}")
        if self.n is None or self.n < 1:
            raise SpecError("n", "must be at least 1")
        if f == "er":
            if self.p is None or not 0 <= self.p <= 1:
                raise SpecError("p", "edge probability must lie in [0, 1]")
        elif f == "ws":
            if self.k is None or self.k != int(self.k) or int(self.k) % 2:
                raise SpecError("k", "must be an even integer")
            if not 0 <= self.k < self.n:
                raise SpecError("k", "must satisfy 0 <= k < n")
            if self.beta is None or not 0 <= self.beta <= 1:
                raise SpecError("beta", "rewiring probability must lie in [0, 1]")
        elif f == "ba":
            m0 = self.m if self.m0 is None else self.m0
            if self.m is None or self.m < 1:
                raise SpecError("m", "must be at least 1")
            if not self.m <= m0 < self.n:
                raise SpecError("m0", "must satisfy m <= m0 < n")
        else:
            if self.k is None or self.k <= 0:
                raise SpecError("k", "target average degree must be positive")
            if self.gamma is None or self.gamma < 2:
                raise SpecError("gamma", "must be at least 2")
            t = 0.0 if self.temperature is None else self.temperature
            if t < 0:
                raise SpecError("temperature", "must be nonnegative")
            if t != 0:
                raise UnsupportedParameterError("temperature", "only T = 0 is supported")
        return self

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return GeneratorSpec(**{**asdict(self), "seed": int(seed)})

    def to_config(self) -> str:
        """Flat ``key=value`` form, e.g. ``family=ws n=1000 k=10 beta=0.5 seed=7``."""
        parts = []
        for fl in fields(self):
            val = getattr(self, fl.name)
            if val is None:
                continue
            if isinstance(val, float) and val == int(val) and fl.name in ("k",):
                val = int(val)
            parts.append(f"{fl.name}={val}")
        return " ".join(parts)

    def label(self) -> str:
        """File-name form, e.g. ``ws_n1000_k10_beta0.5_seed7``."""
        return self.to_config().replace("family=", "", 1).replace(" ", "_").replace("=", "")

    @classmethod
    def from_config(cls, text) -> "GeneratorSpec":
        tokens = text.split() if isinstance(text, str) else list(text)
        kv = {}
        for tok in tokens:
            if "=" not in tok:
                raise SpecError(tok, "expected key=value")
            key, val = tok.split("=", 1)
            kv[key.strip().lower()] = val.strip()
        return cls.from_mapping(kv)

    @classmethod
    def from_mapping(cls, kv: dict) -> "GeneratorSpec":
        known = {f.name for f in fields(cls)}
        casts = {"family": str, "n": int, "m": int, "m0": int, "seed": int}
        out = {}
        for key, val in kv.items():
            if val is None:
                continue
            if key not in known:
                raise SpecError(key, "unknown generator parameter")
            try:
                out[key] = casts.get(key, float)(val)
            except ValueError:
                raise SpecError(key, f"cannot parse {val!r}") from None
        if "family" not in out:
            raise SpecError("family", "is required")
        if "n" not in out:
            raise SpecError("n", "is required")
        out["family"] = out["family"].lower()
        return cls(**out)


def generate_er(n: int, p: float, seed: int = 0) -> Graph:
    GeneratorSpec("er", n, p=p, seed=seed).validate()
    rng = _rng(seed, "er")
    chunks = []
    for i in range(n - 1):
        hit = np.flatnonzero(rng.random(n - i - 1) < p)
        if len(hit):
            chunks.append(np.column_stack([np.full(len(hit), i), hit + i + 1]))
    edges = np.concatenate(chunks) if chunks else np.zeros((0, 2), dtype=np.int64)
    return Graph(n, edges)


def generate_ws(n: int, k: int, beta: float, seed: int = 0) -> Graph:
    """Ring of ``n`` vertices each joined to its ``k`` nearest neighbours, then
    each lattice edge's far endpoint is rewired with probability ``beta``.

    A rewiring that would create a self-loop or a duplicate is redrawn up to
    ``n`` times before the original edge is kept, so the edge count is always
    ``n * k / 2``.
    """
    GeneratorSpec("ws", n, k=k, beta=beta, seed=seed).validate()
    k = int(k)
    rng = _rng(seed, "ws")
    adj = [set() for _ in range(n)]
    order = []
    for j in range(1, k // 2 + 1):
        for i in range(n):
            v = (i + j) % n
            adj[i].add(v)
            adj[v].add(i)
            order.append((i, v))
    edges = []
    for i, v in order:
        if beta > 0 and rng.random() < beta:
            for _ in range(n):
                w = int(rng.integers(n))
                if w != i and w not in adj[i]:
                    adj[i].discard(v)
                    adj[v].discard(i)
                    adj[i].add(w)
                    adj[w].add(i)
                    v = w
                    break
        edges.append((i, v))
    return Graph.from_edges(n, edges)


def generate_ba(n: int, m: int, m0: Optional[int] = None, seed: int = 0) -> Graph:
    """Preferential attachment grown from a complete graph on ``m0`` vertices."""
    m0 = m if m0 is None else m0
    GeneratorSpec("ba", n, m=m, m0=m0, seed=seed).validate()
    rng = _rng(seed, "ba")
    edges = [(a, b) for a in range(m0) for b in range(a + 1, m0)]
    pool = [v for e in edges for v in e]
    for t in range(m0, n):
        chosen: list[int] = []
        while len(chosen) < m:
            if pool:
                c = pool[int(rng.integers(len(pool)))]
            else:
                c = int(rng.integers(t))
            if c not in chosen:
                chosen.append(c)
        for c in chosen:
            edges.append((c, t))
            pool.extend((c, t))
    return Graph.from_edges(n, edges)


@njit(cache=True)
def _hgg_pairs(r, theta, cosh_R, count_only):
    n = len(r)
    sh = np.sinh(r)
    cnt = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = math.sin(0.5 * (theta[i] - theta[j]))
            # cosh d = cosh(r_i - r_j) + 2 sin^2(dtheta/2) sinh r_i sinh r_j, cancellation-free
            c = math.cosh(r[i] - r[j]) + 2.0 * s * s * sh[i] * sh[j]
            if c <= cosh_R:
                cnt += 1
    if count_only:
        return cnt, np.zeros((0, 2), dtype=np.int64)
    out = np.empty((cnt, 2), dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = math.sin(0.5 * (theta[i] - theta[j]))
            c = math.cosh(r[i] - r[j]) + 2.0 * s * s * sh[i] * sh[j]
            if c <= cosh_R:
                out[k, 0] = i
                out[k, 1] = j
                k += 1
    return cnt, out


def hgg_from_coordinates(r, theta, R: float) -> Graph:
    """Zero-temperature hyperbolic graph: join pairs at hyperbolic distance <= R."""
    r = np.ascontiguousarray(r, dtype=float)
    theta = np.ascontiguousarray(theta, dtype=float)
    _, edges = _hgg_pairs(r, theta, math.cosh(R), False)
    return Graph(len(r), edges)


def _radial(u: np.ndarray, alpha: float, R: float) -> np.ndarray:
    # inverse CDF of the density alpha sinh(alpha r) / (cosh(alpha R) - 1) on [0, R]
    return np.arccosh(1.0 + 2.0 * u * math.sinh(0.5 * alpha * R) ** 2) / alpha


CALIBRATION_SAMPLES = 16
_CALIBRATION_SEED = 0x5EED


@lru_cache(maxsize=64)
def hgg_radius(n: int, k_target: float, gamma: float,
               samples: int = CALIBRATION_SAMPLES) -> float:
    """Disk radius whose mean degree over a fixed calibration ensemble is ``k_target``.

    The calibration draws are common random numbers, so mean degree is a
    deterministic function of ``R`` and plain bisection applies.
    """
    alpha = (gamma - 1.0) / 2.0
    rng = np.random.default_rng([_CALIBRATION_SEED, n])
    draws = [(rng.random(n), rng.random(n) * 2 * math.pi) for _ in range(samples)]

    def mean_degree(R):
        tot = 0
        for u, th in draws:
            cnt, _ = _hgg_pairs(_radial(u, alpha, R), th, math.cosh(R), True)
            tot += cnt
        return 2.0 * tot / (n * samples)

    lo, hi = 1e-9, max(2.0 * math.log(max(n, 2)), 1.0)
    while mean_degree(hi) > k_target:
        lo, hi = hi, 2 * hi
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        kd = mean_degree(mid)
        if abs(kd - k_target) <= 1e-3 * k_target or hi - lo < 1e-12:
            return mid
        if kd > k_target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def generate_hgg(n: int, k_target: float, gamma: float = 2.0,
                 temperature: float = 0.0, seed: int = 0) -> Graph:
    GeneratorSpec("hgg", n, k=k_target, gamma=gamma, temperature=temperature,
                  seed=seed).validate()
    alpha = (gamma - 1.0) / 2.0
    R = hgg_radius(int(n), float(k_target), float(gamma))
    rng = _rng(seed, "hgg")
    u = rng.random(n)
    theta = rng.random(n) * 2 * math.pi
    return hgg_from_coordinates(_radial(u, alpha, R), theta, R)


def generate(spec: GeneratorSpec) -> Graph:
    spec.validate()
    if spec.family == "er":
        return generate_er(spec.n, spec.p, spec.seed)
    if spec.family == "ws":
        return generate_ws(spec.n, int(spec.k), spec.beta, spec.seed)
    if spec.family == "ba":
        return generate_ba(spec.n, spec.m, spec.m0, spec.seed)
    return generate_hgg(spec.n, spec.k, spec.gamma,
                        0.0 if spec.temperature is None else spec.temperature, spec.seed)
