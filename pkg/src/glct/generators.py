"""Deterministic construction of the eight-graph benchmark corpus.

Target nonzero counts follow the corpus descriptions, reading "vertices"
as nonzero adjacency entries (twice the undirected edge count): that
reading matches the deterministic kinds exactly (path 50 -> 98, comet
60 -> 118). Random kinds are tuned to land within +-10% of their targets
and are re-seeded (bounded retries) until connected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .errors import InvalidSpec
from .graph import Graph

KINDS = (
    "random_regular_knn",
    "spiral",
    "community",
    "sphere",
    "sensor",
    "swiss_roll",
    "comet",
    "path",
)

_MAX_CONNECT_RETRIES = 50

# Tuning constants fixed against the corpus nonzero targets.
_SPIRAL_TURNS = 4
_SPIRAL_K = 5          # 160 nodes -> 1016 nonzeros (target 930 +-10%)
_SPHERE_K = 11         # 280 nodes -> ~3194 nonzeros (target 3182 +-10%)
_COMMUNITY_RADIUS = 0.128  # 440 nodes -> ~8800 nonzeros (target 8774 +-10%)
_SENSOR_RADIUS = 0.1       # 260 nodes -> ~1850 nonzeros (target 1854 +-10%)
_SWISS_ROLL_K = 6      # 200 nodes -> ~1450 nonzeros (target 1444 +-10%)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown graph kind {self.kind!r}")
        if self.n < 2:
            raise InvalidSpec(f"need at least 2 nodes, got {self.n}")


# Per-graph corpus defaults: ids x1..x8 with the corpus node counts.
CORPUS_SPECS = {
    "x1": GeneratorSpec("random_regular_knn", 260, seed=101, params={"k": 3}),
    "x2": GeneratorSpec("spiral", 160, seed=102),
    "x3": GeneratorSpec("community", 440, seed=103),
    "x4": GeneratorSpec("sphere", 280, seed=104),
    "x5": GeneratorSpec("sensor", 260, seed=105),
    "x6": GeneratorSpec("swiss_roll", 200, seed=106),
    "x7": GeneratorSpec("comet", 60, seed=107, params={"star_degree": 30}),
    "x8": GeneratorSpec("path", 50, seed=108),
}

# Nonzero-count targets for the random kinds (+-10% acceptance band).
NNZ_TARGETS = {
    "spiral": 930,
    "community": 8774,
    "sphere": 3182,
    "sensor": 1854,
    "swiss_roll": 1444,
}


def _knn_adjacency(points: np.ndarray, k: int) -> np.ndarray:
    """Symmetric 0/1 adjacency from k nearest neighbors (union rule)."""
    n = points.shape[0]
    if k >= n:
        raise InvalidSpec(f"k = {k} must be smaller than n = {n}")
    _, idx = cKDTree(points).query(points, k=k + 1)
    a = np.zeros((n, n))
    rows = np.repeat(np.arange(n), k)
    cols = idx[:, 1:].ravel()
    a[rows, cols] = 1.0
    a[cols, rows] = 1.0
    return a


def _radius_adjacency(points: np.ndarray, radius: float) -> np.ndarray:
    n = points.shape[0]
    a = np.zeros((n, n))
    for i, j in cKDTree(points).query_pairs(radius):
        a[i, j] = a[j, i] = 1.0
    return a


def _is_connected(a: np.ndarray) -> bool:
    return connected_components(csr_matrix(a))[0] == 1


def _path_adjacency(n: int) -> np.ndarray:
    a = np.zeros((n, n))
    idx = np.arange(n - 1)
    a[idx, idx + 1] = 1.0
    a[idx + 1, idx] = 1.0
    return a


def _comet(n: int, star_degree: int) -> tuple[np.ndarray, np.ndarray]:
    # Path of n - star_degree nodes with star_degree leaves on its last node.
    body = n - star_degree
    if body < 1:
        raise InvalidSpec(f"star_degree {star_degree} too large for n = {n}")
    a = np.zeros((n, n))
    idx = np.arange(body - 1)
    a[idx, idx + 1] = 1.0
    a[idx + 1, idx] = 1.0
    hub = body - 1
    for leaf in range(body, n):
        a[hub, leaf] = a[leaf, hub] = 1.0
    coords = np.zeros((n, 2))
    coords[:body, 0] = np.arange(body)
    angles = np.linspace(0, 2 * np.pi, n - body, endpoint=False)
    coords[body:, 0] = hub + np.cos(angles)
    coords[body:, 1] = np.sin(angles)
    return a, coords


def _spiral_points(n: int) -> np.ndarray:
    t = np.linspace(0.0, _SPIRAL_TURNS * 2 * np.pi, n)
    return np.c_[t * np.cos(t), t * np.sin(t)]


def _sphere_points(n: int) -> np.ndarray:
    # Fibonacci sphere: near-uniform points on the unit 2-sphere.
    i = np.arange(n)
    phi = np.arccos(1.0 - 2.0 * (i + 0.5) / n)
    theta = np.pi * (1.0 + np.sqrt(5.0)) * i
    return np.c_[np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)]


def _swiss_roll_points(n: int, rng: np.random.Generator) -> np.ndarray:
    t = 1.5 * np.pi * (1.0 + 2.0 * rng.uniform(size=n))
    height = 21.0 * rng.uniform(size=n)
    return np.c_[t * np.cos(t), height, t * np.sin(t)]


def _build_random(spec: GeneratorSpec, attempt_seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(attempt_seed)
    kind = spec.kind
    if kind == "random_regular_knn":
        pts = rng.uniform(0.0, 1.0, (spec.n, 2))
        return _knn_adjacency(pts, int(spec.params.get("k", 3))), pts
    if kind == "community" or kind == "sensor":
        radius = spec.params.get(
            "radius", _COMMUNITY_RADIUS if kind == "community" else _SENSOR_RADIUS
        )
        pts = rng.uniform(0.0, 1.0, (spec.n, 2))
        return _radius_adjacency(pts, float(radius)), pts
    if kind == "sphere":
        pts = _sphere_points(spec.n)
        return _knn_adjacency(pts, int(spec.params.get("k", _SPHERE_K))), pts
    if kind == "swiss_roll":
        pts = _swiss_roll_points(spec.n, rng)
        return _knn_adjacency(pts, int(spec.params.get("k", _SWISS_ROLL_K))), pts
    raise InvalidSpec(kind)  # pragma: no cover


def generate(spec: GeneratorSpec) -> Graph:
    """Build one corpus graph; deterministic for a given spec and seed."""
    kind = spec.kind
    if kind == "path":
        return Graph(_path_adjacency(spec.n), coords=np.c_[np.arange(spec.n), np.zeros(spec.n)],
                     name=f"path-{spec.n}")
    if kind == "comet":
        star = int(spec.params.get("star_degree", 30))
        a, coords = _comet(spec.n, star)
        return Graph(a, coords=coords, name=f"comet-{spec.n}-{star}")
    if kind == "spiral":
        pts = _spiral_points(spec.n)
        a = _knn_adjacency(pts, int(spec.params.get("k", _SPIRAL_K)))
        return Graph(a, coords=pts, name=f"spiral-{spec.n}")

    # Random kinds: bump the seed until the graph comes out connected.
    for attempt in range(_MAX_CONNECT_RETRIES):
        a, pts = _build_random(spec, spec.seed + attempt)
        if _is_connected(a):
            return Graph(a, coords=pts, name=f"{kind}-{spec.n}-s{spec.seed}")
    raise InvalidSpec(
        f"could not generate a connected {kind} graph after {_MAX_CONNECT_RETRIES} retries"
    )


def bipolar_rectangular(g: Graph) -> np.ndarray:
    """+1 on the first ceil(n/2) nodes (generator order), -1 on the rest."""
    n = g.n
    x = np.ones(n)
    x[-(n // 2):] = -1.0
    return x


def corpus(ids=None) -> dict[str, Graph]:
    """Generate the default corpus (or a subset) keyed by graph id."""
    if ids is None:
        ids = list(CORPUS_SPECS)
    out = {}
    for gid in ids:
        if gid not in CORPUS_SPECS:
            raise InvalidSpec(f"unknown corpus graph id {gid!r}")
        out[gid] = generate(CORPUS_SPECS[gid])
    return out
