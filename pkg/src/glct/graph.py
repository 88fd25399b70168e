"""Graph container, adjacency eigendecomposition and the graph Fourier pair.

The Fourier operator here is adjacency-based: with A = V diag(w) V^T
(V orthonormal, eigenvalues ascending), the forward transform matrix is
F = V^T and the inverse is V.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NumericalFailure
from .validation import check_adjacency, check_signal

RECON_TOL = 1e-9
ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph with an optional coordinate embedding."""

    adjacency: np.ndarray
    coords: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        a = check_adjacency(self.adjacency)
        a.flags.writeable = False
        object.__setattr__(self, "adjacency", a)
        if self.coords is not None:
            c = np.asarray(self.coords, dtype=float)
            if c.shape[0] != a.shape[0]:
                raise ValueError("coords row count must match node count")
            c.flags.writeable = False
            object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(self.adjacency))

    @property
    def fingerprint(self) -> str:
        """Digest of the adjacency bytes; keys all derived caches."""
        return hashlib.sha256(np.ascontiguousarray(self.adjacency).tobytes()).hexdigest()


@dataclass(frozen=True)
class AdjacencySpectrum:
    """Ascending eigenvalues and sign-fixed orthonormal eigenvectors of A."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    graph: Graph = field(repr=False)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def _fix_column_signs(v: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude entry positive (lowest index wins ties)."""
    v = v.copy()
    idx = np.argmax(np.abs(v), axis=0)
    flip = v[idx, np.arange(v.shape[1])] < 0
    v[:, flip] *= -1.0
    return v


_spectrum_cache: dict[str, AdjacencySpectrum] = {}
_cache_lock = threading.Lock()


def eigendecompose_adjacency(g: Graph) -> AdjacencySpectrum:
    """Deterministic symmetric eigendecomposition of the adjacency.

    Eigenvalues ascending; the sign convention makes results reproducible
    bit-for-bit across calls. Results are cached per adjacency digest.
    """
    key = g.fingerprint
    with _cache_lock:
        hit = _spectrum_cache.get(key)
    if hit is not None:
        return hit

    w, v = np.linalg.eigh(g.adjacency)
    v = _fix_column_signs(v)

    scale = max(np.abs(g.adjacency).max(), 1.0)
    resid = np.abs(g.adjacency @ v - v * w[None, :]).max()
    if resid > RECON_TOL * scale * g.n:
        raise NumericalFailure(f"eigendecomposition residual {resid} out of tolerance")

    w.flags.writeable = False
    v.flags.writeable = False
    spec = AdjacencySpectrum(eigenvalues=w, eigenvectors=v, graph=g)
    with _cache_lock:
        _spectrum_cache.setdefault(key, spec)
    return spec


def gft_matrix(spec: AdjacencySpectrum) -> np.ndarray:
    """The forward transform matrix F = V^T (real orthogonal)."""
    return spec.eigenvectors.T.copy()


def gft(spec: AdjacencySpectrum, x) -> np.ndarray:
    """Project a vertex signal onto the adjacency eigenbasis."""
    v = check_signal(x, spec.n)
    return spec.eigenvectors.T @ v


def igft(spec: AdjacencySpectrum, xhat) -> np.ndarray:
    """Back-project spectral coefficients to the vertex domain."""
    v = check_signal(xhat, spec.n)
    return spec.eigenvectors @ v
