"""Input validation helpers used by the core modules and the estimators."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NotSymmetric, ValidationError

SYMMETRY_TOL = 1e-12


def check_adjacency(adjacency, *, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Validate a dense symmetric zero-diagonal adjacency matrix.

    Returns a float64 copy. Directed (non-symmetric) input is rejected,
    never symmetrized.
    """
    a = np.asarray(adjacency, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"adjacency must be square, got shape {a.shape}")
    if a.shape[0] < 2:
        raise ValidationError("graph needs at least 2 nodes")
    if not np.all(np.isfinite(a)):
        raise ValidationError("adjacency contains non-finite entries")
    if np.abs(a - a.T).max() > tol:
        raise NotSymmetric("adjacency is not symmetric; directed graphs are not supported")
    if np.abs(np.diag(a)).max() > tol:
        raise ValidationError("adjacency must have a zero diagonal (no self-loops)")
    return a.copy()


def check_signal(x, n: int, *, name: str = "signal") -> np.ndarray:
    """Coerce a vector to complex128 of length n."""
    v = np.asarray(x)
    if v.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional, got shape {v.shape}")
    if v.shape[0] != n:
        raise DimensionMismatch(f"{name} has length {v.shape[0]}, graph has {n} nodes")
    return v.astype(complex)


def check_signal_batch(X, n: int) -> np.ndarray:
    """Coerce a (n_signals, n) matrix of row signals to complex128."""
    m = np.asarray(X)
    if m.ndim == 1:
        m = m[None, :]
    if m.ndim != 2:
        raise ValidationError(f"expected a 2-d batch of row signals, got shape {m.shape}")
    if m.shape[1] != n:
        raise DimensionMismatch(f"signals have length {m.shape[1]}, graph has {n} nodes")
    return m.astype(complex)
