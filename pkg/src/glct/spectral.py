"""Unitary diagonalization of the Fourier operator and spectral building blocks.

F = V^T is real orthogonal, hence normal with a unit-circle spectrum but
generally complex eigenvectors. We diagonalize it from the real Schur form:
each 2x2 rotation block contributes the exact eigenpairs
(1, +-i)/sqrt(2) with eigenvalues cos(t) -+ i sin(t), so the eigenvector
matrix Q is unitary to machine precision and fractional powers
F^p = Q diag(lambda^p) Q^H are machine-exact group elements
(F^p F^q = F^(p+q) up to round-off).

Note the paper-style transpose Q^T is replaced by the conjugate transpose
Q^H throughout; Q is complex and only Q^H preserves unitarity.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import InvalidDelta, NotUnitModulus, NumericalFailure
from .graph import (
    AdjacencySpectrum,
    Graph,
    eigendecompose_adjacency,
    gft_matrix,
)

UNIT_MODULUS_TOL = 1e-8
RECON_TOL = 1e-9

# Eigenvalues this close to -1 get principal argument exactly +pi, keeping
# the branch single-valued at the cut.
_NEG_ONE_SNAP = 1e-12


class ChirpStrategy(Enum):
    """How a chirp-multiplication factor acts on graph signals.

    SPECTRAL_POWER_OF_F: fractional power of the Fourier operator (default).
    DIAGONAL_LAMBDA_OF_F: diagonal of Fourier-eigenvalue powers in the
        vertex domain.
    DIAGONAL_LAMBDA_OF_A: diagonal of unit-circle surrogates
    exp(i*pi*rank/n) raised to the chirp exponent. Adjacency eigenvalues
    are not unit-modulus, so raising them directly would destroy
    unitarity; this strategy documents that failure mode and is excluded
    from default pipelines.
    """

    SPECTRAL_POWER_OF_F = "spectral-power-of-f"
    DIAGONAL_LAMBDA_OF_F = "diagonal-lambda-of-f"
    DIAGONAL_LAMBDA_OF_A = "diagonal-lambda-of-a"


DEFAULT_STRATEGY = ChirpStrategy.SPECTRAL_POWER_OF_F


@dataclass(frozen=True)
class GftSpectrum:
    """Unitary eigensystem of the Fourier operator F.

    q: complex unitary eigenvector matrix; lam: unit-modulus eigenvalues
    sorted by principal argument ascending (ties by real part, then index).
    """

    q: np.ndarray
    lam: np.ndarray
    adjacency_spectrum: AdjacencySpectrum = field(repr=False)
    qh: np.ndarray = field(default=None, repr=False)  # conjugate transpose, cached

    def __post_init__(self):
        if self.qh is None:
            qh = np.ascontiguousarray(self.q.conj().T)
            qh.flags.writeable = False
            object.__setattr__(self, "qh", qh)

    @property
    def n(self) -> int:
        return self.lam.shape[0]

    @property
    def f(self) -> np.ndarray:
        return self.adjacency_spectrum.eigenvectors.T

    @property
    def fingerprint(self) -> str:
        return self.adjacency_spectrum.graph.fingerprint

    @property
    def theta(self) -> np.ndarray:
        """Principal arguments of the eigenvalues, in (-pi, pi]."""
        t = np.angle(self.lam)
        t[np.abs(self.lam + 1.0) <= _NEG_ONE_SNAP] = np.pi
        return t


def _schur_eigensystem(f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of a real orthogonal matrix from its real Schur form."""
    n = f.shape[0]
    t, z = scipy.linalg.schur(f, output="real")
    q = np.zeros((n, n), dtype=complex)
    lam = np.zeros(n, dtype=complex)
    i = 0
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    while i < n:
        if i + 1 < n and abs(t[i + 1, i]) > 1e-12:
            c = 0.5 * (t[i, i] + t[i + 1, i + 1])
            s = 0.5 * (t[i, i + 1] - t[i + 1, i])
            lam[i] = c + 1j * s
            lam[i + 1] = c - 1j * s
            q[:, i] = (z[:, i] + 1j * z[:, i + 1]) * inv_sqrt2
            q[:, i + 1] = (z[:, i] - 1j * z[:, i + 1]) * inv_sqrt2
            i += 2
        else:
            lam[i] = t[i, i]
            q[:, i] = z[:, i]
            i += 1
    return lam, q


_gft_cache: dict[str, GftSpectrum] = {}
_gft_lock = threading.Lock()


def diagonalize_gft(spec: AdjacencySpectrum) -> GftSpectrum:
    """Unitary eigendecomposition of F = V^T, cached per graph."""
    key = spec.graph.fingerprint
    with _gft_lock:
        hit = _gft_cache.get(key)
    if hit is not None:
        return hit

    f = gft_matrix(spec)
    lam, q = _schur_eigensystem(f)

    mod = np.abs(lam)
    if np.abs(mod - 1.0).max() > 1e-10:
        raise NumericalFailure("Fourier operator eigenvalues left the unit circle")
    lam = lam / mod

    # Deterministic ordering: argument ascending, ties by real part then index.
    theta = np.angle(lam)
    theta[np.abs(lam + 1.0) <= _NEG_ONE_SNAP] = np.pi
    order = np.lexsort((np.arange(lam.shape[0]), lam.real, theta))
    lam = lam[order]
    q = q[:, order]

    # Per-column unit phase: largest-modulus entry made real positive.
    # Operators of the form Q D Q^H are invariant under this.
    idx = np.argmax(np.abs(q), axis=0)
    lead = q[idx, np.arange(q.shape[1])]
    phase = lead / np.abs(lead)
    q = q / phase[None, :]

    resid = np.abs(q @ np.diag(lam) @ q.conj().T - f).max()
    if resid > RECON_TOL * spec.n:
        raise NumericalFailure(f"Fourier diagonalization residual {resid} out of tolerance")

    lam.flags.writeable = False
    q.flags.writeable = False
    gs = GftSpectrum(q=q, lam=lam, adjacency_spectrum=spec)
    with _gft_lock:
        _gft_cache.setdefault(key, gs)
    return gs


def gft_spectrum(g: Graph) -> GftSpectrum:
    """Convenience: adjacency eigendecomposition plus Fourier diagonalization."""
    return diagonalize_gft(eigendecompose_adjacency(g))


def frac_power_unit(lam: complex, p: float) -> complex:
    """Principal-branch power of a unit-modulus complex number."""
    if abs(abs(lam) - 1.0) > UNIT_MODULUS_TOL:
        raise NotUnitModulus(f"|lam| = {abs(lam)} is not 1 within {UNIT_MODULUS_TOL}")
    theta = np.pi if abs(lam + 1.0) <= _NEG_ONE_SNAP else np.angle(lam)
    return complex(np.exp(1j * p * theta))


def unit_powers(gs: GftSpectrum, p: float) -> np.ndarray:
    """Vector of principal-branch eigenvalue powers lambda_k^p."""
    return np.exp(1j * p * gs.theta)


def gft_power(gs: GftSpectrum, p: float) -> np.ndarray:
    """Dense fractional power F^p = Q diag(lambda^p) Q^H."""
    d = unit_powers(gs, p)
    return (gs.q * d[None, :]) @ gs.qh


def apply_gft_power(gs: GftSpectrum, p: float, x: np.ndarray) -> np.ndarray:
    """F^p x without forming the dense operator."""
    return gs.q @ (unit_powers(gs, p) * (gs.qh @ x))


def _surrogate_diag(gs: GftSpectrum, xi: float) -> np.ndarray:
    # Unit-circle stand-ins exp(i*pi*rank/n) for the adjacency eigenvalues,
    # rank taken in ascending eigenvalue order.
    n = gs.n
    return np.exp(1j * np.pi * np.arange(n) * xi / n)


def chirp_diag(gs: GftSpectrum, xi: float, strategy: ChirpStrategy) -> np.ndarray:
    """Diagonal vector of a vertex-domain chirp factor (diagonal strategies only)."""
    if strategy is ChirpStrategy.DIAGONAL_LAMBDA_OF_F:
        return unit_powers(gs, xi)
    if strategy is ChirpStrategy.DIAGONAL_LAMBDA_OF_A:
        return _surrogate_diag(gs, xi)
    raise ValueError(f"{strategy} has no diagonal vertex-domain form")


def graph_chirp_mul(gs: GftSpectrum, xi: float, strategy: ChirpStrategy = DEFAULT_STRATEGY) -> np.ndarray:
    """Dense chirp-multiplication operator under the chosen strategy."""
    if strategy is ChirpStrategy.SPECTRAL_POWER_OF_F:
        return gft_power(gs, xi)
    return np.diag(chirp_diag(gs, xi, strategy))


def gfrft(gs: GftSpectrum, alpha: float) -> np.ndarray:
    """Fractional Fourier operator for rotation angle alpha.

    The angle maps to the exponent 2*alpha/pi, so alpha = pi/2 reproduces
    F exactly. (The source material conflates order and angle; this map
    reconciles them and is recorded in operator metadata.)
    """
    return gft_power(gs, 2.0 * alpha / np.pi)


@dataclass(frozen=True)
class ScalingStage:
    """Eigensystem of the scaled adjacency S = A / delta."""

    delta: float
    q_delta: np.ndarray
    lambda_s: np.ndarray


def scaling_stage(g: Graph, delta: float) -> ScalingStage:
    """Eigensystem of A / delta, reusing the cached adjacency spectrum.

    With delta > 0 the eigenvectors and their ascending order coincide
    with those of A, so only the eigenvalues rescale.
    """
    if not delta > 0:
        raise InvalidDelta(f"scaling factor must be > 0, got {delta}")
    spec = eigendecompose_adjacency(g)
    w = spec.eigenvalues / delta
    w.flags.writeable = False
    return ScalingStage(delta=float(delta), q_delta=spec.eigenvectors, lambda_s=w)
