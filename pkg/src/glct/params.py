"""Unimodular 2x2 parameter matrices and their decompositions.

The transform family is parameterized by real quadruples (a, b, c, d) with
ad - bc = 1. Every decomposition used by the operator builders lives here:
the chirp-shear-chirp split for b != 0, the two b = 0 variants, and the
chirp/scaling/rotation (Iwasawa-style) split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BZero, NotB0Case, NotUnimodular

UNIMODULAR_TOL = 1e-9

# b below this is treated as the b = 0 branch; far below any sampled |b|
# yet well above round-off.
B0_THRESHOLD = 1e-8


@dataclass(frozen=True)
class ParamMatrix:
    """Row-major (a, b, c, d) with ad - bc = 1, checked at construction."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not math.isfinite(det) or abs(det - 1.0) > UNIMODULAR_TOL:
            raise NotUnimodular(
                f"(a, b, c, d) = ({self.a}, {self.b}, {self.c}, {self.d}) "
                f"has determinant {det!r}, expected 1"
            )

    @classmethod
    def identity(cls) -> "ParamMatrix":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, alpha: float) -> "ParamMatrix":
        return cls(math.cos(alpha), math.sin(alpha), -math.sin(alpha), math.cos(alpha))

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self.as_tuple() == (1.0, 0.0, 0.0, 1.0)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_dict(cls, obj: dict) -> "ParamMatrix":
        return cls(float(obj["a"]), float(obj["b"]), float(obj["c"]), float(obj["d"]))


@dataclass(frozen=True)
class IwasawaParams:
    """Chirp rate, scaling factor (> 0) and rotation angle in [-pi, pi]."""

    xi: float
    delta: float
    alpha: float


@dataclass(frozen=True)
class CmCcCmParams:
    """The three chirp exponents of the chirp-shear-chirp split (b != 0)."""

    xi1: float
    xi2: float
    xi3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.xi1, self.xi2, self.xi3)


@dataclass(frozen=True)
class B0Params:
    """Exponents for one of the two b = 0 factorizations.

    kind "eta": p1 = 1/d, p2 = d, p3 = (c + 1)/d  (so p1 * p2 = 1).
    kind "mu":  p1 = (c - 1)/a, p2 = -a, p3 = -1/a  (so p2 * p3 = 1).
    """

    kind: str
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        if self.kind not in ("eta", "mu"):
            raise ValueError(f"unknown b=0 decomposition kind {self.kind!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)


def make_param_matrix(a: float, b: float, c: float, d: float) -> ParamMatrix:
    """Validate and wrap a parameter quadruple."""
    return ParamMatrix(float(a), float(b), float(c), float(d))


def multiply(m2: ParamMatrix, m1: ParamMatrix) -> ParamMatrix:
    """Matrix product m2 @ m1, i.e. the transform applying m1 first."""
    p = m2.as_array() @ m1.as_array()
    return ParamMatrix(p[0, 0], p[0, 1], p[1, 0], p[1, 1])


def inverse(m: ParamMatrix) -> ParamMatrix:
    """(d, -b, -c, a); exact inverse of a unimodular matrix."""
    return ParamMatrix(m.d, -m.b, -m.c, m.a)


def decompose_iwasawa(m: ParamMatrix) -> IwasawaParams:
    """Split m into chirp * scaling * rotation.

    The rotation angle is extracted with atan2(b, a) so it is single-valued
    on (-pi, pi].
    """
    a, b = m.a, m.b
    denom = a * a + b * b
    xi = (a * m.c + b * m.d) / denom
    delta = math.sqrt(denom)
    alpha = math.atan2(b, a)
    return IwasawaParams(xi=xi, delta=delta, alpha=alpha)


def recompose_iwasawa(p: IwasawaParams) -> ParamMatrix:
    """Multiply the three Iwasawa factors back into a parameter matrix."""
    chirp = np.array([[1.0, 0.0], [p.xi, 1.0]])
    scale = np.array([[p.delta, 0.0], [0.0, 1.0 / p.delta]])
    rot = np.array(
        [[math.cos(p.alpha), math.sin(p.alpha)], [-math.sin(p.alpha), math.cos(p.alpha)]]
    )
    r = chirp @ scale @ rot
    return ParamMatrix(r[0, 0], r[0, 1], r[1, 0], r[1, 1])


def decompose_cmccm(m: ParamMatrix) -> CmCcCmParams:
    """Chirp exponents (xi1, xi2, xi3) for b != 0."""
    if abs(m.b) < B0_THRESHOLD:
        raise BZero(f"|b| = {abs(m.b)} below threshold {B0_THRESHOLD}; use decompose_b0")
    return CmCcCmParams(
        xi1=(m.d - 1.0) / m.b,
        xi2=-m.b,
        xi3=(m.a - 1.0) / m.b,
    )


# Constant shear factors of the five-factor chirp decomposition.
_J = np.array([[0.0, 1.0], [-1.0, 0.0]])      # "Fourier" factor
_JINV = np.array([[0.0, -1.0], [1.0, 0.0]])   # its inverse


def _lower(x: float) -> np.ndarray:
    return np.array([[1.0, 0.0], [x, 1.0]])


def recompose_cmccm(p: CmCcCmParams) -> ParamMatrix:
    """Multiply out the five factors of the b != 0 decomposition."""
    r = _lower(p.xi1) @ _JINV @ _lower(p.xi2) @ _J @ _lower(p.xi3)
    return ParamMatrix(r[0, 0], r[0, 1], r[1, 0], r[1, 1])


def decompose_b0(m: ParamMatrix, kind: str = "eta") -> B0Params:
    """Exponents for one of the two b = 0 factorizations."""
    if abs(m.b) >= B0_THRESHOLD:
        raise NotB0Case(f"|b| = {abs(m.b)} is not a b = 0 case")
    if kind == "eta":
        return B0Params(kind="eta", p1=1.0 / m.d, p2=m.d, p3=(m.c + 1.0) / m.d)
    if kind == "mu":
        return B0Params(kind="mu", p1=(m.c - 1.0) / m.a, p2=-m.a, p3=-1.0 / m.a)
    raise ValueError(f"unknown b=0 decomposition kind {kind!r}")


def recompose_b0(p: B0Params) -> ParamMatrix:
    """Multiply out the six factors of the chosen b = 0 decomposition."""
    if p.kind == "eta":
        r = _J @ _lower(p.p1) @ _JINV @ _lower(p.p2) @ _J @ _lower(p.p3)
    else:
        r = _lower(p.p1) @ _JINV @ _lower(p.p2) @ _J @ _lower(p.p3) @ _JINV
    return ParamMatrix(r[0, 0], r[0, 1], r[1, 0], r[1, 1])


def chirp_exponent_sum(m: ParamMatrix) -> float:
    """xi1 + xi2 + xi3 = (a + d - 2 - b^2) / b.

    Under the spectral-power chirp strategy the whole b != 0 operator
    collapses to a single fractional power of the graph Fourier operator
    with this exponent.
    """
    if abs(m.b) < B0_THRESHOLD:
        raise BZero(f"|b| = {abs(m.b)} below threshold {B0_THRESHOLD}")
    return (m.a + m.d - 2.0 - m.b * m.b) / m.b

# Minimum |a| and |b| accepted when sampling random parameter matrices.
SAMPLE_REJECT_BELOW = 0.05


def sample_from_rng(
    rng: np.random.Generator, low: float = -2.0, high: float = 2.0
) -> ParamMatrix:
    """Draw one unimodular matrix from an existing generator.

    a, b, c are uniform on [low, high]; d = (1 + b c) / a forces the
    determinant. Draws with |a| or |b| below SAMPLE_REJECT_BELOW are
    rejected and redrawn.
    """
    if not (high > low):
        raise ValueError(f"empty sampling interval [{low}, {high}]")
    while True:
        a, b, c = rng.uniform(low, high, size=3)
        if abs(a) < SAMPLE_REJECT_BELOW or abs(b) < SAMPLE_REJECT_BELOW:
            continue
        return ParamMatrix(a, b, c, (1.0 + b * c) / a)


def sample_random(seed: int, low: float = -2.0, high: float = 2.0) -> ParamMatrix:
    """Deterministic random unimodular matrix for a given seed."""
    return sample_from_rng(np.random.default_rng(seed), low, high)
