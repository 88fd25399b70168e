"""Benchmark harness: additivity / reversibility NMSE and the operation-count model.

Each run draws fresh random parameter matrices, applies the staged
operators to the graph's bipolar rectangular signal and records the
normalized mean-square error. Runs derive their own sub-seed from
(master seed, run index), so results are schedule-independent.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, DegenerateDenominator
from .generators import CORPUS_SPECS, bipolar_rectangular, corpus
from .graph import Graph
from .params import (
    SAMPLE_REJECT_BELOW,
    ParamMatrix,
    inverse,
    multiply,
    sample_from_rng,
)
from .spectral import DEFAULT_STRATEGY, ChirpStrategy, gft_spectrum
from .transforms import GlctOperator, build_cddhfs, build_cmccm

METHODS = ("cddhfs", "cmccm")
EXPERIMENTS = ("additivity", "reversibility")

OperatorBuilder = Callable[[ParamMatrix], GlctOperator]


@dataclass(frozen=True)
class BenchConfig:
    graphs: Sequence[str] = tuple(CORPUS_SPECS)
    runs: int = 50
    seed: int = 0
    param_low: float = -2.0
    param_high: float = 2.0
    methods: Sequence[str] = METHODS
    strategy: ChirpStrategy = DEFAULT_STRATEGY
    experiment: str = "additivity"

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if not (self.param_high > self.param_low):
            raise ConfigError("empty parameter range")
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}")
        for g in self.graphs:
            if g not in CORPUS_SPECS:
                raise ConfigError(f"unknown corpus graph id {g!r}")

    @classmethod
    def from_dict(cls, obj: dict) -> "BenchConfig":
        try:
            strategy = ChirpStrategy(obj.get("strategy", DEFAULT_STRATEGY.value))
            return cls(
                graphs=tuple(obj.get("graphs", tuple(CORPUS_SPECS))),
                runs=int(obj.get("runs", 50)),
                seed=int(obj.get("seed", 0)),
                param_low=float(obj.get("param_low", -2.0)),
                param_high=float(obj.get("param_high", 2.0)),
                methods=tuple(obj.get("methods", METHODS)),
                strategy=strategy,
                experiment=str(obj.get("experiment", "additivity")),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad benchmark config: {exc}") from exc

    @classmethod
    def from_json(cls, path) -> "BenchConfig":
        try:
            with open(path) as fh:
                return cls.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read benchmark config {path}: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "graphs": list(self.graphs),
            "runs": self.runs,
            "seed": self.seed,
            "param_low": self.param_low,
            "param_high": self.param_high,
            "methods": list(self.methods),
            "strategy": self.strategy.value,
            "experiment": self.experiment,
        }


@dataclass
class BenchResult:
    graph_id: str
    method: str
    experiment: str
    nmse: list[float]
    metadata: dict = field(default_factory=dict)

    @property
    def sorted_nmse(self) -> list[float]:
        return sorted(self.nmse)

    @property
    def mean(self) -> float:
        return float(np.mean(self.nmse))


def _nmse(num_vec: np.ndarray, den_vec: np.ndarray) -> float:
    den = float(np.sum(np.abs(den_vec) ** 2))
    if den <= 0.0 or not math.isfinite(den):
        raise DegenerateDenominator("NMSE denominator vanished")
    return float(np.sum(np.abs(num_vec) ** 2) / den)


def nmse_additivity(
    build: OperatorBuilder, m1: ParamMatrix, m2: ParamMatrix, x: np.ndarray
) -> float:
    """Error between the combined transform and the cascade.

    The cascade applies m2 first, then m1; the combined transform uses
    the matching matrix product m1 @ m2.
    """
    y_combined = build(multiply(m1, m2)).apply(x)
    y_cascade = build(m1).apply(build(m2).apply(x))
    return _nmse(y_combined - y_cascade, y_combined)


def nmse_reversibility(build: OperatorBuilder, m: ParamMatrix, x: np.ndarray) -> float:
    """Round-trip error through the transform and its parameter inverse."""
    y = build(inverse(m)).apply(build(m).apply(x))
    return _nmse(np.asarray(x, dtype=complex) - y, x)


def _sample_pair(rng: np.random.Generator, low: float, high: float):
    """Pair with |a|, |b| bounded away from 0 for both factors and their product."""
    while True:
        m1 = sample_from_rng(rng, low, high)
        m2 = sample_from_rng(rng, low, high)
        p = multiply(m1, m2)
        if abs(p.a) >= SAMPLE_REJECT_BELOW and abs(p.b) >= SAMPLE_REJECT_BELOW:
            return m1, m2


def make_builder(
    method: str, g: Graph, strategy: ChirpStrategy = DEFAULT_STRATEGY
) -> OperatorBuilder:
    """Operator factory bound to one graph."""
    gs = gft_spectrum(g)
    if method == "cmccm":
        return lambda m: build_cmccm(gs, m, strategy)
    if method == "cddhfs":
        return lambda m: build_cddhfs(g, gs, m, strategy)
    raise ConfigError(f"unknown method {method!r}")


def run_experiment(cfg: BenchConfig) -> list[BenchResult]:
    """Run the configured experiment over the selected corpus graphs.

    Deterministic for a fixed config: run r of graph gid uses the
    sub-seed sequence (seed, graph index, run index). For additivity
    runs a swapped-pairing diagnostic (cascade m1 then m2 against the
    same combined matrix) is recorded in the metadata.
    """
    graphs = corpus(list(cfg.graphs))
    results: list[BenchResult] = []
    for gi, (gid, g) in enumerate(graphs.items()):
        x = bipolar_rectangular(g)
        builders = {meth: make_builder(meth, g, cfg.strategy) for meth in cfg.methods}
        for meth in cfg.methods:
            build = builders[meth]
            values: list[float] = []
            swapped: list[float] = []
            sampled: list[dict] = []
            for run in range(cfg.runs):
                rng = np.random.default_rng([cfg.seed, gi, run])
                if cfg.experiment == "additivity":
                    m1, m2 = _sample_pair(rng, cfg.param_low, cfg.param_high)
                    values.append(nmse_additivity(build, m1, m2, x))
                    combined = build(multiply(m1, m2)).apply(x)
                    cascade_swapped = build(m2).apply(build(m1).apply(x))
                    swapped.append(_nmse(combined - cascade_swapped, combined))
                    sampled.append({"m1": m1.to_dict(), "m2": m2.to_dict()})
                else:
                    m = sample_from_rng(rng, cfg.param_low, cfg.param_high)
                    values.append(nmse_reversibility(build, m, x))
                    sampled.append({"m": m.to_dict()})
            meta = {
                "seed": cfg.seed,
                "graph": gid,
                "strategy": cfg.strategy.value,
                "params": sampled,
            }
            if swapped:
                meta["swapped_pairing_nmse"] = swapped
            results.append(
                BenchResult(
                    graph_id=gid,
                    method=meth,
                    experiment=cfg.experiment,
                    nmse=values,
                    metadata=meta,
                )
            )
    return results


# ---------------------------------------------------------------------------
# operation-count model (real multiplications; eigendecomposition excluded)

OPCOUNT_METHODS = ("cddhfs", "cmccm_bnz", "cmccm_b0")


def opcount(method: str, n: int) -> int:
    """Real-multiplication count of one transform application.

    cddhfs: 4n^2 + 8n; cmccm_bnz: 12n + 4n*log2(n);
    cmccm_b0: 12n + 6n*log2(n). Non-power-of-two n uses the real log2
    and the final count is ceiled.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if method == "cddhfs":
        return 4 * n * n + 8 * n
    if method == "cmccm_bnz":
        return math.ceil(12 * n + 4 * n * math.log2(n))
    if method == "cmccm_b0":
        return math.ceil(12 * n + 6 * n * math.log2(n))
    raise ValueError(f"unknown opcount method {method!r}")


def opcount_table(n_values: Sequence[int]) -> list[dict]:
    return [
        {"n": n, **{meth: opcount(meth, n) for meth in OPCOUNT_METHODS}}
        for n in n_values
    ]
