"""Graph linear canonical transforms with a chirp-decomposition fast path.

Builds the adjacency-based graph Fourier transform, its unitary
fractional powers, and two constructions of the graph linear canonical
transform (chirp-multiplication decomposition and an Iwasawa-style
scaling form), plus the benchmark corpus and NMSE harness used to
compare them.
"""

__version__ = "0.1.0"

from .bench import (
    BenchConfig,
    BenchResult,
    nmse_additivity,
    nmse_reversibility,
    opcount,
    run_experiment,
)
from .errors import GlctError
from .estimators import (
    GraphFourierTransform,
    GraphFractionalFourierTransform,
    GraphLinearCanonicalTransform,
)
from .generators import CORPUS_SPECS, GeneratorSpec, bipolar_rectangular, corpus, generate
from .graph import Graph, eigendecompose_adjacency, gft, gft_matrix, igft
from .params import (
    B0_THRESHOLD,
    CmCcCmParams,
    IwasawaParams,
    ParamMatrix,
    chirp_exponent_sum,
    decompose_b0,
    decompose_cmccm,
    decompose_iwasawa,
    inverse,
    make_param_matrix,
    multiply,
    sample_random,
)
from .spectral import (
    ChirpStrategy,
    GftSpectrum,
    diagonalize_gft,
    frac_power_unit,
    gfrft,
    gft_power,
    gft_spectrum,
    graph_chirp_mul,
    scaling_stage,
)
from .transforms import (
    FresnelParams,
    GlctOperator,
    apply,
    build_cddhfs,
    build_cmccm,
    fresnel,
    inverse_by_negation,
    inverse_by_params,
    special_dispatch,
)

__all__ = [
    "__version__",
    "B0_THRESHOLD",
    "BenchConfig",
    "BenchResult",
    "ChirpStrategy",
    "CmCcCmParams",
    "CORPUS_SPECS",
    "FresnelParams",
    "GeneratorSpec",
    "GftSpectrum",
    "GlctError",
    "GlctOperator",
    "Graph",
    "GraphFourierTransform",
    "GraphFractionalFourierTransform",
    "GraphLinearCanonicalTransform",
    "IwasawaParams",
    "ParamMatrix",
    "apply",
    "bipolar_rectangular",
    "build_cddhfs",
    "build_cmccm",
    "chirp_exponent_sum",
    "corpus",
    "decompose_b0",
    "decompose_cmccm",
    "decompose_iwasawa",
    "diagonalize_gft",
    "eigendecompose_adjacency",
    "frac_power_unit",
    "fresnel",
    "generate",
    "gfrft",
    "gft",
    "gft_matrix",
    "gft_power",
    "gft_spectrum",
    "graph_chirp_mul",
    "igft",
    "inverse",
    "inverse_by_negation",
    "inverse_by_params",
    "make_param_matrix",
    "multiply",
    "nmse_additivity",
    "nmse_reversibility",
    "opcount",
    "run_experiment",
    "sample_random",
    "scaling_stage",
    "special_dispatch",
]
