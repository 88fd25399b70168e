import numpy as np
import pytest

from glct.bench import BenchConfig, run_experiment
from glct.generators import corpus
from glct.spectral import gft_spectrum

BENCH_SEED = 20260824


@pytest.fixture(scope="session")
def corpus_graphs():
    return corpus()


@pytest.fixture(scope="session")
def corpus_spectra(corpus_graphs):
    return {gid: gft_spectrum(g) for gid, g in corpus_graphs.items()}


@pytest.fixture(scope="session")
def additivity_1000():
    cfg = BenchConfig(runs=1000, seed=BENCH_SEED, experiment="additivity")
    return run_experiment(cfg)


@pytest.fixture(scope="session")
def reversibility_1000():
    cfg = BenchConfig(runs=1000, seed=BENCH_SEED, experiment="reversibility")
    return run_experiment(cfg)
