import numpy as np
import pytest

from glct.errors import InvalidSpec
from glct.generators import (
    CORPUS_SPECS,
    NNZ_TARGETS,
    GeneratorSpec,
    bipolar_rectangular,
    corpus,
    generate,
)


def is_connected(a):
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components
    return connected_components(csr_matrix(a))[0] == 1


@pytest.fixture(scope="module")
def full_corpus():
    return corpus()


class TestSpecs:
    def test_unknown_kind_rejected(self):
        with pytest.raises(InvalidSpec):
            GeneratorSpec("torus", 10)

    def test_tiny_n_rejected(self):
        with pytest.raises(InvalidSpec):
            GeneratorSpec("path", 1)

    def test_corpus_ids(self):
        assert list(CORPUS_SPECS) == [f"x{i}" for i in range(1, 9)]

    def test_unknown_corpus_id_rejected(self):
        with pytest.raises(InvalidSpec):
            corpus(["x9"])


class TestDeterministicKinds:
    def test_path_counts(self):
        g = generate(GeneratorSpec("path", 50))
        assert g.n == 50 and g.nnz == 98

    def test_path_structure(self):
        g = generate(GeneratorSpec("path", 5))
        deg = g.adjacency.sum(axis=0)
        np.testing.assert_array_equal(deg, [1, 2, 2, 2, 1])

    def test_comet_counts(self):
        g = generate(GeneratorSpec("comet", 60, params={"star_degree": 30}))
        assert g.n == 60 and g.nnz == 118

    def test_comet_structure(self):
        g = generate(GeneratorSpec("comet", 10, params={"star_degree": 4}))
        deg = g.adjacency.sum(axis=0)
        # 6-node path body whose last node carries 4 leaves.
        assert deg[5] == 1 + 4
        np.testing.assert_array_equal(deg[6:], np.ones(4))

    def test_comet_star_too_large(self):
        with pytest.raises(InvalidSpec):
            generate(GeneratorSpec("comet", 5, params={"star_degree": 5}))


class TestRandomKinds:
    def test_nnz_bands(self, full_corpus):
        kinds = {gid: CORPUS_SPECS[gid].kind for gid in CORPUS_SPECS}
        for gid, g in full_corpus.items():
            kind = kinds[gid]
            if kind in NNZ_TARGETS:
                target = NNZ_TARGETS[kind]
                assert 0.9 * target <= g.nnz <= 1.1 * target, (gid, g.nnz, target)

    def test_connected(self, full_corpus):
        for gid, g in full_corpus.items():
            assert is_connected(g.adjacency), gid

    def test_node_counts(self, full_corpus):
        for gid, g in full_corpus.items():
            assert g.n == CORPUS_SPECS[gid].n

    def test_deterministic(self):
        spec = CORPUS_SPECS["x5"]
        a = generate(spec).adjacency
        b = generate(spec).adjacency
        np.testing.assert_array_equal(a, b)

    def test_coords_present(self, full_corpus):
        for gid, g in full_corpus.items():
            assert g.coords is not None
            assert g.coords.shape[0] == g.n


class TestBipolarSignal:
    def test_even(self):
        g = generate(GeneratorSpec("path", 4))
        np.testing.assert_array_equal(bipolar_rectangular(g), [1, 1, -1, -1])

    def test_odd(self):
        g = generate(GeneratorSpec("path", 5))
        np.testing.assert_array_equal(bipolar_rectangular(g), [1, 1, 1, -1, -1])
