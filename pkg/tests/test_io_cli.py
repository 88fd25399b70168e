import json

import numpy as np
import pytest

from glct.bench import BenchConfig, run_experiment
from glct.cli import main
from glct.errors import IoError, ParseError
from glct.generators import GeneratorSpec, generate
from glct.graph import Graph
from glct.io import (
    file_digest,
    load_adjacency,
    load_json,
    load_operator,
    load_signal,
    save_adjacency,
    save_bench_results,
    save_json,
    save_operator,
    save_signal,
    write_manifest,
)


@pytest.fixture()
def weighted_graph():
    rng = np.random.default_rng(13)
    a = np.triu(rng.uniform(0.1, 1.0, size=(8, 8)) * (rng.random((8, 8)) < 0.5), k=1)
    return Graph(a + a.T)


class TestFileRoundTrips:
    def test_adjacency(self, tmp_path, weighted_graph):
        p = tmp_path / "a.mtx"
        save_adjacency(p, weighted_graph)
        back = load_adjacency(p)
        assert np.abs(back - weighted_graph.adjacency).max() <= 1e-15

    def test_signal(self, tmp_path):
        rng = np.random.default_rng(2)
        x = rng.normal(size=9) + 1j * rng.normal(size=9)
        p = tmp_path / "x.csv"
        save_signal(p, x)
        np.testing.assert_allclose(load_signal(p), x, atol=1e-15)

    def test_real_signal_loads_without_im_column(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text("re\n1.5\n-2\n")
        np.testing.assert_array_equal(load_signal(p), [1.5 + 0j, -2 + 0j])

    def test_operator(self, tmp_path):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        p = tmp_path / "op.csv"
        save_operator(p, m)
        np.testing.assert_allclose(load_operator(p), m, atol=1e-15)

    def test_json(self, tmp_path):
        p = tmp_path / "cfg.json"
        save_json(p, {"runs": 3})
        assert load_json(p) == {"runs": 3}

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoError):
            load_signal(tmp_path / "nope.csv")
        with pytest.raises(IoError):
            load_json(tmp_path / "nope.json")

    def test_bad_signal_row(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text("re,im\nfoo,bar\n")
        with pytest.raises(ParseError):
            load_signal(p)

    def test_bad_json(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text("{")
        with pytest.raises(ParseError):
            load_json(p)


class TestManifest:
    def test_fields(self, tmp_path):
        src = tmp_path / "in.csv"
        src.write_text("re\n1\n")
        out = tmp_path / "manifest.json"
        write_manifest(out, command="transform", config={"a": 1.0},
                       inputs=[src], outputs=[src], seed=9)
        m = load_json(out)
        assert m["command"] == "transform"
        assert m["seed"] == 9
        assert m["inputs"][str(src)] == file_digest(src)
        assert m["config_hash"]


class TestBenchOutputs:
    def test_curves_and_summary(self, tmp_path):
        cfg = BenchConfig(graphs=("x8",), runs=2, seed=0, experiment="reversibility")
        written = save_bench_results(run_experiment(cfg), tmp_path)
        names = {p.name for p in written}
        assert "curve_reversibility_x8_cddhfs.csv" in names
        assert "curve_reversibility_x8_cmccm.csv" in names
        assert "summary.csv" in names
        summary = (tmp_path / "summary.csv").read_text().splitlines()
        assert summary[0] == "graph,method,experiment,runs,mean_nmse"
        assert len(summary) == 3


class TestCli:
    def test_gen_single(self, tmp_path):
        assert main(["gen", "--kind", "path", "--n", "6",
                     "--out", str(tmp_path)]) == 0
        a = load_adjacency(tmp_path / "path_adjacency.mtx")
        assert np.count_nonzero(a) == 10
        x = load_signal(tmp_path / "path_signal.csv")
        np.testing.assert_array_equal(x.real, [1, 1, 1, -1, -1, -1])
        assert (tmp_path / "gen_manifest.json").exists()

    def test_gen_corpus(self, tmp_path):
        assert main(["gen", "--corpus", "--out", str(tmp_path)]) == 0
        for gid in (f"x{i}" for i in range(1, 9)):
            assert (tmp_path / f"{gid}_adjacency.mtx").exists()
            assert (tmp_path / f"{gid}_signal.csv").exists()

    def test_gen_requires_kind_or_corpus(self, tmp_path):
        assert main(["gen", "--out", str(tmp_path)]) == 2

    def test_transform_round_trip(self, tmp_path):
        main(["gen", "--kind", "path", "--n", "12", "--out", str(tmp_path)])
        adj = str(tmp_path / "path_adjacency.mtx")
        sig = str(tmp_path / "path_signal.csv")
        code = main(["transform", "--out", str(tmp_path), "--",
                     adj, sig, "0.8", "1.1", "-0.3", str((1 + 1.1 * -0.3) / 0.8)])
        assert code == 0
        sidecar = load_json(tmp_path / "transformed.json")
        assert sidecar["roundtrip_nmse"] <= 1e-20
        assert sidecar["recipe"] == "cmccm-bnz"
        y = load_signal(tmp_path / "transformed.csv")
        assert y.shape == (12,)

    def test_transform_gft_params(self, tmp_path):
        main(["gen", "--kind", "path", "--n", "8", "--out", str(tmp_path)])
        adj = str(tmp_path / "path_adjacency.mtx")
        sig = str(tmp_path / "path_signal.csv")
        assert main(["transform", "--out", str(tmp_path), "--",
                     adj, sig, "0", "1", "-1", "0"]) == 0
        sidecar = load_json(tmp_path / "transformed.json")
        assert sidecar["recipe"] == "special-dispatch"

    def test_transform_rejects_non_unimodular(self, tmp_path):
        main(["gen", "--kind", "path", "--n", "8", "--out", str(tmp_path)])
        adj = str(tmp_path / "path_adjacency.mtx")
        sig = str(tmp_path / "path_signal.csv")
        assert main(["transform", "--out", str(tmp_path), "--",
                     adj, sig, "1", "1", "1", "1"]) == 2

    def test_transform_missing_graph_file(self, tmp_path):
        sig = tmp_path / "x.csv"
        save_signal(sig, np.ones(4))
        assert main(["transform", "--out", str(tmp_path), "--",
                     str(tmp_path / "nope.mtx"), str(sig), "1", "1", "0", "1"]) == 4

    def test_bench(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"graphs": ["x8"], "runs": 2, "seed": 0,
                                   "experiment": "reversibility"}))
        assert main(["bench", str(cfg), "--out", str(tmp_path)]) == 0
        assert (tmp_path / "summary.csv").exists()
        assert (tmp_path / "bench_manifest.json").exists()

    def test_bench_bad_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"runs": 0}))
        assert main(["bench", str(cfg), "--out", str(tmp_path)]) == 2

    def test_opcount(self, tmp_path):
        assert main(["opcount", "--nmin", "1", "--nmax", "64",
                     "--powers-of-two", "--out", str(tmp_path)]) == 0
        rows = (tmp_path / "opcount.csv").read_text().splitlines()
        assert rows[0] == "n,cddhfs,cmccm_bnz,cmccm_b0"
        assert rows[-1] == "64,16896,2304,3072"

    def test_opcount_bad_range(self, tmp_path):
        assert main(["opcount", "--nmin", "5", "--nmax", "2",
                     "--out", str(tmp_path)]) == 2

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2
