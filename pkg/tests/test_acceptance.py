"""Acceptance gate: one test per shipped criterion, each printing a
single PASS/FAIL line with the measured quantity.

Two criteria fail by design of the construction itself and are kept red
rather than weakened:

* combined-vs-cascade additivity (criterion 04): under the default
  chirp strategy the whole b != 0 operator collapses to a single
  fractional power of F with exponent (a + d - 2 - b^2) / b, and that
  exponent is not additive over matrix products, so the cascade and the
  combined transform differ at O(1) rather than at the noise floor;
* exponent-sum additivity (criterion 10): the same algebraic fact
  measured directly on the scalar exponents.
"""

import math

import numpy as np
import pytest

from glct.bench import make_builder, opcount
from glct.generators import CORPUS_SPECS, NNZ_TARGETS, bipolar_rectangular
from glct.graph import Graph, gft_matrix
from glct.params import (
    ParamMatrix,
    chirp_exponent_sum,
    decompose_cmccm,
    multiply,
    sample_from_rng,
)
from glct.spectral import gft_power, gft_spectrum
from glct.transforms import (
    build_cddhfs,
    build_cmccm,
    inverse_by_negation,
    inverse_by_params,
)

from conftest import BENCH_SEED


def report(name: str, ok: bool, detail: str = "") -> None:
    line = f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line, flush=True)
    assert ok, line


def test_criterion_01_zero_rotation_identity(corpus_spectra):
    worst = 0.0
    for gs in corpus_spectra.values():
        op = build_cmccm(gs, ParamMatrix.identity())
        worst = max(worst, float(np.abs(op.matrix - np.eye(gs.n)).max()))
    report("01 zero-rotation gives the exact identity", worst == 0.0,
           f"max deviation {worst:g}")


def test_criterion_02_unitarity(corpus_spectra):
    worst = 0.0
    for gi, (gid, gs) in enumerate(corpus_spectra.items()):
        rng = np.random.default_rng([BENCH_SEED, 2, gi])
        for _ in range(20):
            m = sample_from_rng(rng)
            u = build_cmccm(gs, m).matrix
            worst = max(worst, float(np.abs(u @ u.conj().T - np.eye(gs.n)).max()))
    report("02 chirp-decomposition operators unitary", worst <= 1e-9,
           f"max |O O^H - I| = {worst:.3e}, tol 1e-9")


def test_criterion_03_reversibility_both_routes(corpus_graphs, corpus_spectra):
    worst_nmse = 0.0
    worst_entry = 0.0
    for gi, gid in enumerate(corpus_graphs):
        g = corpus_graphs[gid]
        gs = corpus_spectra[gid]
        x = bipolar_rectangular(g)
        denom = float(np.sum(np.abs(x) ** 2))
        for run in range(50):
            rng = np.random.default_rng([BENCH_SEED, 3, gi, run])
            m = sample_from_rng(rng)
            op = build_cmccm(gs, m)
            inv_neg = inverse_by_negation(op)
            inv_par = inverse_by_params(gs, m)
            y = op.apply(x)
            for inv in (inv_neg, inv_par):
                back = inv.apply(y)
                worst_nmse = max(worst_nmse,
                                 float(np.sum(np.abs(x - back) ** 2) / denom))
            # The negated exponents equal the (d, -b, -c, a) exponents
            # exactly in floating point.
            assert inv_neg.decomposition == inv_par.decomposition
            if g.n <= 60 or run < 2:
                diff = float(np.abs(inv_neg.matrix - inv_par.matrix).max())
                worst_entry = max(worst_entry, diff)
    ok = worst_nmse <= 1e-20 and worst_entry <= 1e-10
    report("03 round trip exact via both inverse routes", ok,
           f"max NMSE {worst_nmse:.3e} (tol 1e-20), "
           f"max route gap {worst_entry:.3e} (tol 1e-10)")


def test_criterion_04_additivity(additivity_1000):
    worst50 = max(max(r.nmse[:50]) for r in additivity_1000)
    ratios = {}
    means = {}
    for r in additivity_1000:
        means.setdefault(r.graph_id, {})[r.method] = r.mean
    for gid, mm in means.items():
        hi, lo = max(mm.values()), min(mm.values())
        ratios[gid] = hi / lo if lo > 0 else math.inf
    worst_ratio = max(ratios.values())
    ok = worst50 <= 1e-20 and worst_ratio <= 2.0
    report("04 combined equals cascade (additivity)", ok,
           f"max 50-run NMSE {worst50:.3e} (tol 1e-20), "
           f"worst 1000-run method-mean ratio {worst_ratio:.2f} (tol 2)")


def test_criterion_05_method_ordering(reversibility_1000):
    means = {}
    for r in reversibility_1000:
        means.setdefault(r.graph_id, {})[r.method] = r.mean
    ok = all(mm["cmccm"] <= mm["cddhfs"] for mm in means.values())
    gap = min(mm["cddhfs"] / max(mm["cmccm"], 1e-300) for mm in means.values())
    report("05 chirp route never worse at reversibility", ok,
           f"smallest cddhfs/cmccm mean ratio {gap:.2e}")


def test_criterion_06_rotation_decomposition():
    worst = 0.0
    for alpha in (0.1, -0.1, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5):
        p = decompose_cmccm(ParamMatrix.rotation(alpha))
        expect = (-math.tan(alpha / 2), -math.sin(alpha), -math.tan(alpha / 2))
        worst = max(worst, max(abs(a - b) for a, b in zip(p.as_tuple(), expect)))
    report("06 rotation matrices decompose to the closed form", worst <= 1e-12,
           f"max deviation {worst:.3e}, tol 1e-12")


def test_criterion_07_operation_counts():
    ok = True
    for e in range(1, 15):
        n = 2 ** e
        ok &= opcount("cddhfs", n) == 4 * n * n + 8 * n
        ok &= opcount("cmccm_bnz", n) == 12 * n + 4 * n * e
        ok &= opcount("cmccm_b0", n) == 12 * n + 6 * n * e
    # Hand spot check at n = 64: 4*4096+512 = 16896; 768+1536 = 2304;
    # 768+2304 = 3072.
    spot = (opcount("cddhfs", 64), opcount("cmccm_bnz", 64), opcount("cmccm_b0", 64))
    ok &= spot == (16896, 2304, 3072)
    report("07 operation-count formulas exact", ok, f"n=64 spot values {spot}")


def test_criterion_08_corpus_fidelity(corpus_graphs):
    ok = True
    details = []
    exact = {"path": 98, "comet": 118}
    for gid, g in corpus_graphs.items():
        kind = CORPUS_SPECS[gid].kind
        if kind in exact:
            ok &= g.nnz == exact[kind]
        elif kind in NNZ_TARGETS:
            target = NNZ_TARGETS[kind]
            ok &= 0.9 * target <= g.nnz <= 1.1 * target
        # The kNN kind has no stated count; its fidelity checks are
        # connectivity and determinism, covered by the generator suite.
        details.append(f"{gid}:{g.nnz}")
    report("08 corpus nonzero counts in band", ok, " ".join(details))


def test_criterion_09_small_graph_oracles():
    def path(n):
        a = np.zeros((n, n))
        for i in range(n - 1):
            a[i, i + 1] = a[i + 1, i] = 1.0
        return Graph(a)

    worst = 0.0
    cases = [
        ParamMatrix(1.0, 1.0, 0.0, 1.0),
        ParamMatrix(0.6, 1.2, -0.5, (1 + 1.2 * -0.5) / 0.6),
        ParamMatrix(2.0, 0.0, 1.0, 0.5),
    ]
    for n in (2, 3, 4):
        g = path(n)
        gs = gft_spectrum(g)
        f = gft_matrix(gs.adjacency_spectrum)
        for m in cases:
            for op in (build_cmccm(gs, m), build_cddhfs(g, gs, m)):
                staged = np.stack(
                    [op.apply(col) for col in np.eye(n, dtype=complex)]).T
                worst = max(worst, float(np.abs(staged - op.matrix).max()))
        for k in (-3, -1, 0, 1, 2, 5):
            direct = gft_power(gs, float(k))
            ref = np.linalg.matrix_power(f if k >= 0 else f.T, abs(k))
            worst = max(worst, float(np.abs(direct - ref).max()))
    report("09 staged, dense and integer-power oracles agree", worst <= 1e-10,
           f"max deviation {worst:.3e}, tol 1e-10")


def test_criterion_10_exponent_sum_additivity():
    rng = np.random.default_rng([BENCH_SEED, 10])
    worst = 0.0
    failures = 0
    for _ in range(1000):
        while True:
            m1 = sample_from_rng(rng)
            m2 = sample_from_rng(rng)
            p = multiply(m1, m2)
            if abs(p.a) >= 0.05 and abs(p.b) >= 0.05:
                break
        s12 = chirp_exponent_sum(p)
        s_sum = chirp_exponent_sum(m1) + chirp_exponent_sum(m2)
        rel = abs(s12 - s_sum) / max(abs(s12), abs(s_sum), 1e-30)
        worst = max(worst, rel)
        failures += rel > 1e-9
    report("10 exponent sums additive over products", failures == 0,
           f"{failures}/1000 pairs off, worst relative gap {worst:.3e}, tol 1e-9")
