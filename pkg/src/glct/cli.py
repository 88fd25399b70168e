"""Command-line front end: gen / transform / bench / opcount.

Exit codes: 0 success, 2 validation error, 3 numerical failure, 4 I/O error.
The default output directory can be set with GLCT_OUTDIR.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .bench import BenchConfig, opcount_table, run_experiment
from .errors import IoError, NumericalFailure, ParseError, ValidationError
from .generators import CORPUS_SPECS, GeneratorSpec, bipolar_rectangular, generate
from .graph import Graph, eigendecompose_adjacency
from .io import (
    load_adjacency,
    load_signal,
    save_adjacency,
    save_bench_results,
    save_coords,
    save_json,
    save_opcount_table,
    save_signal,
    write_manifest,
)
from .params import ParamMatrix
from .spectral import DEFAULT_STRATEGY, ChirpStrategy, diagonalize_gft
from .transforms import build_cddhfs, build_cmccm


def _outdir(value) -> Path:
    d = Path(value or os.environ.get("GLCT_OUTDIR", "."))
    d.mkdir(parents=True, exist_ok=True)
    return d


@click.group()
@click.version_option(__version__)
def cli():
    """Graph linear canonical transform toolkit."""


@cli.command("gen")
@click.option("--kind", type=click.Choice(list({s.kind for s in CORPUS_SPECS.values()})))
@click.option("--n", "n_nodes", type=int, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--k", type=int, default=None, help="Neighbor count for kNN kinds.")
@click.option("--star-degree", type=int, default=None, help="Leaf count for the comet kind.")
@click.option("--corpus", "whole_corpus", is_flag=True, help="Generate all eight corpus graphs.")
@click.option("--out", "out", default=None, help="Output directory.")
def cmd_gen(kind, n_nodes, seed, k, star_degree, whole_corpus, out):
    """Write adjacency (Matrix Market), coordinates, signal and manifest."""
    outdir = _outdir(out)
    if whole_corpus:
        jobs = [(gid, spec) for gid, spec in CORPUS_SPECS.items()]
    else:
        if kind is None:
            raise ValidationError("either --kind or --corpus is required")
        params = {}
        if k is not None:
            params["k"] = k
        if star_degree is not None:
            params["star_degree"] = star_degree
        defaults = {s.kind: s for s in CORPUS_SPECS.values()}
        n_eff = n_nodes if n_nodes is not None else defaults[kind].n
        jobs = [(kind, GeneratorSpec(kind, n_eff, seed=seed, params=params))]

    outputs = []
    specs = {}
    for name, spec in jobs:
        g = generate(spec)
        adj = outdir / f"{name}_adjacency.mtx"
        sig = outdir / f"{name}_signal.csv"
        save_adjacency(adj, g)
        save_signal(sig, bipolar_rectangular(g))
        outputs += [adj, sig]
        if g.coords is not None:
            coords = outdir / f"{name}_coords.csv"
            save_coords(coords, g.coords)
            outputs.append(coords)
        specs[name] = {"kind": spec.kind, "n": spec.n, "seed": spec.seed,
                       "params": spec.params, "nnz": g.nnz}
        click.echo(f"{name}: {g.n} nodes, {g.nnz} nonzeros")
    write_manifest(outdir / "gen_manifest.json", command="gen",
                   config=specs, inputs=[], outputs=outputs, seed=seed)


@cli.command("transform")
@click.argument("graph_file")
@click.argument("signal_file")
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.argument("c", type=float)
@click.argument("d", type=float)
@click.option("--method", type=click.Choice(["cmccm", "cddhfs"]), default="cmccm",
              show_default=True)
@click.option("--strategy", type=click.Choice([s.value for s in ChirpStrategy]),
              default=DEFAULT_STRATEGY.value, show_default=True)
@click.option("--b0-form", type=click.Choice(["eta", "mu"]), default="eta", show_default=True)
@click.option("--out", default=None, help="Output directory.")
def cmd_transform(graph_file, signal_file, a, b, c, d, method, strategy, b0_form, out):
    """Transform a signal file through the (a, b, c, d) operator."""
    outdir = _outdir(out)
    g = Graph(load_adjacency(graph_file))
    x = load_signal(signal_file)
    if x.shape[0] != g.n:
        raise ValidationError(f"signal length {x.shape[0]} != node count {g.n}")
    m = ParamMatrix(a, b, c, d)
    strat = ChirpStrategy(strategy)
    gs = diagonalize_gft(eigendecompose_adjacency(g))
    if method == "cmccm":
        op = build_cmccm(gs, m, strat, b0_form=b0_form)
    else:
        op = build_cddhfs(g, gs, m, strat)
    y = op.apply(x)

    out_sig = outdir / "transformed.csv"
    sidecar = outdir / "transformed.json"
    save_signal(out_sig, y)

    # Round-trip diagnostic through the parameter-inverse operator.
    if method == "cmccm":
        inv_op = build_cmccm(gs, ParamMatrix(m.d, -m.b, -m.c, m.a), strat, b0_form=b0_form)
    else:
        inv_op = build_cddhfs(g, gs, ParamMatrix(m.d, -m.b, -m.c, m.a), strat)
    back = inv_op.apply(y)
    denom = float(np.sum(np.abs(x) ** 2))
    roundtrip = float(np.sum(np.abs(x - back) ** 2) / denom) if denom > 0 else 0.0

    meta = op.metadata()
    meta["roundtrip_nmse"] = roundtrip
    meta["method"] = method
    save_json(sidecar, meta)
    write_manifest(outdir / "transform_manifest.json", command="transform",
                   config={"a": a, "b": b, "c": c, "d": d, "method": method,
                           "strategy": strategy, "b0_form": b0_form},
                   inputs=[graph_file, signal_file], outputs=[out_sig, sidecar])
    click.echo(f"wrote {out_sig} (round-trip NMSE {roundtrip:.3e})")


@cli.command("bench")
@click.argument("config_file")
@click.option("--out", default=None, help="Output directory.")
def cmd_bench(config_file, out):
    """Run an experiment described by a JSON config file."""
    outdir = _outdir(out)
    cfg = BenchConfig.from_json(config_file)
    results = run_experiment(cfg)
    written = save_bench_results(results, outdir)
    write_manifest(outdir / "bench_manifest.json", command="bench",
                   config=cfg.to_dict(), inputs=[config_file],
                   outputs=written, seed=cfg.seed)
    for r in results:
        click.echo(f"{r.graph_id} {r.method} {r.experiment}: mean NMSE {r.mean:.6e}")


@cli.command("opcount")
@click.option("--nmin", type=int, default=1, show_default=True)
@click.option("--nmax", type=int, default=1024, show_default=True)
@click.option("--powers-of-two", is_flag=True, help="Only powers of two in the range.")
@click.option("--out", default=None, help="Output directory.")
def cmd_opcount(nmin, nmax, powers_of_two, out):
    """Tabulate the real-multiplication counts of the three formulas."""
    if not (1 <= nmin <= nmax):
        raise ValidationError(f"need 1 <= nmin <= nmax, got {nmin}..{nmax}")
    outdir = _outdir(out)
    if powers_of_two:
        ns = [n for n in (2 ** i for i in range(0, 20)) if nmin <= n <= nmax]
    else:
        ns = list(range(nmin, nmax + 1))
    table = opcount_table(ns)
    path = outdir / "opcount.csv"
    save_opcount_table(path, table)
    write_manifest(outdir / "opcount_manifest.json", command="opcount",
                   config={"nmin": nmin, "nmax": nmax, "powers_of_two": powers_of_two},
                   inputs=[], outputs=[path])
    click.echo(f"wrote {path} ({len(ns)} rows)")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.Abort:
        return 2
    except (ValidationError, ParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except NumericalFailure as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return 3
    except IoError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
