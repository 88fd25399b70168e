"""File formats: Matrix Market adjacency, CSV signals/coordinates/operators,
JSON configs and run manifests.

All floating-point text is written with 17 significant digits so that a
write/read round trip is exact to within 1e-15.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .errors import IoError, ParseError
from .graph import Graph
from .validation import check_adjacency

FLOAT_FMT = "%.17g"


def fmt(x: float) -> str:
    return FLOAT_FMT % x


# ---------------------------------------------------------------------------
# adjacency (Matrix Market, symmetric real coordinate)

def save_adjacency(path, g: Graph) -> None:
    try:
        coo = scipy.sparse.coo_matrix(np.tril(g.adjacency))
        scipy.io.mmwrite(str(path), coo, field="real", symmetry="symmetric", precision=17)
    except OSError as exc:
        raise IoError(f"cannot write adjacency to {path}: {exc}") from exc


def load_adjacency(path) -> np.ndarray:
    if not Path(path).is_file():
        raise IoError(f"cannot read adjacency from {path}: no such file")
    try:
        a = scipy.io.mmread(str(path))
    except OSError as exc:
        raise IoError(f"cannot read adjacency from {path}: {exc}") from exc
    except ValueError as exc:
        raise ParseError(f"bad Matrix Market file {path}: {exc}") from exc
    if scipy.sparse.issparse(a):
        a = a.toarray()
    return check_adjacency(a)


# ---------------------------------------------------------------------------
# signals (CSV, columns re,im) and coordinates (CSV)

def save_signal(path, x) -> None:
    v = np.asarray(x, dtype=complex)
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["re", "im"])
            for z in v:
                w.writerow([fmt(z.real), fmt(z.imag)])
    except OSError as exc:
        raise IoError(f"cannot write signal to {path}: {exc}") from exc


def load_signal(path) -> np.ndarray:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoError(f"cannot read signal from {path}: {exc}") from exc
    if not rows:
        raise ParseError(f"empty signal file {path}")
    start = 1 if rows[0] and not _is_number(rows[0][0]) else 0
    out = []
    for row in rows[start:]:
        if not row:
            continue
        try:
            re = float(row[0])
            im = float(row[1]) if len(row) > 1 else 0.0
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad signal row {row!r} in {path}") from exc
        out.append(complex(re, im))
    return np.array(out, dtype=complex)


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def save_coords(path, coords: np.ndarray) -> None:
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for row in np.atleast_2d(coords):
                w.writerow([fmt(v) for v in row])
    except OSError as exc:
        raise IoError(f"cannot write coordinates to {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# operators (CSV, re/im interleaved columns)

def save_operator(path, matrix: np.ndarray) -> None:
    m = np.asarray(matrix, dtype=complex)
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for row in m:
                cells = []
                for z in row:
                    cells.append(fmt(z.real))
                    cells.append(fmt(z.imag))
                w.writerow(cells)
    except OSError as exc:
        raise IoError(f"cannot write operator to {path}: {exc}") from exc


def load_operator(path) -> np.ndarray:
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r]
    except OSError as exc:
        raise IoError(f"cannot read operator from {path}: {exc}") from exc
    out = []
    for row in rows:
        vals = [float(v) for v in row]
        out.append([complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)])
    return np.array(out, dtype=complex)


# ---------------------------------------------------------------------------
# JSON sidecars and manifests

def save_json(path, obj: dict) -> None:
    try:
        with open(path, "w") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}: {exc}") from exc


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(path, *, command: str, config: dict, inputs, outputs, seed=None) -> None:
    """Record everything needed to reproduce a run byte-for-byte."""
    from . import __version__

    manifest = {
        "command": command,
        "config": config,
        "config_hash": hashlib.sha256(
            json.dumps(config, sort_keys=True).encode()
        ).hexdigest(),
        "inputs": {str(p): file_digest(p) for p in inputs},
        "outputs": [str(p) for p in outputs],
        "seed": seed,
        "version": __version__,
    }
    save_json(path, manifest)


# ---------------------------------------------------------------------------
# benchmark outputs

def save_bench_results(results, outdir) -> list[Path]:
    """Sorted-curve CSV per (graph, method) plus one summary CSV."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for r in results:
        curve = outdir / f"curve_{r.experiment}_{r.graph_id}_{r.method}.csv"
        with open(curve, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["run", "nmse"])
            for i, v in enumerate(r.sorted_nmse):
                w.writerow([i, fmt(v)])
        written.append(curve)
    summary = outdir / "summary.csv"
    with open(summary, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["graph", "method", "experiment", "runs", "mean_nmse"])
        for r in results:
            w.writerow([r.graph_id, r.method, r.experiment, len(r.nmse), fmt(r.mean)])
    written.append(summary)
    return written


def save_opcount_table(path, table) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "cddhfs", "cmccm_bnz", "cmccm_b0"])
        for row in table:
            w.writerow([row["n"], row["cddhfs"], row["cmccm_bnz"], row["cmccm_b0"]])
