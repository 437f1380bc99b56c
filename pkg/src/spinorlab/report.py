"""Deterministic report rendering plus optional figure output.

JSON reports carry structured objects, CSV reports carry scan tables with
the run metadata (algebra convention tag, tolerances, seed) as leading
comment lines.  Identical inputs must give byte-identical reports, so all
formatting is pinned: shortest round-trip floats, sorted JSON keys, plain
newline line endings, no timestamps.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .conventions import CONVENTION_ID


def build_meta(tol_abs: float, tol_rel: float, seed=None, **extra) -> dict:
    """Metadata block every report embeds."""
    meta = {"convention": CONVENTION_ID,
            "tol_abs": float(tol_abs), "tol_rel": float(tol_rel)}
    if seed is not None:
        meta["seed"] = int(seed)
    meta.update(extra)
    return meta


def fmt_cell(value) -> str:
    """One CSV cell.  float repr is the shortest round-trip form."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def sanitize(obj):
    """Nested result -> JSON-encodable; complex becomes an [re, im] pair."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def render_json(payload: dict) -> str:
    return json.dumps(sanitize(payload), indent=2, sort_keys=True) + "\n"


def render_csv(columns, rows, meta: dict) -> str:
    """Comment-prefixed metadata, then a fixed-order table.

    Rows may be dicts keyed by column name or plain sequences.
    """
    buf = io.StringIO()
    for key in sorted(meta):
        buf.write(f"# {key}={fmt_cell(meta[key])}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = [row.get(c) for c in columns] if isinstance(row, dict) else list(row)
        writer.writerow([fmt_cell(c) for c in cells])
    return buf.getvalue()


def render(fmt: str, meta: dict, columns, rows, extra: dict = None) -> str:
    """Shared dispatcher: the same rows serve both formats; `extra`
    holds structured payloads that only fit the JSON form."""
    if fmt == "json":
        payload = {"meta": meta, "rows": [dict(r) for r in rows]}
        if extra:
            payload.update(extra)
        return render_json(payload)
    return render_csv(columns, rows, meta)


def spinor_obj(components, rep: str) -> dict:
    """The interchange form of a spinor: rep tag plus [re, im] pairs."""
    comps = np.asarray(components, dtype=complex).reshape(-1)
    return {"rep": rep,
            "components": [[float(z.real), float(z.imag)] for z in comps]}


def matrix_obj(matrix) -> list:
    """4x4 complex matrix as nested [re, im] pairs."""
    m = np.asarray(matrix, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _pyplot():
    import matplotlib
    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt
    return plt


def save_curves(path, xs, curves: dict, *, title="", xlabel="", ylabel="",
                logy=False) -> str:
    """Render named curves over a shared abscissa to an image file."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for name, ys in curves.items():
        ys = np.asarray(ys, dtype=float)
        if logy:
            ys = np.maximum(np.abs(ys), 1e-18)
            ax.semilogy(xs, ys, label=name)
        else:
            ax.plot(xs, ys, label=name)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return str(path)


def save_table_heatmap(path, table, row_labels, col_labels, *, title="") -> str:
    """Render an integer contingency table as an annotated heatmap."""
    plt = _pyplot()
    table = np.asarray(table)
    fig, ax = plt.subplots(figsize=(5.8, 5.0))
    im = ax.imshow(table, cmap="viridis")
    ax.set_xticks(range(len(col_labels)))
    ax.set_xticklabels(col_labels, rotation=45, ha="right", fontsize=7)
    ax.set_yticks(range(len(row_labels)))
    ax.set_yticklabels(row_labels, fontsize=7)
    vmax = max(float(np.max(table)), 1.0)
    for i in range(len(row_labels)):
        for j in range(len(col_labels)):
            color = "black" if table[i, j] > 0.6 * vmax else "white"
            ax.text(j, i, str(int(table[i, j])), ha="center", va="center",
                    fontsize=7, color=color)
    ax.set_title(title)
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return str(path)
