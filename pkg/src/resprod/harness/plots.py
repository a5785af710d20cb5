"""Render report rows as matplotlib figures next to the delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import ExperimentReport

# kind -> (x column, y columns, log-x, log-y)
_PLOT_SPEC = {
    "coprime-count": ("q", ("error",), True, False),
    "prime-cofactor": ("q", ("exact", "main_term"), True, False),
    "mertens": ("x", ("delta", "slack"), True, False),
    "char-scan": ("q", ("ratio_q_quarter", "ratio_sqrt_m"), True, False),
    "mean-value": ("q", ("max_ratio",), True, False),
    "product-length": ("q", ("uniform_k",), True, False),
    "subgroup-length": ("q", ("uniform_k",), True, False),
    "fermat-length": ("p", ("uniform_k",), True, False),
    "correspondence": ("p", ("additive_max",), False, False),
    "greedy-pack": ("u", ("max_factors",), False, False),
    "balog": ("q", ("lhs", "e_term", "f_term"), True, False),
    "subgroup-pairs": ("q", ("count", "bound_shape"), True, True),
    "grh-ratio": ("q", ("min_ratio", "max_ratio"), True, False),
}


def _numeric_series(rows, x_col, y_col):
    xs, ys = [], []
    for row in rows:
        x, y = row.get(x_col), row.get(y_col)
        if isinstance(x, bool) or isinstance(y, bool):
            continue
        if isinstance(x, (int, float)) and isinstance(y, (int, float)):
            xs.append(float(x))
            ys.append(float(y))
    return xs, ys


def render_report_figure(report: ExperimentReport, out_path: str | Path) -> Path | None:
    """Write one PNG summarizing the report rows; None when nothing plots."""
    kind = report.config.get("kind", "")
    spec = _PLOT_SPEC.get(kind)
    if spec is None or not report.rows:
        return None
    x_col, y_cols, log_x, log_y = spec
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    drew = False
    for y_col in y_cols:
        xs, ys = _numeric_series(report.rows, x_col, y_col)
        if not xs:
            continue
        ax.plot(xs, ys, marker=".", linestyle="-", linewidth=0.9, markersize=5, label=y_col)
        drew = True
    if not drew:
        plt.close(fig)
        return None
    if log_x:
        ax.set_xscale("log")
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(x_col)
    ax.set_title(kind)
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
