"""AUNDT-vs-M charts as self-contained SVG files."""

from __future__ import annotations

import csv
from collections import OrderedDict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import EdgeDeployError  # noqa: E402

GROUP_COLUMNS = ("mu", "gamma", "lambda", "beta", "coop_reach", "cache_model")
LABELS = {"mu": "μ", "gamma": "γ", "lambda": "λ", "beta": "β", "coop_reach": "L", "cache_model": ""}


class MalformedCsv(EdgeDeployError):
    pass


def read_rows(csv_path) -> list[dict]:
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or "M" not in reader.fieldnames:
            raise MalformedCsv(f"{csv_path}: missing header with an 'M' column")
        rows = list(reader)
    if not rows:
        raise MalformedCsv(f"{csv_path}: no data rows")
    return rows


def _float(row, key, path):
    try:
        return float(row[key])
    except (KeyError, TypeError, ValueError):
        raise MalformedCsv(f"{path}: bad or missing value for {key!r}") from None


def _groups(rows, columns):
    groups = OrderedDict()
    for row in rows:
        key = tuple(row.get(c, "") for c in columns)
        groups.setdefault(key, []).append(row)
    return groups


def _label(key, columns, varying):
    parts = []
    for col, value in zip(columns, key):
        if col in varying:
            name = LABELS[col]
            parts.append(f"{name}={value}" if name else value)
    return ", ".join(parts) or "AUNDT"


def plot_csv(csv_path, out_path) -> Path:
    """Render an analyze or simulate CSV; identical input gives identical bytes."""
    rows = read_rows(csv_path)
    simulated = "empirical_aundt" in rows[0]
    analytic_col = "analytic_aundt" if simulated else "aundt"
    if analytic_col not in rows[0]:
        raise MalformedCsv(f"{csv_path}: expected an {analytic_col!r} column")

    columns = [c for c in GROUP_COLUMNS if c in rows[0]]
    groups = _groups(rows, columns)
    varying = {c for i, c in enumerate(columns) if len({k[i] for k in groups}) > 1}

    with plt.rc_context({"svg.hashsalt": "edgedeploy", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.8))
        for idx, (key, members) in enumerate(groups.items()):
            members.sort(key=lambda r: _float(r, "M", csv_path))
            ms = [_float(r, "M", csv_path) for r in members]
            color = f"C{idx % 10}"
            label = _label(key, columns, varying)
            analytic = [_float(r, analytic_col, csv_path) for r in members]
            if simulated:
                ax.plot(ms, analytic, linestyle="--", color=color, label=f"{label} (closed form)")
                empirical = [_float(r, "empirical_aundt", csv_path) for r in members]
                ax.plot(ms, empirical, linestyle="none", marker="o", mfc="none",
                        color=color, label=f"{label} (simulated)")
            else:
                ax.plot(ms, analytic, marker=".", color=color, label=label)
        ax.set_xlabel("BSs per edge host, M")
        ax.set_ylabel("AUNDT")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize="small")
        fig.tight_layout()
        out_path = Path(out_path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out_path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return out_path
