"""Entanglement sweeps, threshold reports and plot-script generation."""
import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .equilibrium import NASH_EPS, Region, classify_region, is_nash, thresholds
from .errors import EmptyResultError, ValidationError
from .game import PayoffTable
from .oracle import grid_best_response
from .strategy import format_strategy
from .tensor import build_tensor

SPACES = ("two-param", "full")
FORMATS = ("csv", "json")
CSV_HEADER = ("gamma", "region", "eq_index", "strategy_a", "strategy_b", "payoff_a", "payoff_b")
# offset of the extra samples placed on each side of a threshold
THRESHOLD_OFFSET = 1e-9


def _g(x):
    return format(float(x) + 0.0, ".12g")


@dataclass(frozen=True)
class SweepConfig:
    table: PayoffTable
    space: str = "two-param"
    gamma_min: float = 0.0
    gamma_max: float = math.pi / 2
    steps: int = 100
    fmt: str = "csv"
    eps: float = NASH_EPS
    grid_n: int = None

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValidationError(f"space must be one of {SPACES}, got {self.space!r}")
        if self.fmt not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if not 0.0 <= self.gamma_min < self.gamma_max <= math.pi / 2:
            raise ValidationError(
                f"need 0 <= gamma_min < gamma_max <= pi/2, got [{self.gamma_min}, {self.gamma_max}]")
        if self.steps < 2:
            raise ValidationError(f"steps must be at least 2, got {self.steps}")
        if not self.eps > 0:
            raise ValidationError("eps must be positive")
        if self.grid_n is not None and self.grid_n < 8:
            raise ValidationError("grid resolution must be at least 8")

    def to_dict(self):
        return {
            "payoffs": dict(zip("rpts", self.table.as_tuple())),
            "space": self.space,
            "gamma_min": self.gamma_min,
            "gamma_max": self.gamma_max,
            "steps": self.steps,
            "eps": self.eps,
            "grid_n": self.grid_n,
        }


@dataclass(eq=False)
class SweepRow:
    gamma: float
    region: Region
    equilibria: list
    thresholds: object
    boundary: bool = False
    verified: bool = True
    oracle_gap: float = None

    @property
    def count(self):
        return len(self.equilibria)

    def to_dict(self):
        out = {
            "gamma": self.gamma,
            "region": self.region.value,
            "boundary": self.boundary,
            "verified": self.verified,
            "equilibrium_count": self.count,
            "equilibria": [eq.to_dict() for eq in self.equilibria],
        }
        if self.oracle_gap is not None:
            out["oracle_gap"] = self.oracle_gap
        return out


def threshold_points(table, space):
    th = thresholds(table)
    if space == "full":
        return [th.gamma_b]
    if th.regime == "r+p=t+s":
        return [th.gamma_th1]
    return sorted({th.gamma_th1, th.gamma_th2})


def sample_gammas(config):
    grid = np.linspace(config.gamma_min, config.gamma_max, config.steps)
    extra = []
    for g in threshold_points(config.table, config.space):
        for x in (g - THRESHOLD_OFFSET, g + THRESHOLD_OFFSET):
            if config.gamma_min <= x <= config.gamma_max:
                extra.append(x)
    return np.unique(np.concatenate([grid, extra]))


def _sweep_point(config, gamma):
    report = classify_region(config.table, gamma, config.space, config.eps)
    tensor = build_tensor(config.table, gamma, config.space)
    verified = all(is_nash(tensor, eq.strategy_a, eq.strategy_b, config.eps)
                   for eq in report.equilibria)
    if report.region is Region.NO_PURE_NE:
        verified = False
    gap = None
    if config.grid_n is not None and report.equilibria:
        # how far the grid optimum falls short of each equilibrium payoff
        gap = 0.0
        for eq in report.equilibria:
            _, grid_a = grid_best_response(tensor, eq.strategy_b, config.grid_n)
            _, grid_b = grid_best_response(tensor, eq.strategy_a, config.grid_n)
            gap = max(gap, eq.payoff_a - grid_a, eq.payoff_b - grid_b)
    return SweepRow(float(gamma), report.region, report.equilibria, report.thresholds,
                    report.boundary, verified, gap)


def run_sweep(config):
    rows = [_sweep_point(config, g) for g in sample_gammas(config)]
    rows.sort(key=lambda row: row.gamma)
    return rows


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        if not row.equilibria:
            writer.writerow([_g(row.gamma), row.region.value, "", "", "", "", ""])
            continue
        for k, eq in enumerate(row.equilibria):
            writer.writerow([
                _g(row.gamma), row.region.value, k,
                format_strategy(eq.strategy_a), format_strategy(eq.strategy_b),
                _g(eq.payoff_a), _g(eq.payoff_b),
            ])
    return buf.getvalue()


def rows_to_json(rows, config):
    doc = {
        "config": config.to_dict(),
        "thresholds": thresholds(config.table).to_dict(),
        "rows": [row.to_dict() for row in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def render(rows, config):
    return rows_to_csv(rows) if config.fmt == "csv" else rows_to_json(rows, config)


def threshold_report(table):
    th = thresholds(table)
    lo, hi = sorted((th.gamma_th1, th.gamma_th2))
    if th.regime == "r+p=t+s":
        two = [("Classical", 0.0, th.gamma_th1), ("Quantum", th.gamma_th1, math.pi / 2)]
    else:
        middle = "Transitional" if th.regime == "r+p<t+s" else "Coexistent"
        two = [("Classical", 0.0, lo), (middle, lo, hi), ("Quantum", hi, math.pi / 2)]
    full = [("InfiniteFamily", 0.0, th.gamma_b), ("NoPureNE", th.gamma_b, math.pi / 2)]
    return {
        "payoffs": dict(zip("rpts", table.as_tuple())),
        **th.to_dict(),
        "two_param_regions": [{"region": n, "from": a, "to": b} for n, a, b in two],
        "full_regions": [{"region": n, "from": a, "to": b} for n, a, b in full],
    }


def format_threshold_report(report):
    pay = report["payoffs"]
    lines = [
        "payoffs: r={r:g} p={p:g} t={t:g} s={s:g}".format(**pay),
        f"regime: {report['regime']}",
    ]
    for key in ("gamma_th1", "gamma_th2", "gamma_b"):
        val = report[key]
        lines.append(f"{key:<9} = {_g(val)} rad ({_g(math.degrees(val))} deg)")
    lines.append("two-parameter strategies:")
    for reg in report["two_param_regions"]:
        lines.append(f"  {reg['region']:<14} {_g(reg['from'])} .. {_g(reg['to'])}")
    lines.append("full SU(2) strategies:")
    for reg in report["full_regions"]:
        lines.append(f"  {reg['region']:<14} {_g(reg['from'])} .. {_g(reg['to'])}")
    return "\n".join(lines) + "\n"


def region_spans(rows):
    """Contiguous runs of equal region label as ``(label, start, end)``."""
    spans = []
    for row in rows:
        label = row.region.value
        if spans and spans[-1][0] == label:
            spans[-1][2] = row.gamma
        else:
            spans.append([label, row.gamma, row.gamma])
    return [tuple(s) for s in spans]


_PLOT_TEMPLATE = '''\
"""Payoff of Alice against entanglement, rendered from a sweep CSV.

Usage: python {script_name} [CSV] [PNG]
"""
import csv
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = sys.argv[1] if len(sys.argv) > 1 else {csv_path!r}
PNG_PATH = sys.argv[2] if len(sys.argv) > 2 else {png_path!r}
TITLE = {title!r}
THRESHOLDS = {thresholds!r}
REGIONS = {regions!r}
COLORS = {{"Classical": "#dde8f5", "Transitional": "#f7e3c8", "Coexistent": "#e3d5f0",
          "Quantum": "#d8f0d8", "InfiniteFamily": "#dde8f5", "NoPureNE": "#f0d8d8"}}

series = {{}}
with open(CSV_PATH, newline="") as fh:
    for rec in csv.DictReader(fh):
        if rec["payoff_a"] == "":
            continue
        key = (rec["region"], rec["strategy_a"], rec["strategy_b"])
        series.setdefault(key, []).append((float(rec["gamma"]), float(rec["payoff_a"])))

fig, ax = plt.subplots(figsize=(7, 4.5))
for label, start, end in REGIONS:
    ax.axvspan(start, end, color=COLORS.get(label, "#eeeeee"), alpha=0.6, lw=0)
    ax.text(0.5 * (start + end), 1.01, label, transform=ax.get_xaxis_transform(),
            ha="center", va="bottom", fontsize=8)
for name, value in THRESHOLDS:
    ax.axvline(value, color="k", ls="--", lw=0.8)
    ax.text(value, 0.02, name, transform=ax.get_xaxis_transform(), rotation=90,
            ha="right", va="bottom", fontsize=8)
for (region, sa, sb), pts in sorted(series.items()):
    pts.sort()
    xs = [g for g, _ in pts]
    ys = [v for _, v in pts]
    style = "-" if len(pts) > 1 else "o"
    ax.plot(xs, ys, style, lw=1.6, label=f"{{region}}: ({{sa}}, {{sb}})")
ax.set_xlabel("gamma (rad)")
ax.set_ylabel("payoff of Alice")
ax.set_title(TITLE, pad=18)
ax.legend(fontsize=7, loc="best")
fig.tight_layout()
fig.savefig(PNG_PATH, dpi=150)
print(PNG_PATH)
'''


def emit_plot_script(rows, path, csv_path="sweep.csv", table=None, space=None):
    """Write a standalone matplotlib script that plots the sweep CSV."""
    if not rows:
        raise EmptyResultError("no sweep rows to plot")
    lo, hi = rows[0].gamma, rows[-1].gamma
    th = rows[0].thresholds
    names = {"full": [("gamma_B", th.gamma_b)]}.get(
        space, [("gamma_th1", th.gamma_th1), ("gamma_th2", th.gamma_th2)])
    if space != "full" and th.regime == "r+p=t+s":
        names = [("gamma_th", th.gamma_th1)]
    inside = [(n, v) for n, v in names if lo < v < hi]
    title = "Nash payoff vs entanglement"
    if table is not None:
        title += " (r={:g}, p={:g}, t={:g}, s={:g})".format(*table.as_tuple())
    png = str(csv_path).rsplit(".", 1)[0] + ".png"
    text = _PLOT_TEMPLATE.format(
        script_name=str(path).rsplit("/", 1)[-1],
        csv_path=str(csv_path),
        png_path=png,
        title=title,
        thresholds=inside,
        regions=region_spans(rows),
    )
    with open(path, "w") as fh:
        fh.write(text)
    return text
