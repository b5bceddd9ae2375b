"""Two-axis parameter sweeps and their CSV / SVG renderings."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field, fields

from .config import ConfigError, RunConfig, fmt
from .model import (
    BeliefState,
    DomainError,
    RaceParameters,
    Region,
    ThresholdSet,
    classify_region,
    compute_thresholds,
)
from .svg import SvgCanvas

SWEEPABLE = tuple(f.name for f in fields(RaceParameters)) + ("v", "pi")

REGION_COLOURS = {
    Region.WAIT_BELOW_ALL: "#f2f2f2",
    Region.SUICIDE_REGION: "#f5a142",
    Region.PROFITABLE_WAIT: "#bcd9f0",
    Region.RACE_VIABLE: "#c9e8c0",
}


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> list[float]:
        span = self.hi - self.lo
        return [self.lo + span * i / (self.steps - 1) for i in range(self.steps)]


@dataclass(frozen=True)
class Cell:
    x: float
    y: float
    v: float
    pi: float
    thresholds: ThresholdSet
    label: Region


@dataclass
class SweepGrid:
    x_axis: Axis
    y_axis: Axis
    cells: list[Cell] = field(repr=False)
    annotation: tuple[float, float] | None = None

    def column(self, i: int) -> list[Cell]:
        """Cells sharing the i-th x value, ordered by y."""
        n = self.y_axis.steps
        return self.cells[i * n:(i + 1) * n]


def _cell_inputs(cfg: RunConfig, xname: str, x: float, yname: str, y: float):
    overrides = {}
    v = cfg.v
    beliefs = cfg.beliefs()
    for name, value in ((xname, x), (yname, y)):
        if name == "v":
            v = value
        elif name == "pi":
            beliefs = BeliefState.symmetric(value)
        else:
            overrides[name] = value
    return cfg.race_parameters().with_(**overrides), beliefs, v


def run_sweep(cfg: RunConfig) -> SweepGrid:
    xa = Axis(cfg.x_axis, cfg.x_min, cfg.x_max, cfg.x_steps)
    ya = Axis(cfg.y_axis, cfg.y_min, cfg.y_max, cfg.y_steps)
    for axis in (xa, ya):
        if axis.name not in SWEEPABLE:
            raise ConfigError(f"cannot sweep {axis.name!r}; sweepable inputs are {SWEEPABLE}")
    if xa.name == ya.name:
        raise ConfigError("the two sweep axes must differ")
    cells = []
    try:
        for x in xa.values():
            for y in ya.values():
                params, beliefs, v = _cell_inputs(cfg, xa.name, x, ya.name, y)
                ts = compute_thresholds(beliefs, params, cfg.include_private)
                label = classify_region(v, beliefs.pi_self, params, cfg.include_private)
                cells.append(Cell(x, y, v, beliefs.pi_self, ts, label.region))
    except DomainError as exc:
        raise ConfigError(f"sweep cell ({xa.name}={x!r}, {ya.name}={y!r}): {exc}") from exc
    annotation = None
    if cfg.annotate_x is not None and cfg.annotate_y is not None:
        annotation = (cfg.annotate_x, cfg.annotate_y)
    return SweepGrid(xa, ya, cells, annotation)


THRESHOLD_COLUMNS = ("v_preempt", "v_survival", "v_nuclear", "v_saviour", "v_liability",
                     "immediate_deploy", "label")


def sweep_csv(grid: SweepGrid) -> str:
    axes = (grid.x_axis.name, grid.y_axis.name)
    extra = [name for name in ("v", "pi") if name not in axes]
    buf = io.StringIO()
    buf.write(",".join([*axes, *extra, *THRESHOLD_COLUMNS]) + "\n")
    for c in grid.cells:
        t = c.thresholds
        row = [fmt(c.x), fmt(c.y)]
        row += [fmt(c.v if name == "v" else c.pi) for name in extra]
        row += [fmt(t.v_preempt), fmt(t.v_survival), fmt(t.v_nuclear), fmt(t.v_saviour),
                fmt(t.v_liability), fmt(t.immediate_deploy), c.label.value]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def sweep_svg(grid: SweepGrid, width: int = 640, height: int = 480) -> str:
    ml, mr, mt, mb = 70, 170, 30, 55
    pw, ph = width - ml - mr, height - mt - mb
    xa, ya = grid.x_axis, grid.y_axis
    svg = SvgCanvas(width, height)

    def px(x):
        return ml + (x - xa.lo) / (xa.hi - xa.lo) * pw

    def py(y):
        y = min(max(y, ya.lo), ya.hi)
        return mt + ph - (y - ya.lo) / (ya.hi - ya.lo) * ph

    svg.rect(0, 0, width, height, fill="white")
    xs = xa.values()
    if ya.name == "v":
        columns = [grid.column(i)[0].thresholds for i in range(len(xs))]
        lower = [py(t.v_preempt) for t in columns]
        upper = [py(max(t.v_survival, t.v_preempt)) for t in columns]
        band = [(px(x), y) for x, y in zip(xs, upper)] + [(px(x), y) for x, y in zip(reversed(xs), reversed(lower))]
        svg.polygon(band, fill=REGION_COLOURS[Region.SUICIDE_REGION], fill_opacity="0.6", stroke="none")
        finite_p = [(px(x), py(t.v_preempt)) for x, t in zip(xs, columns) if math.isfinite(t.v_preempt)]
        finite_s = [(px(x), py(t.v_survival)) for x, t in zip(xs, columns) if math.isfinite(t.v_survival)]
        if finite_p:
            svg.polyline(finite_p, stroke="#d62728", stroke_width="2", stroke_dasharray="6,4")
        if finite_s:
            svg.polyline(finite_s, stroke="#2ca02c", stroke_width="2")
        legend = [("#d62728", "preemption threshold"), ("#2ca02c", "survival threshold"),
                  (REGION_COLOURS[Region.SUICIDE_REGION], "suicide region")]
    else:
        ys = ya.values()
        dx = pw / (len(xs) - 1)
        dy = ph / (len(ys) - 1)
        for c in grid.cells:
            svg.rect(px(c.x) - dx / 2, py(c.y) - dy / 2, dx, dy, fill=REGION_COLOURS[c.label], stroke="none")
        legend = [(REGION_COLOURS[r], r.value) for r in Region]

    # frame, ticks, labels
    svg.rect(ml, mt, pw, ph, fill="none", stroke="black")
    for i in range(6):
        xv = xa.lo + (xa.hi - xa.lo) * i / 5
        yv = ya.lo + (ya.hi - ya.lo) * i / 5
        svg.line(px(xv), mt + ph, px(xv), mt + ph + 5, stroke="black")
        svg.text(px(xv), mt + ph + 18, fmt(round(xv, 6)), text_anchor="middle")
        svg.line(ml - 5, py(yv), ml, py(yv), stroke="black")
        svg.text(ml - 8, py(yv) + 4, fmt(round(yv, 6)), text_anchor="end")
    svg.text(ml + pw / 2, height - 12, xa.name, text_anchor="middle")
    svg.text(16, mt + ph / 2, ya.name, text_anchor="middle", transform=f"rotate(-90 16 {mt + ph / 2:.2f})")

    if grid.annotation is not None:
        ax, ay = grid.annotation
        svg.circle(px(ax), py(ay), 5, fill="#1f77b4", stroke="black")
        legend.append(("#1f77b4", "annotated point"))

    lx = ml + pw + 15
    for i, (colour, name) in enumerate(legend):
        y = mt + 10 + 20 * i
        svg.rect(lx, y - 9, 12, 12, fill=colour, stroke="black")
        svg.text(lx + 18, y + 1, name)
    return svg.render()
