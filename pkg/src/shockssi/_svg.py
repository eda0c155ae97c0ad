"""Minimal hand-written SVG output: log-log line charts and cell contours.

Nothing here is numerically significant; CSV files are the canonical
outputs and these drawings only mirror them.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 720, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 80, 30, 60

# viridis anchors, interpolated to the ramp length
_ANCHORS = np.array([
    [68, 1, 84], [72, 40, 120], [62, 74, 137], [49, 104, 142],
    [38, 130, 142], [31, 158, 137], [53, 183, 121], [109, 205, 89],
    [180, 222, 44], [253, 231, 37],
], dtype=float)


def color_ramp(steps=256):
    pos = np.linspace(0, 1, len(_ANCHORS))
    grid = np.linspace(0, 1, steps)
    rgb = np.column_stack([np.interp(grid, pos, _ANCHORS[:, c]) for c in range(3)])
    return ["#%02x%02x%02x" % tuple(int(round(v)) for v in row) for row in rgb]


def _decades(lo, hi):
    return [10.0**k for k in range(int(np.floor(lo)), int(np.ceil(hi)) + 1)
            if lo - 1e-9 <= k <= hi + 1e-9]


class _Axes:
    def __init__(self, xlim, ylim, xlog=True, ylog=True):
        self.xlog, self.ylog = xlog, ylog
        self.x0, self.x1 = (np.log10(xlim) if xlog else xlim)
        self.y0, self.y1 = (np.log10(ylim) if ylog else ylim)
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1
        self.w = WIDTH - LEFT - RIGHT
        self.h = HEIGHT - TOP - BOTTOM

    def px(self, x):
        x = np.log10(x) if self.xlog else np.asarray(x, float)
        return LEFT + (x - self.x0) / (self.x1 - self.x0) * self.w

    def py(self, y):
        y = np.log10(y) if self.ylog else np.asarray(y, float)
        return TOP + self.h - (y - self.y0) / (self.y1 - self.y0) * self.h


def _header(title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="18" text-anchor="middle">{escape(title)}</text>',
    ]


def _frame(ax, xlabel, ylabel):
    out = [f'<rect x="{LEFT}" y="{TOP}" width="{ax.w}" height="{ax.h}" '
           'fill="none" stroke="black"/>']
    out.append(f'<text x="{LEFT + ax.w / 2}" y="{HEIGHT - 15}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="20" y="{TOP + ax.h / 2}" text-anchor="middle" '
               f'transform="rotate(-90 20 {TOP + ax.h / 2})">{escape(ylabel)}</text>')
    if ax.xlog:
        xt = _decades(ax.x0, ax.x1)
    else:
        xt = np.linspace(ax.x0, ax.x1, 6)
    for v in xt:
        p = float(ax.px(v))
        out.append(f'<line x1="{p:.2f}" y1="{TOP + ax.h}" x2="{p:.2f}" '
                   f'y2="{TOP + ax.h + 5}" stroke="black"/>')
        out.append(f'<text x="{p:.2f}" y="{TOP + ax.h + 20}" '
                   f'text-anchor="middle">{v:g}</text>')
    yt = _decades(ax.y0, ax.y1) if ax.ylog else np.linspace(ax.y0, ax.y1, 6)
    for v in yt:
        p = float(ax.py(v))
        out.append(f'<line x1="{LEFT - 5}" y1="{p:.2f}" x2="{LEFT}" y2="{p:.2f}" '
                   'stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{p + 4:.2f}" text-anchor="end">{v:g}</text>')
    return out


def _polyline(xs, ys, color, dash=None):
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"{extra}/>')


def loglog_chart(freqs, series, title, ylabel, right=None):
    """Render named positive series against frequency.

    `series` maps a legend label to values. `right` is an optional
    ``(label, values)`` pair drawn dashed on a linear right-hand axis.
    """
    freqs = np.asarray(freqs, float)
    vals = np.concatenate([np.asarray(v, float) for v in series.values()])
    pos = vals[np.isfinite(vals) & (vals > 0)]
    if pos.size:
        ylim = (pos.min(), pos.max())
    else:
        ylim = (1.0, 10.0)
    ylim = (10 ** np.floor(np.log10(ylim[0])), 10 ** np.ceil(np.log10(ylim[1])))
    ax = _Axes((freqs.min(), freqs.max()), ylim)
    out = _header(title) + _frame(ax, "f (Hz)", ylabel)
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    for k, (name, v) in enumerate(series.items()):
        v = np.asarray(v, float)
        ok = np.isfinite(v) & (v > 0)
        out.append(_polyline(ax.px(freqs[ok]), ax.py(v[ok]), colors[k % 4]))
        out.append(f'<text x="{LEFT + 10}" y="{TOP + 16 + 14 * k}" '
                   f'fill="{colors[k % 4]}">{escape(name)}</text>')
    if right is not None:
        rlabel, rv = right
        rv = np.asarray(rv, float)
        ok = np.isfinite(rv)
        top = max(float(rv[ok].max()) if ok.any() else 1.0, 1.0)
        rax = _Axes((freqs.min(), freqs.max()), (0.0, np.ceil(top)), ylog=False)
        out.append(_polyline(rax.px(freqs[ok]), rax.py(rv[ok]), "black", dash="6,4"))
        for v in np.linspace(0, np.ceil(top), 6):
            p = float(rax.py(v))
            out.append(f'<text x="{WIDTH - RIGHT + 8}" y="{p + 4:.2f}">{v:g}</text>')
        out.append(f'<text x="{WIDTH - 20}" y="{TOP + rax.h / 2}" text-anchor="middle" '
                   f'transform="rotate(90 {WIDTH - 20} {TOP + rax.h / 2})">'
                   f'{escape(rlabel)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def contour_cells(times, freqs, values, floor, ceiling, title, steps=256,
                  max_columns=600):
    """Nearest-cell time-frequency map with a log10 colour scale.

    Time runs along x; frequency on a log10 y axis. When there are more
    time samples than `max_columns`, consecutive rows are merged by their
    maximum so peaks survive the reduction.
    """
    times = np.asarray(times, float)
    freqs = np.asarray(freqs, float)
    vals = np.clip(np.asarray(values, float), floor, ceiling)
    m = times.size
    if m > max_columns:
        edges = np.linspace(0, m, max_columns + 1).astype(int)
        vals = np.maximum.reduceat(vals, edges[:-1], axis=0)
        tcell = times[edges[:-1]]
        tend = np.append(times[edges[1:-1]], times[-1])
    else:
        tcell = times
        tend = np.append(times[1:], times[-1] + (times[1] - times[0] if m > 1 else 1))
    level = (np.log10(vals) - np.log10(floor)) / (np.log10(ceiling) - np.log10(floor))
    idx = np.clip((level * (steps - 1)).round().astype(int), 0, steps - 1)
    ramp = color_ramp(steps)

    # frequency cell edges at geometric midpoints
    lf = np.log10(freqs)
    if lf.size > 1:
        mids = (lf[1:] + lf[:-1]) / 2
        fedge = np.concatenate([[lf[0] - (mids[0] - lf[0])], mids,
                                [lf[-1] + (lf[-1] - mids[-1])]])
    else:
        fedge = np.array([lf[0] - 0.05, lf[0] + 0.05])
    ax = _Axes((times[0], times[-1] if m > 1 else times[0] + 1),
               (10 ** fedge[0], 10 ** fedge[-1]), xlog=False)
    out = _header(title)
    for i in range(tcell.size):
        x0, x1 = float(ax.px(tcell[i])), float(ax.px(tend[i]))
        for j in range(freqs.size):
            y0, y1 = float(ax.py(10 ** fedge[j + 1])), float(ax.py(10 ** fedge[j]))
            out.append(f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{max(x1 - x0, 0.5):.2f}" '
                       f'height="{y1 - y0:.2f}" fill="{ramp[idx[i, j]]}"/>')
    out += _frame(ax, "t (s)", "f (Hz)")
    # colour bar
    bx = WIDTH - RIGHT + 20
    for s in range(0, steps, 4):
        y = TOP + ax.h - (s + 4) / steps * ax.h
        out.append(f'<rect x="{bx}" y="{y:.2f}" width="14" height="{ax.h * 4 / steps + 0.5:.2f}" '
                   f'fill="{ramp[s]}"/>')
    out.append(f'<text x="{bx}" y="{TOP + ax.h + 16}">{floor:g}</text>')
    out.append(f'<text x="{bx}" y="{TOP - 4}">{ceiling:g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
