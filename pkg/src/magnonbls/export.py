"""Deterministic text emitters (CSV, JSON, SVG) and all-or-nothing file writing."""
import csv
import enum
import io
import json
import math
import os
import tempfile

import numpy as np

from .config import SCHEMA_VERSION


def _plain(value):
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, dict):
        return {str(_plain(k)): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    return value


def to_csv(rows, columns):
    """CSV text with a header row; floats written with ``repr`` (round-trippable)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def _cell(value):
    value = _plain(value)
    return repr(value) if isinstance(value, float) else value


def to_json(payload):
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(_plain(payload))
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def svg_plot(x, traces, title="", xlabel="", ylabel="", width=640, height=400):
    """Line plot of one or more traces sharing ``x``: axes, polylines, legend."""
    x = np.asarray(x, float)
    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
    ml, mr, mt, mb = 60, 20, 40, 50
    pw, ph = width - ml - mr, height - mt - mb
    x0, x1 = float(x.min()), float(x.max())
    ys = [np.asarray(y, float) for y in traces.values()]
    y1 = max(float(np.max(y)) for y in ys) if ys else 1.0
    y1 = y1 if y1 > 0 else 1.0
    sx = pw / (x1 - x0) if x1 > x0 else 1.0

    def px(v):
        return ml + (v - x0) * sx

    def py(v):
        return mt + ph - v / y1 * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">{title}</text>',
           f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
           f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>']
    for v in np.linspace(x0, x1, 5):
        out.append(f'<text x="{px(v):.2f}" y="{mt + ph + 16}" text-anchor="middle" '
                   f'font-size="11">{v:.3g}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 10}" text-anchor="middle" '
               f'font-size="12">{xlabel}</text>')
    out.append(f'<text x="14" y="{mt + ph / 2:.1f}" text-anchor="middle" font-size="12" '
               f'transform="rotate(-90 14 {mt + ph / 2:.1f})">{ylabel}</text>')
    for k, (name, y) in enumerate(zip(traces, ys)):
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        color = colors[k % len(colors)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = mt + 14 + 16 * k
        out.append(f'<line x1="{ml + pw - 90}" y1="{ly}" x2="{ml + pw - 70}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw - 64}" y="{ly + 4}" font-size="12">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_outputs(directory, files):
    """Write ``{name: text}`` into ``directory``.

    Every file is first rendered into a scratch directory next to the target
    and only then moved into place, so an error leaves no partial outputs.
    """
    os.makedirs(directory, exist_ok=True)
    scratch = tempfile.mkdtemp(prefix=".partial-", dir=directory)
    try:
        for name, text in files.items():
            with open(os.path.join(scratch, name), "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        for name in files:
            os.replace(os.path.join(scratch, name), os.path.join(directory, name))
    finally:
        for leftover in os.listdir(scratch):
            os.remove(os.path.join(scratch, leftover))
        os.rmdir(scratch)
    return [os.path.join(directory, n) for n in sorted(files)]
