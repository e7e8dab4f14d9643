"""Two-column plot data files and minimal standalone SVG figures."""
from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np


def write_xy(path: str | Path, xs, ys, xlabel: str, ylabel: str, labels=None) -> Path:
    """Whitespace-separated ``x y`` lines under a ``# xlabel ylabel`` header.

    Optional per-point labels go in a trailing comment.
    """
    path = Path(path)
    lines = [f"# {xlabel} {ylabel}"]
    for i, (x, y) in enumerate(zip(xs, ys)):
        tail = f"  # {labels[i]}" if labels is not None else ""
        lines.append(f"{float(x)!r} {float(y)!r}{tail}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_svg(path: str | Path, points, xlabel: str, ylabel: str, title: str = "",
              line=None, width: int = 480, height: int = 360) -> Path:
    """Scatter ``points`` [(x, y)], optionally with a polyline ``line`` [(x, y)]."""
    path = Path(path)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    allp = pts if line is None else np.vstack([pts, np.asarray(line, dtype=float).reshape(-1, 2)])
    if allp.size == 0:
        allp = np.array([[0.0, 0.0], [1.0, 1.0]])
    (x0, y0), (x1, y1) = allp.min(axis=0), allp.max(axis=0)
    x1 = x1 if x1 > x0 else x0 + 1.0
    y1 = y1 if y1 > y0 else y0 + 1.0
    ml, mr, mt, mb = 60, 20, 30, 45

    def sx(v):
        return ml + (v - x0) / (x1 - x0) * (width - ml - mr)

    def sy(v):
        return height - mb - (v - y0) / (y1 - y0) * (height - mt - mb)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'font-family="sans-serif" font-size="11">',
           f'<rect x="{ml}" y="{mt}" width="{width - ml - mr}" height="{height - mt - mb}" '
           f'fill="none" stroke="black"/>',
           f'<text x="{width / 2}" y="18" text-anchor="middle">{escape(title)}</text>',
           f'<text x="{width / 2}" y="{height - 8}" text-anchor="middle">{escape(xlabel)}</text>',
           f'<text x="14" y="{height / 2}" text-anchor="middle" '
           f'transform="rotate(-90 14 {height / 2})">{escape(ylabel)}</text>']
    for v in (x0, x1):
        out.append(f'<text x="{sx(v):.1f}" y="{height - mb + 14}" text-anchor="middle">{v:.3g}</text>')
    for v in (y0, y1):
        out.append(f'<text x="{ml - 4}" y="{sy(v) + 4:.1f}" text-anchor="end">{v:.3g}</text>')
    if line is not None and len(line):
        coords = " ".join(f"{sx(a):.1f},{sy(b):.1f}" for a, b in line)
        out.append(f'<polyline points="{coords}" fill="none" stroke="steelblue"/>')
    for a, b in pts:
        out.append(f'<circle cx="{sx(a):.1f}" cy="{sy(b):.1f}" r="3" fill="black"/>')
    out.append("</svg>")
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path
