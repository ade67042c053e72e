"""Static SVG rendering of an ROC curve."""
from xml.sax.saxutils import escape

from . import __version__
from .documents import fmt

SIZE = 400.0
MARGIN = 48.0
CANVAS = SIZE + 2 * MARGIN


def to_canvas(fpr, tpr):
    return MARGIN + fpr * SIZE, MARGIN + (1.0 - tpr) * SIZE


def render(curve, marker=None, title="ROC curve"):
    """SVG text for ``curve``; ``marker`` is an optional (fpr, tpr) point."""
    lo, hi = MARGIN, MARGIN + SIZE
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS:g}" height="{CANVAS:g}" '
        f'viewBox="0 0 {CANVAS:g} {CANVAS:g}">',
        f"<!-- ldaroc {__version__} -->",
        f"<title>{escape(title)}</title>",
        f'<rect x="{lo:g}" y="{lo:g}" width="{SIZE:g}" height="{SIZE:g}" fill="none" stroke="#000" stroke-width="1"/>',
    ]
    for k in range(11):
        t = k / 10
        x, y = to_canvas(t, t)
        parts.append(f'<line x1="{x:g}" y1="{hi:g}" x2="{x:g}" y2="{hi + 5:g}" stroke="#000"/>')
        parts.append(f'<line x1="{lo - 5:g}" y1="{y:g}" x2="{lo:g}" y2="{y:g}" stroke="#000"/>')
        if k % 5 == 0:
            parts.append(f'<text x="{x:g}" y="{hi + 18:g}" font-size="11" text-anchor="middle">{t:g}</text>')
            parts.append(f'<text x="{lo - 8:g}" y="{y + 4:g}" font-size="11" text-anchor="end">{t:g}</text>')
    parts.append(f'<text x="{CANVAS / 2:g}" y="{CANVAS - 8:g}" font-size="13" text-anchor="middle">false positive rate</text>')
    parts.append(f'<text x="14" y="{CANVAS / 2:g}" font-size="13" text-anchor="middle" '
                 f'transform="rotate(-90 14 {CANVAS / 2:g})">true positive rate</text>')
    parts.append(f'<line id="chance" x1="{lo:g}" y1="{hi:g}" x2="{hi:g}" y2="{lo:g}" '
                 'stroke="#888" stroke-dasharray="4 4"/>')
    pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in (to_canvas(f, t) for f, t in zip(curve.fpr, curve.tpr)))
    parts.append(f'<polyline id="roc" points="{pts}" fill="none" stroke="#1f77b4" stroke-width="2"/>')
    if marker is not None:
        x, y = to_canvas(*marker)
        parts.append(f'<circle id="youden" cx="{fmt(x)}" cy="{fmt(y)}" r="4" fill="#d62728"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
