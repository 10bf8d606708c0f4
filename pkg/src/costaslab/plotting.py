"""Figure rendering for the report paths (matplotlib, file output only),
plus a minimal static-SVG scatter emitter for cloud point sets."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["save_cloud_figure", "save_ruler_figure", "write_cloud_svg"]


def save_cloud_figure(points, path, title=None):
    """Scatter of exact points (embedded to float), 1:1 aspect."""
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.scatter(xs, ys, s=10, color="black")
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_ruler_figure(marks, path, title=None):
    """Ruler diagram: one vertical tick per mark on a horizontal baseline."""
    xs = [float(m) for m in marks]
    fig, ax = plt.subplots(figsize=(8, 1.8))
    ax.eventplot(xs, orientation="horizontal", colors="black", linelengths=0.8)
    ax.set_yticks([])
    ax.set_xlabel("mark position")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def write_cloud_svg(points, path, size: int = 640, radius: float = 2.5):
    """Static SVG scatter: fixed viewport, one circle per point, no scripting."""
    pts = [(float(x), float(y)) for x, y in points]
    if pts:
        xs, ys = zip(*pts)
        lo = min(min(xs), min(ys))
        hi = max(max(xs), max(ys))
    else:
        lo, hi = 0.0, 1.0
    span = (hi - lo) or 1.0
    pad = 0.03 * span
    lo, span = lo - pad, span + 2 * pad
    scale = size / span
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for x, y in pts:
        cx = (x - lo) * scale
        cy = size - (y - lo) * scale
        lines.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{radius}" fill="black"/>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
