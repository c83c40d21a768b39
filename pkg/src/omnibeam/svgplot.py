"""Dependency-free SVG plots: polar beam traces and semilog BER curves.

Every trace embeds its raw samples in a ``data-values`` attribute so plots
can be regression-tested on the numbers rather than on pixel geometry.
"""

from __future__ import annotations

import math

import numpy as np

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(values) -> str:
    return " ".join(repr(float(v)) for v in np.asarray(values).ravel())


def _svg(width, height, body, title) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<text x="{width / 2}" y="18" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">{title}</text>\n'
    )
    return head + body + "</svg>\n"


def polar_pattern_svg(path, thetas, traces, title="beam pattern") -> None:
    """Polar plot of |g|(theta) traces.

    ``traces`` is a sequence of (label, magnitudes) pairs; a dashed unit
    circle marks the flat-coverage reference.
    """
    thetas = np.asarray(thetas, dtype=float)
    size = 520
    cx = cy = size / 2 + 10
    rmax = max(1.0, max(float(np.max(np.abs(v))) for _, v in traces))
    scale = (size / 2 - 40) / rmax
    body = []
    for ring in (0.5, 1.0, rmax):
        dash = ' stroke-dasharray="4 4"' if ring == 1.0 else ""
        body.append(
            f'<circle cx="{cx}" cy="{cy}" r="{ring * scale:.2f}" fill="none" '
            f'stroke="#999" stroke-width="0.7"{dash}/>'
        )
        body.append(
            f'<text x="{cx + ring * scale + 2:.2f}" y="{cy - 3:.2f}" font-size="9" '
            f'font-family="sans-serif" fill="#666">{ring:g}</text>'
        )
    body.append(
        f'<line x1="{cx - rmax * scale:.2f}" y1="{cy}" x2="{cx + rmax * scale:.2f}" '
        f'y2="{cy}" stroke="#ccc" stroke-width="0.7"/>'
    )
    body.append(
        f'<line x1="{cx}" y1="{cy - rmax * scale:.2f}" x2="{cx}" '
        f'y2="{cy + rmax * scale:.2f}" stroke="#ccc" stroke-width="0.7"/>'
    )
    for i, (label, values) in enumerate(traces):
        values = np.abs(np.asarray(values, dtype=float))
        closed_t = np.append(thetas, thetas[0])
        closed_v = np.append(values, values[0])
        pts = " ".join(
            f"{cx + v * scale * math.cos(t):.2f},{cy - v * scale * math.sin(t):.2f}"
            for t, v in zip(closed_t, closed_v)
        )
        color = _PALETTE[i % len(_PALETTE)]
        body.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.2" '
            f'data-label="{label}" data-values="{_fmt(values)}" points="{pts}"/>'
        )
        body.append(
            f'<text x="20" y="{34 + 14 * i}" font-size="11" font-family="sans-serif" '
            f'fill="{color}">{label}</text>'
        )
    with open(path, "w", newline="") as f:
        f.write(_svg(size + 20, size + 20, "\n".join(body) + "\n", title))


def semilog_ber_svg(path, snr_db, curves, title="uncoded BER", floor=1e-8) -> None:
    """BER-versus-SNR plot on a log10 vertical axis.

    ``curves`` is a sequence of (label, ber) pairs; zero BERs are clamped to
    ``floor`` for display while the embedded data keeps the raw values.
    """
    snr_db = np.asarray(snr_db, dtype=float)
    curves = [(label, np.asarray(v, dtype=float)) for label, v in curves]
    width, height = 560, 420
    x0, x1, y0, y1 = 60, width - 20, height - 40, 30
    lo = math.floor(math.log10(max(floor, min(
        min((float(np.min(v[v > 0])) if np.any(v > 0) else 0.5)
            for _, v in curves), 0.5))))
    hi = 0  # log10(1)
    span_x = snr_db.max() - snr_db.min() if snr_db.size > 1 else 1.0

    def xmap(s):
        return x0 + (s - snr_db.min()) / span_x * (x1 - x0)

    def ymap(ber):
        lb = math.log10(max(ber, floor))
        return y0 + (lb - lo) / (hi - lo) * (y1 - y0)

    body = [f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" '
            f'fill="none" stroke="#333" stroke-width="0.8"/>']
    for dec in range(lo, hi + 1):
        y = ymap(10.0 ** dec)
        body.append(f'<line x1="{x0}" y1="{y:.2f}" x2="{x1}" y2="{y:.2f}" '
                    f'stroke="#ddd" stroke-width="0.6"/>')
        body.append(f'<text x="{x0 - 6}" y="{y + 3:.2f}" text-anchor="end" font-size="9" '
                    f'font-family="sans-serif">1e{dec}</text>')
    for s in snr_db:
        x = xmap(s)
        body.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 4}" '
                    f'stroke="#333" stroke-width="0.8"/>')
        body.append(f'<text x="{x:.2f}" y="{y0 + 15}" text-anchor="middle" font-size="9" '
                    f'font-family="sans-serif">{s:g}</text>')
    body.append(f'<text x="{(x0 + x1) / 2}" y="{height - 6}" text-anchor="middle" '
                f'font-size="11" font-family="sans-serif">Eb/N0 (dB)</text>')
    for i, (label, ber) in enumerate(curves):
        ber = np.asarray(ber, dtype=float)
        pts = " ".join(f"{xmap(s):.2f},{ymap(b):.2f}" for s, b in zip(snr_db, ber))
        color = _PALETTE[i % len(_PALETTE)]
        body.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.3" '
            f'data-label="{label}" data-values="{_fmt(ber)}" points="{pts}"/>'
        )
        body.append(f'<text x="{x0 + 8}" y="{y1 + 14 + 13 * i}" font-size="11" '
                    f'font-family="sans-serif" fill="{color}">{label}</text>')
    with open(path, "w", newline="") as f:
        f.write(_svg(width, height, "\n".join(body) + "\n", title))
