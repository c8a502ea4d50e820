"""CSV and minimal SVG output."""
from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IoFailure
from .pdecheck import WaveField
from .propagator import SweepTable

SWEEP_HEADER = ("n", "x", "t", "re_psi_n", "im_psi_n", "re_phi_h", "im_phi_h", "err_re", "err_im", "err_abs")
FIELD_HEADER = ("x", "re_num", "im_num", "re_exact", "im_exact")


def _fmt(v) -> str:
    # repr gives the shortest string that round-trips
    return str(v) if isinstance(v, int) else repr(float(v))


def sweep_rows(table: SweepTable) -> list[tuple]:
    return [
        (r.n, r.x, r.t, r.psi_n.real, r.psi_n.imag, r.phi_h.real, r.phi_h.imag, r.err_re, r.err_im, r.err_abs)
        for r in table.rows
    ]


def field_rows(numeric: WaveField, exact: Sequence[complex]) -> list[tuple]:
    return [(x, u.real, u.imag, e.real, e.imag) for x, u, e in zip(numeric.grid.x, numeric.values, exact)]


def write_csv(rows: Iterable[Sequence], path: str | Path, header: Sequence[str] = SWEEP_HEADER) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                if len(row) != len(header):
                    raise IoFailure(f"row has {len(row)} columns, header has {len(header)}")
                w.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def read_csv(path: str | Path) -> tuple[list[str], list[list[float]]]:
    try:
        with Path(path).open(encoding="utf-8", newline="") as fh:
            data = list(csv.reader(fh))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return data[0], [[float(v) for v in row] for row in data[1:]]


def write_error_svg(table: SweepTable, path: str | Path, width: int = 640, height: int = 400) -> None:
    """err_re (blue) and err_im (red) against n."""
    ns = [r.n for r in table.rows]
    series = {"#1f4fd8": [r.err_re for r in table.rows], "#d8261f": [r.err_im for r in table.rows]}
    margin = 50
    lo = min(min(v) for v in series.values()) if ns else -1.0
    hi = max(max(v) for v in series.values()) if ns else 1.0
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    n_lo, n_hi = (min(ns), max(ns)) if ns else (0, 1)
    if n_hi == n_lo:
        n_hi = n_lo + 1

    def px(n):
        return margin + (n - n_lo) / (n_hi - n_lo) * (width - 2 * margin)

    def py(v):
        return height - margin - (v - lo) / (hi - lo) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 12}" text-anchor="middle" font-size="12">n</text>',
        f'<text x="{margin}" y="{margin - 8}" font-size="11">{hi:.3g}</text>',
        f'<text x="{margin}" y="{height - margin + 14}" font-size="11">{lo:.3g}</text>',
    ]
    if lo < 0 < hi:
        parts.append(f'<line x1="{margin}" y1="{py(0):.2f}" x2="{width - margin}" y2="{py(0):.2f}" '
                     'stroke="#999" stroke-dasharray="4 3"/>')
    for colour, vals in series.items():
        pts = " ".join(f"{px(n):.2f},{py(v):.2f}" for n, v in zip(ns, vals))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
    parts.append("</svg>")
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
