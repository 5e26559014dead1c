"""CSV serialization and static SVG rendering of sweep results.

The CSV layout is part of the tool's external contract: a ``#``-prefixed
comment block with the resolved configuration and seed, one header row,
then one row per angle with every number in full-precision scientific
notation (17 significant digits, which round-trips float64 exactly).

The SVG writer is deliberately hand-rolled: identical input always
produces byte-identical output, which plotting libraries do not
guarantee.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .experiment import SweepResult

CSV_COLUMNS = (
    "theta_deg",
    "gain_real_mean",
    "gain_real_db",
    "prr_mean",
    "prr_db",
    "prr_std",
    "pvr_sq_mean",
    "pvr_sq_db",
)

#: Floor applied before dB conversion so zero-valued gains stay plottable.
_DB_FLOOR = 1e-300

_CURVES = (
    # (column, legend label, stroke color, dash pattern)
    ("gain_real_mean", "Gain of real-valued pulse", "#1f77b4", None),
    ("prr_mean", "Raw power mean", "#ff7f0e", None),
    ("pvr_sq_mean", "Matched similarity squared", "#9467bd", "8,5"),
)


def _to_db(values: np.ndarray) -> np.ndarray:
    return 10.0 * np.log10(np.maximum(values, _DB_FLOOR))


def _format(value: float) -> str:
    return f"{value:.17e}"


def write_csv(result: SweepResult, path) -> None:
    """Serialize a sweep result; lossless for every mean and std column."""
    theta_deg = np.rad2deg(result.theta_grid)
    columns = {
        "theta_deg": theta_deg,
        "gain_real_mean": result.real_gain_mean,
        "gain_real_db": _to_db(result.real_gain_mean),
        "prr_mean": result.prr_mean,
        "prr_db": _to_db(result.prr_mean),
        "prr_std": result.prr_std,
        "pvr_sq_mean": result.pvr_sq_mean,
        "pvr_sq_db": _to_db(result.pvr_sq_mean),
    }
    lines = ["# swarmbeam sweep result"]
    for key, value in result.config.describe().items():
        lines.append(f"# {key} = {value}")
    lines.append(f"# content_hash = {result.content_hash()}")
    lines.append(",".join(CSV_COLUMNS))
    for i in range(theta_deg.size):
        lines.append(",".join(_format(float(columns[name][i])) for name in CSV_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> tuple[dict[str, str], dict[str, np.ndarray]]:
    """Parse a sweep CSV back into (metadata, column arrays)."""
    meta: dict[str, str] = {}
    rows: list[list[float]] = []
    header: list[str] | None = None
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            continue
        if header is None:
            header = [name.strip() for name in line.split(",")]
            if tuple(header) != CSV_COLUMNS:
                raise ValueError(f"unexpected CSV header {header!r}")
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"malformed CSV row: {line!r}")
        try:
            rows.append([float(cell) for cell in cells])
        except ValueError as exc:
            raise ValueError(f"malformed CSV row: {line!r}") from exc
    if header is None or not rows:
        raise ValueError("CSV contains no data rows")
    data = np.array(rows)
    return meta, {name: data[:, i] for i, name in enumerate(CSV_COLUMNS)}


def _axis_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _path_data(xs, ys) -> str:
    parts = []
    for i, (x, y) in enumerate(zip(xs, ys)):
        parts.append(f"{'M' if i == 0 else 'L'}{x:.3f},{y:.3f}")
    return " ".join(parts)


def plot_svg(csv_path, out_path=None, db: bool = False) -> Path:
    """Render the four gain curves from a sweep CSV as a static SVG.

    Blue solid: real-valued-pulse gain; orange solid: raw-power mean;
    yellow band: raw-power mean +/- std; purple dashed: squared matched
    similarity.  ``db`` switches the y axis to 10*log10 of the gains.
    Rendering involves no randomness, so equal inputs give equal bytes.
    """
    csv_path = Path(csv_path)
    if out_path is None:
        out_path = csv_path.with_suffix(".svg")
    _, cols = read_csv(csv_path)

    width, height = 860.0, 520.0
    left, right, top, bottom = 80.0, 250.0, 40.0, 60.0
    plot_w = width - left - right
    plot_h = height - top - bottom

    x = cols["theta_deg"]
    band_hi = cols["prr_mean"] + cols["prr_std"]
    band_lo = cols["prr_mean"] - cols["prr_std"]
    series = {name: cols[name] for name, _, _, _ in _CURVES}
    if db:
        series = {name: _to_db(vals) for name, vals in series.items()}
        band_hi = _to_db(np.maximum(band_hi, _DB_FLOOR))
        band_lo = _to_db(np.maximum(band_lo, _DB_FLOOR))

    y_all = np.concatenate([*series.values(), band_hi, band_lo])
    y_lo, y_hi = float(np.min(y_all)), float(np.max(y_all))
    margin = 0.05 * (y_hi - y_lo or 1.0)
    y_lo, y_hi = y_lo - margin, y_hi + margin
    x_lo, x_hi = float(np.min(x)), float(np.max(x))
    if x_hi == x_lo:
        x_hi = x_lo + 1.0

    def sx(v):
        return left + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v):
        return top + (y_hi - v) / (y_hi - y_lo) * plot_h

    px = [sx(v) for v in x]

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
    ]

    # std band first so the curves draw on top of it
    band_points = _path_data(px + px[::-1], [sy(v) for v in band_hi] + [sy(v) for v in band_lo[::-1]])
    out.append(
        f'<path d="{band_points} Z" fill="#ffdd57" fill-opacity="0.55" stroke="none"/>'
    )
    for name, _, color, dash in _CURVES:
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<path d="{_path_data(px, [sy(v) for v in series[name]])}" '
            f'fill="none" stroke="{color}" stroke-width="1.8"{dash_attr}/>'
        )

    # axes
    out.append(
        f'<line x1="{left:.1f}" y1="{top + plot_h:.1f}" x2="{left + plot_w:.1f}" '
        f'y2="{top + plot_h:.1f}" stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{left:.1f}" y1="{top:.1f}" x2="{left:.1f}" '
        f'y2="{top + plot_h:.1f}" stroke="black" stroke-width="1"/>'
    )
    for tick in _axis_ticks(x_lo, x_hi):
        tx = sx(tick)
        out.append(
            f'<line x1="{tx:.1f}" y1="{top + plot_h:.1f}" x2="{tx:.1f}" '
            f'y2="{top + plot_h + 5:.1f}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{tx:.1f}" y="{top + plot_h + 20:.1f}" font-size="11" '
            f'text-anchor="middle">{tick:.3g}</text>'
        )
    for tick in _axis_ticks(y_lo, y_hi):
        ty = sy(tick)
        out.append(
            f'<line x1="{left - 5:.1f}" y1="{ty:.1f}" x2="{left:.1f}" '
            f'y2="{ty:.1f}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{left - 8:.1f}" y="{ty + 4:.1f}" font-size="11" '
            f'text-anchor="end">{tick:.4g}</text>'
        )
    out.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 15:.1f}" font-size="13" '
        f'text-anchor="middle">Pointing angle theta (degrees)</text>'
    )
    ylabel = "Gain (dB)" if db else "Gain (linear)"
    out.append(
        f'<text x="18" y="{top + plot_h / 2:.1f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + plot_h / 2:.1f})">{ylabel}</text>'
    )

    # legend
    lx = left + plot_w + 15.0
    entries = [(label, color, dash) for _, label, color, dash in _CURVES]
    entries.insert(2, ("Raw power std band", "#ffdd57", None))
    for i, (label, color, dash) in enumerate(entries):
        ly = top + 14.0 + 22.0 * i
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<line x1="{lx:.1f}" y1="{ly:.1f}" x2="{lx + 26:.1f}" y2="{ly:.1f}" '
            f'stroke="{color}" stroke-width="3"{dash_attr}/>'
        )
        out.append(
            f'<text x="{lx + 32:.1f}" y="{ly + 4:.1f}" font-size="12">{label}</text>'
        )

    out.append("</svg>")
    out_path = Path(out_path)
    out_path.write_text("\n".join(out) + "\n")
    return out_path
