"""CSV and JSON serialization shared by the CLI and the plot writer."""
from __future__ import annotations

import csv
import json

import numpy as np

from .curlicue import CurlicueCurve
from .interferogram import Interferogram, RescaledView

INTERFEROGRAM_HEADER = ["o_xi", "xi", "xi_N", "intensity"]
CURVE_HEADER = ["zeta", "intensity"]


def _num(v: float) -> str:
    # repr is the shortest string that parses back to the same double
    return repr(float(v))


def write_interferogram_csv(fh, data: Interferogram | RescaledView, index: int | None = None) -> None:
    """One row per sample in ascending ``o_xi``; ``xi_N`` is empty without a bound ``N``.

    ``index`` adds a leading ``interferogram`` column, used when several views
    share one file.
    """
    view = data if isinstance(data, RescaledView) else None
    ig = view.source if view is not None else data
    writer = csv.writer(fh, lineterminator="\n")
    header = INTERFEROGRAM_HEADER if index is None else ["interferogram"] + INTERFEROGRAM_HEADER
    writer.writerow(header)
    _write_rows(writer, ig, view, index)


def write_views_csv(fh, views: list[RescaledView]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["interferogram"] + INTERFEROGRAM_HEADER)
    for i, view in enumerate(views):
        _write_rows(writer, view.source, view, i)


def _write_rows(writer, ig, view, index):
    xi = ig.xi
    for k in range(len(ig)):
        row = [_num(ig.o_xi[k]), _num(xi[k]),
               _num(view.xi_N[k]) if view is not None else "", _num(ig.intensity[k])]
        writer.writerow(row if index is None else [index] + row)


def read_interferogram_csv(fh) -> dict[str, np.ndarray]:
    """Parse a file written by :func:`write_interferogram_csv`.

    Empty ``xi_N`` cells come back as NaN.
    """
    reader = csv.DictReader(fh)
    cols: dict[str, list[float]] = {name: [] for name in reader.fieldnames or []}
    for row in reader:
        for name in cols:
            cols[name].append(float(row[name]) if row[name] != "" else float("nan"))
    return {name: np.array(vals, dtype=np.float64) for name, vals in cols.items()}


def write_curve_csv(fh, curve: CurlicueCurve) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for z, y in zip(curve.zeta, curve.intensity):
        writer.writerow([_num(z), _num(y)])


def dump_json(obj: dict, fh) -> None:
    json.dump(obj, fh, indent=2, sort_keys=False)
    fh.write("\n")
