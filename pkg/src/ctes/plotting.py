"""Static SVG figures of curlicue curves and interferograms.

Integer trial points on a rescaled axis are marked with a star when they
divide ``N`` and a triangle otherwise. Each figure gets a sibling CSV holding
the plotted data.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .curlicue import CurlicueCurve, exact_intensity_at_trial  # noqa: E402
from .errors import DomainError  # noqa: E402
from .export import write_curve_csv, write_interferogram_csv, write_views_csv  # noqa: E402
from .interferogram import Interferogram, RescaledView, integer_span  # noqa: E402

_STYLE = {"svg.hashsalt": "ctes", "svg.fonttype": "path", "font.size": 9}


def trial_markers(view: RescaledView) -> tuple[list[tuple[int, float]], list[tuple[int, float]]]:
    """``(stars, triangles)``: integer trials in span, split by whether they divide ``N``."""
    lo, hi = view.span
    params = view.source.params
    sN = view.s * view.N
    stars, triangles = [], []
    for ell in integer_span(lo, hi):
        point = (ell, exact_intensity_at_trial(sN, ell, params))
        (stars if view.N % ell == 0 else triangles).append(point)
    return stars, triangles


def _mark_trials(ax, view: RescaledView) -> None:
    stars, triangles = trial_markers(view)
    if triangles:
        ax.plot(*zip(*triangles), linestyle="none", marker="^", color="tab:orange", label="non-factor")
    if stars:
        ax.plot(*zip(*stars), linestyle="none", marker="*", markersize=11, color="tab:red",
                label="factor")


def _draw(ax, data) -> None:
    if isinstance(data, CurlicueCurve):
        ax.plot(data.zeta, data.intensity, lw=1)
        ax.set_xlabel("zeta")
        ax.set_title(f"M={data.params.M}, j={data.params.j}")
    elif isinstance(data, RescaledView):
        ax.plot(data.xi_N, data.intensity, lw=1)
        _mark_trials(ax, data)
        label = "xi_N" if data.s == 1 else "xi_N,s"
        ax.set_xlabel(f"{label} (N={data.N})")
        ax.set_title(f"x={data.source.x:.6g}")
    elif isinstance(data, Interferogram):
        ax.plot(data.o_xi, data.intensity, lw=1)
        ax.set_xlabel("o_xi")
        ax.set_title(f"x={data.x:.6g}")
    else:
        raise DomainError(f"cannot plot {type(data).__name__}")
    ax.set_ylabel("intensity")
    ax.set_ylim(-0.02, 1.05)


def emit_plot(data, path) -> tuple[Path, Path]:
    """Write ``data`` as an SVG at ``path`` plus a CSV next to it.

    ``data`` is a curlicue curve, an interferogram, a rescaled view, or a
    list of rescaled views (drawn as stacked panels, one per interferogram).
    Returns the two paths written.
    """
    panels = list(data) if isinstance(data, (list, tuple)) else [data]
    if not panels or any(len(p) == 0 for p in panels):
        raise DomainError("nothing to plot")
    path = Path(path)
    csv_path = path.with_suffix(".csv")
    with plt.rc_context(_STYLE):
        fig, axes = plt.subplots(len(panels), 1, figsize=(6, 2.4 * len(panels)), squeeze=False)
        for ax, panel in zip(axes[:, 0], panels):
            _draw(ax, panel)
        if axes[0, 0].get_legend_handles_labels()[0]:
            axes[0, 0].legend(loc="lower right", fontsize=7)
        fig.tight_layout()
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    with open(csv_path, "w", newline="") as fh:
        if isinstance(data, (list, tuple)):
            write_views_csv(fh, panels)
        elif isinstance(data, CurlicueCurve):
            write_curve_csv(fh, data)
        else:
            write_interferogram_csv(fh, data)
    return path, csv_path
