"""Sampling grids, recorded interferograms and their rescaled views.

An interferogram is the CTES intensity recorded over an observable window
``[o_min, o_max]`` at a fixed unit parameter ``x``; the sample at ``o_xi``
equals the CTES intensity at ``xi = o_xi / x``. Viewing it against
``xi_N = s*N*o_xi/x`` turns integer abscissas into trial factors of ``N``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curlicue import CurlicueParams, ctes_intensity
from .errors import DomainError

# relative slack when deciding whether an integer sits inside a span
SPAN_RTOL = 1e-9


@dataclass(frozen=True)
class SpectralWindow:
    """Observable range ``[o_min, o_max]``, in arbitrary but common units."""

    o_min: float
    o_max: float

    def __post_init__(self):
        lo, hi = float(self.o_min), float(self.o_max)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("window bounds must be finite")
        if not 0 < lo < hi:
            raise DomainError(f"window must satisfy 0 < o_min < o_max, got [{lo}, {hi}]")
        object.__setattr__(self, "o_min", lo)
        object.__setattr__(self, "o_max", hi)

    @property
    def ratio(self) -> float:
        """``c = o_max / o_min``, always > 1."""
        return self.o_max / self.o_min

    c = ratio


MODES = ("direct", "sampled")


@dataclass(frozen=True)
class SamplingConfig:
    samples_per_unit: int = 32
    snap_to_integers: bool = True
    mode: str = "direct"

    def __post_init__(self):
        if int(self.samples_per_unit) != self.samples_per_unit or self.samples_per_unit < 2:
            raise DomainError(f"samples_per_unit must be an integer >= 2, got {self.samples_per_unit}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")


def safe_step(N: int, trial_range: str) -> float:
    """Conservative sampling step in ``xi`` for trial factors of ``N``.

    The admissible step lies in ``(N**-2, 1)`` for trials in ``[1, sqrt(N)]``
    (``"low"``) and in ``(N**-1.5, 1)`` for ``[sqrt(N), N]`` (``"high"``). We
    take ten times the lower bound; when that reaches 1 (tiny ``N``) the
    geometric mean of the two bounds is used instead.
    """
    if int(N) != N or N < 2:
        raise DomainError(f"N must be an integer >= 2, got {N!r}")
    if trial_range == "low":
        lower = float(N) ** -2
    elif trial_range == "high":
        lower = float(N) ** -1.5
    else:
        raise DomainError(f"trial_range must be 'low' or 'high', got {trial_range!r}")
    step = 10.0 * lower
    return step if step < 1.0 else math.sqrt(lower)


def integer_span(lo: float, hi: float) -> range:
    """Integers in ``[lo, hi]``, widened by :data:`SPAN_RTOL` at both ends."""
    first = math.ceil(lo * (1 - SPAN_RTOL))
    last = math.floor(hi * (1 + SPAN_RTOL))
    return range(max(first, 1), last + 1)


def build_grid(window: SpectralWindow, x: float, N: int, cfg: SamplingConfig | None = None,
               s: int = 1) -> np.ndarray:
    """Strictly increasing ``o_xi`` grid covering the whole window.

    Points are uniform in ``xi_N = s*N*o_xi/x`` at ``cfg.samples_per_unit``
    per unit; with ``snap_to_integers`` each integer ``xi_N`` in range gets
    the exact grid point ``o_xi = ell*x/(s*N)``.
    """
    cfg = cfg or SamplingConfig()
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x}")
    if int(N) != N or N < 1 or int(s) != s or s < 1:
        raise DomainError("N and s must be positive integers")
    scale = s * N / x
    a, b = scale * window.o_min, scale * window.o_max
    count = max(math.ceil((b - a) * cfg.samples_per_unit), 1) + 1
    uniform = np.linspace(a, b, count) / scale
    uniform[0], uniform[-1] = window.o_min, window.o_max
    if not cfg.snap_to_integers:
        return np.unique(uniform)

    ells = np.array(integer_span(a, b), dtype=np.float64)
    snapped = np.clip(ells * (x / (s * N)), window.o_min, window.o_max)
    # drop uniform points that would nearly duplicate a snapped one
    xi_u = uniform * scale
    near = np.abs(xi_u - np.round(xi_u)) < 1e-3 / cfg.samples_per_unit
    keep = ~near
    keep[0] = keep[-1] = True
    return np.unique(np.concatenate([uniform[keep], snapped]))


@dataclass(frozen=True, eq=False)
class Interferogram:
    """Intensity samples ``I(o_xi; x)`` recorded at one unit parameter ``x``."""

    x: float
    window: SpectralWindow
    params: CurlicueParams
    o_xi: np.ndarray
    intensity: np.ndarray

    @property
    def xi(self) -> np.ndarray:
        return self.o_xi / self.x

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.o_xi.tolist(), self.intensity.tolist()))

    def __len__(self):
        return len(self.o_xi)


def record(params: CurlicueParams, window: SpectralWindow, x: float, grid) -> Interferogram:
    """Evaluate the interferogram on ``grid`` (values of ``o_xi``)."""
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x}")
    o_xi = np.asarray(grid, dtype=np.float64)
    if o_xi.ndim != 1:
        raise DomainError("grid must be one-dimensional")
    if np.any(o_xi <= 0):
        raise DomainError("every o_xi must be > 0")
    if o_xi.size and (o_xi[0] < window.o_min or o_xi[-1] > window.o_max):
        raise DomainError("grid extends outside the spectral window")
    if o_xi.size > 1 and np.any(np.diff(o_xi) <= 0):
        raise DomainError("grid must be strictly increasing")
    intensity = np.asarray(ctes_intensity(o_xi / x, params), dtype=np.float64).reshape(o_xi.shape)
    o_xi.setflags(write=False)
    intensity.setflags(write=False)
    return Interferogram(float(x), window, params, o_xi, intensity)


@dataclass(frozen=True, eq=False)
class RescaledView:
    """An interferogram seen against the trial-factor axis ``xi_N`` (or ``xi_{N,s}``)."""

    source: Interferogram
    N: int
    s: int = 1
    xi_N: np.ndarray = field(default=None, repr=False)

    @property
    def intensity(self) -> np.ndarray:
        return self.source.intensity

    @property
    def slope(self) -> float:
        return self.s * self.N / self.source.x

    @property
    def span(self) -> tuple[float, float]:
        """Trial-factor interval reachable through the source window."""
        w = self.source.window
        return self.slope * w.o_min, self.slope * w.o_max

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.xi_N.tolist(), self.intensity.tolist()))

    def __len__(self):
        return len(self.xi_N)


def rescale(ig: Interferogram, N: int, s: int = 1) -> RescaledView:
    """Map every abscissa to ``xi_N = (s*N/x) * o_xi``; intensities are shared."""
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    if int(s) != s or s < 1:
        raise DomainError(f"s must be a positive integer, got {s!r}")
    xi_N = ig.o_xi * (s * N / ig.x)
    xi_N.setflags(write=False)
    return RescaledView(ig, int(N), int(s), xi_N)
