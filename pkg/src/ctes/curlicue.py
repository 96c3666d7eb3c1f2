"""Generalized curlicue sums and the CTES intensity.

The curlicue amplitude of order ``j`` with ``M`` terms is

    s(zeta) = (1/M) * sum_{m=1..M} exp(2*pi*i * (m-1)**j * zeta)

and its intensity ``|s|**2`` is 1-periodic in ``zeta``. Feeding the hyperbolic
argument ``1/xi`` gives the CTES intensity, whose unit maxima sit at the
values of ``xi`` for which ``1/xi`` is an integer.

Every evaluation reduces each phase ``(m-1)**j * zeta`` modulo 1 before the
factor ``2*pi`` is applied. Integer and :class:`fractions.Fraction` arguments
are reduced exactly; floats are reduced with ``x - floor(x)``.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ParameterError

# Largest double strictly below 1; returned for non-divisor trials whose
# deficit from unity is below double resolution.
_BELOW_ONE = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class CurlicueParams:
    """Truncation ``M`` (number of interfering terms) and phase order ``j``."""

    M: int
    j: int

    def __post_init__(self):
        for name in ("M", "j"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
        if self.M < 2:
            raise ParameterError(f"M must be >= 2, got {self.M}")
        if self.j < 1:
            raise ParameterError(f"j must be >= 1, got {self.j}")

    @property
    def powers(self) -> list[int]:
        """Exact integer phase multipliers ``(m-1)**j`` for ``m = 1..M``."""
        return [m**self.j for m in range(self.M)]


def _check_params(params) -> CurlicueParams:
    if not isinstance(params, CurlicueParams):
        raise ParameterError(f"expected CurlicueParams, got {type(params).__name__}")
    return params


def _is_exact(value) -> bool:
    return isinstance(value, (numbers.Rational,)) and not isinstance(value, bool)


def _exact_phases(zeta: Fraction, powers: list[int]) -> np.ndarray:
    zeta = Fraction(zeta)
    frac = zeta - math.floor(zeta)
    num, den = frac.numerator, frac.denominator
    return np.array([(k * num % den) / den for k in powers], dtype=np.float64)


def _float_phases(frac: np.ndarray, powers: list[int]) -> np.ndarray:
    # frac already in [0, 1); the product stays small so % 1.0 is accurate
    k = np.asarray(powers, dtype=np.float64)
    return np.mod(frac[..., None] * k, 1.0)


def _reduce_float(zeta) -> np.ndarray:
    z = np.asarray(zeta, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise DomainError("phase argument must be finite")
    return z - np.floor(z)


def _amplitude_from_phases(phases: np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * phases).mean(axis=-1)


def _intensity_from_phases(phases: np.ndarray) -> np.ndarray:
    amp = _amplitude_from_phases(phases)
    return amp.real**2 + amp.imag**2


def _phases(zeta, params: CurlicueParams) -> np.ndarray:
    if _is_exact(zeta):
        return _exact_phases(zeta, params.powers)
    return _float_phases(_reduce_float(zeta), params.powers)


def _unwrap(result: np.ndarray):
    return result.item() if result.ndim == 0 else result


def curlicue_amplitude(zeta, params: CurlicueParams):
    """Complex curlicue amplitude at ``zeta``; magnitude is at most 1.

    ``zeta`` may be a float, a numpy array, an int or a ``Fraction``.
    """
    params = _check_params(params)
    return _unwrap(_amplitude_from_phases(_phases(zeta, params)))


def curlicue_intensity(zeta, params: CurlicueParams):
    """``|curlicue_amplitude(zeta)|**2``, in [0, 1] and exactly 1 at integers."""
    params = _check_params(params)
    return _unwrap(_intensity_from_phases(_phases(zeta, params)))


def hyperbolic(xi):
    """Return ``1/xi``; ``xi`` must be strictly positive."""
    if _is_exact(xi):
        if xi <= 0:
            raise DomainError(f"xi must be > 0, got {xi}")
        return 1 / Fraction(xi)
    arr = np.asarray(xi, dtype=np.float64)
    if not np.all(arr > 0):
        raise DomainError("xi must be > 0")
    return _unwrap(1.0 / arr)


def ctes_intensity(xi, params: CurlicueParams):
    """CTES intensity ``|s(1/xi)|**2`` for ``xi > 0`` (scalar or array).

    Exact rationals are inverted exactly; floats are inverted and then reduced
    modulo 1 before the phases are formed.
    """
    params = _check_params(params)
    return curlicue_intensity(hyperbolic(xi), params)


def exact_intensity_at_trial(N: int, ell: int, params: CurlicueParams) -> float:
    """CTES intensity at the integer trial ``xi_N = ell``, i.e. at ``f = N/ell``.

    The fractional part of ``N/ell`` is ``(N mod ell)/ell`` and every phase is
    reduced with integer arithmetic, so the result is exactly 1.0 if and only
    if ``ell`` divides ``N``.
    """
    params = _check_params(params)
    if int(ell) != ell or ell < 1:
        raise DomainError(f"trial factor must be a positive integer, got {ell!r}")
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    N, ell = int(N), int(ell)
    r = N % ell
    if r == 0:
        return 1.0
    phases = np.array([(k * r % ell) / ell for k in params.powers], dtype=np.float64)
    return min(float(_intensity_from_phases(phases)), _BELOW_ONE)


_INT64_SAFE = 2**62


def exact_intensity_at_trials(N: int, ells, params: CurlicueParams) -> np.ndarray:
    """Vectorized :func:`exact_intensity_at_trial` over an array of trials.

    Uses int64 arithmetic when every product ``(m-1)**j * (N mod ell)`` fits,
    and falls back to Python integers otherwise.
    """
    params = _check_params(params)
    ells = np.asarray(ells)
    if ells.size == 0:
        return np.empty(0, dtype=np.float64)
    if int(ells.min()) < 1:
        raise DomainError("trial factors must be positive integers")
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    N = int(N)
    powers = params.powers
    if N < _INT64_SAFE and max(powers) * int(ells.max()) < _INT64_SAFE:
        ell64 = ells.astype(np.int64)
        r = np.int64(N) % ell64
        k = np.array(powers, dtype=np.int64)
        phases = (k[None, :] * r[:, None]) % ell64[:, None] / ell64[:, None].astype(np.float64)
    else:
        ell_list = [int(e) for e in ells.tolist()]
        r = np.array([N % e for e in ell_list], dtype=object)
        phases = np.array([[(k * (N % e) % e) / e for k in powers] for e in ell_list],
                          dtype=np.float64)
    out = np.minimum(_intensity_from_phases(phases), _BELOW_ONE)
    out[r == 0] = 1.0
    return out


@dataclass(frozen=True)
class CurlicueCurve:
    """Sampled intensity of the curlicue function over a range of ``zeta``."""

    params: CurlicueParams
    zeta: np.ndarray
    intensity: np.ndarray

    def __len__(self):
        return len(self.zeta)


def curlicue_curve(params: CurlicueParams, start=-0.5, stop=0.5, step=1e-3) -> CurlicueCurve:
    if not step > 0:
        raise DomainError(f"step must be > 0, got {step}")
    if not stop >= start:
        raise DomainError(f"empty zeta range [{start}, {stop}]")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    # rounding keeps grid points such as 0 exact despite a non-binary step
    zeta = np.round(start + step * np.arange(count), 12)
    return CurlicueCurve(params, zeta, curlicue_intensity(zeta, params))
