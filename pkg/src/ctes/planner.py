"""Planning which interferograms cover the trial factors of a target.

Method 1 checks trial factors in ``[3, sqrt(N)]``, method 2 in
``[sqrt(N), N]``. A single interferogram at ``x`` reaches the trials
``[s*N*o_min/x, s*N*o_max/x]``; a sequence ``x_{i+1} = x_i / c`` with
``c = o_max/o_min`` tiles consecutive intervals so the number of runs grows
only logarithmically with ``N``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .interferogram import SpectralWindow

_RTOL = 1e-9


class Method(str, enum.Enum):
    METHOD1 = "method1"
    METHOD2 = "method2"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        aliases = {"1": cls.METHOD1, "method1": cls.METHOD1, "2": cls.METHOD2, "method2": cls.METHOD2}
        try:
            return aliases[text]
        except KeyError:
            raise DomainError(f"unknown method {value!r}; use 1 or 2") from None

    def trial_range(self, N: int) -> tuple[float, float]:
        """Interval of trial factors this method must check for ``N``."""
        root = math.sqrt(N)
        return (3.0, root) if self is Method.METHOD1 else (root, float(N))


def _tfloor(v: float) -> int:
    return math.floor(v * (1 + _RTOL))


def _tceil(v: float) -> int:
    return math.ceil(v * (1 - _RTOL))


def ceil_log(ratio: float, base: float) -> int:
    """Smallest ``n >= 1`` with ``base**n >= ratio`` (tolerant to rounding)."""
    if ratio <= 1:
        return 1
    n = max(1, math.ceil(math.log(ratio) / math.log(base)))
    while n > 1 and base ** (n - 1) >= ratio * (1 - 1e-12):
        n -= 1
    while base**n < ratio * (1 - 1e-12):
        n += 1
    return n


@dataclass(frozen=True)
class SingleRange:
    """Integers factorable with one interferogram recorded at ``x``."""

    x: float
    N_min: int
    N_max: int
    feasible: bool

    @property
    def empty(self) -> bool:
        return self.N_min > self.N_max


@dataclass(frozen=True)
class SinglePlan:
    method: Method
    window: SpectralWindow
    x_cap: float
    N_single: int | None = None

    def range_at(self, x: float) -> SingleRange:
        if not x > 0:
            raise DomainError(f"x must be > 0, got {x}")
        w = self.window
        feasible = x <= self.x_cap * (1 + _RTOL)
        if self.method is Method.METHOD1:
            return SingleRange(x, _tceil(x**2 / w.o_max**2), _tfloor(3 * x / w.o_min), feasible)
        return SingleRange(x, 1, _tfloor(x**2 / w.o_min**2), feasible)


def _is_integer(v: float) -> bool:
    return abs(v - round(v)) <= _RTOL * max(1.0, abs(v))


def single_plan_method1(window: SpectralWindow) -> SinglePlan:
    """Largest admissible ``x`` for one method-1 interferogram.

    ``x_cap = 3*o_max**2/o_min``; when ``c`` is an integer the single integer
    factorable at ``x_cap`` is ``9*c**2``.
    """
    c = window.ratio
    n_single = round(9 * c**2) if _is_integer(c) else None
    return SinglePlan(Method.METHOD1, window, 3 * window.o_max**2 / window.o_min, n_single)


def single_plan_method2(window: SpectralWindow) -> SinglePlan:
    """Largest admissible ``x`` (``= o_max``) for one method-2 interferogram."""
    return SinglePlan(Method.METHOD2, window, window.o_max)


@dataclass(frozen=True)
class CoverageInterval:
    N: int
    i: int
    lo: float
    hi: float


@dataclass(frozen=True)
class InterferogramPlan:
    method: Method
    window: SpectralWindow
    s: int
    x_values: tuple[float, ...]
    N_min: int
    N_max: int
    feasible: bool = True
    x_max: float | None = None
    feasible_N_max: int | None = None

    @property
    def n(self) -> int:
        return len(self.x_values)

    @property
    def c(self) -> float:
        return self.window.ratio

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "s": self.s,
            "c": self.c,
            "o_min": self.window.o_min,
            "o_max": self.window.o_max,
            "x_values": list(self.x_values),
            "n": self.n,
            "N_min": self.N_min,
            "N_max": self.N_max,
            "feasible": self.feasible,
            "x_max": self.x_max,
            "feasible_N_max": self.feasible_N_max,
        }


def _check_int(name, value, minimum):
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def _build(method, window, s, x0, n, N_min, N_max, x_max) -> InterferogramPlan:
    xs = [x0]
    for _ in range(n - 1):
        xs.append(xs[-1] / window.ratio)
    feasible, feasible_N_max = True, None
    if x_max is not None:
        if not x_max > 0:
            raise DomainError(f"x_max must be > 0, got {x_max}")
        if x0 > x_max * (1 + _RTOL):
            feasible = False
            limit = x_max / (s * window.o_min)
            feasible_N_max = _tfloor(3 * limit) if method is Method.METHOD1 else _tfloor(limit**2)
    return InterferogramPlan(method, window, s, tuple(xs), N_min, N_max, feasible,
                             x_max, feasible_N_max)


def _resolve_x0(x0, x0_tight):
    if x0 is None:
        return x0_tight
    if x0 < x0_tight * (1 - _RTOL):
        raise DomainError(f"x0={x0} is below the minimum admissible {x0_tight}")
    return float(x0)


def sequence_plan_single_N(N: int, window: SpectralWindow, method, s: int = 1,
                           x0: float | None = None, x_max: float | None = None) -> InterferogramPlan:
    """Minimal interferogram sequence covering the trial range of one ``N``.

    With the default (tight) ``x0`` the first interval starts exactly at the
    lowest trial factor: 3 for method 1, ``sqrt(N)`` for method 2. A larger
    admissible ``x0`` may be supplied; ``n`` is recomputed for it.
    """
    method = Method.parse(method)
    N = _check_int("N", N, 4 if method is Method.METHOD1 else 2)
    s = _check_int("s", s, 1)
    c, o_min = window.ratio, window.o_min
    if method is Method.METHOD1:
        x0 = _resolve_x0(x0, s * N * o_min / 3)
        n = ceil_log(x0 / (s * o_min * math.sqrt(N)), c)
    else:
        x0 = _resolve_x0(x0, s * math.sqrt(N) * o_min)
        n = ceil_log(x0 / (s * o_min), c)
    return _build(method, window, s, x0, n, N, N, x_max)


def sequence_plan_range(N_min: int, N_max: int, window: SpectralWindow, method, s: int = 1,
                        x0: float | None = None, x_max: float | None = None) -> InterferogramPlan:
    """One interferogram sequence covering every ``N`` in ``[N_min, N_max]``."""
    method = Method.parse(method)
    N_min = _check_int("N_min", N_min, 1)
    N_max = _check_int("N_max", N_max, 1)
    s = _check_int("s", s, 1)
    if N_min > N_max:
        raise DomainError(f"empty range [{N_min}, {N_max}]")
    c, o_min = window.ratio, window.o_min
    if method is Method.METHOD1:
        x0 = _resolve_x0(x0, s * N_max * o_min / 3)
        n = ceil_log(x0 / (s * o_min * math.sqrt(N_min)), c)
    else:
        x0 = _resolve_x0(x0, s * math.sqrt(N_max) * o_min)
        n = ceil_log(x0 / (s * o_min), c)
    return _build(method, window, s, x0, n, N_min, N_max, x_max)


def intervals_for(plan: InterferogramPlan, N: int) -> list[CoverageInterval]:
    """Coverage intervals for any ``N``, without the plan-range check."""
    w, s = plan.window, plan.s
    return [CoverageInterval(N, i, s * N * w.o_min / x, s * N * w.o_max / x)
            for i, x in enumerate(plan.x_values)]


def coverage_intervals(plan: InterferogramPlan, N: int) -> list[CoverageInterval]:
    N = _check_int("N", N, 1)
    if not plan.N_min <= N <= plan.N_max:
        raise DomainError(f"N={N} outside the plan range [{plan.N_min}, {plan.N_max}]")
    return intervals_for(plan, N)


def covers(intervals: list[CoverageInterval], lo: float, hi: float) -> bool:
    """True when the union of ``intervals`` contains ``[lo, hi]``.

    An empty target (``lo > hi``) is always covered.
    """
    if lo > hi:
        return True
    reach = lo
    for iv in sorted(intervals, key=lambda iv: iv.lo):
        if iv.lo > reach * (1 + _RTOL):
            break
        reach = max(reach, iv.hi)
        if reach >= hi * (1 - _RTOL):
            return True
    return False


def locate(intervals: list[CoverageInterval], ell: float) -> int | None:
    """Index of the interval owning ``ell``.

    Intervals are treated as half-open ``[lo, hi)`` except the last, so a
    value on a shared boundary belongs to the later interferogram.
    """
    ordered = sorted(intervals, key=lambda iv: iv.lo)
    for k, iv in enumerate(reversed(ordered)):
        last = k == 0
        if ell >= iv.lo * (1 - _RTOL):
            if ell < iv.hi * (1 - _RTOL) or (last and ell <= iv.hi * (1 + _RTOL)):
                return iv.i
            return None
    return None
