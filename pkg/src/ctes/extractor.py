"""End-to-end factoring: plan, record, rescale, read trials, verify.

Candidates are read at integer points of the trial-factor axis. Each flagged
candidate is then confirmed by one exact division, so the report is sound no
matter how the threshold is tuned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .curlicue import CurlicueParams, exact_intensity_at_trials
from .errors import DomainError
from .interferogram import (
    RescaledView,
    SamplingConfig,
    SpectralWindow,
    build_grid,
    integer_span,
    record,
    rescale,
)
from .planner import (
    InterferogramPlan,
    Method,
    covers,
    intervals_for,
    locate,
    sequence_plan_single_N,
)

DIRECT_THRESHOLD = 1 - 1e-9
SAMPLED_THRESHOLD = 0.99

FACTOR = "factor"
NON_FACTOR = "non_factor"
S_ARTIFACT = "s_artifact"

DEFAULT_PARAMS = CurlicueParams(3, 2)


@dataclass(frozen=True, slots=True)
class Candidate:
    """One integer trial point read off an interferogram.

    ``verdict`` stays ``None`` until :func:`classify` runs, and for trials
    that were never flagged. ``interferogram_index`` is -1 for primes of ``s``
    reported by the pre-check.
    """

    ell: int
    intensity: float
    interferogram_index: int
    flagged: bool = True
    verdict: str | None = None
    recovered: int | None = None

    def to_dict(self) -> dict:
        out = {
            "ell": self.ell,
            "intensity": self.intensity,
            "interferogram": self.interferogram_index,
            "verdict": self.verdict,
        }
        if self.recovered is not None:
            out["recovered"] = self.recovered
        return out


def default_threshold(mode: str) -> float:
    return DIRECT_THRESHOLD if mode == "direct" else SAMPLED_THRESHOLD


def trial_values(view: RescaledView, mode: str = "direct",
                 include_trivial: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Integer trials in the span of ``view`` and their intensities.

    In direct mode the intensity comes from exact integer phase reduction at
    ``f = s*N/ell``; in sampled mode from the recorded sample nearest to
    ``ell``. Trials 1 and ``N`` are skipped unless ``include_trivial``.
    """
    N, s = view.N, view.s
    span = integer_span(*view.span)
    dtype = np.int64 if span.stop < 2**62 else object
    ells = np.array(span, dtype=dtype) if dtype is object else np.arange(span.start, span.stop)
    if not include_trivial:
        ells = ells[(ells != 1) & (ells != N)]
    if mode == "direct":
        values = exact_intensity_at_trials(s * N, ells, view.source.params)
    elif mode == "sampled":
        values = _nearest_samples(view, ells)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return ells, values


def candidate_trials(view: RescaledView, index: int = 0, mode: str = "direct",
                     threshold: float | None = None,
                     include_trivial: bool = False) -> list[Candidate]:
    """Evaluate every integer trial in the span of ``view`` (see :func:`trial_values`).

    A trial is flagged when its intensity reaches ``threshold`` (default
    ``1 - 1e-9`` in direct mode, 0.99 in sampled mode).
    """
    if threshold is None:
        threshold = default_threshold(mode)
    ells, values = trial_values(view, mode, include_trivial)
    return [Candidate(ell, v, index, v >= threshold)
            for ell, v in zip(ells.tolist(), values.tolist())]


def _flagged_trials(view, index, mode, threshold) -> list[Candidate]:
    ells, values = trial_values(view, mode)
    hits = np.flatnonzero(values >= threshold)
    return [Candidate(int(ells[k]), float(values[k]), index) for k in hits]


def _nearest_samples(view: RescaledView, ells) -> np.ndarray:
    xs = view.xi_N
    if len(ells) == 0 or len(xs) == 0:
        return np.empty(0, dtype=np.float64)
    target = np.asarray(ells, dtype=np.float64)
    right = np.clip(xs.searchsorted(target), 0, len(xs) - 1)
    left = np.clip(right - 1, 0, len(xs) - 1)
    best = np.where(np.abs(xs[left] - target) <= np.abs(xs[right] - target), left, right)
    return view.intensity[best]


def prime_factors_small(n: int) -> list[int]:
    """Distinct primes of a small integer such as the scale ``s``."""
    primes, p = [], 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def classify(N: int, s: int, raw: list[Candidate]) -> list[Candidate]:
    """Verify flagged candidates by exact division.

    ``ell | N`` gives ``factor``; otherwise ``ell | s*N`` (only possible for
    ``s > 1``) gives ``s_artifact`` with ``recovered = ell // gcd(ell, s)``;
    anything else is a threshold false positive (``non_factor``). Primes of
    ``s`` that divide ``N`` are prepended as factors.
    """
    out = [Candidate(p, 1.0, -1, True, FACTOR)
           for p in prime_factors_small(s) if s > 1 and N % p == 0]
    for cand in raw:
        if not cand.flagged:
            out.append(cand if cand.verdict is None else replace(cand, verdict=None))
        elif N % cand.ell == 0:
            out.append(replace(cand, verdict=FACTOR))
        elif s > 1 and (s * N) % cand.ell == 0:
            rec = cand.ell // math.gcd(cand.ell, s)
            out.append(replace(cand, verdict=S_ARTIFACT, recovered=rec if rec > 1 else None))
        else:
            out.append(replace(cand, verdict=NON_FACTOR))
    return out


def oracle_divisors(N: int, lo: float, hi: float) -> list[int]:
    """All integers in ``[lo, hi]`` dividing ``N``, by plain trial division."""
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    first = max(1, math.ceil(lo))
    last = math.floor(hi)
    return [ell for ell in range(first, last + 1) if N % ell == 0]


@dataclass
class FactorReport:
    N: int
    method: Method
    s: int
    candidates: list[Candidate]
    confirmed_factors: list[int]
    stripped_twos: int
    complete: bool
    reduced_N: int
    prime_cofactor: int | None = None
    prime_factors: list[int] | None = None
    plan: InterferogramPlan | None = None
    feasible_N_max: int | None = None
    note: str | None = None
    trials: list[Candidate] = field(default_factory=list, repr=False)
    views: list[RescaledView] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        out = {
            "N": self.N,
            "method": self.method.value,
            "s": self.s,
            "stripped_twos": self.stripped_twos,
            "complete": self.complete,
            "candidates": [c.to_dict() for c in self.candidates],
            "confirmed_factors": list(self.confirmed_factors),
            "reduced_N": self.reduced_N,
            "prime_cofactor": self.prime_cofactor,
        }
        if self.prime_factors is not None:
            out["prime_factors"] = list(self.prime_factors)
        if self.plan is not None:
            out["plan"] = self.plan.to_dict()
        if self.feasible_N_max is not None:
            out["feasible_N_max"] = self.feasible_N_max
        if self.note:
            out["note"] = self.note
        return out


def _strip_twos(N: int) -> tuple[int, int]:
    twos = (N & -N).bit_length() - 1
    return N >> twos, twos


def factor(N: int, window: SpectralWindow, method=Method.METHOD1, s: int = 1,
           params: CurlicueParams = DEFAULT_PARAMS, cfg: SamplingConfig | None = None, *,
           plan: InterferogramPlan | None = None, threshold: float | None = None,
           x_max: float | None = None, recursive: bool = False,
           keep_trials: bool = False) -> FactorReport:
    """Factor ``N`` by reading dominant maxima off a sequence of interferograms.

    Method 1 strips powers of two first and plans for the odd part ``N'``.
    Without an explicit ``plan`` the minimal single-``N`` sequence is used.
    Interferograms whose ``x`` exceeds ``x_max`` are not recorded, which
    leaves the report incomplete.

    ``confirmed_factors`` holds every verified non-trivial divisor seen in the
    recorded spans (plus 2 when powers of two were stripped). When the trial
    range was fully covered and no factor lies inside it, ``N'`` is prime and
    is returned as ``prime_cofactor``. ``keep_trials`` also stores every
    unflagged trial point in ``report.trials``.
    """
    method = Method.parse(method)
    cfg = cfg or SamplingConfig()
    if isinstance(N, bool) or int(N) != N or N < 2:
        raise DomainError(f"N must be an integer >= 2, got {N!r}")
    N = int(N)
    if plan is not None:
        if plan.method is not method:
            raise DomainError("plan method does not match the requested method")
        s, window = plan.s, plan.window
        if x_max is None:
            x_max = plan.x_max
    if isinstance(s, bool) or int(s) != s or s < 1:
        raise DomainError(f"s must be a positive integer, got {s!r}")
    s = int(s)
    if threshold is None:
        threshold = default_threshold(cfg.mode)

    reduced, twos = _strip_twos(N) if method is Method.METHOD1 else (N, 0)
    base = [2] if twos else []
    report = FactorReport(N, method, s, [], list(base), twos, True, reduced)

    pre = [p for p in prime_factors_small(s) if s > 1 and reduced % p == 0]
    if pre:
        report.candidates = [Candidate(p, 1.0, -1, True, FACTOR) for p in pre]
        report.confirmed_factors = sorted(set(base + pre))
        report.complete = False
        report.note = "a prime of s divides N; interferograms not recorded"
        return report

    lo, hi = method.trial_range(reduced)
    needs_plan = reduced >= (4 if method is Method.METHOD1 else 2) and lo <= hi
    if plan is None and needs_plan:
        plan = sequence_plan_single_N(reduced, window, method, s, x_max=x_max)
    report.plan = plan

    if plan is not None:
        if not plan.feasible:
            report.feasible_N_max = plan.feasible_N_max
            report.note = "x0 exceeds x_max; only interferograms with x <= x_max recorded"
        recorded = [i for i, x in enumerate(plan.x_values) if x_max is None or x <= x_max * (1 + 1e-12)]
        intervals = [iv for iv in intervals_for(plan, reduced) if iv.i in recorded]
        merged: dict[int, Candidate] = {}
        for i in recorded:
            x = plan.x_values[i]
            ig = record(params, window, x, build_grid(window, x, reduced, cfg, s))
            view = rescale(ig, reduced, s)
            report.views.append(view)
            if keep_trials:
                batch = candidate_trials(view, i, cfg.mode, threshold)
            else:
                batch = _flagged_trials(view, i, cfg.mode, threshold)
            for cand in batch:
                # a trial on a shared boundary belongs to the later interferogram
                if cand.ell not in merged or locate(intervals, cand.ell) == i:
                    merged[cand.ell] = cand
        trials = classify(reduced, s, [merged[k] for k in sorted(merged)])
        report.trials = trials
        report.candidates = [c for c in trials if c.flagged]
        found = {c.ell for c in report.candidates if c.verdict == FACTOR}
        report.confirmed_factors = sorted(found.union(base))
        report.complete = covers(intervals, lo, hi)

    if report.complete and reduced > 1:
        seen = [c.ell for c in report.candidates if c.verdict == FACTOR]
        if not any(lo * (1 - 1e-9) <= d <= hi * (1 + 1e-9) for d in seen):
            report.prime_cofactor = reduced

    if recursive:
        report.prime_factors = _prime_factorization(N, window, params, cfg, threshold, x_max)
    return report


def _prime_factorization(N, window, params, cfg, threshold, x_max) -> list[int] | None:
    """Full decomposition by repeatedly splitting off the smallest factor."""
    m, twos = _strip_twos(N)
    primes = [2] * twos
    while m > 1:
        rep = factor(m, window, Method.METHOD1, 1, params, cfg, threshold=threshold, x_max=x_max)
        if not rep.complete:
            return None
        if rep.prime_cofactor is not None:
            primes.append(m)
            break
        p = min(rep.confirmed_factors)
        primes.append(p)
        m //= p
    return sorted(primes)
