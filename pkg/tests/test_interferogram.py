import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ctes import (
    CurlicueParams,
    DomainError,
    SamplingConfig,
    SpectralWindow,
    build_grid,
    ctes_intensity,
    record,
    rescale,
    safe_step,
)
from oracles import trial_intensity

P32 = CurlicueParams(3, 2)
W2 = SpectralWindow(1.0, 2.0)


def test_window_validation():
    assert W2.ratio == 2.0
    for lo, hi in [(1, 1), (2, 1), (0, 1), (-1, 2), (1, math.inf)]:
        with pytest.raises(DomainError):
            SpectralWindow(lo, hi)


def test_sampling_config_validation():
    with pytest.raises(DomainError):
        SamplingConfig(samples_per_unit=1)
    with pytest.raises(DomainError):
        SamplingConfig(mode="fast")


def test_safe_step():
    assert safe_step(100, "low") == pytest.approx(1e-3)
    assert 1e-4 < safe_step(100, "low") < 1
    assert safe_step(100, "high") == pytest.approx(1e-2)
    assert 1e-3 < safe_step(100, "high") < 1
    assert 0.25 < safe_step(2, "low") < 1
    assert 2**-1.5 < safe_step(2, "high") < 1
    with pytest.raises(DomainError):
        safe_step(1, "low")
    with pytest.raises(DomainError):
        safe_step(10, "middle")


@pytest.mark.parametrize("N", list(range(2, 200)))
def test_safe_step_inside_bounds(N):
    assert N**-2.0 < safe_step(N, "low") < 1
    assert N**-1.5 < safe_step(N, "high") < 1


def test_grid_snaps_integers():
    # N=64, x=8*o_min over [o_min, 2 o_min] spans xi_N in [8, 16]
    grid = build_grid(W2, 8.0, 64)
    xi_N = grid * 64 / 8.0
    assert xi_N[0] == 8.0 and xi_N[-1] == 16.0
    for ell in range(8, 17):
        assert np.any(xi_N == ell)
    assert np.all(np.diff(grid) > 0)
    assert grid[0] == W2.o_min and grid[-1] == W2.o_max


def test_grid_density():
    # span [1, 2] at 2 samples per unit
    grid = build_grid(W2, 4.0, 4, SamplingConfig(samples_per_unit=2, snap_to_integers=False))
    assert len(grid) >= 3
    assert np.allclose(np.diff(grid * 4 / 4.0), 0.5)
    snapped = build_grid(W2, 4.0, 4, SamplingConfig(samples_per_unit=2))
    assert {1.0, 2.0} <= set((snapped * 4 / 4.0).tolist())


def test_grid_rejects_bad_x():
    with pytest.raises(DomainError):
        build_grid(W2, 0.0, 10)


@given(x=st.floats(0.05, 500), N=st.integers(1, 5000), spu=st.integers(2, 64),
       hi=st.floats(1.01, 4.0))
def test_grid_monotone_and_in_window(x, N, spu, hi):
    w = SpectralWindow(1.0, hi)
    grid = build_grid(w, x, N, SamplingConfig(spu))
    assert np.all(np.diff(grid) > 0)
    assert grid[0] == w.o_min and grid[-1] == w.o_max


def test_record_matches_kernel():
    grid = build_grid(W2, 5.0, 15)
    ig = record(P32, W2, 5.0, grid)
    expected = ctes_intensity(grid / 5.0, P32)
    assert np.max(np.abs(ig.intensity - expected)) <= 1e-12
    assert np.all((ig.intensity >= 0) & (ig.intensity <= 1 + 1e-12))


def test_record_unit_peaks_at_integer_f():
    x = 3.0
    ks = np.array([2.0, 3.0])  # o_xi = x/k inside [1, 2]
    ig = record(P32, W2, x, x / ks[::-1])
    assert np.allclose(ig.intensity, 1.0, atol=1e-12)


def test_record_validation():
    with pytest.raises(DomainError):
        record(P32, W2, 1.0, [0.5, 1.5])
    with pytest.raises(DomainError):
        record(P32, W2, 1.0, [1.5, 1.2])
    with pytest.raises(DomainError):
        record(P32, W2, -1.0, [1.5])


def _peak_view(j, spu=64):
    N = 111547
    w = SpectralWindow(1.0, 337.21 / 330.84)
    x = N * w.o_min / 330.84
    ig = record(CurlicueParams(3, j), w, x, build_grid(w, x, N, SamplingConfig(spu)))
    return rescale(ig, N)


@pytest.mark.parametrize("j", [2, 3])
def test_peak_window_axis_and_peaks(j):
    view = _peak_view(j)
    lo, hi = view.span
    assert lo == pytest.approx(330.84) and hi == pytest.approx(337.21)
    assert view.xi_N[0] == pytest.approx(330.84) and view.xi_N[-1] == pytest.approx(337.21)
    for ell in range(331, 338):
        k = int(np.argmin(np.abs(view.xi_N - ell)))
        assert abs(view.xi_N[k] - ell) < 1e-9
        expected = trial_intensity(111547, ell, 3, j)
        assert view.intensity[k] == pytest.approx(expected, abs=1e-9)
        if ell in (331, 337):
            assert view.intensity[k] == pytest.approx(1.0, abs=1e-9)


def _half_width(view, centre):
    k = int(np.argmin(np.abs(view.xi_N - centre)))
    y = view.intensity
    left = right = k
    while y[right] >= 0.5:
        right += 1
    while y[left] >= 0.5:
        left -= 1
    return view.xi_N[right] - view.xi_N[left]


def test_j3_peaks_sharper_than_j2():
    v2, v3 = _peak_view(2, 512), _peak_view(3, 512)
    for ell in (331, 337):
        assert _half_width(v3, ell) < _half_width(v2, ell)


def test_rescale_examples():
    ig = record(P32, W2, 15.0, build_grid(W2, 15.0, 15))
    view = rescale(ig, 15)
    assert view.xi_N[0] == 1.0
    ig = record(P32, W2, 8.0, build_grid(W2, 8.0, 15))
    view = rescale(ig, 15)
    assert view.span == (15 / 8, 15 / 4)
    assert view.xi_N[0] == pytest.approx(15 / 8) and view.xi_N[-1] == pytest.approx(15 / 4)


@given(x=st.floats(0.1, 100), N=st.integers(1, 10**5), s=st.integers(1, 15))
def test_rescale_is_linear_and_shares_intensity(x, N, s):
    ig = record(P32, W2, x, build_grid(W2, x, N, SamplingConfig(4), s))
    view = rescale(ig, N, s)
    assert view.intensity is ig.intensity
    assert np.array_equal(view.xi_N, ig.o_xi * (s * N / x))


@given(N=st.integers(2, 20000), x=st.floats(0.5, 2000))
def test_snapped_divisors_have_unit_intensity(N, x):
    ig = record(P32, W2, x, build_grid(W2, x, N))
    view = rescale(ig, N)
    lo, hi = view.span
    for d in range(max(1, math.ceil(lo)), math.floor(hi) + 1):
        if N % d == 0:
            k = int(np.argmin(np.abs(view.xi_N - d)))
            assert view.intensity[k] == pytest.approx(1.0, abs=1e-9)
