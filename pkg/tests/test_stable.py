import math

import numpy as np
import pytest
from scipy import integrate

from selfsim.errors import AsymmetricMeasure, InvalidAlpha, InvalidSpec
from selfsim.process import TimeGrid, uniform_grid
from selfsim.stable import (
    SpectralMeasure,
    StableSpec,
    check_nondegenerate_stable,
    lepage_events,
    path_from_events,
    quadrant_mass,
    sample_lepage,
    sample_lepage_batch,
    stable_characteristic_function,
    tail_characteristic_factor,
    truncation_tail_bound,
)

PM1 = SpectralMeasure.discrete([[1.0], [-1.0]])
PLUS = SpectralMeasure.discrete([[1.0]])


def levy_exponent_by_quadrature(alpha, u, scale=1.0):
    """``-log phi(u)`` for symmetric +-1 directions: int_0^inf (1 - cos(c u r**(-1/alpha))) dr."""
    # substitute r = s**(-alpha): dr = alpha s**(-alpha-1) ds
    w = scale * u
    f = lambda s: (1 - math.cos(w * s)) * alpha * s ** (-alpha - 1)
    head, _ = integrate.quad(f, 0, 1, limit=200)
    # on [1, inf) split off the cosine and use the Fourier-weighted rule
    osc, _ = integrate.quad(lambda s: alpha * s ** (-alpha - 1), 1, np.inf, weight="cos", wvar=w)
    return head + 1.0 - osc


def test_measure_validation():
    with pytest.raises(InvalidSpec):
        SpectralMeasure.discrete([[2.0, 0.0]])
    with pytest.raises(InvalidSpec):
        SpectralMeasure.discrete([[1.0, 0.0]], [0.5])
    with pytest.raises(InvalidSpec):
        SpectralMeasure.discrete([[1.0, 0.0], [0.0, 1.0]], [1.0, -0.0])


def test_spec_validation():
    with pytest.raises(InvalidAlpha):
        StableSpec(1.0, PM1)
    with pytest.raises(InvalidAlpha):
        StableSpec(2.0, PM1)
    with pytest.raises(AsymmetricMeasure):
        StableSpec(1.5, PLUS)
    StableSpec(0.5, PLUS)
    assert StableSpec(1.5, PM1).hindex == pytest.approx(1 / 1.5)


def test_single_term_path():
    spec = StableSpec(0.5, PLUS, scale=1.0, truncation=1)
    ev = lepage_events(spec, 7)
    x = sample_lepage(spec, TimeGrid([0.0, 0.5, 1.0]), 7).points[:, 0]
    expected = [g ** -2.0 if t >= ev.eta[0] else 0.0 for t, g in
                zip([0.0, 0.5, 1.0], [ev.gammas[0]] * 3)]
    assert x.tolist() == expected
    assert x[-1] > 0


def test_one_sided_paths_non_decreasing():
    spec = StableSpec(0.5, PLUS, truncation=500)
    for seed in range(5):
        x = sample_lepage(spec, uniform_grid(64), seed).points[:, 0]
        assert x[0] == 0.0
        assert np.all(np.diff(x) >= 0)


def test_jump_structure_and_determinism():
    spec = StableSpec(1.5, SpectralMeasure.uniform_sphere(3), truncation=300)
    ev = lepage_events(spec, 3)
    mags = np.linalg.norm(ev.jumps, axis=1)
    assert np.all(np.diff(mags) < 0)
    assert np.all((ev.eta >= 0) & (ev.eta <= 1))
    assert np.allclose(np.linalg.norm(ev.jumps, axis=1), ev.gammas ** (-1 / 1.5))
    g = uniform_grid(20)
    assert sample_lepage(spec, g, 3) == sample_lepage(spec, g, 3)
    assert np.array_equal(sample_lepage_batch(spec, g, [3])[0], sample_lepage(spec, g, 3).points)


def test_truncations_are_coupled():
    short = lepage_events(StableSpec(0.8, PM1, truncation=100), 5)
    long = lepage_events(StableSpec(0.8, PM1, truncation=1000), 5)
    assert np.array_equal(short.jumps, long.jumps[:100])
    assert np.array_equal(short.eta, long.eta[:100])


def test_path_from_events_is_right_continuous():
    spec = StableSpec(0.8, PM1, truncation=10)
    ev = lepage_events(spec, 1)
    t = np.sort(np.concatenate([[0.0, 1.0], ev.eta]))
    x = path_from_events(ev, TimeGrid(t)).points[:, 0]
    for k, e in enumerate(ev.eta):
        i = int(np.flatnonzero(t == e)[0])
        assert x[i] - x[i - 1] == pytest.approx(ev.jumps[k, 0], rel=1e-12, abs=1e-15)


def test_grid_must_lie_in_unit_interval():
    with pytest.raises(ValueError):
        sample_lepage(StableSpec(0.8, PM1), TimeGrid([0.0, 2.0]), 0)


def test_nondegeneracy_examples():
    assert check_nondegenerate_stable(SpectralMeasure.symmetric_axes(2))
    assert not check_nondegenerate_stable(SpectralMeasure.discrete([[1.0, 0.0], [-1.0, 0.0]]))
    assert check_nondegenerate_stable(SpectralMeasure.uniform_sphere(3))


def test_quadrant_mass_examples():
    two = SpectralMeasure.discrete([[1.0, 0.0], [0.0, 1.0]], [0.5, 0.5])
    assert quadrant_mass(two, (1, 1)) == 1.0
    assert quadrant_mass(SpectralMeasure.uniform_sphere(2), (0, 1)) == 0.25
    assert quadrant_mass(PLUS, (0,)) == 0.0


def test_tail_bound_contract():
    b2 = truncation_tail_bound(StableSpec(0.8, PM1, truncation=100))
    b4 = truncation_tail_bound(StableSpec(0.8, PM1, truncation=10_000))
    assert b4 < b2
    seq = [truncation_tail_bound(StableSpec(0.5, PLUS, truncation=10**k)) for k in range(1, 8)]
    assert all(b < a for a, b in zip(seq, seq[1:]))
    assert seq[-1] < 1e-5 * seq[0]
    assert 0 < truncation_tail_bound(StableSpec(1.5, PM1, truncation=1)) < math.inf


def test_closed_form_lambda_matches_quadrature():
    spec = StableSpec(1.5, PM1)
    lam = -math.log(stable_characteristic_function(spec, [1.0]).real)
    assert lam == pytest.approx(levy_exponent_by_quadrature(1.5, 1.0), rel=1e-6)
    assert lam == pytest.approx(2.5066, abs=1e-4)
    for u in (0.5, 2.0):
        phi = stable_characteristic_function(spec, [u])
        assert phi.imag == 0.0
        assert phi.real == pytest.approx(math.exp(-lam * u**1.5), rel=1e-12)


def test_closed_form_lambda_alpha_below_one():
    spec = StableSpec(0.8, PM1, scale=2.0)
    lam = -math.log(stable_characteristic_function(spec, [1.0]).real)
    assert lam == pytest.approx(levy_exponent_by_quadrature(0.8, 1.0, scale=2.0), rel=1e-6)


def test_uniform_sphere_abs_moment():
    rng = np.random.default_rng(0)
    g = rng.standard_normal((400_000, 2))
    e = g / np.linalg.norm(g, axis=1, keepdims=True)
    sigma = SpectralMeasure.uniform_sphere(2)
    theta = np.array([0.3, -0.4])
    mc = np.mean(np.abs(e @ theta) ** 1.5)
    assert sigma.abs_moment(theta, 1.5) == pytest.approx(mc, rel=5e-3)
    assert sigma.moment(theta, 2) == pytest.approx(np.mean((e @ theta) ** 2), rel=5e-3)


def test_tail_factor_against_monte_carlo():
    spec = StableSpec(1.5, PM1, truncation=5)
    g, a = 5.0, 1.5
    rng = np.random.default_rng(1)
    n, m = 20_000, 4000
    vals = []
    for _ in range(n // 1000):
        arr = g + np.cumsum(rng.exponential(size=(1000, m)), axis=1)
        part = np.sum(arr ** (-1 / a) * rng.choice([-1.0, 1.0], size=(1000, m)), axis=1)
        # beyond the simulated terms the jumps are tiny: Gaussian with the Poisson variance
        var_rest = arr[:, -1] ** (1 - 2 / a) / (2 / a - 1)
        vals.append(np.cos(part) * np.exp(-var_rest / 2))
    vals = np.concatenate(vals)
    se = vals.std() / math.sqrt(n)
    f = tail_characteristic_factor(spec, [1.0], np.array([g]))[0]
    assert abs(f.real - vals.mean()) <= 4 * se
    assert abs(f.imag) < 1e-15


def test_symmetric_mean_zero():
    spec = StableSpec(1.5, PM1, truncation=200)
    s1 = np.array([lepage_events(spec, s).jumps.sum() for s in range(100_000)])
    assert abs(s1.mean()) <= 4 * s1.std(ddof=1) / math.sqrt(s1.size)
