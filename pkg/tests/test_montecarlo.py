"""Monte Carlo sampler: determinism, distribution sanity, estimator contract."""
import numpy as np
import pytest

from haarmoments.montecarlo import (SamplerConfig, _uniform_block,
                                    estimate_moment, estimate_sphere_moment,
                                    haar_batch, mc_tolerance, sphere_batch)
from haarmoments.queries import MomentQuery


def test_uniform_stream_is_counter_addressable():
    # reading samples [0,10) in one call equals reading [0,5) and [5,10)
    w = 7
    whole = _uniform_block(123, 0, 10, w)
    head = _uniform_block(123, 0, 5, w)
    tail = _uniform_block(123, 5, 5, w)
    assert np.array_equal(whole, np.vstack([head, tail]))
    assert whole.shape == (10, 7)
    assert np.all(whole > 0) and np.all(whole <= 1)


def test_uniform_stream_differs_by_seed():
    a = _uniform_block(1, 0, 4, 5)
    b = _uniform_block(2, 0, 4, 5)
    assert not np.array_equal(a, b)


def test_haar_batch_unitarity():
    for n in (1, 2, 5):
        us = haar_batch(n, 6, seed=7)
        assert us.shape == (6, n, n)
        eye = np.eye(n)
        for u in us:
            assert np.max(np.abs(u.conj().T @ u - eye)) < 1e-12


def test_haar_batch_counter_addressable():
    whole = haar_batch(3, 8, seed=11)
    head = haar_batch(3, 3, seed=11, start=0)
    tail = haar_batch(3, 5, seed=11, start=3)
    assert np.array_equal(whole, np.vstack([head, tail]))


def test_sphere_batch_normalized():
    for n in (1, 2, 3, 7):
        xs = sphere_batch(n, 5, seed=3)
        assert xs.shape == (5, n)
        assert np.max(np.abs(np.sum(xs * xs, axis=1) - 1.0)) < 1e-12


def test_estimates_are_deterministic():
    q = MomentQuery.make(2, (1, 1), (1, 1), (1, 1), (1, 1))
    cfg = SamplerConfig(n=2, samples=5000, seed=99)
    a = estimate_moment(q, cfg)
    b = estimate_moment(q, cfg)
    assert a.mean == b.mean and a.stderr == b.stderr
    assert a.samples == 5000


def test_estimates_independent_of_thread_count():
    q = MomentQuery.make(3, (1, 2), (1, 2), (2, 1), (2, 1))
    one = estimate_moment(q, SamplerConfig(n=3, samples=20000, seed=5,
                                           threads=1))
    four = estimate_moment(q, SamplerConfig(n=3, samples=20000, seed=5,
                                            threads=4))
    assert one.mean == four.mean
    assert one.stderr == four.stderr


def test_estimate_matches_exact_value():
    q = MomentQuery.make(3, (1,), (1,), (1,), (1,))
    est = estimate_moment(q, SamplerConfig(n=3, samples=50000, seed=17))
    tol = mc_tolerance(est)
    assert abs(est.mean.real - 1 / 3) < tol
    assert abs(est.mean.imag) < tol


def test_estimate_zero_moment():
    # E[U_11] has uniformly random phase: exactly zero in expectation
    q = MomentQuery.make(2, (), (), (1,), (1,))
    est = estimate_moment(q, SamplerConfig(n=2, samples=50000, seed=23))
    assert abs(est.mean) < mc_tolerance(est)


def test_left_invariance_under_permutation():
    # multiplying by a fixed permutation matrix must not change moments
    n, count, seed = 3, 40000, 31
    us = haar_batch(n, count, seed)
    perm = [1, 2, 0]
    vus = us[:, perm, :]  # V @ U with V the permutation matrix of perm
    for (i, j) in ((0, 0), (1, 2)):
        a = (us[:, i, j].conj() * us[:, i, j])
        b = (vus[:, i, j].conj() * vus[:, i, j])
        am, bm = a.mean(), b.mean()
        se = (a.std(ddof=1) + b.std(ddof=1)) / count ** 0.5
        assert abs(am - bm) < 5 * se + 1e-9


def test_sphere_estimator():
    est = estimate_sphere_moment((2, 2, 0),
                                 SamplerConfig(n=3, samples=50000, seed=41))
    assert abs(est.mean.real - 1 / 15) < mc_tolerance(est)
    assert est.mean.imag == 0.0


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(n=0, samples=100, seed=1)
    with pytest.raises(ValueError):
        SamplerConfig(n=2, samples=1, seed=1)
    with pytest.raises(ValueError):
        SamplerConfig(n=2, samples=100, seed=-1)


def test_estimator_validates_dimensions():
    q = MomentQuery.make(3, (1,), (1,), (1,), (1,))
    with pytest.raises(ValueError):
        estimate_moment(q, SamplerConfig(n=2, samples=100, seed=1))
    with pytest.raises(ValueError):
        estimate_sphere_moment((2, 0), SamplerConfig(n=3, samples=100, seed=1))
