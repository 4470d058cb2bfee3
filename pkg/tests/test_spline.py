import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trigspline import (ParamVectors, SplineConfig, TruncationPolicy, build_grid, build_spline,
                        differintegrate, eval_trig_poly, evaluate, evaluate_many, map_domain,
                        spectrum, trig_coefficients, truncation_error_bound)
from trigspline.oracle import linear_periodic

FIXED = TruncationPolicy.fixed


def example_spline(example_data, **kw):
    kw.setdefault("policy", FIXED(50))
    return build_spline(SplineConfig(N=9, **kw), example_data)


def test_constant_data_is_constant_spline():
    for I1 in (0, 1):
        for I2 in (0, 1):
            s = build_spline(SplineConfig(9, I1, I2, r=2), np.full(9, 1.75))
            assert s.constant == 1.75
            assert spectrum(s) == ()
            assert evaluate(s, 0.3) == 1.75


def test_example_node_five(example_data):
    s = example_spline(example_data, r=1)
    assert evaluate(s, 8 * np.pi / 9) == pytest.approx(4.0, abs=1e-12)


def test_reduction_matches_trig_polynomial(example_data, rng):
    ts = rng.uniform(-10, 10, 1000)
    for I2 in (0, 1):
        s = build_spline(SplineConfig(9, 0, I2, vectors=ParamVectors.plain(), r=1), example_data)
        c = trig_coefficients(example_data, build_grid(9, I2))
        assert np.max(np.abs(evaluate_many(s, ts) - eval_trig_poly(c, ts))) <= 1e-12
        assert [t.j for t in spectrum(s)] == [1, 2, 3, 4]


def test_periodicity_and_bitwise_many(example_data, rng):
    s = example_spline(example_data, I1=1, I2=0, r=3)
    ts = rng.uniform(-20, 20, 50)
    many = evaluate_many(s, ts)
    scalar = np.array([evaluate(s, t) for t in ts])
    assert np.array_equal(many, scalar)
    shifted = evaluate_many(s, ts + 2 * np.pi)
    assert np.max(np.abs(many - shifted)) <= 1e-12 * 4
    assert evaluate_many(s, []).size == 0
    rep = evaluate_many(s, [1.0, 1.0, 1.0])
    assert rep[0] == rep[1] == rep[2]


def test_midpoint_is_linear_mean(example_data):
    s = build_spline(SplineConfig(9, r=1, policy=FIXED(1000)), example_data)
    lin = linear_periodic(example_data, build_grid(9, 0))
    mid = np.pi / 9
    assert lin(mid) == 1.5
    assert abs(evaluate(s, mid) - 1.5) <= truncation_error_bound(s)
    assert abs(evaluate(s, mid) - 1.5) < 1e-3


def test_spectrum_structure(example_data):
    M = 30
    s = example_spline(example_data, r=1, policy=FIXED(M))
    j = np.array([t.j for t in spectrum(s)])
    assert np.all(np.diff(j) > 0)
    assert np.all(j % 9 != 0)
    assert j.max() <= M * 9 + 4
    assert s.frequencies.size == 2 * 4 * M + 4


def test_differentiate_cosine():
    g = build_grid(9, 0)
    s = build_spline(SplineConfig(9, vectors=ParamVectors.plain(), r=2), np.cos(g.nodes))
    d = differintegrate(s, 1.0)
    ts = np.linspace(0, 2 * np.pi, 37)
    np.testing.assert_allclose(d(ts), -np.sin(ts), atol=1e-14)
    assert d.constant == 0.0


def test_differentiate_constant_is_zero():
    s = build_spline(SplineConfig(9, r=2), np.full(9, 3.0))
    d = differintegrate(s, 1.0)
    assert d.constant == 0.0 and d(0.7) == 0.0


def test_derivative_against_finite_differences(example_data, rng):
    s = example_spline(example_data, r=3, policy=FIXED(100))
    d = differintegrate(s, 1.0)
    ts = rng.uniform(0, 2 * np.pi, 200)
    h = 1e-5
    fd = (s(ts + h) - s(ts - h)) / (2 * h)
    scale = np.max(np.abs(d(ts)))
    assert np.max(np.abs(d(ts) - fd)) <= 1e-4 * scale


def test_fractional_half_derivatives_compose(example_data, rng):
    # two Weyl half-derivatives equal one ordinary derivative, spectrum-wise and pointwise
    s = example_spline(example_data, r=3)
    half = differintegrate(s, 0.5)
    one = differintegrate(s, 1.0)
    j = s.frequencies.astype(float)
    np.testing.assert_allclose(half.cos_amplitudes * np.sqrt(j), one.cos_amplitudes, rtol=1e-13)
    # apply a second half step to the half spectrum by hand
    ts = rng.uniform(0, 2 * np.pi, 40)
    x = np.multiply.outer(ts, j) + np.pi / 2
    manual = (np.sqrt(j) * (half.cos_amplitudes * np.cos(x) + half.sin_amplitudes * np.sin(x))).sum(1)
    np.testing.assert_allclose(manual, one(ts), atol=1e-10)


def test_differintegrate_rejects_q_ge_r(example_data):
    s = example_spline(example_data, r=2)
    with pytest.raises(ValueError, match="q < r"):
        differintegrate(s, 2.0)


def test_integral_derivative_is_zero_mean_original(example_data, rng):
    s = example_spline(example_data, r=2)
    integral = differintegrate(s, -1.0)
    ts = rng.uniform(0, 2 * np.pi, 100)
    h = 1e-5
    fd = (integral(ts + h) - integral(ts - h)) / (2 * h)
    assert np.max(np.abs(fd - (s(ts) - s.constant))) <= 1e-8


def test_config_validation():
    with pytest.raises(ValueError, match="odd"):
        SplineConfig(N=8)
    with pytest.raises(ValueError, match="q < r"):
        SplineConfig(N=9, r=2, q=2.5)
    with pytest.raises(ValueError):
        SplineConfig(N=9, r=0)
    with pytest.raises(ValueError, match="b > a"):
        SplineConfig(N=9, domain=(1.0, 1.0))


def test_ill_posed_vectors(example_data):
    # hc_k = g1 nu_k + g2 nu_{N-k} + ... ; choose g1 to cancel the M=1 partial sum for k=1
    from trigspline.kernel import convergence_factor as nu
    g1 = -(nu(8, 1, 9) + nu(10, 1, 9)) / nu(1, 1, 9)
    vec = ParamVectors((g1, 1.0, 1.0), (1.0, 1.0, 1.0))
    with pytest.raises(ValueError, match="ill-posed parameter vectors: hc_1"):
        build_spline(SplineConfig(9, vectors=vec, r=1, policy=FIXED(1)), example_data)


def test_map_domain():
    assert map_domain(0, 2 * np.pi, 1.3) == pytest.approx(1.3, rel=1e-15)
    assert map_domain(0, 1, 0.5) == pytest.approx(np.pi)
    assert map_domain(-1, 1, 0) == pytest.approx(np.pi)
    with pytest.raises(ValueError):
        map_domain(1, 0, 0.5)


def test_domain_spline_interpolates(example_data):
    s = build_spline(SplineConfig(9, I2=1, r=2, domain=(-1.0, 3.0)), example_data)
    x = -1.0 + 4.0 * build_grid(9, 1).nodes / (2 * np.pi)
    np.testing.assert_allclose(s(x), example_data, atol=1e-12)
    assert s(-1.0) == pytest.approx(s(3.0), abs=1e-12)


def test_truncated_flag():
    s = build_spline(SplineConfig(9, r=1, policy=TruncationPolicy(1e-10, 1, 10)), np.arange(9.0))
    assert s.truncated and s.M_used == 10


odd_n = st.integers(1, 8).map(lambda n: 2 * n + 1)
finite = st.floats(-100, 100, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(odd_n.flatmap(lambda N: st.tuples(st.just(N), arrays(float, N, elements=finite))),
       st.sampled_from([0, 1]), st.sampled_from([0, 1]), st.integers(1, 6), st.integers(1, 40))
def test_node_interpolation_any_M(data, I1, I2, r, M):
    N, y = data
    s = build_spline(SplineConfig(N, I1, I2, r=r, policy=FIXED(M)), y)
    assert np.max(np.abs(s.node_values() - y)) <= 1e-10 * max(1.0, np.max(np.abs(y)))


@settings(max_examples=30, deadline=None)
@given(arrays(float, 9, elements=finite), arrays(float, 9, elements=finite),
       st.floats(-5, 5), st.floats(-5, 5), st.sampled_from([0, 1]), st.sampled_from([0, 1]),
       st.floats(0, 2 * np.pi))
def test_linearity_in_data(y, z, alpha, beta, I1, I2, t):
    cfg = SplineConfig(9, I1, I2, r=2, policy=FIXED(20))
    lhs = build_spline(cfg, alpha * y + beta * z)(t)
    rhs = alpha * build_spline(cfg, y)(t) + beta * build_spline(cfg, z)(t)
    scale = max(1.0, np.max(np.abs(alpha * y)) + np.max(np.abs(beta * z)))
    assert abs(lhs - rhs) <= 1e-12 * scale


@settings(max_examples=30, deadline=None)
@given(st.integers(-2, 2), st.sampled_from([0, 1]), st.sampled_from([0, 1]))
def test_integer_spectrum_scaling_exact(q, I1, I2):
    y = np.array([2, 1, 3, 2, 4, 1, 3, 1, 3.0])
    s0 = build_spline(SplineConfig(9, I1, I2, r=3, policy=FIXED(15)), y)
    sq = differintegrate(s0, float(q))
    w = s0.frequencies.astype(float) ** abs(q)
    w = 1.0 / w if q < 0 else w
    assert np.array_equal(sq.frequencies, s0.frequencies)
    assert np.array_equal(sq.cos_amplitudes, s0.cos_amplitudes * w)
    assert np.array_equal(sq.sin_amplitudes, s0.sin_amplitudes * w)


def test_quintic_smoke_smoothness(example_data):
    # only a smoke test: at h = 1e-2 orders 3 and 4 are dominated by O(h^2) stencil error
    from trigspline.harness import smoothness_profile
    s = build_spline(SplineConfig(9, r=5, policy=FIXED(200)), example_data)
    jumps = smoothness_profile(s, build_grid(9, 0).nodes, 5, h=1e-2)
    assert np.all(jumps[:3] <= 1e-3 * 4)
    assert jumps[5] >= 1e3 * jumps[:3].max()


@pytest.mark.parametrize("r,I1,expected", [(1, 0, 0), (3, 1, 1), (2, 0, 1), (2, 1, 0), (4, 0, 1)])
def test_stitching_grid(r, I1, expected, example_data):
    from trigspline import stitching_grid
    from trigspline.harness import smoothness_profile
    cfg = SplineConfig(9, I1, 0, r=r, policy=FIXED(200))
    assert stitching_grid(cfg) == expected
    if r <= 3:
        s = build_spline(cfg, example_data)
        at = smoothness_profile(s, build_grid(9, expected).nodes, r)[r]
        away = smoothness_profile(s, build_grid(9, 1 - expected).nodes, r)[r]
        assert at >= 10 * away


def test_bitwise_across_chunks(example_data):
    from trigspline import spline as spline_mod
    s = example_spline(example_data, r=2, policy=FIXED(64))
    step = spline_mod._CHUNK_ELEMS // s.frequencies.size
    ts = np.linspace(0, 2 * np.pi, 2 * step + 7)
    many = s.evaluate_many(ts)
    for i in (0, step - 1, step, step + 1, 2 * step + 6):
        assert many[i] == s.evaluate(ts[i])


def test_document_round_trip(example_data):
    from trigspline import io
    s = example_spline(example_data, I1=1, I2=1, r=3, domain=(0.0, 5.0),
                     vectors=ParamVectors((1.5, 0.5, -1.0), (1.0, 0.5, 0.5)))
    again = io.spline_from_dict(io.spline_to_dict(s))
    ts = np.linspace(-1, 6, 50)
    assert np.array_equal(again(ts), s(ts))
    assert np.array_equal(differintegrate(again, 1.0)(ts), differintegrate(s, 1.0)(ts))
