"""Smoke tests for the python bindings: one pass over every exposed surface."""

import math

import pytest

import fcalc

DIM_THIRD = math.log(2) / math.log(3)
DIM_KOCH = math.log(4) / math.log(3)


def test_cover_and_flag():
    cover = fcalc.build_cantor_cover(1 / 3, 2)
    assert cover.size == 4
    assert cover.depth == 2
    intervals = cover.intervals()
    assert intervals[0] == (0.0, pytest.approx(1 / 9))
    assert fcalc.flag(cover, 0.4, 0.6) == 0
    assert fcalc.flag(cover, 0.3, 0.5) == 1
    assert cover.contains(1 / 3)


def test_mass_and_dimension():
    alpha = DIM_THIRD
    cover = fcalc.build_cantor_cover(1 / 3, 10)
    mass = fcalc.coarse_mass(cover, alpha, 0.0, 1.0, cover.native_width)
    assert mass == pytest.approx(math.gamma(alpha + 1), rel=1e-12)

    est = fcalc.mass_function(1 / 3, 0.9)
    assert est.converged and est.value == 0.0
    est = fcalc.mass_function(1 / 3, 0.4)
    assert est.diverged

    assert fcalc.gamma_dimension(1 / 3) == pytest.approx(DIM_THIRD, abs=0.02)


def test_staircase():
    cover = fcalc.build_cantor_cover(1 / 3, 8)
    table = fcalc.build_staircase(cover, DIM_THIRD, 0.0)
    gamma = math.gamma(DIM_THIRD + 1)
    assert fcalc.staircase_eval(table, 1.0) == pytest.approx(gamma, rel=1e-12)
    assert fcalc.staircase_eval(table, 0.4) == fcalc.staircase_eval(table, 0.6)
    assert fcalc.staircase_invert(table, gamma / 2) == pytest.approx(1 / 3, rel=1e-9)


def test_curves():
    koch = fcalc.build_koch(4)
    assert koch.vertex_count == 4**4 + 1
    assert koch.length() == pytest.approx((4 / 3) ** 4, rel=1e-12)
    assert fcalc.curve_mass(koch, DIM_KOCH) == pytest.approx(
        1 / math.gamma(DIM_KOCH + 1), rel=1e-12
    )
    assert fcalc.curve_gamma_dimension("koch") == pytest.approx(DIM_KOCH, abs=0.03)
    rise = fcalc.build_rise(koch, DIM_KOCH, 0.0)
    assert rise.rise_at(1.0) == pytest.approx(1 / math.gamma(DIM_KOCH + 1), rel=1e-12)


def test_calculus():
    cover = fcalc.build_cantor_cover(1 / 3, 8)
    table = fcalc.build_staircase(cover, DIM_THIRD, 0.0)
    d = fcalc.f_alpha_derivative(
        cover, table, lambda x: fcalc.staircase_eval(table, x), 1 / 3, 0.05
    )
    assert d == pytest.approx(1.0, rel=1e-9)
    r = fcalc.f_alpha_integral(table, lambda x: 1.0, 0.0, 1.0)
    assert r.value == pytest.approx(math.gamma(DIM_THIRD + 1), rel=1e-12)
    assert r.gap == pytest.approx(0.0, abs=1e-15)


def test_solvers():
    trace = fcalc.solve_linear(
        lambda s: 0.5,
        lambda s: 10 + 5 * math.sin(2 * s),
        0.0,
        s_end=4.0,
        step=1e-3,
    )

    def closed(s):
        return (
            20
            - 40 / 17 * math.cos(2 * s)
            + 10 / 17 * math.sin(2 * s)
            - 300 / 17 * math.exp(-s / 2)
        )

    worst = max(abs(y - closed(s)) for (_, s, y, _) in trace.samples())
    assert worst < 1e-5

    tr = fcalc.solve_numeric(lambda s, y: y, 1.0, s_end=1.0, step=1e-3)
    assert tr.samples()[-1][2] == pytest.approx(math.e, rel=1e-10)

    ber = fcalc.solve_bernoulli(
        lambda s: 0.0, lambda s: -1.0, 2.0, 1.0, s_end=1.0, step=1e-3
    )
    assert ber.samples()[-1][2] == pytest.approx(0.5, rel=1e-8)

    sep = fcalc.solve_separable(
        lambda s: -(3 * s * s + 4 * s + 2),
        lambda y: 2 * (y - 1),
        -1.0,
        s_end=2.0,
        step=1e-2,
    )
    (_, s, y, _) = sep.samples()[-1]
    assert y == pytest.approx(1 - math.sqrt(s**3 + 2 * s**2 + 2 * s + 4), rel=1e-6)


def test_models():
    p = fcalc.interest_balance(fcalc.InterestParams(1000.0, 0.05, 100.0, 1.0), 10.0)
    direct = 1000 * math.exp(0.5) + (100 / 0.05) * (math.exp(0.5) - 1)
    assert p == pytest.approx(direct, rel=1e-12)

    profile = fcalc.escape_profile(fcalc.EscapeParams(alpha=1.0))
    assert profile.v_escape == pytest.approx(math.sqrt(2 * 9.8 * 6.37e6), rel=1e-12)

    params = fcalc.CoolingParams(Ts=20.0, T0=30.0, T1=25.0, t1=1.0, Td=37.0, alpha=1.0)
    assert fcalc.estimate_k(params) == pytest.approx(math.log(2), rel=1e-12)
    td = fcalc.estimate_time_of_death(params)
    assert td > 0.0


def test_error_translation():
    with pytest.raises(ValueError):
        fcalc.build_cantor_cover(1.5, 2)
    with pytest.raises(ValueError):
        fcalc.AlphaOrder.for_set(2.0)
