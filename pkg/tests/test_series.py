"""Kernel tests: exact ring arithmetic, extraction, exp/log, reversion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgmk.series import (
    GradedSeries,
    Monomial,
    SeriesContext,
    SeriesDomainError,
    SeriesError,
    unit_monomial,
)

from oracles import lp_pow, constant_term_in, ps_revert

CTX_T = SeriesContext(curve_degrees=(1,), n_chart=0)
CTX_X2 = SeriesContext(curve_degrees=(1,), n_chart=2)
CTX_X1 = SeriesContext(curve_degrees=(1,), n_chart=1)


def t_var(trunc, ctx=CTX_T):
    return GradedSeries.curve_var(ctx, trunc, 0)


def test_monomial_product_is_exponent_addition():
    m1 = Monomial((0,), (1, -1))
    m2 = Monomial((0,), (0, 1))
    assert m1 * m2 == Monomial((0,), (1, 0))


def test_monomial_rejects_negative_curve_exponent():
    with pytest.raises(SeriesError):
        Monomial((-1,), ())


def test_difference_of_squares():
    one = GradedSeries.one(CTX_T, 2)
    t = t_var(2)
    prod = (one + t) * (one - t)
    assert prod == one - t * t


def test_constant_term_of_binomial_fourth_power():
    # (x + 1/x)^4 -> constant term 6, from the naive expansion oracle
    f = GradedSeries.chart_var(CTX_X1, 0, 0) + GradedSeries.chart_var(CTX_X1, 0, 0, -1)
    got = f.pow(4).constant_term()
    oracle = lp_pow({(1,): Fraction(1), (-1,): Fraction(1)}, 4)
    expected = constant_term_in(oracle, (0,))[(0,)]
    assert expected == 6
    assert got.coefficient(unit_monomial(CTX_X1)) == expected


def test_constant_term_p2_cube():
    # (x1 + x2 + t^3/(x1 x2))^3 -> 6 t^3 where t has weight 3 here
    ctx = SeriesContext(curve_degrees=(3,), n_chart=2)
    w = (
        GradedSeries.chart_var(ctx, 3, 0)
        + GradedSeries.chart_var(ctx, 3, 1)
        + GradedSeries.from_monomial(ctx, 3, Monomial((1,), (-1, -1)))
    )
    ct = w.pow(3).constant_term()
    # oracle in 3 slots (t, x1, x2)
    oracle = lp_pow(
        {
            (0, 1, 0): Fraction(1),
            (0, 0, 1): Fraction(1),
            (1, -1, -1): Fraction(1),
        },
        3,
    )
    assert constant_term_in(oracle, (1, 2))[(1, 0, 0)] == 6
    assert ct.coefficient(Monomial((1,), (0, 0))) == 6


def test_constant_term_central_binomial():
    # (x + t^2/x)^4 -> 6 t^4 with t of weight 2
    ctx = SeriesContext(curve_degrees=(2,), n_chart=1)
    w = GradedSeries.chart_var(ctx, 8, 0) + GradedSeries.from_monomial(
        ctx, 8, Monomial((1,), (-1,))
    )
    ct = w.pow(4).constant_term()
    assert ct.coefficient(Monomial((2,), (0,))) == 6


def test_constant_term_keeps_t_and_z():
    ctx = CTX_X1
    f = (
        GradedSeries.chart_var(ctx, 2, 0)
        + GradedSeries.from_monomial(ctx, 2, Monomial((1,), (-1,)))
        + GradedSeries.from_monomial(ctx, 2, Monomial((0,), (0,)), 3)
    )
    assert f.constant_term().coefficient(unit_monomial(ctx)) == 3
    assert len(f.constant_term().terms) == 1


def test_exp_of_zero_is_one():
    z = GradedSeries.zero(CTX_T, 5)
    assert z.exp() == GradedSeries.one(CTX_T, 5)


def test_exp_taylor_coefficients():
    a = Fraction(7, 3)
    f = t_var(2).scale(a)
    e = f.exp()
    t2 = Monomial((2,), ())
    assert e.coefficient(unit_monomial(CTX_T)) == 1
    assert e.coefficient(Monomial((1,), ())) == a
    assert e.coefficient(t2) == a * a / 2


def test_log_exp_roundtrip():
    t = t_var(6)
    f = t.scale(2) + t * t  # 2t + t^2
    assert f.exp().log() == f


def test_exp_log_inverse_other_way():
    t = t_var(6)
    h = t.scale(3) + t * t * t.scale(5)
    one_plus = GradedSeries.one(CTX_T, 6) + h
    assert one_plus.log().exp() == one_plus


def test_exp_rejects_degree_zero_terms():
    f = GradedSeries.one(CTX_T, 4)
    with pytest.raises(SeriesDomainError):
        f.exp()


def test_log_rejects_wrong_constant_term():
    with pytest.raises(SeriesDomainError):
        t_var(4).log()


def test_revert_identity():
    u = t_var(8)
    assert u.revert() == u


def test_revert_u_exp_u():
    # revert(u e^u) has coefficients (-n)^(n-1)/n!: 1, -1, 3/2, -8/3, ...
    trunc = 6
    u = t_var(trunc)
    f = u * u.exp()
    g = f.revert()
    expected = [Fraction(((-n) ** (n - 1)), __import__("math").factorial(n)) for n in range(1, 5)]
    got = [g.coefficient(Monomial((n,), ())) for n in range(1, 5)]
    assert got == [Fraction(1), Fraction(-1), Fraction(3, 2), Fraction(-8, 3)]
    assert got == expected
    # cross-check against the Newton-iteration oracle
    f_list = [f.coefficient(Monomial((n,), ())) for n in range(trunc + 1)]
    oracle = ps_revert(f_list, trunc)
    assert [oracle[n] for n in range(1, 5)] == got


def test_revert_closed_form():
    # revert(u/(1-u)) = u/(1+u) = sum (-1)^(n-1) u^n
    trunc = 7
    u = t_var(trunc)
    f = GradedSeries(CTX_T, trunc, {Monomial((n,), ()): Fraction(1) for n in range(1, trunc + 1)})
    g = f.revert()
    for n in range(1, trunc + 1):
        assert g.coefficient(Monomial((n,), ())) == Fraction((-1) ** (n - 1))


def test_revert_involution():
    trunc = 8
    u = t_var(trunc)
    f = u + u.pow(2).scale(Fraction(3, 2)) + u.pow(3).scale(Fraction(-1, 5))
    assert f.revert().revert() == f


def test_revert_preconditions():
    with pytest.raises(SeriesDomainError):
        t_var(4).scale(2).revert()  # leading coefficient != 1
    with pytest.raises(SeriesDomainError):
        GradedSeries.one(CTX_T, 4).revert()  # constant term


def test_arity_mismatch_raises():
    f = GradedSeries.one(CTX_T, 3)
    g = GradedSeries.one(CTX_X2, 3)
    with pytest.raises(SeriesError):
        f.add(g)
    h = GradedSeries.one(CTX_T, 4)
    with pytest.raises(SeriesError):
        f.mul(h)


def test_truncation_drops_heavy_terms():
    t = t_var(3)
    f = t.pow(2)
    assert (f * f).is_zero()  # degree 4 > 3


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------

coeffs = st.integers(min_value=-4, max_value=4).map(Fraction)


def small_series(ctx, trunc):
    monos = st.tuples(
        st.tuples(*[st.integers(0, 2) for _ in range(ctx.n_curve)]),
        st.tuples(*[st.integers(-2, 2) for _ in range(ctx.n_chart)]),
        st.integers(-1, 1),
    ).map(lambda t: Monomial(*t))
    return st.dictionaries(monos, coeffs, max_size=4).map(
        lambda d: GradedSeries(ctx, trunc, d)
    )


@settings(max_examples=60, deadline=None)
@given(small_series(CTX_X2, 4), small_series(CTX_X2, 4), small_series(CTX_X2, 4))
def test_ring_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    one = GradedSeries.one(CTX_X2, 4)
    assert f * one == f


@settings(max_examples=60, deadline=None)
@given(small_series(CTX_X2, 4), small_series(CTX_X2, 4))
def test_constant_term_symmetric(f, g):
    assert (f * g).constant_term() == (g * f).constant_term()


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-3, 3).map(Fraction), min_size=0, max_size=4)
)
def test_revert_involution_property(tail):
    trunc = 6
    terms = {Monomial((1,), ()): Fraction(1)}
    for i, c in enumerate(tail, start=2):
        if c:
            terms[Monomial((i,), ())] = c
    f = GradedSeries(CTX_T, trunc, terms)
    assert f.revert().revert() == f
