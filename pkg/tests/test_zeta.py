from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stacky.cohomology import COMPACT, ORDINARY, hom_stack_table, p_ab_table
from stacky.counting import StackParams, weighted_hom_count_formula
from stacky.errors import (
    InsufficientCounts,
    ModelMismatch,
    NotExpandable,
    WrongTableKind,
    ZetaMismatch,
)
from stacky.zeta import (
    CountSequence,
    PowerSeries,
    RationalFunction,
    expand_rational,
    fit_two_eigenvalues,
    log_series,
    verify_zeta,
    zeta_rational_from_table,
    zeta_series_from_counts,
)

PRESETS = [
    StackParams(1, 1, 1),
    StackParams(1, 1, 2),
    StackParams(1, 2, 1),
    StackParams(2, 3, 1),
    StackParams(4, 6, 1),
]


def hom_counts(params, q, m):
    return CountSequence(
        q=q, values=tuple(weighted_hom_count_formula(params, q**nu) for nu in range(1, m + 1))
    )


def test_series_from_counts_hom_q2():
    series = zeta_series_from_counts(hom_counts(StackParams(1, 1, 1), 2, 3), 3)
    assert series.coeffs == (1, 6, 48, 384)


def test_series_from_counts_point():
    series = zeta_series_from_counts(CountSequence(q=2, values=(1, 1, 1)), 3)
    assert series.coeffs == (1, 1, 1, 1)  # Z(point) = 1/(1-t)


def test_series_from_counts_coarse_line():
    # counts q^nu + 1 give the expansion of 1/((1-t)(1-qt)): partial geometric sums
    series = zeta_series_from_counts(CountSequence(q=2, values=(3, 5)), 2)
    assert series.coeffs == (1, 3, 7)
    oracle = expand_rational(RationalFunction((1,), (1, -3, 2)), 2)
    assert series == oracle


def test_series_needs_enough_counts():
    with pytest.raises(InsufficientCounts):
        zeta_series_from_counts(CountSequence(q=2, values=(1, 1)), 3)


def test_expand_rational_examples():
    assert expand_rational(RationalFunction((1, -2), (1, -8)), 3).coeffs == (1, 6, 48, 384)
    assert expand_rational(RationalFunction((1,), (1, -1)), 4).coeffs == (1, 1, 1, 1, 1)
    assert expand_rational(RationalFunction((1, -1), (1, -1)), 2).coeffs == (1, 0, 0)


def test_rational_function_normalizes_constant():
    rf = RationalFunction((2, 1), (2, -4))
    assert rf.denominator == (1, -2)
    assert rf.numerator == (1, Fraction(1, 2))
    with pytest.raises(NotExpandable):
        RationalFunction((1,), (0, 1))


def test_zeta_rational_from_table_examples():
    rf = zeta_rational_from_table(hom_stack_table(StackParams(4, 6, 1), COMPACT), 5)
    assert rf.numerator == (1, -(5**9))
    assert rf.denominator == (1, -(5**11))

    rf = zeta_rational_from_table(hom_stack_table(StackParams(1, 1, 1), COMPACT), 2)
    assert rf.numerator == (1, -2)
    assert rf.denominator == (1, -8)

    # the target quotient stack: 1/((1-t)(1-qt))
    rf = zeta_rational_from_table(p_ab_table(COMPACT), 3)
    assert rf.numerator == (1,)
    assert rf.denominator == (1, -4, 3)
    series = expand_rational(rf, 4)
    assert series.coeffs == tuple(
        sum(3**i for i in range(nu + 1)) for nu in range(5)
    )

    with pytest.raises(WrongTableKind):
        zeta_rational_from_table(hom_stack_table(StackParams(1, 1, 1), ORDINARY), 2)


def test_fit_two_eigenvalues_examples():
    assert fit_two_eigenvalues(CountSequence(q=2, values=(6, 60, 504))) == (2, 8)
    counts = hom_counts(StackParams(4, 6, 1), 5, 3)
    assert fit_two_eigenvalues(counts) == (5**9, 5**11)
    with pytest.raises(ModelMismatch):
        fit_two_eigenvalues(CountSequence(q=2, values=(0, 4, 6)))
    with pytest.raises(ModelMismatch):
        fit_two_eigenvalues(CountSequence(q=2, values=(6, 60, 505)))


def test_fit_recovers_eigenvalues_for_all_presets():
    for params in PRESETS:
        for q in (2, 3, 5, 7):
            if params.a % q == 0 or params.b % q == 0:
                continue
            alpha, beta = fit_two_eigenvalues(hom_counts(params, q, 6))
            assert (alpha, beta) == (q ** (params.s - 1), q ** (params.s + 1))


def test_verify_zeta_passes():
    for params, q in [
        (StackParams(1, 1, 1), 2),
        (StackParams(4, 6, 1), 5),
        (StackParams(2, 3, 1), 7),
    ]:
        record = verify_zeta(params, q, 8)
        assert record.status == "PASS"


def test_verify_zeta_order_cap():
    with pytest.raises(ValueError):
        verify_zeta(StackParams(1, 1, 1), 2, 20)


def test_zeta_mismatch_reports_first_index():
    # a wrong table must trip the coefficient comparison
    bad = zeta_rational_from_table(hom_stack_table(StackParams(1, 1, 2), COMPACT), 2)
    good = zeta_series_from_counts(hom_counts(StackParams(1, 1, 1), 2, 4), 4)
    expanded = expand_rational(bad, 4)
    first_diff = next(
        i for i, (x, y) in enumerate(zip(good.coeffs, expanded.coeffs)) if x != y
    )
    assert first_diff == 1
    with pytest.raises(ZetaMismatch) as err:
        raise ZetaMismatch(first_diff, good.coeffs[1], expanded.coeffs[1])
    assert err.value.index == 1


def test_log_exp_round_trip():
    counts = hom_counts(StackParams(1, 1, 1), 2, 6)
    series = zeta_series_from_counts(counts, 6)
    logs = log_series(series)
    assert logs.coeffs[0] == 0
    for nu in range(1, 7):
        assert logs.coeffs[nu] == Fraction(counts.values[nu - 1], nu)


def test_series_round_trip_all_presets():
    for params in PRESETS:
        for q in (2, 3, 5):
            rf = zeta_rational_from_table(hom_stack_table(params, COMPACT), q)
            direct = expand_rational(rf, 8)
            via_counts = zeta_series_from_counts(hom_counts(params, q, 8), 8)
            assert direct == via_counts


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=5),
    st.lists(st.integers(min_value=-50, max_value=50), min_size=0, max_size=4),
)
def test_expand_times_denominator_recovers_numerator(num, den_tail):
    rf = RationalFunction(tuple(num), (1, *den_tail))
    order = 10
    series = expand_rational(rf, order)
    # multiply back: series * denominator == numerator up to t^order
    den = rf.denominator
    for n in range(order + 1):
        acc = sum(
            den[j] * series.coeffs[n - j] for j in range(min(n, len(den) - 1) + 1)
        )
        expected = rf.numerator[n] if n < len(rf.numerator) else 0
        assert acc == expected
