"""Zeta functions from weighted point counts, as exact rational series.

The zeta series of a count sequence N_1, N_2, ... is the exponential of
sum_nu N_nu t^nu / nu, computed term by term over the rationals via the
recurrence n*z_n = sum_{j<=n} N_j z_{n-j}.  The rational-function side is
assembled from a compactly supported weight table: each weight w in degree
i contributes a factor (1 - q^w t), in the numerator for odd i and the
denominator for even i.  For the Hom-stack table this gives exactly
(1 - q^((a+b)n-1) t) / (1 - q^((a+b)n+1) t), and expanding it back must
match the series from the closed-form counts coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import COMPACT, CohomologyTable
from .counting import StackParams, weighted_hom_count_formula
from .errors import (
    InsufficientCounts,
    ModelMismatch,
    NotExpandable,
    WrongTableKind,
    ZetaMismatch,
)
from .records import PASS, VerificationRecord

MAX_SERIES_ORDER = 16


@dataclass(frozen=True)
class PowerSeries:
    """Truncated series c_0 + c_1 t + ... + c_N t^N with exact coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class RationalFunction:
    """numerator(t) / denominator(t); the denominator constant term is 1."""

    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]

    def __post_init__(self):
        num = tuple(Fraction(c) for c in self.numerator)
        den = tuple(Fraction(c) for c in self.denominator)
        if not den or den[0] == 0:
            raise NotExpandable("denominator must have a nonzero constant term")
        if den[0] != 1:
            num = tuple(c / den[0] for c in num)
            den = tuple(c / den[0] for c in den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)


@dataclass(frozen=True)
class CountSequence:
    """q and the weighted counts over the degree-nu extensions, nu = 1..M."""

    q: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise InsufficientCounts("at least one count is required")
        object.__setattr__(
            self, "values", tuple(Fraction(v) for v in self.values)
        )


def zeta_series_from_counts(counts: CountSequence, order: int) -> PowerSeries:
    """exp(sum N_nu t^nu / nu) truncated at t^order, exactly."""
    if len(counts.values) < order:
        raise InsufficientCounts(
            f"{len(counts.values)} counts supplied, {order} needed"
        )
    z = [Fraction(1)]
    for n in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            acc += counts.values[j - 1] * z[n - j]
        z.append(acc / n)
    return PowerSeries(tuple(z))


def log_series(series: PowerSeries) -> PowerSeries:
    """Formal logarithm of a series with constant term 1 (inverse of exp)."""
    if series.coeffs[0] != 1:
        raise ValueError("logarithm needs constant term 1")
    z = series.coeffs
    weighted = [Fraction(0)]  # weighted[j] = j * l_j
    out = [Fraction(0)]
    for n in range(1, series.order + 1):
        acc = n * z[n]
        for j in range(1, n):
            acc -= weighted[j] * z[n - j]
        weighted.append(acc)
        out.append(acc / n)
    return PowerSeries(tuple(out))


def expand_rational(rf: RationalFunction, order: int) -> PowerSeries:
    """Series of numerator/denominator by long division, truncated at t^order."""
    num, den = rf.numerator, rf.denominator
    out = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc / den[0])
    return PowerSeries(tuple(out))


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def zeta_rational_from_table(table: CohomologyTable, q: int) -> RationalFunction:
    """Product of (1 - q^w t) factors, odd degrees up, even degrees down."""
    if table.kind != COMPACT:
        raise WrongTableKind("zeta factors read the compactly supported table")
    num = [Fraction(1)]
    den = [Fraction(1)]
    for i, weights in table.entries:
        for w in weights:
            factor = [Fraction(1), Fraction(-(q**w))]
            if i % 2:
                num = _poly_mul(num, factor)
            else:
                den = _poly_mul(den, factor)
    return RationalFunction(numerator=tuple(num), denominator=tuple(den))


def fit_two_eigenvalues(counts: CountSequence) -> tuple[int, int]:
    """Solve N_nu = beta^nu - alpha^nu from N_1, N_2; verify the rest.

    Returns (alpha, beta) as nonnegative integers, raising ModelMismatch
    when the first count vanishes, the solution is not integral, or any
    later count breaks the model.
    """
    values = counts.values
    if len(values) < 2:
        raise ModelMismatch("need at least two counts")
    n1, n2 = values[0], values[1]
    if n1 == 0:
        raise ModelMismatch("first count is zero")
    total = n2 / n1  # beta + alpha
    beta = (total + n1) / 2
    alpha = (total - n1) / 2
    if beta.denominator != 1 or alpha.denominator != 1 or alpha < 0:
        raise ModelMismatch(f"non-integral eigenvalues ({alpha}, {beta})")
    alpha, beta = int(alpha), int(beta)
    failures = [
        nu
        for nu, value in enumerate(values, start=1)
        if value != beta**nu - alpha**nu
    ]
    if failures:
        raise ModelMismatch(f"model fails at nu = {failures}")
    return alpha, beta


def verify_zeta(params: StackParams, q: int, order: int = 8) -> VerificationRecord:
    """Check that the count series equals the expanded rational function.

    Counts come from the closed-form weighted count at q^nu; the rational
    function comes from the compactly supported Hom-stack table.  Raises
    ZetaMismatch with the first differing index on disagreement.
    """
    if not 1 <= order <= MAX_SERIES_ORDER:
        raise ValueError(f"order must be in [1, {MAX_SERIES_ORDER}]")
    from .cohomology import hom_stack_table  # local import to keep module edges one-way

    counts = CountSequence(
        q=q,
        values=tuple(
            Fraction(weighted_hom_count_formula(params, q**nu))
            for nu in range(1, order + 1)
        ),
    )
    from_counts = zeta_series_from_counts(counts, order)
    rf = zeta_rational_from_table(hom_stack_table(params, COMPACT), q)
    from_rf = expand_rational(rf, order)
    for idx, (c1, c2) in enumerate(zip(from_counts.coeffs, from_rf.coeffs)):
        if c1 != c2:
            raise ZetaMismatch(idx, c1, c2)
    return VerificationRecord(
        check="zeta_rationality",
        inputs={"a": params.a, "b": params.b, "n": params.n, "q": q, "order": order},
        expected=_coeff_string(from_rf),
        observed=_coeff_string(from_counts),
        status=PASS,
    )


def _coeff_string(series: PowerSeries) -> str:
    return "[" + ", ".join(str(c) for c in series.coeffs) + "]"
