import random

import pytest

from stacky.errors import DivisionByZero, UndefinedGcd, ZeroPolynomialResultant
from stacky.field import enumerate_field, make_field
from stacky.poly import (
    NEG_INF,
    Polynomial,
    gcd,
    is_coprime,
    poly_divmod,
    resultant_euclid,
    resultant_sylvester,
)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)
F5 = make_field(5, 1)
F9 = make_field(3, 2)

ORACLE_FIELDS = [F2, F3, F4, F5, F9]
N_RANDOM_PAIRS = 10_000


def P(field, *indices):
    return Polynomial.from_indices(field, indices)


def random_poly(rng, field, max_degree=4, nonzero=True):
    d = rng.randrange(0, max_degree + 1)
    idx = [rng.randrange(field.q) for _ in range(d)]
    idx.append(rng.randrange(1, field.q))  # nonzero leading coefficient
    poly = Polynomial.from_indices(field, idx)
    assert poly or not nonzero
    return poly


# ---------------------------------------------------------------------------
# independent common-root oracle: search every extension that could contain
# a shared root of a pair with total degree <= 4 (factor degree <= 2)
# ---------------------------------------------------------------------------

_EXT_CACHE = {}


def _extension_with_embedding(base, m):
    """(E, embed) with embed mapping base elements into E = F_{q^m}."""
    key = (base.p, base.k, m)
    if key in _EXT_CACHE:
        return _EXT_CACHE[key]
    E = make_field(base.p, base.k * m)
    if base.k == 1:
        def embed(x):
            return E.element((x.coeffs[0],) + (0,) * (E.k - 1))
    else:
        beta = None
        base_mod = Polynomial.from_indices(E, [c for c in base.modulus])
        for cand in enumerate_field(E):
            if not base_mod.evaluate(cand):
                beta = cand
                break
        assert beta is not None

        def embed(x, beta=beta):
            acc = E.element(0)
            for c in reversed(x.coeffs):
                acc = acc * beta + E.element((c,) + (0,) * (E.k - 1))
            return acc

    _EXT_CACHE[key] = (E, embed)
    return E, embed


def has_common_root_in_closure(u, v):
    """Exhaustive shared-root search; valid for total degree <= 4."""
    assert u.degree + v.degree <= 4
    base = u.field
    for m in (1, 2):
        E, embed = _extension_with_embedding(base, m)
        ue = Polynomial(E, tuple(embed(c) for c in u.coeffs))
        ve = Polynomial(E, tuple(embed(c) for c in v.coeffs))
        for x in enumerate_field(E):
            if not ue.evaluate(x) and not ve.evaluate(x):
                return True
    return False


# ---------------------------------------------------------------------------
# division
# ---------------------------------------------------------------------------


def test_divmod_example_f3():
    q, r = poly_divmod(P(F3, 1, 0, 1), P(F3, 1, 1))  # (z^2+1) / (z+1)
    assert q == P(F3, 2, 1)  # z+2
    assert r == P(F3, 2)


def test_divmod_self():
    u = P(F5, 3, 1, 4)
    q, r = divmod(u, u)
    assert q == Polynomial.one(F5)
    assert r.is_zero


def test_divmod_smaller_degree():
    q, r = divmod(P(F2, 0, 1), P(F2, 0, 0, 1))  # z / z^2
    assert q.is_zero
    assert r == P(F2, 0, 1)


def test_divmod_by_zero():
    with pytest.raises(DivisionByZero):
        poly_divmod(P(F2, 1), Polynomial.zero(F2))


def test_degree_sentinel():
    assert Polynomial.zero(F5).degree == NEG_INF
    assert P(F5, 7).degree == 0  # 7 = 2 mod 5
    assert P(F5, 0, 0, 1).degree == 2


def test_divmod_reconstructs():
    rng = random.Random(1)
    for _ in range(500):
        field = rng.choice(ORACLE_FIELDS)
        u = random_poly(rng, field)
        v = random_poly(rng, field)
        q, r = divmod(u, v)
        assert q * v + r == u
        assert r.is_zero or r.degree < v.degree


# ---------------------------------------------------------------------------
# gcd
# ---------------------------------------------------------------------------


def test_gcd_examples():
    # z^2-1 = (z-1)(z+1) over F_5
    assert gcd(P(F5, 4, 0, 1), P(F5, 4, 1)) == P(F5, 4, 1)
    u = P(F5, 2, 3, 1)
    assert gcd(u, Polynomial.zero(F5)) == u.monic()
    assert gcd(P(F2, 0, 1), P(F2, 1, 1)) == Polynomial.one(F2)


def test_gcd_both_zero():
    with pytest.raises(UndefinedGcd):
        gcd(Polynomial.zero(F3), Polynomial.zero(F3))


def test_gcd_divides_both_and_is_monic():
    rng = random.Random(2)
    for _ in range(500):
        field = rng.choice(ORACLE_FIELDS)
        u = random_poly(rng, field)
        v = random_poly(rng, field)
        g = gcd(u, v)
        assert g.lc == field.element(1)
        assert (u % g).is_zero
        assert (v % g).is_zero


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------


def test_resultant_trivial_examples():
    z = P(F2, 0, 1)
    assert not resultant_sylvester(z, z)  # common root 0
    assert not resultant_euclid(z, z)
    assert resultant_sylvester(z, P(F2, 1, 1)) == F2.element(1)
    assert resultant_euclid(z, P(F2, 1, 1)) == F2.element(1)
    # z = 1 is a common root of z^2+1 and z+1 over F_2
    assert not resultant_sylvester(P(F2, 1, 0, 1), P(F2, 1, 1))


def test_resultant_zero_polynomial():
    with pytest.raises(ZeroPolynomialResultant):
        resultant_sylvester(Polynomial.zero(F2), P(F2, 1))
    with pytest.raises(ZeroPolynomialResultant):
        resultant_euclid(P(F2, 1), Polynomial.zero(F2))


def test_resultant_constant_inputs():
    c = P(F5, 3)
    v = P(F5, 1, 2, 1)
    assert resultant_sylvester(c, v) == F5.element(3) ** 2
    assert resultant_euclid(c, v) == F5.element(3) ** 2
    assert resultant_sylvester(c, c) == F5.element(1)


def test_resultant_shared_linear_factor_is_zero():
    rng = random.Random(3)
    for _ in range(200):
        w = random_poly(rng, F5, max_degree=1)
        if w.degree < 1:
            continue
        u = w * random_poly(rng, F5, max_degree=2)
        v = w * random_poly(rng, F5, max_degree=2)
        assert not resultant_sylvester(u, v)
        assert not resultant_euclid(u, v)


def test_resultant_multiplicative_over_f5():
    rng = random.Random(4)
    for _ in range(300):
        u = random_poly(rng, F5, max_degree=3)
        v = random_poly(rng, F5, max_degree=3)
        w = random_poly(rng, F5, max_degree=3)
        lhs = resultant_sylvester(u * w, v)
        rhs = resultant_sylvester(u, v) * resultant_sylvester(w, v)
        assert lhs == rhs


def test_resultant_oracle_agreement():
    # the two algorithms agree exactly, and nonvanishing matches both the
    # gcd criterion and the exhaustive closure root search
    for field in ORACLE_FIELDS:
        rng = random.Random(field.q)
        for _ in range(N_RANDOM_PAIRS):
            u = random_poly(rng, field)
            v = random_poly(rng, field)
            rs = resultant_sylvester(u, v)
            re = resultant_euclid(u, v)
            assert rs == re
            coprime = gcd(u, v).degree == 0
            assert bool(rs) == coprime
            if u.degree + v.degree <= 4 and u.degree >= 1 and v.degree >= 1:
                assert has_common_root_in_closure(u, v) == (not coprime)


# ---------------------------------------------------------------------------
# coprimality
# ---------------------------------------------------------------------------


def test_is_coprime_examples():
    assert is_coprime(P(F2, 0, 1), P(F2, 1, 1))
    assert not is_coprime(P(F2, 1, 0, 1), P(F2, 1, 1))
    # zero vanishes everywhere: only constants are coprime to it
    assert is_coprime(Polynomial.one(F2), Polynomial.zero(F2))
    assert not is_coprime(P(F2, 0, 1), Polynomial.zero(F2))
    with pytest.raises(UndefinedGcd):
        is_coprime(Polynomial.zero(F2), Polynomial.zero(F2))
