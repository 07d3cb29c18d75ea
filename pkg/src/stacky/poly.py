"""Dense univariate polynomials over a finite field.

Coefficients are stored low degree first with the leading entry nonzero;
the empty tuple is the zero polynomial, whose degree is the sentinel
NEG_INF (so degree comparisons never silently treat zero as a constant).

Two independent resultant algorithms are provided, both with respect to
the actual degrees of the inputs (never padded formal degrees), and they
agree exactly, not merely up to a scalar.  Coprimality means no common
root in the algebraic closure: for nonzero inputs that is gcd of degree
zero, equivalently a nonzero resultant; the zero polynomial vanishes
everywhere, so it is coprime only to nonzero constants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero, UndefinedGcd, ZeroPolynomialResultant
from .field import FieldElement, FieldSpec

NEG_INF = float("-inf")  # degree of the zero polynomial


@dataclass(frozen=True)
class Polynomial:
    """Immutable dense polynomial; coeffs low-to-high, last entry nonzero."""

    field: FieldSpec
    coeffs: tuple[FieldElement, ...]

    @classmethod
    def from_indices(cls, field: FieldSpec, indices) -> "Polynomial":
        """Build from packed element indices (residues, for a prime field)."""
        elems = [field.element(i) for i in indices]
        while elems and not elems[-1]:
            elems.pop()
        return cls(field, tuple(elems))

    @classmethod
    def zero(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, (field.element(1),))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldElement:
        """Leading coefficient; undefined (raises) for the zero polynomial."""
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        scale = self.field.inv(self.lc.coeffs)
        scale_el = FieldElement(self.field, scale)
        return Polynomial(self.field, tuple(c * scale_el for c in self.coeffs))

    def scale(self, c: FieldElement) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.field)
        return Polynomial(self.field, tuple(x * c for x in self.coeffs))

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = x.field.element(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        while out and not out[-1]:
            out.pop()
        return Polynomial(self.field, tuple(out))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.field)
        zero = self.field.element(0)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, tuple(out))

    def __divmod__(self, other: "Polynomial"):
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return poly_divmod(self, other)[1]

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = repr(c).split("#")[0]
            if i == 0:
                terms.append(cs)
            else:
                zs = "z" if i == 1 else f"z^{i}"
                terms.append(zs if cs == "1" else f"{cs}*{zs}")
        return f"Poly({' + '.join(terms)})"


def poly_divmod(u: Polynomial, v: Polynomial):
    """Long division: u = q*v + r with degree(r) < degree(v)."""
    if v.is_zero:
        raise DivisionByZero("polynomial division by zero")
    field = u.field
    zero = field.element(0)
    r = list(u.coeffs)
    dv = v.degree
    if len(r) - 1 < dv:
        return Polynomial.zero(field), u
    quot = [zero] * (len(r) - dv)
    inv_lead = FieldElement(field, field.inv(v.lc.coeffs))
    for top in range(len(r) - 1, dv - 1, -1):
        c = r[top]
        if not c:
            continue
        f = c * inv_lead
        quot[top - dv] = f
        for j, vc in enumerate(v.coeffs):
            r[top - dv + j] = r[top - dv + j] - f * vc
    while r and not r[-1]:
        r.pop()
    while quot and not quot[-1]:
        quot.pop()
    return Polynomial(field, tuple(quot)), Polynomial(field, tuple(r))


def gcd(u: Polynomial, v: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(u, 0) = monic(u)."""
    if u.is_zero and v.is_zero:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    while not v.is_zero:
        u, v = v, u % v
    return u.monic()


def _det(field: FieldSpec, rows: list[list[FieldElement]]) -> FieldElement:
    """Determinant by Gaussian elimination with pivot search; exact."""
    n = len(rows)
    det = field.element(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return field.element(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv_piv = FieldElement(field, field.inv(rows[col][col].coeffs))
        for r in range(col + 1, n):
            if rows[r][col]:
                f = rows[r][col] * inv_piv
                for c in range(col, n):
                    rows[r][c] = rows[r][c] - f * rows[col][c]
    return det


def resultant_sylvester(u: Polynomial, v: Polynomial) -> FieldElement:
    """Determinant of the Sylvester matrix built from the actual degrees."""
    if u.is_zero or v.is_zero:
        raise ZeroPolynomialResultant("resultant with a zero polynomial")
    field = u.field
    m, n = u.degree, v.degree
    size = m + n
    if size == 0:
        return field.element(1)
    zero = field.element(0)
    ucs = list(reversed(u.coeffs))  # high-to-low
    vcs = list(reversed(v.coeffs))
    rows = []
    for i in range(n):
        rows.append([zero] * i + ucs + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + vcs + [zero] * (size - i - n - 1))
    return _det(field, rows)


def resultant_euclid(u: Polynomial, v: Polynomial) -> FieldElement:
    """Resultant by the Euclidean remainder recursion.

    Agrees with resultant_sylvester exactly on every input: each remainder
    step contributes the sign (-1)^(deg u * deg v) and the factor
    lc(v)^(deg u - deg r).
    """
    if u.is_zero or v.is_zero:
        raise ZeroPolynomialResultant("resultant with a zero polynomial")
    field = u.field
    one = field.element(1)
    acc = one
    while True:
        m, n = u.degree, v.degree
        if n == 0:
            return acc * v.lc**m
        if m == 0:
            return acc * u.lc**n
        if m < n:
            u, v = v, u
            if (m * n) % 2:
                acc = -acc
            continue
        r = u % v
        if r.is_zero:
            return field.element(0)
        if (m * n) % 2:
            acc = -acc
        acc = acc * v.lc ** (m - r.degree)
        u, v = v, r


def is_coprime(u: Polynomial, v: Polynomial) -> bool:
    """True iff u and v share no root in the algebraic closure."""
    if u.is_zero and v.is_zero:
        raise UndefinedGcd("coprimality of (0, 0) is undefined")
    if u.is_zero:
        return v.degree == 0
    if v.is_zero:
        return u.degree == 0
    return gcd(u, v).degree == 0
