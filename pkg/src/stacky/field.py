"""Finite fields F_{p^k} with exact residue-vector arithmetic.

An element of F_{p^k} is a vector of k residues mod p, low degree first,
representing a residue class modulo a fixed monic irreducible modulus of
degree k.  For k = 1 the modulus is the polynomial z, so prime fields use
the same representation with a single residue.

Elements also carry a packed integer index

    index(c_0, ..., c_{k-1}) = c_0 + c_1 * p + ... + c_{k-1} * p^(k-1)

so index 0 is the zero element and index 1 is the one element, and for
prime fields the index equals the residue.  Enumeration yields elements in
increasing index order.  The counting kernels work on indices through
lookup tables that FieldSpec builds lazily for small fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import (
    CompositeCharacteristic,
    DivisionByZero,
    EnumerationTooLarge,
    InvalidDegree,
)

FIELD_SIZE_LIMIT = 2**20  # guard on q for construction and enumeration
TABLE_LIMIT = 1024  # build q x q index tables only below this


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk-scale n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Polynomials over F_p as plain int lists, low degree first, no trailing zeros.
# These back the modulus search and the coefficient-level field arithmetic.
# ---------------------------------------------------------------------------


def _fp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    m = max(len(a), len(b))
    out = [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(m)
    ]
    return _fp_trim(out)


def _fp_divmod(a: list[int], b: list[int], p: int):
    """Quotient and remainder of a by b; b nonzero."""
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], _fp_trim(r)
    quot = [0] * (len(r) - db)
    inv_lead = pow(b[-1], p - 2, p)
    for top in range(len(r) - 1, db - 1, -1):
        c = r[top]
        if c == 0:
            continue
        f = (c * inv_lead) % p
        quot[top - db] = f
        off = top - db
        for j in range(db + 1):
            r[off + j] = (r[off + j] - f * b[j]) % p
    return _fp_trim(quot), _fp_trim(r)


def _fp_rem(a: list[int], b: list[int], p: int) -> list[int]:
    return _fp_divmod(a, b, p)[1]


def _fp_xgcd(a: list[int], b: list[int], p: int):
    """Extended Euclid: returns (g, s) with s*a = g mod b, g the gcd."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    while r1:
        quot, r = _fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fp_sub(s0, _fp_mul(quot, s1, p), p)
    return r0, s0


def _is_irreducible(c: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(c)/2."""
    k = len(c) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _fp_rem(c, divisor, p):
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p.

    Candidates are scanned in lexicographic order of their low-to-high
    coefficient tuple, so the result is deterministic; for k = 1 the scan
    starts (and succeeds) at the polynomial z.
    """
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    if k < 1:
        raise InvalidDegree(f"extension degree must be >= 1, got {k}")
    for low in product(range(p), repeat=k):
        candidate = list(low) + [1]
        if _is_irreducible(candidate, p):
            return tuple(candidate)
    raise AssertionError("an irreducible of every degree exists")


@dataclass(frozen=True)
class FieldSpec:
    """Immutable description of F_{p^k}: characteristic, degree, modulus."""

    p: int
    k: int
    modulus: tuple[int, ...]  # monic, degree k, low-to-high, k+1 entries

    @property
    def q(self) -> int:
        return self.p**self.k

    # -- coefficient-level arithmetic (tuples of k residues) ----------------

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.k - 1)

    def add(self, a, b) -> tuple[int, ...]:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b) -> tuple[int, ...]:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a) -> tuple[int, ...]:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b) -> tuple[int, ...]:
        prod_ = _fp_mul(_fp_trim(list(a)), _fp_trim(list(b)), self.p)
        rem = _fp_rem(prod_, list(self.modulus), self.p) if len(prod_) > self.k else prod_
        return tuple(rem) + (0,) * (self.k - len(rem))

    def inv(self, a) -> tuple[int, ...]:
        aa = _fp_trim(list(a))
        if not aa:
            raise DivisionByZero("inverse of zero")
        g, s = _fp_xgcd(aa, list(self.modulus), self.p)
        # g is a nonzero constant since the modulus is irreducible
        scale = pow(g[0], self.p - 2, self.p)
        out = [(x * scale) % self.p for x in s]
        out = _fp_rem(out, list(self.modulus), self.p) if len(out) > self.k else out
        return tuple(out) + (0,) * (self.k - len(out))

    def power(self, a, e: int) -> tuple[int, ...]:
        if e < 0:
            raise ValueError("negative exponent")
        result = self.one()
        base = tuple(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius_coeffs(self, a) -> tuple[int, ...]:
        return self.power(a, self.p)

    # -- packed index representation ----------------------------------------

    def coeffs_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            index, r = divmod(index, self.p)
            out.append(r)
        return tuple(out)

    def index_of(self, coeffs) -> int:
        out = 0
        for c in reversed(tuple(coeffs)):
            out = out * self.p + c
        return out

    @cached_property
    def tables(self):
        """(add, sub, mul, inv, neg) lookup tables on element indices.

        add/sub/mul are q x q nested lists, inv and neg are q-length lists
        (inv[0] = 0 as a placeholder, never read by the kernels).  Only
        available for q <= TABLE_LIMIT.
        """
        q = self.q
        if q > TABLE_LIMIT:
            raise EnumerationTooLarge(q, TABLE_LIMIT)
        elems = [self.coeffs_of(i) for i in range(q)]
        add = [[self.index_of(self.add(a, b)) for b in elems] for a in elems]
        sub = [[self.index_of(self.sub(a, b)) for b in elems] for a in elems]
        mul = [[self.index_of(self.mul(a, b)) for b in elems] for a in elems]
        inv = [0] + [self.index_of(self.inv(e)) for e in elems[1:]]
        neg = [self.index_of(self.neg(e)) for e in elems]
        return add, sub, mul, inv, neg

    def element(self, value) -> "FieldElement":
        """Coerce an int (index for k > 1, residue for k = 1) or a coeff tuple."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element from a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.coeffs_of(value % self.q))
        return FieldElement(self, tuple(int(c) % self.p for c in value))

    def __repr__(self):
        return f"F_{self.q}" if self.k == 1 else f"F_{self.q} (=F_{self.p}^{self.k})"


@dataclass(frozen=True)
class FieldElement:
    """A residue vector of length k over F_p; immutable and hashable."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.field.index_of(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.coeffs))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.coeffs, other.coeffs))

    def __truediv__(self, other):
        return self * inv(other)

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.coeffs, e))

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.coeffs[0]}#F{self.field.q}"
        return f"{list(self.coeffs)}#F{self.field.q}"


def make_field(p: int, k: int, *, size_limit: int = FIELD_SIZE_LIMIT) -> FieldSpec:
    """Construct F_{p^k} with the deterministic smallest irreducible modulus."""
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    if k < 1:
        raise InvalidDegree(f"extension degree must be >= 1, got {k}")
    if p**k > size_limit:
        raise EnumerationTooLarge(p**k, size_limit)
    if k == 1:
        modulus = (0, 1)  # the polynomial z
    else:
        modulus = find_irreducible(p, k)
    return FieldSpec(p=p, k=k, modulus=modulus)


def inv(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises DivisionByZero on the zero element."""
    return FieldElement(x.field, x.field.inv(x.coeffs))


def power(x: FieldElement, e: int) -> FieldElement:
    """x^e by square-and-multiply; x^0 = 1 for every x, including zero."""
    return x**e


def frobenius(x: FieldElement) -> FieldElement:
    """The field automorphism x -> x^p generating Gal(F_{p^k}/F_p)."""
    return FieldElement(x.field, x.field.frobenius_coeffs(x.coeffs))


def enumerate_field(F: FieldSpec, *, size_limit: int = FIELD_SIZE_LIMIT) -> list[FieldElement]:
    """All p^k elements in increasing packed-index order, starting with 0."""
    if F.q > size_limit:
        raise EnumerationTooLarge(F.q, size_limit)
    return [FieldElement(F, F.coeffs_of(i)) for i in range(F.q)]
