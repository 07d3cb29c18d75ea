"""Exact point counts for coprime-pair spaces and the weighted Hom cover.

Closed-form counts take the field cardinality q as an arbitrary-precision
integer.  Enumeration counts scan an actual coefficient space:

  * monic coprime pairs of exact degrees (d1, d2), and
  * the cover T of not-necessarily-monic coprime pairs (u, v) inside the
    space of dimension (a*n+1)+(b*n+1), where the membership test is
    (deg u = a*n and v != 0) or (deg v = b*n), plus coprimality.

A polynomial of degree <= D is packed into an integer key

    key = sum_j index(c_j) * q^j,

so key 0 is the zero polynomial and enumerating keys enumerates the space.
Scans split the u-key range into contiguous chunks and reduce with integer
sums, so results are identical for every worker count.

Two scan methods exist: "pair" is a straight double loop over (u, v) keys
using table-based gcds, valid over any field; "vector" performs the same
per-pair membership test with numpy (prime fields), reducing every v
modulo u by vectorized long division and looking the gcd up per remainder
class.  Both methods are cross-checked against each other in the tests.

The group of units acts on T by (u, v) -> (lambda^a u, lambda^b v).  Orbit
scans count one canonical representative per orbit (the member with the
smallest (u_key, v_key) pair) and record the stabilizer order
|{lambda : lambda^a u = u, lambda^b v = v}| of each orbit.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import EnumerationTooLarge, InvalidPoint
from .field import FieldElement, FieldSpec, enumerate_field
from .poly import Polynomial

DEFAULT_BUDGET = 250_000_000  # coefficient tuples per scan
_VECTOR_BLOCK = 1 << 16  # v rows per numpy block
_PARALLEL_THRESHOLD = 200_000  # below this many pairs, scan inline


@dataclass(frozen=True)
class StackParams:
    """The weight/degree triple (a, b, n), all positive."""

    a: int
    b: int
    n: int

    def __post_init__(self):
        if min(self.a, self.b, self.n) < 1:
            raise ValueError(f"weights and degree must be positive: {self}")

    @property
    def s(self) -> int:
        return (self.a + self.b) * self.n

    @property
    def dim(self) -> int:
        return self.s + 1

    @property
    def deg_u(self) -> int:
        return self.a * self.n

    @property
    def deg_v(self) -> int:
        return self.b * self.n


class FiberPoint(Enum):
    GENERIC = "generic"  # the fiber over [1:1]
    ZERO_ONE = "zero_one"  # over [0:1], where u must vanish at infinity
    ONE_ZERO = "one_zero"  # over [1:0]


@dataclass(frozen=True, eq=True)
class OrbitReport:
    """Orbit census of the unit-group action on T(F_q)."""

    orbit_count: int
    stabilizer_histogram: dict
    weighted_total: Fraction


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, then STACKY_THREADS, then available parallelism."""
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("STACKY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def char_divides_weights(params: StackParams, p: int) -> bool:
    """True when the characteristic divides a or b (out-of-hypothesis)."""
    return params.a % p == 0 or params.b % p == 0


# ---------------------------------------------------------------------------
# closed-form counts
# ---------------------------------------------------------------------------


def count_poly1_formula(d1: int, d2: int, q: int) -> int:
    """Monic coprime pairs of exact degrees (d1, d2) over a field with q elements."""
    if d1 > 0 and d2 > 0:
        return q ** (d1 + d2) - q ** (d1 + d2 - 1)
    return q ** (d1 + d2)


def weighted_hom_count_formula(params: StackParams, q: int) -> int:
    """q^((a+b)n+1) - q^((a+b)n-1); the caller owns the characteristic hypothesis."""
    s = params.s
    return q ** (s + 1) - q ** (s - 1)


def _admissible_degree_pairs(an: int, bn: int):
    """Exact-degree strata of T: (deg u = an, any deg v) or (deg v = bn, deg u < an)."""
    for d2 in range(bn + 1):
        yield an, d2
    for d1 in range(an):
        yield d1, bn


def count_T_strata(params: StackParams, q: int) -> int:
    """|T| as a sum of (q-1)^2 * |Poly1| over the exact-degree strata."""
    total = 0
    for d1, d2 in _admissible_degree_pairs(params.deg_u, params.deg_v):
        total += count_poly1_formula(d1, d2, q)
    return (q - 1) ** 2 * total


def weighted_count_P(a: int, b: int, q: int) -> Fraction:
    """Weighted count of the target quotient: (q^2-1)/(q-1) = q+1 for any weights."""
    return Fraction(q * q - 1, q - 1)


# ---------------------------------------------------------------------------
# packed-key kernels (polynomials as lists of element indices, low-to-high)
# ---------------------------------------------------------------------------


def _digits(key: int, q: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        key, r = divmod(key, q)
        out.append(r)
    return out


def _digits_trimmed(key: int, q: int, width: int) -> list[int]:
    out = _digits(key, q, width)
    while out and out[-1] == 0:
        out.pop()
    return out


def _rem_idx(a: list[int], b: list[int], sub, mul, inv) -> list[int]:
    """a mod b on trimmed index lists; b nonzero."""
    db = len(b) - 1
    r = list(a)
    inv_lc = inv[b[-1]]
    for top in range(len(r) - 1, db - 1, -1):
        c = r[top]
        if c:
            f = mul[c][inv_lc]
            off = top - db
            frow = mul[f]
            for j in range(db):
                bj = b[j]
                if bj:
                    r[off + j] = sub[r[off + j]][frow[bj]]
            r[top] = 0
    while r and not r[-1]:
        r.pop()
    return r


def _gcd_degree_idx(u: list[int], v: list[int], sub, mul, inv) -> int:
    """Degree of gcd(u, v) on trimmed index lists; gcd(u, 0) = u."""
    while v:
        u, v = v, _rem_idx(u, v, sub, mul, inv)
    return len(u) - 1


def _check_budget(size: int, budget: int | None) -> int:
    budget = DEFAULT_BUDGET if budget is None else budget
    if size > budget:
        raise EnumerationTooLarge(size, budget)
    return budget


# ---------------------------------------------------------------------------
# monic coprime-pair enumeration
# ---------------------------------------------------------------------------


def _count_poly1_chunk(d1, d2, field, u_lo, u_hi):
    q = field.q
    _, sub, mul, inv, _ = field.tables
    vspace = q**d2
    count = 0
    for ukey in range(u_lo, u_hi):
        u = _digits(ukey, q, d1) + [1]
        for vkey in range(vspace):
            v = _digits(vkey, q, d2) + [1]
            if _gcd_degree_idx(u, v, sub, mul, inv) == 0:
                count += 1
    return count


def count_poly1_enumerate(
    d1: int,
    d2: int,
    field: FieldSpec,
    *,
    budget: int | None = None,
    workers: int | None = None,
) -> int:
    """Count monic coprime pairs of exact degrees (d1, d2) by exhaustive scan."""
    q = field.q
    space = q ** (d1 + d2)
    _check_budget(space, budget)
    nworkers = resolve_workers(workers)
    if nworkers == 1 or space < _PARALLEL_THRESHOLD:
        return _count_poly1_chunk(d1, d2, field, 0, q**d1)
    jobs = _chunk_ranges(q**d1, nworkers)
    with ProcessPoolExecutor(max_workers=nworkers) as pool:
        parts = pool.map(
            _poly1_worker, [(d1, d2, field, lo, hi) for lo, hi in jobs]
        )
        return sum(parts)


def _poly1_worker(args):
    return _count_poly1_chunk(*args)


# ---------------------------------------------------------------------------
# cover scans
# ---------------------------------------------------------------------------


def _scale_pairs(params: StackParams, field: FieldSpec):
    """(index of lambda^a, index of lambda^b) for every nonzero lambda."""
    out = []
    for lam in enumerate_field(field)[1:]:
        ca = field.index_of(field.power(lam.coeffs, params.a))
        cb = field.index_of(field.power(lam.coeffs, params.b))
        out.append((ca, cb))
    return out


def _scale_key(digits_list, c, mul, q):
    """Packed key of the digit-wise product by the element with index c."""
    key = 0
    row = mul[c]
    for d in reversed(digits_list):
        key = key * q + row[d]
    return key


def _scan_T_chunk_pair(params, field, u_lo, u_hi, want_orbits):
    """Reference double loop over (u, v) keys; works over any tabled field."""
    q = field.q
    an, bn = params.deg_u, params.deg_v
    _, sub, mul, inv, _ = field.tables
    vspace = q ** (bn + 1)
    scales = _scale_pairs(params, field) if want_orbits else ()
    count = 0
    hist: dict[int, int] = {}
    for ukey in range(u_lo, u_hi):
        u = _digits_trimmed(ukey, q, an + 1)
        if not u:
            continue  # u = 0 satisfies neither degree clause with a coprime partner
        u_top = len(u) - 1 == an
        for vkey in range(vspace):
            v = _digits_trimmed(vkey, q, bn + 1)
            if not v:
                continue  # deg v >= 0 required in the first clause; coprimality fails anyway
            if not (u_top or len(v) - 1 == bn):
                continue
            if _gcd_degree_idx(u, v, sub, mul, inv) != 0:
                continue
            count += 1
            if not want_orbits:
                continue
            stab = 0
            canonical = True
            for ca, cb in scales:
                u2 = _scale_key(u, ca, mul, q) if ca != 1 else ukey
                v2 = _scale_key(v, cb, mul, q) if cb != 1 else vkey
                if (u2, v2) == (ukey, vkey):
                    stab += 1
                elif (u2, v2) < (ukey, vkey):
                    canonical = False
                    break
            if canonical:
                hist[stab] = hist.get(stab, 0) + 1
    return count, hist


def _scan_T_chunk_vector(params, field, u_lo, u_hi, want_orbits):
    """Same membership test as the pair scan, vectorized over v per fixed u.

    Every v is reduced modulo u by long division on a numpy block; the
    coprimality of (u, v) is then gcd(u, v mod u), looked up in a table
    indexed by the remainder.  Prime fields only (k = 1).
    """
    p = field.p
    an, bn = params.deg_u, params.deg_v
    _, sub, mul, inv, _ = field.tables
    vwidth = bn + 1
    vspace = p**vwidth
    dtype = np.int16 if p < 180 else np.int64
    ppow = p ** np.arange(vwidth, dtype=np.int64)

    whole = vspace <= (1 << 20)
    if whole:
        keys = np.arange(vspace, dtype=np.int64)
        vd_full = ((keys[:, None] // ppow[None, :]) % p).astype(dtype)
        blocks = [(0, vspace)]
    else:
        blocks = [(lo, min(lo + _VECTOR_BLOCK, vspace)) for lo in range(0, vspace, _VECTOR_BLOCK)]

    scales = ()
    ge = eq = None
    if want_orbits:
        if not whole:
            raise EnumerationTooLarge(vspace, 1 << 20)
        scales = _scale_pairs(params, field)
        perms = {}
        for _, cb in scales:
            if cb not in perms:
                perms[cb] = ((vd_full.astype(np.int64) * cb) % p) @ ppow
        ge = {cb: perm >= keys for cb, perm in perms.items()}
        eq = {cb: perm == keys for cb, perm in perms.items()}

    count = 0
    hist: dict[int, int] = {}
    for ukey in range(u_lo, u_hi):
        u = _digits_trimmed(ukey, p, an + 1)
        if not u:
            continue
        du = len(u) - 1
        u_top = du == an

        # coprimality of u with each remainder class
        lut = np.zeros(p**du, dtype=bool)
        for rkey in range(p**du):
            r = _digits_trimmed(rkey, p, du)
            lut[rkey] = _gcd_degree_idx(u, r, sub, mul, inv) == 0

        inv_lc = inv[u[-1]]
        rpow = ppow[:du]
        orbit_dead = False
        u2keys = []
        if want_orbits:
            for ca, cb in scales:
                u2 = _scale_key(u, ca, mul, p) if ca != 1 else ukey
                if u2 < ukey:
                    orbit_dead = True
                    break
                u2keys.append((u2, cb))

        for lo, hi in blocks:
            if whole:
                vd = vd_full[lo:hi]
            else:
                keys_blk = np.arange(lo, hi, dtype=np.int64)
                vd = ((keys_blk[:, None] // ppow[None, :]) % p).astype(dtype)
            rem = vd.copy()
            for top in range(bn, du - 1, -1):
                f = (rem[:, top] * inv_lc) % p
                off = top - du
                for j in range(du):
                    if u[j]:
                        rem[:, off + j] = (rem[:, off + j] - f * u[j]) % p
                rem[:, top] = 0
            rid = rem[:, :du].astype(np.int64) @ rpow
            mask = lut[rid]
            if not u_top:
                mask &= vd[:, bn] != 0
            count += int(np.count_nonzero(mask))

            if want_orbits and not orbit_dead:
                canonical = mask.copy()
                stab = np.zeros(hi - lo, dtype=np.int16)
                for u2, cb in u2keys:
                    if u2 == ukey:
                        canonical &= ge[cb][lo:hi]
                        stab += eq[cb][lo:hi]
                if canonical.any():
                    for order, cnt in enumerate(np.bincount(stab[canonical])):
                        if cnt and order:
                            hist[order] = hist.get(order, 0) + int(cnt)
    return count, hist


def _scan_T_worker(args):
    params, field, lo, hi, method, want_orbits = args
    scan = _scan_T_chunk_vector if method == "vector" else _scan_T_chunk_pair
    return scan(params, field, lo, hi, want_orbits)


def _chunk_ranges(size: int, workers: int):
    chunks = min(max(1, workers * 4), size) if workers > 1 else 1
    bounds = [size * i // chunks for i in range(chunks + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(chunks) if bounds[i] < bounds[i + 1]]


def _run_T_scan(params, field, method, want_orbits, workers, budget):
    an, bn = params.deg_u, params.deg_v
    space = field.q ** ((an + 1) + (bn + 1))
    _check_budget(space, budget)
    if method == "auto":
        method = "vector" if field.k == 1 else "pair"
    if method == "vector" and field.k != 1:
        raise ValueError("vector scan requires a prime field")
    nworkers = resolve_workers(workers)
    uspace = field.q ** (an + 1)
    if nworkers == 1 or space < _PARALLEL_THRESHOLD:
        return _scan_T_worker((params, field, 0, uspace, method, want_orbits))
    jobs = _chunk_ranges(uspace, nworkers)
    total = 0
    hist: dict[int, int] = {}
    with ProcessPoolExecutor(max_workers=nworkers) as pool:
        parts = pool.map(
            _scan_T_worker,
            [(params, field, lo, hi, method, want_orbits) for lo, hi in jobs],
        )
        for cnt, part_hist in parts:
            total += cnt
            for order, c in part_hist.items():
                hist[order] = hist.get(order, 0) + c
    return total, hist


def count_T_enumerate(
    params: StackParams,
    field: FieldSpec,
    *,
    budget: int | None = None,
    workers: int | None = None,
    method: str = "auto",
) -> int:
    """Exact |T(F_q)| by scanning the full coefficient space."""
    count, _ = _run_T_scan(params, field, method, False, workers, budget)
    return count


def weighted_count_from_orbits(
    params: StackParams,
    field: FieldSpec,
    *,
    budget: int | None = None,
    workers: int | None = None,
    method: str = "auto",
) -> OrbitReport:
    """Partition T(F_q) into unit-group orbits and sum 1/|stabilizer|."""
    _, hist = _run_T_scan(params, field, method, True, workers, budget)
    weighted = sum(
        (Fraction(cnt, order) for order, cnt in hist.items()), Fraction(0)
    )
    return OrbitReport(
        orbit_count=sum(hist.values()),
        stabilizer_histogram=dict(sorted(hist.items())),
        weighted_total=weighted,
    )


# ---------------------------------------------------------------------------
# pointwise data
# ---------------------------------------------------------------------------


def stabilizer_order(
    u: Polynomial, v: Polynomial, params: StackParams, field: FieldSpec
) -> int:
    """|{lambda != 0 : lambda^a fixes u, lambda^b fixes v}| by direct scan."""
    if u.is_zero and v.is_zero:
        raise InvalidPoint("(0, 0) is not a point of the cover")
    one = field.element(1)
    count = 0
    for lam in enumerate_field(field)[1:]:
        if not u.is_zero and lam ** params.a != one:
            continue
        if not v.is_zero and lam ** params.b != one:
            continue
        count += 1
    return count


def fiber_count(
    point: FiberPoint,
    params: StackParams,
    field: FieldSpec,
    *,
    budget: int | None = None,
) -> int:
    """Point count of one evaluation fiber, by enumerating its strata."""
    an, bn = params.deg_u, params.deg_v
    q = field.q
    if point is FiberPoint.GENERIC:
        return count_poly1_enumerate(an, bn, field, budget=budget)
    if point is FiberPoint.ZERO_ONE:
        return sum(
            (q - 1) * count_poly1_enumerate(an - k, bn, field, budget=budget)
            for k in range(1, an + 1)
        )
    if point is FiberPoint.ONE_ZERO:
        return sum(
            (q - 1) * count_poly1_enumerate(an, bn - k, field, budget=budget)
            for k in range(1, bn + 1)
        )
    raise ValueError(f"unknown fiber point {point!r}")
