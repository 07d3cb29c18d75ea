"""Frobenius-weight tables and the trace-formula side of the point counts.

A table records, for each cohomological degree i, the list of integer
weight exponents w of the geometric Frobenius eigenvalues q^w in that
degree (the rank-one piece with eigenvalue q^w is the Tate twist by -w).
Tables are q-independent data; evaluating the alternating trace sum at a
concrete q is the only place the cardinality enters.

The tables themselves are encoded results, not derived here; their
correctness is established by checking the trace sum against the exact
enumerative counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .counting import StackParams
from .errors import OutOfTableRange, WrongTableKind

COMPACT = "compact"
ORDINARY = "ordinary"


@dataclass(frozen=True)
class CohomologyTable:
    """Weight exponents by degree for one cohomology theory of one stack."""

    kind: str
    dim: int
    entries: tuple[tuple[int, tuple[int, ...]], ...]  # (degree, weights), sorted

    def __post_init__(self):
        if self.kind not in (COMPACT, ORDINARY):
            raise ValueError(f"kind must be {COMPACT!r} or {ORDINARY!r}")
        degrees = [i for i, _ in self.entries]
        if len(set(degrees)) != len(degrees):
            raise ValueError("duplicate cohomological degree")
        for i, weights in self.entries:
            if not 0 <= i <= 2 * self.dim:
                raise ValueError(f"degree {i} outside [0, {2 * self.dim}]")
            if not weights:
                raise ValueError("empty weight lists must be omitted")
        object.__setattr__(
            self,
            "entries",
            tuple(sorted((i, tuple(sorted(w))) for i, w in self.entries)),
        )

    @property
    def total_dimension(self) -> int:
        return sum(len(w) for _, w in self.entries)

    def weights_at(self, i: int) -> tuple[int, ...]:
        for degree, weights in self.entries:
            if degree == i:
                return weights
        return ()


@dataclass(frozen=True)
class WeightClassification:
    pure: bool  # every eigenvalue in degree i has absolute value q^(i/2)
    tate: bool  # every eigenvalue is an integer power of q
    mixed_degrees: tuple[tuple[int, int], ...]  # (i, w) pairs with 2w != i


def hom_stack_table(params: StackParams, kind: str = COMPACT) -> CohomologyTable:
    """The two-line table of the Hom stack: dimension (a+b)n+1.

    Compactly supported: q^((a+b)n+1) in degree 2(a+b)n+2 and
    q^((a+b)n-1) in degree 2(a+b)n-1.  Ordinary: weights 0 and 2 in
    degrees 0 and 3, independent of (a, b, n).
    """
    s = params.s
    if kind == COMPACT:
        entries = ((2 * s + 2, (s + 1,)), (2 * s - 1, (s - 1,)))
    elif kind == ORDINARY:
        entries = ((0, (0,)), (3, (2,)))
    else:
        raise ValueError(f"kind must be {COMPACT!r} or {ORDINARY!r}")
    return CohomologyTable(kind=kind, dim=s + 1, entries=entries)


def poly_space_table(d1: int, d2: int, kind: str = COMPACT) -> CohomologyTable:
    """Table of the monic coprime-pair space of exact degrees (d1, d2) >= 1."""
    if d1 < 1 or d2 < 1:
        raise OutOfTableRange("table stated only for both degrees positive")
    m = d1 + d2
    compact = CohomologyTable(
        kind=COMPACT, dim=m, entries=((2 * m, (m,)), (2 * m - 1, (m - 1,)))
    )
    if kind == COMPACT:
        return compact
    if kind == ORDINARY:
        return poincare_dual(compact)
    raise ValueError(f"kind must be {COMPACT!r} or {ORDINARY!r}")


def p_ab_table(kind: str = ORDINARY) -> CohomologyTable:
    """Table of the one-dimensional weighted projective target: weights 0 and 1."""
    ordinary = CohomologyTable(kind=ORDINARY, dim=1, entries=((0, (0,)), (2, (1,))))
    return ordinary if kind == ORDINARY else poincare_dual(ordinary)


def trace_sum(table: CohomologyTable, q: int) -> int:
    """Alternating sum of Frobenius eigenvalues: sum of (-1)^i q^w."""
    if table.kind != COMPACT:
        raise WrongTableKind("trace formula uses compactly supported cohomology")
    total = 0
    for i, weights in table.entries:
        sign = -1 if i % 2 else 1
        for w in weights:
            total += sign * q**w
    return total


def poincare_dual(table: CohomologyTable) -> CohomologyTable:
    """Flip table kind, sending each (i, w) to (2d-i, d-w); an involution."""
    d = table.dim
    return CohomologyTable(
        kind=ORDINARY if table.kind == COMPACT else COMPACT,
        dim=d,
        entries=tuple(
            (2 * d - i, tuple(d - w for w in weights))
            for i, weights in table.entries
        ),
    )


def classify_weights(table: CohomologyTable) -> WeightClassification:
    """Purity (2w = i everywhere) and Tate type (true by integer encoding)."""
    mixed = tuple(
        (i, w) for i, weights in table.entries for w in weights if 2 * w != i
    )
    return WeightClassification(pure=not mixed, tate=True, mixed_degrees=mixed)


def betti_numbers(table: CohomologyTable) -> list[int]:
    """b_i = number of weights in degree i, for i up to the top populated degree."""
    if table.kind != ORDINARY:
        raise WrongTableKind("Betti numbers are read from the ordinary table")
    if not table.entries:
        return []
    top = max(i for i, _ in table.entries)
    return [len(table.weights_at(i)) for i in range(top + 1)]


# ---------------------------------------------------------------------------
# serialization: {"kind": ..., "dim": d, "entries": [{"i": i, "weights": [...]}]}
# ---------------------------------------------------------------------------


def table_to_dict(table: CohomologyTable) -> dict:
    return {
        "kind": table.kind,
        "dim": table.dim,
        "entries": [
            {"i": i, "weights": list(weights)} for i, weights in table.entries
        ],
    }


def table_from_dict(data: dict) -> CohomologyTable:
    return CohomologyTable(
        kind=data["kind"],
        dim=data["dim"],
        entries=tuple(
            (entry["i"], tuple(entry["weights"])) for entry in data["entries"]
        ),
    )


def table_to_json(table: CohomologyTable) -> str:
    return json.dumps(table_to_dict(table), sort_keys=True)


def table_from_json(text: str) -> CohomologyTable:
    return table_from_dict(json.loads(text))
