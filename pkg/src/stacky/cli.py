"""Batch command-line front end.

Subcommands:

  count    exact counts and formula comparisons for one (a, b, n, p, k)
  verify   the full desk (or stretch) verification suite
  zeta     rational zeta function, truncated series, fitted eigenvalues
  table    compact + ordinary weight tables, Betti numbers, classification
  bench    scan-method timings for one configuration

Exit codes: 0 all checks pass, 1 verification failure, 2 usage or config
error, 3 enumeration budget exceeded.  Comparisons governed by the
characteristic hypothesis (char dividing neither weight) degrade to
REPORT records when the hypothesis fails; REPORT never affects the exit
code.  Worker count comes from --threads, then STACKY_THREADS, then the
available parallelism; record contents are identical for every worker
count (timing fields aside).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cohomology, counting, poly, zeta
from .cohomology import COMPACT, ORDINARY, CohomologyTable
from .counting import FiberPoint, StackParams, char_divides_weights
from .errors import EnumerationTooLarge, StackyError, ZetaMismatch
from .field import FieldSpec, make_field
from .records import FAIL, PASS, REPORT, VerificationRecord, compare

DESK_PRESETS = [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 3, 1)]
TRACE_CARDINALITIES = [2, 3, 4, 5, 7, 9, 25]
ZETA_PRIMES = [2, 3, 5, 7]
OUT_OF_HYPOTHESIS = [(2, 3, 1, 2), (4, 6, 1, 2)]  # (a, b, n, q=p)


@dataclass
class RunConfig:
    subcommand: str
    a: int = 1
    b: int = 1
    n: int = 1
    p: int = 2
    k: int = 1
    order: int = 8
    threads: int | None = None
    output_format: str = "table"
    budget: int | None = None
    suite: str = "desk"
    seed: int = 0

    def params(self) -> StackParams:
        return StackParams(self.a, self.b, self.n)

    def field(self) -> FieldSpec:
        return make_field(self.p, self.k)


def canonical_json(obj) -> str:
    """Deterministic rendering so parse-then-dump is byte-identical."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _fmt_cell(value: str, width: int) -> str:
    return value if len(value) <= width else value[: width - 2] + ".."


def print_records(records: list[VerificationRecord], output_format: str) -> None:
    if output_format == "json":
        sys.stdout.write(canonical_json([r.to_dict() for r in records]))
        return
    header = f"{'CHECK':<30} {'INPUTS':<30} {'EXPECTED':>18} {'OBSERVED':>18} {'STATUS':^7} {'MS':>6}"
    print(header)
    print("-" * len(header))
    for r in records:
        inputs = ",".join(f"{k}={v}" for k, v in r.inputs.items())
        print(
            f"{_fmt_cell(r.check, 30):<30} {_fmt_cell(inputs, 30):<30} "
            f"{_fmt_cell(r.expected, 18):>18} {_fmt_cell(r.observed, 18):>18} "
            f"{r.status:^7} {r.elapsed_ms:>6}"
        )
    tally = {s: sum(1 for r in records if r.status == s) for s in (PASS, FAIL, REPORT)}
    print("-" * len(header))
    print(f"{tally[PASS]} passed, {tally[FAIL]} failed, {tally[REPORT]} reported")


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, int((time.perf_counter() - start) * 1000)


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------


def count_records(config: RunConfig) -> list[VerificationRecord]:
    params = config.params()
    field = config.field()
    q = field.q
    an, bn = params.deg_u, params.deg_v
    out_of_hyp = char_divides_weights(params, field.p)
    base = {"a": params.a, "b": params.b, "n": params.n, "q": q}
    records = []

    formula = counting.count_poly1_formula(an, bn, q)
    observed, ms = _timed(
        counting.count_poly1_enumerate, an, bn, field,
        budget=config.budget, workers=config.threads,
    )
    records.append(
        compare("poly1_formula_vs_scan", {**base, "d1": an, "d2": bn},
                formula, observed, elapsed_ms=ms)
    )

    cover, ms = _timed(
        counting.count_T_enumerate, params, field,
        budget=config.budget, workers=config.threads,
    )
    records.append(
        compare("cover_scan_vs_strata", base,
                counting.count_T_strata(params, q), cover, elapsed_ms=ms)
    )

    report, ms = _timed(
        counting.weighted_count_from_orbits, params, field,
        budget=config.budget, workers=config.threads,
    )
    records.append(
        compare("orbit_total_vs_cover_size", base,
                Fraction(cover, q - 1), report.weighted_total, elapsed_ms=ms)
    )
    records.append(
        compare("weighted_count_vs_formula", base,
                counting.weighted_hom_count_formula(params, q),
                report.weighted_total, report_only=out_of_hyp)
    )

    for point in FiberPoint:
        observed, ms = _timed(
            counting.fiber_count, point, params, field, budget=config.budget
        )
        records.append(
            compare(f"fiber_{point.value}", base,
                    counting.count_poly1_formula(an, bn, q), observed, elapsed_ms=ms)
        )

    records.append(
        compare("weighted_target_count", base,
                q + 1, counting.weighted_count_P(params.a, params.b, q))
    )
    return records


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _poly1_sweep_records(config) -> list[VerificationRecord]:
    records = []
    for p, k in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        field = make_field(p, k)
        start = time.perf_counter()
        matched = checked = 0
        for total in range(7):
            for d1 in range(total + 1):
                d2 = total - d1
                checked += 1
                if counting.count_poly1_enumerate(
                    d1, d2, field, budget=config.budget
                ) == counting.count_poly1_formula(d1, d2, field.q):
                    matched += 1
        ms = int((time.perf_counter() - start) * 1000)
        records.append(
            compare("poly1_sweep_deg_le_6", {"q": field.q}, checked, matched,
                    elapsed_ms=ms)
        )
    return records


def _cover_suite_records(config) -> list[VerificationRecord]:
    records = []
    for a, b, n in DESK_PRESETS:
        params = StackParams(a, b, n)
        for p in (2, 3, 5, 7):
            if char_divides_weights(params, p):
                continue
            field = make_field(p, 1)
            q = field.q
            space = q ** ((params.deg_u + 1) + (params.deg_v + 1))
            if space > 10**8:
                continue
            base = {"a": a, "b": b, "n": n, "q": q}
            cover, ms = _timed(
                counting.count_T_enumerate, params, field,
                budget=config.budget, workers=config.threads,
            )
            records.append(
                compare("cover_weighted_vs_formula", base,
                        counting.weighted_hom_count_formula(params, q),
                        Fraction(cover, q - 1), elapsed_ms=ms)
            )
            records.append(
                compare("cover_scan_vs_strata", base,
                        counting.count_T_strata(params, q), cover)
            )
            fib_expected = counting.count_poly1_formula(params.deg_u, params.deg_v, q)
            fibers = {
                point.value: counting.fiber_count(
                    point, params, field, budget=config.budget
                )
                for point in FiberPoint
            }
            records.append(
                compare("fiber_constancy", base,
                        {p.value: fib_expected for p in FiberPoint}, fibers)
            )
            report, ms = _timed(
                counting.weighted_count_from_orbits, params, field,
                budget=config.budget, workers=config.threads,
            )
            records.append(
                compare("orbit_total_vs_cover_size", base,
                        Fraction(cover, q - 1), report.weighted_total,
                        elapsed_ms=ms)
            )
            from math import gcd

            expected_order = gcd(gcd(a, b), q - 1)
            records.append(
                compare("orbit_stabilizer_orders", base,
                        {expected_order: report.orbit_count},
                        report.stabilizer_histogram)
            )
    return records


def _trace_records() -> list[VerificationRecord]:
    records = []
    for a, b, n in DESK_PRESETS + [(4, 6, 1)]:
        params = StackParams(a, b, n)
        table = cohomology.hom_stack_table(params, COMPACT)
        for q in TRACE_CARDINALITIES:
            p = 2 if q in (2, 4) else (3 if q in (3, 9) else (5 if q in (5, 25) else q))
            if char_divides_weights(params, p):
                continue
            records.append(
                compare("trace_sum_vs_weighted_count",
                        {"a": a, "b": b, "n": n, "q": q},
                        counting.weighted_hom_count_formula(params, q),
                        cohomology.trace_sum(table, q))
            )
        for q in TRACE_CARDINALITIES:
            records.append(
                compare("trace_sum_vs_poly1_count",
                        {"d1": params.deg_u, "d2": params.deg_v, "q": q},
                        counting.count_poly1_formula(params.deg_u, params.deg_v, q),
                        cohomology.trace_sum(
                            cohomology.poly_space_table(params.deg_u, params.deg_v, COMPACT), q
                        ))
            )
    return records


def _zeta_records(config) -> list[VerificationRecord]:
    records = []
    for a, b, n in DESK_PRESETS + [(4, 6, 1), (4, 6, 2)]:
        params = StackParams(a, b, n)
        for q in ZETA_PRIMES:
            try:
                record = zeta.verify_zeta(params, q, config.order)
            except ZetaMismatch as err:
                record = VerificationRecord(
                    check="zeta_rationality",
                    inputs={"a": a, "b": b, "n": n, "q": q, "order": config.order},
                    expected=str(err.from_rational),
                    observed=str(err.from_counts),
                    status=FAIL,
                )
            records.append(record)
            counts = zeta.CountSequence(
                q=q,
                values=tuple(
                    counting.weighted_hom_count_formula(params, q**nu)
                    for nu in range(1, config.order + 1)
                ),
            )
            try:
                fitted = zeta.fit_two_eigenvalues(counts)
            except StackyError as err:
                fitted = str(err)
            records.append(
                compare("eigenvalues_from_counts",
                        {"a": a, "b": b, "n": n, "q": q},
                        (q ** (params.s - 1), q ** (params.s + 1)), fitted)
            )
    return records


def _random_table(rng: random.Random) -> CohomologyTable:
    dim = rng.randint(1, 12)
    degrees = rng.sample(range(0, 2 * dim + 1), k=rng.randint(0, min(6, 2 * dim + 1)))
    entries = tuple(
        (i, tuple(rng.randint(-dim, 2 * dim) for _ in range(rng.randint(1, 3))))
        for i in degrees
    )
    kind = rng.choice([COMPACT, ORDINARY])
    return CohomologyTable(kind=kind, dim=dim, entries=entries)


def _duality_records(config) -> list[VerificationRecord]:
    rng = random.Random(config.seed)
    start = time.perf_counter()
    trials = 1000
    good = 0
    for _ in range(trials):
        table = _random_table(rng)
        dual = cohomology.poincare_dual(table)
        if (
            cohomology.poincare_dual(dual) == table
            and dual.total_dimension == table.total_dimension
            and dual.kind != table.kind
        ):
            good += 1
    ms = int((time.perf_counter() - start) * 1000)
    records = [
        compare("duality_involution", {"trials": trials, "seed": config.seed},
                trials, good, elapsed_ms=ms)
    ]
    params = StackParams(1, 1, 1)
    records.append(
        compare("hom_betti_numbers", {"a": 1, "b": 1, "n": 1},
                [1, 0, 0, 1],
                cohomology.betti_numbers(cohomology.hom_stack_table(params, ORDINARY)))
    )
    hom_cls = cohomology.classify_weights(cohomology.hom_stack_table(params, COMPACT))
    records.append(
        compare("hom_weights_mixed_tate", {"a": 1, "b": 1, "n": 1},
                (False, True), (hom_cls.pure, hom_cls.tate))
    )
    target_cls = cohomology.classify_weights(cohomology.p_ab_table(ORDINARY))
    records.append(
        compare("target_weights_pure_tate", {},
                (True, True), (target_cls.pure, target_cls.tate))
    )
    return records


def _resultant_records(config) -> list[VerificationRecord]:
    from stacky.poly import Polynomial

    rng = random.Random(config.seed)
    start = time.perf_counter()
    trials = 500
    good = 0
    for _ in range(trials):
        field = make_field(rng.choice([2, 3, 5]), 1)
        polys = []
        for _ in range(2):
            deg = rng.randint(0, 4)
            idx = [rng.randrange(field.q) for _ in range(deg)] + [
                rng.randrange(1, field.q)
            ]
            polys.append(Polynomial.from_indices(field, idx))
        u, v = polys
        if poly.resultant_sylvester(u, v) == poly.resultant_euclid(u, v):
            good += 1
    ms = int((time.perf_counter() - start) * 1000)
    return [
        compare("resultant_cross_check", {"trials": trials, "seed": config.seed},
                trials, good, elapsed_ms=ms)
    ]


def _out_of_hypothesis_records(config) -> list[VerificationRecord]:
    records = []
    for a, b, n, p in OUT_OF_HYPOTHESIS:
        params = StackParams(a, b, n)
        field = make_field(p, 1)
        q = field.q
        report, ms = _timed(
            counting.weighted_count_from_orbits, params, field,
            budget=config.budget, workers=config.threads,
        )
        records.append(
            compare("weighted_count_vs_formula",
                    {"a": a, "b": b, "n": n, "q": q},
                    counting.weighted_hom_count_formula(params, q),
                    report.weighted_total, report_only=True, elapsed_ms=ms)
        )
    return records


def _stretch_records(config) -> list[VerificationRecord]:
    params = StackParams(4, 6, 1)
    field = make_field(5, 1)
    records = []
    cover, ms = _timed(
        counting.count_T_enumerate, params, field,
        budget=config.budget, workers=config.threads,
    )
    records.append(
        compare("stretch_cover_size", {"a": 4, "b": 6, "n": 1, "q": 5},
                187_500_000, cover, elapsed_ms=ms)
    )
    report, ms = _timed(
        counting.weighted_count_from_orbits, params, field,
        budget=config.budget, workers=config.threads,
    )
    records.append(
        compare("stretch_weighted_count", {"a": 4, "b": 6, "n": 1, "q": 5},
                46_875_000, report.weighted_total, elapsed_ms=ms)
    )
    records.append(
        compare("stretch_stabilizer_orders", {"a": 4, "b": 6, "n": 1, "q": 5},
                {2: 93_750_000}, report.stabilizer_histogram)
    )
    return records


def verify_records(config: RunConfig) -> list[VerificationRecord]:
    records = []
    records += _poly1_sweep_records(config)
    records += _cover_suite_records(config)
    records += _trace_records()
    records += _zeta_records(config)
    records += _duality_records(config)
    records += _resultant_records(config)
    records += _out_of_hypothesis_records(config)
    if config.suite == "stretch":
        records += _stretch_records(config)
    return records


# ---------------------------------------------------------------------------
# zeta / table / bench
# ---------------------------------------------------------------------------


def zeta_output(config: RunConfig) -> tuple[dict, list[VerificationRecord]]:
    params = config.params()
    field = config.field()
    q = field.q
    rf = zeta.zeta_rational_from_table(
        cohomology.hom_stack_table(params, COMPACT), q
    )
    try:
        record = zeta.verify_zeta(params, q, config.order)
    except ZetaMismatch as err:
        record = VerificationRecord(
            check="zeta_rationality",
            inputs={"a": params.a, "b": params.b, "n": params.n, "q": q,
                    "order": config.order},
            expected=str(err.from_rational),
            observed=str(err.from_counts),
            status=FAIL,
        )
    counts = zeta.CountSequence(
        q=q,
        values=tuple(
            counting.weighted_hom_count_formula(params, q**nu)
            for nu in range(1, config.order + 1)
        ),
    )
    series = zeta.zeta_series_from_counts(counts, config.order)
    fitted = zeta.fit_two_eigenvalues(counts)
    payload = {
        "numerator": [str(c) for c in rf.numerator],
        "denominator": [str(c) for c in rf.denominator],
        "series": [str(c) for c in series.coeffs],
        "fitted_eigenvalues": [str(fitted[0]), str(fitted[1])],
        "status": record.status,
        "text": f"({_factor_string(rf.numerator)}) / ({_factor_string(rf.denominator)})",
    }
    return payload, [record]


def _factor_string(coeffs) -> str:
    # linear factors only ever appear as 1 - q^w t
    if len(coeffs) == 1:
        return str(coeffs[0])
    terms = [str(coeffs[0])]
    for i, c in enumerate(coeffs[1:], start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        tpow = "t" if i == 1 else f"t^{i}"
        terms.append(f"{sign} {mag}*{tpow}")
    return " ".join(terms)


def table_output(config: RunConfig) -> dict:
    params = config.params()
    compact = cohomology.hom_stack_table(params, COMPACT)
    ordinary = cohomology.hom_stack_table(params, ORDINARY)
    cls = cohomology.classify_weights(compact)
    return {
        "compact": cohomology.table_to_dict(compact),
        "ordinary": cohomology.table_to_dict(ordinary),
        "betti_numbers": cohomology.betti_numbers(ordinary),
        "pure": cls.pure,
        "tate": cls.tate,
        "classification": ("pure" if cls.pure else "mixed") + " Tate",
    }


def bench_records(config: RunConfig) -> list[VerificationRecord]:
    params = config.params()
    field = config.field()
    base = {"a": params.a, "b": params.b, "n": params.n, "q": field.q}
    records = []
    methods = ["pair"] if field.k > 1 else ["pair", "vector"]
    results = {}
    for method in methods:
        count, ms = _timed(
            counting.count_T_enumerate, params, field,
            budget=config.budget, workers=config.threads, method=method,
        )
        results[method] = count
        records.append(
            VerificationRecord(
                check=f"bench_scan_{method}",
                inputs=base,
                expected="",
                observed=str(count),
                status=PASS,
                elapsed_ms=ms,
            )
        )
    if len(results) == 2 and results["pair"] != results["vector"]:
        records.append(
            compare("bench_methods_agree", base, results["pair"], results["vector"])
        )
    return records


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stacky",
        description="exact counting and cohomology checks for weighted Hom covers",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp, *, field_args=True):
        sp.add_argument("--a", type=int, default=1, help="first weight")
        sp.add_argument("--b", type=int, default=1, help="second weight")
        sp.add_argument("--n", type=int, default=1, help="map degree")
        if field_args:
            sp.add_argument("--p", type=int, default=2, help="characteristic")
            sp.add_argument("--k", type=int, default=1, help="extension degree")
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--budget", type=int, default=None)
        sp.add_argument("--order", type=int, default=8, help="series truncation")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=["json", "table"], default="table")

    add_common(sub.add_parser("count", help="counts for one configuration"))
    verify = sub.add_parser("verify", help="run the verification suite")
    add_common(verify)
    verify.add_argument("--suite", choices=["desk", "stretch"], default="desk")
    add_common(sub.add_parser("zeta", help="zeta function checks"))
    add_common(sub.add_parser("table", help="print cohomology tables"), field_args=False)
    add_common(sub.add_parser("bench", help="time the enumeration kernels"))
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        a=args.a,
        b=args.b,
        n=args.n,
        p=getattr(args, "p", 2),
        k=getattr(args, "k", 1),
        order=args.order,
        threads=args.threads,
        output_format=args.format,
        budget=args.budget,
        suite=getattr(args, "suite", "desk"),
        seed=args.seed,
    )


def _validate(config: RunConfig) -> None:
    if min(config.a, config.b, config.n) < 1:
        raise ValueError("weights and degree must be positive")
    if not 1 <= config.order <= zeta.MAX_SERIES_ORDER:
        raise ValueError(f"--order must be in [1, {zeta.MAX_SERIES_ORDER}]")
    if config.k < 1:
        raise ValueError("--k must be >= 1")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        _validate(config)
        if config.subcommand in ("count", "verify", "zeta", "bench"):
            config.field()  # validates primality and size up front
    except (StackyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    try:
        if config.subcommand == "count":
            records = count_records(config)
            print_records(records, config.output_format)
            return 1 if any(r.status == FAIL for r in records) else 0
        if config.subcommand == "verify":
            records = verify_records(config)
            print_records(records, config.output_format)
            return 1 if any(r.status == FAIL for r in records) else 0
        if config.subcommand == "zeta":
            payload, records = zeta_output(config)
            if config.output_format == "json":
                sys.stdout.write(canonical_json(payload))
            else:
                print(f"Z(t) = {payload['text']}")
                print(f"series: [{', '.join(payload['series'])}]")
                print(f"eigenvalues: {payload['fitted_eigenvalues']}")
                print(f"status: {payload['status']}")
            return 1 if any(r.status == FAIL for r in records) else 0
        if config.subcommand == "table":
            payload = table_output(config)
            if config.output_format == "json":
                sys.stdout.write(canonical_json(payload))
            else:
                for kind in ("compact", "ordinary"):
                    data = payload[kind]
                    entries = ", ".join(
                        f"i={e['i']}: {e['weights']}" for e in data["entries"]
                    )
                    print(f"{kind} (dim {data['dim']}): {{{entries}}}")
                print(f"betti numbers: {payload['betti_numbers']}")
                print(f"classification: {payload['classification']}")
            return 0
        if config.subcommand == "bench":
            records = bench_records(config)
            print_records(records, config.output_format)
            return 1 if any(r.status == FAIL for r in records) else 0
    except EnumerationTooLarge as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except StackyError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled subcommand {config.subcommand}")


if __name__ == "__main__":
    sys.exit(main())
