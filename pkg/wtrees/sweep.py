"""Formula-vs-enumeration sweep over every type up to a total weight."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import repeat
from typing import Optional, TextIO

from .core.weights import WeightedType
from .enumerator import DEFAULT_BUDGET, census_of, enumerate_types, enumerate_wtree_records
from .errors import ResourceBudget
from .export import census_document
from .partitions import cardinality_details
from .schemas import SweepReport, SweepRow, SweepSummary


def check_type(wtype: WeightedType, budget: int = DEFAULT_BUDGET) -> SweepRow:
    """Compare the closed-form count with the oracle and check the structural identities on one type."""
    literal = wtype.literal()
    try:
        records = enumerate_wtree_records(wtype, budget=budget)
        details = cardinality_details(wtype, budget=budget)
    except ResourceBudget as exc:
        return SweepRow(type=literal, status="skipped", note=str(exc))

    census = census_of(records)
    checks = {"counts_agree": details.cardinality == census.total_unlabeled}

    if details.classification.simple:
        bound = math.factorial(wtype.v - 2)
        if details.classification.decomposable:
            checks["below_factorial_bound"] = details.cardinality < bound
        else:
            checks["equals_factorial_bound"] = details.cardinality == bound

    orbit_sum = sum((Fraction(details.p, r.automorphism_order) for r in records), Fraction(0))
    checks["burnside"] = orbit_sum == details.labeled_total

    observed = {i: c for i, c in census.by_order.items() if i >= 2}
    checks["symmetric_classes"] = observed == dict(details.symmetric)

    return SweepRow(
        type=literal,
        status="ok" if all(checks.values()) else "mismatch",
        formula=details.cardinality,
        enumeration=census.total_unlabeled,
        census=census_document(census),
        checks=checks,
    )


def sweep_types(max_weight: int) -> list[WeightedType]:
    return [wtype for n in range(1, max_weight + 1) for wtype in enumerate_types(n)]


def run_sweep(max_weight: int, *, jobs: int = 1, budget: int = DEFAULT_BUDGET) -> SweepReport:
    types = sweep_types(max_weight)
    if jobs > 1 and len(types) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(check_type, types, repeat(budget), chunksize=4))
    else:
        rows = [check_type(wtype, budget) for wtype in types]
    summary = SweepSummary(
        types_checked=sum(1 for r in rows if r.status != "skipped"),
        mismatches=sum(1 for r in rows if r.status == "mismatch"),
        skipped=sum(1 for r in rows if r.status == "skipped"),
    )
    return SweepReport(max_weight=max_weight, rows=rows, summary=summary)


def claim_report(path: str) -> TextIO:
    # Never overwrites an existing report.
    return open(path, "x", encoding="utf-8")


def write_report(report: SweepReport, path: str) -> None:
    with claim_report(path) as f:
        f.write(report.to_json())


def sweep_exit_code(report: SweepReport) -> int:
    if report.summary.mismatches:
        return 1
    if report.summary.skipped:
        return ResourceBudget.exit_code
    return 0


def mismatched_rows(report: SweepReport) -> list[SweepRow]:
    return [r for r in report.rows if r.status == "mismatch"]


def find_row(report: SweepReport, literal: str) -> Optional[SweepRow]:
    return next((r for r in report.rows if r.type == literal), None)
