from __future__ import annotations

import argparse
import csv
import os

from wtrees.config import WTreeConfig
from wtrees.partitions import cardinality_details
from wtrees.sweep import sweep_types

FIELDNAMES = ["type", "s", "t", "simple", "decomposable", "cardinality"]


def _write_csv(path: str, rows: list[dict[str, str]], fieldnames: list[str]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.DictWriter(f, fieldnames=fieldnames)
        w.writeheader()
        w.writerows(rows)


def count_rows(max_weight: int, *, budget: int) -> list[dict[str, str]]:
    rows = []
    for wtype in sweep_types(max_weight):
        details = cardinality_details(wtype, budget=budget)
        rows.append(
            {
                "type": wtype.literal(),
                "s": str(wtype.s),
                "t": str(wtype.t),
                "simple": str(details.classification.simple).lower(),
                "decomposable": str(details.classification.decomposable).lower(),
                "cardinality": str(details.cardinality),
            }
        )
    return rows


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="CSV table of w-tree counts for every type up to a total weight")
    parser.add_argument("--max-weight", type=int, required=True)
    parser.add_argument("--output", default=os.path.join("data", "counts.csv"))
    args = parser.parse_args(argv)

    config = WTreeConfig.from_env()
    _write_csv(args.output, count_rows(args.max_weight, budget=config.budget), FIELDNAMES)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
