#!/usr/bin/env python3
"""Regenerate the checked-in superstore-style CSV fixture.

Deterministic: the same seed always writes the same bytes, which matters for
the byte-determinism checks that compile this fixture.
"""

from __future__ import annotations

import csv
import random
from datetime import date, timedelta
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "superstore.csv"

REGIONS = ["Central", "East", "South", "West"]
CATEGORIES = ["Furniture", "Office Supplies", "Technology"]
ROWS = 108
SEED = 20240717


def main() -> None:
    rng = random.Random(SEED)
    start = date(2023, 1, 5)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["Sales", "Shipping Cost", "Ship Date", "Region", "Category"])
        for _ in range(ROWS):
            sales = round(rng.uniform(8.0, 950.0), 2)
            shipping = round(sales * rng.uniform(0.05, 0.2), 2)
            ship_date = start + timedelta(days=rng.randrange(0, 535))
            writer.writerow(
                [
                    f"{sales:.2f}",
                    f"{shipping:.2f}",
                    ship_date.isoformat(),
                    rng.choice(REGIONS),
                    rng.choice(CATEGORIES),
                ]
            )
    print(f"wrote {OUT} ({ROWS} rows)")


if __name__ == "__main__":
    main()
