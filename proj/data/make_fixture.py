"""Regenerates northeast_htf_fixture.csv.

Synthetic high-tide-flooding-day projections for one regional average,
shaped after published NOAA-style scenario families: every scenario starts
near today's few days per year and grows exponentially at a
scenario-specific rate, so the extreme family accelerates sharply while the
low family barely moves.  Values are rounded to 0.1 day.
"""
import csv
import math
import sys

START, END = 2021, 2046
# scenario: (days in START, days in END)
SCENARIOS = [
    ("low", 0.8, 2.5),
    ("int low", 1.0, 5.0),
    ("int", 1.2, 12.0),
    ("int high", 1.5, 35.0),
    ("high", 1.8, 80.0),
    ("extreme", 2.2, 160.0),
]


def main(path):
    with open(path, "w", newline="\n") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["location", "scenario", "year", "value"])
        span = END - START
        for name, v0, v1 in SCENARIOS:
            rate = math.log(v1 / v0) / span
            for year in range(START, END + 1):
                w.writerow(["northeast", name, year, f"{v0 * math.exp(rate * (year - START)):.1f}"])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "northeast_htf_fixture.csv")
