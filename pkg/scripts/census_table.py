"""Stratum census over a list of odd prime powers, as TSV or JSON.

    python scripts/census_table.py 3 5 7 9 11 13 --format tsv
"""

import argparse
import sys

from flagstrata.census import format_report, orbit_census, stratum_census


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("q", nargs="*", type=int, default=[3, 5, 7, 9, 11, 13])
    ap.add_argument("--format", choices=("tsv", "json"), default="tsv")
    ap.add_argument("--orbits", action="store_true", help="also split strata into SO(3)-orbits (q <= 13)")
    args = ap.parse_args(argv)

    build = orbit_census if args.orbits else stratum_census
    reports = [build(q) for q in args.q]
    sys.stdout.write(format_report(reports, args.format).rstrip("\n") + "\n")
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
