"""Tally the extension degree each witness needs, per stratum, over F_q.

Prints one TSV row per (q, stratum, degree) with the number of flags.
"""

import argparse
import sys
from collections import Counter

from flagstrata.flagvariety import enumerate_flags
from flagstrata.strata import Stratum, classify_flag
from flagstrata.witness import witness

ORDER = list(Stratum)


def tally(q):
    counts = Counter()
    for f in enumerate_flags(q):
        res = witness(f)
        if not res.verified:
            raise AssertionError(f"unverified witness for {f}")
        counts[classify_flag(f), res.extension_degree] += 1
    return counts


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("q", nargs="*", type=int, default=[3, 5, 7, 9])
    args = ap.parse_args(argv)
    print("q\tstratum\tdegree\tflags")
    for q in args.q:
        for (s, d), n in sorted(tally(q).items(), key=lambda kv: (ORDER.index(kv[0][0]), kv[0][1])):
            print(f"{q}\t{s}\t{d}\t{n}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
