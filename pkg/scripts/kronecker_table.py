#!/usr/bin/env python3
"""Tabulate Kronecker coefficients for all partition triples of n.

Example:
    python scripts/kronecker_table.py 5 --max-len 3 --verify
"""

import argparse
import itertools
import sys
import time

sys.path.insert(0, "src")

from hivekron.kron import kronecker, kronecker_oracle, partitions_of


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int)
    ap.add_argument("--max-len", type=int, default=3)
    ap.add_argument("--verify", action="store_true")
    ap.add_argument("--nonzero-only", action="store_true")
    args = ap.parse_args()

    parts = [tuple(p) for p in partitions_of(args.n, max_len=args.max_len)]
    t0 = time.time()
    rows = 0
    for mu, nu in itertools.combinations_with_replacement(parts, 2):
        for lam in parts:
            g = kronecker(mu, nu, lam).value
            if args.verify:
                expect = kronecker_oracle(mu, nu, lam)
                assert g == expect, (mu, nu, lam, g, expect)
            if g or not args.nonzero_only:
                print(f"g[{mu} , {nu} ; {lam}] = {g}")
                rows += 1
    tag = "verified against the character oracle" if args.verify else "unverified"
    print(f"# {rows} rows in {time.time() - t0:.1f}s ({tag})", file=sys.stderr)


if __name__ == "__main__":
    main()
