"""Tabulate the degree-1 extremal value against the search estimate over a c-grid.

Usage: python scripts/f1_curve.py [--grid 0.5:0.99:25] [--restarts 16] [--out f1.csv]
"""

import argparse
import sys

from korenblum.bounds import bound_F_lower
from korenblum.cli import fmt12, parse_grid
from korenblum.mobius import f1_closed_form
from korenblum.search import SearchConfig, minimize_F


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", default="0.5:0.99:25")
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    lines = ["c,closed_form,search,abs_err,lower_bound"]
    for c in parse_grid(args.grid):
        closed = f1_closed_form(c)
        found = minimize_F(SearchConfig(n=1, c=c, restarts=args.restarts, seed=args.seed)).objective
        lines.append(",".join(fmt12(v) for v in (c, closed, found, abs(found - closed), bound_F_lower(c))))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
