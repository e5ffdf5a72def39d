"""Compare the F_B search estimate with the Hayman gap and the c^2 ceiling.

Usage: python scripts/fb_sweep.py [--n 1] [--grid 0.72:0.95:12] [--restarts 16]
"""

import argparse
import sys

from korenblum.bounds import bound_FB
from korenblum.cli import fmt12, parse_grid
from korenblum.search import SearchConfig, maximize_FB


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--grid", default="0.72:0.95:12")
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    lines = ["c,search,hayman_gap,upper_bound,one_minus_half_c_inv_sq,violation"]
    for c in parse_grid(args.grid):
        res = maximize_FB(SearchConfig(n=args.n, c=c, restarts=args.restarts, seed=args.seed))
        vals = (c, res.objective, max(0.0, c * c - 0.5), bound_FB(c), 1 - 0.5 / c ** 2,
                res.diagnostics["violation"])
        lines.append(",".join(fmt12(v) for v in vals))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
