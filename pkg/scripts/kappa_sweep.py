"""Bracket the threshold kappa_n for several degrees and flag non-monotone brackets.

Usage: python scripts/kappa_sweep.py [--n-max 3] [--restarts 16] [--eps 1e-3]
"""

import argparse
import logging
import sys

from korenblum.cli import fmt12
from korenblum.search import SearchConfig, kappa_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--eps", type=float, default=1e-3)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    base = SearchConfig(restarts=args.restarts, seed=args.seed)
    rows = ["n,lower,upper,width,evaluations,diagnostics"]
    for est in kappa_sweep(range(1, args.n_max + 1), eps=args.eps, base_config=base):
        logging.info("n=%d bracket [%.6f, %.6f]", est.n, est.lower, est.upper)
        rows.append(",".join([str(est.n), fmt12(est.lower), fmt12(est.upper),
                              fmt12(est.upper - est.lower), str(est.evaluations),
                              "|".join(est.diagnostics)]))
    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
