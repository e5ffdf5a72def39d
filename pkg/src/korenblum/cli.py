"""Command-line front end.

Every subcommand writes its data payload (CSV or JSON) to stdout or to
``--out``; with ``--out`` a sidecar ``<out>.manifest.json`` records the
command, the fully resolved configuration, the tool version and the wall
clock. Timestamps appear only in the manifest, so payloads from identical
inputs compare byte for byte.

Exit codes: 0 success, 2 usage/parse/domain/config error, 3 search did not
converge (the result is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .bergman import bergman_norm, loads_poly
from .bounds import DUAL_HEADER, bound_F_lower, bound_FB, dual_demo
from .errors import ConfigError, DomainError, ParseError
from .mobius import KAPPA_1, case_candidates, f1_closed_form
from .search import (
    SearchConfig,
    estimate_kappa_n,
    maximize_FB,
    minimize_F,
    minimize_F_blaschke,
)

log = logging.getLogger("korenblum")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3

# rows of a sweep may wiggle this much against the expected trend before being flagged
MONOTONE_SLACK = 2e-3

CANDIDATE_LABELS = ("a=c,b=1/(2c)", "a=c^2/b,b->0", "trivial")


def fmt12(x):
    """12 significant digits, fixed notation."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    x = float(x)
    if x == 0.0:
        return "0." + "0" * 11
    # exponent after rounding to 12 significant digits
    exp = int(f"{x:.11e}".split("e")[1])
    return f"{x:.{max(0, 11 - exp)}f}"


def parse_grid(spec):
    """'start:stop:steps' -> list of floats (np.linspace, endpoints included)."""
    try:
        start, stop, steps = spec.split(":")
        start, stop, steps = float(start), float(stop), int(steps)
    except ValueError as exc:
        raise ConfigError(f"grid spec {spec!r} is not start:stop:steps") from exc
    if steps < 1:
        raise ConfigError(f"grid spec {spec!r} is empty")
    return [float(c) for c in np.linspace(start, stop, steps)]


def write_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt12(v) for v in row])
    return buf.getvalue()


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int | None
    version: str
    wall_clock_seconds: float
    started_at: str

    def to_json(self):
        return dump_json(asdict(self))


# -- configuration ------------------------------------------------------------

DEFAULTS = {
    "search": dict(n=1, c=0.8, restarts=16, seed=0, fb=False, blaschke=False, workers=None),
    "kappa": dict(n=1, eps=1e-3, restarts=16, seed=0, workers=None),
    "dual-demo": dict(r=0.5, n_max=8),
    "sweep": dict(what="f", n=1, c_grid=None, restarts=16, seed=0, workers=None),
    "f1": dict(c=None, grid=None),
    "norm": dict(coeff_file=None),
}


SEARCH_COMMANDS = ("search", "kappa", "sweep")


def load_config_file(path, command):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    if "command" in data and "config" in data:
        # a run manifest: replay it
        if data["command"] != command:
            raise ConfigError(f"manifest is for {data['command']!r}, not {command!r}")
        data = {k: v for k, v in data["config"].items() if k != "search_config"}
    allowed = set(DEFAULTS[command])
    if command in SEARCH_COMMANDS:
        # tuning knobs without flags of their own
        allowed |= {f.name for f in fields(SearchConfig)} - {"n", "c"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys for {command}: {sorted(unknown)}")
    return data


def resolve(args, command):
    """flags > config file > defaults."""
    cfg = dict(DEFAULTS[command])
    if getattr(args, "config", None):
        cfg.update(load_config_file(args.config, command))
    for key in DEFAULTS[command]:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    return cfg


def search_config(cfg, **over):
    known = {f.name for f in fields(SearchConfig)}
    kw = {k: v for k, v in cfg.items() if k in known}
    kw.update(over)
    try:
        return SearchConfig(**kw).validate()
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


# -- subcommands --------------------------------------------------------------

def cmd_norm(cfg):
    path = cfg["coeff_file"]
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    p = loads_poly(text)
    return fmt12(bergman_norm(p)) + "\n", EXIT_OK


def cmd_f1(cfg):
    if cfg["c"] is not None and cfg["grid"] is not None:
        raise ConfigError("give either --c or --grid, not both")
    if cfg["c"] is not None:
        cs = [float(cfg["c"])]
    elif cfg["grid"] is not None:
        cs = parse_grid(cfg["grid"])
    else:
        raise ConfigError("one of --c or --grid is required")
    rows = []
    for c in cs:
        f1 = f1_closed_form(c)
        lower = 0.0 if c == 1.0 else bound_F_lower(c)
        cands = dict(case_candidates(c)) if c > KAPPA_1 else {}
        rows.append([c, f1, lower] + [cands.get(label) for label in CANDIDATE_LABELS])
    header = ["c", "F1", "lower_bound"] + [f"candidate[{label}]" for label in CANDIDATE_LABELS]
    return write_csv(header, rows), EXIT_OK


def cmd_search(cfg):
    if cfg["fb"] and cfg["blaschke"]:
        raise ConfigError("--fb and --blaschke are exclusive")
    sc = search_config(cfg)
    if cfg["fb"]:
        res = maximize_FB(sc)
    elif cfg["blaschke"]:
        res = minimize_F_blaschke(sc)
    else:
        res = minimize_F(sc)
    code = EXIT_OK if res.converged else EXIT_NONCONVERGED
    return dump_json(res.to_dict()), code


def cmd_kappa(cfg):
    if cfg["n"] < 1:
        raise ConfigError(f"n must be >= 1, got {cfg['n']}")
    base = search_config(cfg, n=cfg["n"])
    est = estimate_kappa_n(cfg["n"], cfg["eps"], base)
    return dump_json(est.to_dict()), EXIT_OK


def cmd_dual_demo(cfg):
    r, n_max = float(cfg["r"]), int(cfg["n_max"])
    if n_max < 1:
        raise ConfigError("--n-max must be >= 1")
    rows = [dual_demo(n, r).csv_row() for n in range(1, n_max + 1)]
    return write_csv(DUAL_HEADER, rows), EXIT_OK


def monotone_flags(values, increasing, slack=MONOTONE_SLACK):
    """1 where a row keeps the expected trend against the previous row (within slack)."""
    flags = [1]
    for prev, cur in zip(values, values[1:]):
        ok = cur >= prev - slack if increasing else cur <= prev + slack
        flags.append(int(ok))
    return flags


def cmd_sweep(cfg):
    if not cfg["c_grid"]:
        raise ConfigError("--c-grid is required")
    cs = parse_grid(cfg["c_grid"])
    what = cfg["what"]
    if what not in ("f", "fb"):
        raise ConfigError(f"--what must be f or fb, got {what!r}")
    estimates, bounds = [], []
    for c in cs:
        sc = search_config(cfg, c=c)
        if what == "f":
            estimates.append(minimize_F(sc).objective)
            bounds.append(bound_F_lower(c))
        else:
            estimates.append(maximize_FB(sc).objective)
            bounds.append(bound_FB(c))
    # F decreases in c and F_B increases in c
    flags = monotone_flags(estimates, increasing=(what == "fb"))
    bound_name = "lower_bound" if what == "f" else "upper_bound"
    header = ["c", "estimate", bound_name, "monotone"]
    rows = [list(r) for r in zip(cs, estimates, bounds, flags)]
    return write_csv(header, rows), EXIT_OK


COMMANDS = {
    "norm": cmd_norm,
    "f1": cmd_f1,
    "search": cmd_search,
    "kappa": cmd_kappa,
    "dual-demo": cmd_dual_demo,
    "sweep": cmd_sweep,
}


# -- argument parsing -------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="korenblum", description="Bergman-space extremal problem lab")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seeded=False):
        sp.add_argument("--config", help="JSON file of option values (or a run manifest)")
        sp.add_argument("--out", help="write payload here, with a .manifest.json sidecar")
        if seeded:
            sp.add_argument("--restarts", type=int)
            sp.add_argument("--seed", type=int)
            sp.add_argument("--workers", type=int, help=f"threads (default: $KORENBLUM_THREADS or cpu count)")

    sp = sub.add_parser("norm", help="Bergman norm of a coefficient file")
    sp.add_argument("coeff_file")
    common(sp)

    sp = sub.add_parser("f1", help="degree-1 closed form, lower bound and case candidates")
    sp.add_argument("--c", type=float)
    sp.add_argument("--grid", help="start:stop:steps")
    common(sp)

    sp = sub.add_parser("search", help="coefficient-space search for F_n, F_B or F_n^B")
    sp.add_argument("--n", type=int)
    sp.add_argument("--c", type=float)
    sp.add_argument("--fb", action="store_true", help="maximize the F_B norm gap instead")
    sp.add_argument("--blaschke", action="store_true", help="search over Blaschke products")
    common(sp, seeded=True)

    sp = sub.add_parser("kappa", help="bisection bracket for kappa_n")
    sp.add_argument("--n", type=int)
    sp.add_argument("--eps", type=float)
    common(sp, seeded=True)

    sp = sub.add_parser("dual-demo", help="rows of the dual-problem demonstration")
    sp.add_argument("--r", type=float)
    sp.add_argument("--n-max", dest="n_max", type=int)
    common(sp)

    sp = sub.add_parser("sweep", help="search estimates over a grid of c")
    sp.add_argument("--what", choices=("f", "fb"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--c-grid", dest="c_grid", help="start:stop:steps")
    common(sp, seeded=True)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    started = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    t0 = time.perf_counter()
    try:
        cfg = resolve(args, args.command)
        payload, code = COMMANDS[args.command](cfg)
    except ParseError as exc:
        where = f" (line {exc.line}, column {exc.column})" if exc.line is not None else ""
        print(f"parse error: {exc}{where}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        out = Path(args.out)
        out.write_text(payload)
        echo = dict(cfg)
        if args.command in SEARCH_COMMANDS:
            # the library-level settings the CLI leaves at their defaults
            echo["search_config"] = asdict(search_config(cfg))
        manifest = RunManifest(
            command=args.command,
            config=echo,
            seed=cfg.get("seed"),
            version=__version__,
            wall_clock_seconds=time.perf_counter() - t0,
            started_at=started,
        )
        Path(str(out) + ".manifest.json").write_text(manifest.to_json())
    else:
        sys.stdout.write(payload)
    if code == EXIT_NONCONVERGED:
        print("warning: search did not converge", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
