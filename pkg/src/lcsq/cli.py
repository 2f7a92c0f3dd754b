"""Command-line front end.

Three subcommands:

``dims``     dimensions of ``B_i`` for a relation (graded or filtered)
``compare``  ``B_2`` next to ``Omega^1/dOmega^0`` degree by degree
``table``    recompute one of the reference tables and compare cell by cell

Every command prints JSON, CSV or plain text.  Output depends only on the
configuration, so equal configurations give byte-identical output.  If
``LCSQ_CACHE_DIR`` is set, finished outputs are stored there keyed by a
hash of the configuration and reused on later runs.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .kahler import omega_quotient_dim
from .lcs import b_dim_quotient, default_cap, dim_table, graded_engine, random_relation
from .ncpoly import AlgebraPresentation, ParseError, ResourceError, format_poly, parse

CACHE_ENV = "LCSQ_CACHE_DIR"
FORMATS = ("json", "csv", "text")
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass(frozen=True)
class Preset:
    n: int
    relation: str
    rows: dict[int, tuple]  # i -> reference values for degrees 1, 2, ...; None = blank cell


# Reference tables.  Blank cells are None; they are computed and tagged, not compared.
PRESETS: dict[str, Preset] = {
    "table-1": Preset(2, "x^2+y^2", {
        3: (0, 0, 2, 0, 0, 0),
        4: (0, 0, 0, 2, 0, 0),
        5: (0, 0, 0, 0, 4, 0),
    }),
    "table-2": Preset(3, "x^2+y^2", {
        3: (0, 0, 8, 15, 16, 20),
        4: (0, 0, 0, 18, 45, 48),
    }),
    "table-3": Preset(3, "x^3+y^3", {
        3: (0, 0, 8, 24, 39, 45),
        4: (0, 0, 0, 18, 71, 135),
    }),
    "table-4": Preset(4, "x^2+y^2+z^2+w^2", {
        2: (0, 6, 16, 31, 48, 70),
        3: (0, 0, 20, 64, 124, None),
        4: (0, 0, 0, 60, None, None),
    }),
    "table-5": Preset(4, "x^3+y^3+z^3+w^3", {
        2: (0, 6, 20, 42, 72),
        3: (0, 0, 20, 80, 188),
    }),
}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# configuration


def _index_list(text: str) -> list[int]:
    try:
        out = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty index list")
    return out


def _presentation(args, mode: str = "graded") -> tuple[AlgebraPresentation, dict]:
    """Build the presentation and the config fields that describe it."""
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.relation == "random":
        if args.d is None:
            raise UsageError("--relation random needs --d")
        if args.d < 2:
            raise UsageError("--d must be at least 2")
        P = random_relation(args.n, args.d, args.seed)
    else:
        P = parse(args.relation, args.n)
    try:
        pres = AlgebraPresentation(args.n, P, mode)
    except ValueError as exc:
        raise UsageError(str(exc))
    config = {
        "n": args.n,
        "relation": format_poly(P),
        "requested": args.relation,
        "d": pres.d,
        "seed": args.seed,
        "mode": mode,
    }
    return pres, config


def _check_degree(n: int, max_degree: int, cap: int | None) -> int:
    cap = default_cap(n) if cap is None else cap
    if max_degree > cap:
        raise ResourceError(f"--max-degree {max_degree} exceeds the cap {cap} for n={n} (raise it with --cap)")
    return cap


# --------------------------------------------------------------------------
# commands; each returns (config, results, extra top-level fields)


def cmd_dims(args) -> tuple[dict, list[dict], dict]:
    pres, config = _presentation(args, args.mode)
    if args.mode == "graded":
        _check_degree(args.n, args.max_degree, args.cap)
    elif min(args.i) < 2:
        raise UsageError("filtered mode needs series indices >= 2")
    config.update(i=args.i, max_degree=args.max_degree, cap=args.cap, truncation_max=args.truncation_max)
    table = dim_table(pres, args.i, args.max_degree, cap=args.cap, m_max=args.truncation_max)
    return config, table.records(), {}


def cmd_compare(args) -> tuple[dict, list[dict], dict]:
    pres, config = _presentation(args)
    if args.n not in (2, 3, 4):
        raise UsageError("compare supports n = 2, 3, 4")
    _check_degree(args.n, args.max_degree, args.cap)
    config.update(max_degree=args.max_degree, cap=args.cap)
    results = []
    first = None
    for m in range(1, args.max_degree + 1):
        b2 = b_dim_quotient(pres, 2, m, args.cap)
        om = omega_quotient_dim(pres, m)
        results.append({"degree": m, "b2": b2, "omega": om, "equal": b2 == om})
        if b2 != om and first is None:
            first = m
    return config, results, {"first_mismatch": first}


def cmd_table(args) -> tuple[dict, list[dict], dict]:
    preset = PRESETS[args.preset]
    P = parse(preset.relation, preset.n)
    pres = AlgebraPresentation(preset.n, P)
    eng = graded_engine(pres, args.cap)
    config = {"preset": args.preset, "n": preset.n, "relation": format_poly(P), "seed": None}
    results = []
    mismatches = 0
    for i, ref in sorted(preset.rows.items()):
        for m, expected in enumerate(ref, start=1):
            rec = {"i": i, "degree": m, "dim": None, "certified": False, "reference": expected}
            try:
                rec["dim"] = eng.b_dim(i, m)
                rec["certified"] = True
            except ResourceError as exc:
                rec["status"] = "cap-exceeded"
                rec["error"] = str(exc)
                results.append(rec)
                continue
            if expected is None:
                rec["status"] = "beyond-paper"
            elif rec["dim"] == expected:
                rec["status"] = "match"
            else:
                rec["status"] = "mismatch"
                mismatches += 1
            results.append(rec)
    return config, results, {"mismatches": mismatches}


# --------------------------------------------------------------------------
# rendering


def render_json(config: dict, results: list[dict], extra: dict) -> str:
    doc = {"config": config, "results": results}
    doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _csv_columns(results: list[dict]) -> list[str]:
    cols: list[str] = []
    for rec in results:
        for k in rec:
            if k not in cols:
                cols.append(k)
    return cols


def render_csv(config: dict, results: list[dict], extra: dict) -> str:
    buf = io.StringIO()
    cols = _csv_columns(results) or ["i", "degree", "dim", "certified"]
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    for rec in results:
        writer.writerow({k: _csv_cell(rec.get(k)) for k in cols})
    return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def render_text(config: dict, results: list[dict], extra: dict) -> str:
    lines = [", ".join(f"{k}={v}" for k, v in config.items() if v is not None)]
    if results and "i" in results[0]:
        degrees = sorted({r["degree"] for r in results})
        lines.append("B_i[m]  " + " ".join(f"{m:>6}" for m in degrees))
        by_i: dict[int, dict[int, dict]] = {}
        for r in results:
            by_i.setdefault(r["i"], {})[r["degree"]] = r
        for i, row in sorted(by_i.items()):
            cells = []
            for m in degrees:
                r = row.get(m)
                cells.append(f"{_text_cell(r):>6}")
            lines.append(f"B_{i:<5} " + " ".join(cells))
    else:
        lines.append(f"{'m':>3} {'B_2':>6} {'Omega':>6}  equal")
        for r in results:
            lines.append(f"{r['degree']:>3} {r['b2']:>6} {r['omega']:>6}  {'yes' if r['equal'] else 'NO'}")
    for k, v in extra.items():
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _text_cell(r: dict | None) -> str:
    if r is None:
        return ""
    if r["dim"] is None:
        return "cap"
    s = str(r["dim"])
    status = r.get("status")
    if status == "mismatch":
        s += f"!{r['reference']}"
    elif status == "beyond-paper":
        s += "*"
    elif not r["certified"]:
        s += "?"
    return s


RENDER = {"json": render_json, "csv": render_csv, "text": render_text}


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcsq", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def relation_args(p):
        p.add_argument("--n", type=int, required=True, help="number of generators")
        p.add_argument("--relation", default="random", help='relation text, or "random"')
        p.add_argument("--d", type=int, help="degree of a random relation")
        p.add_argument("--seed", type=int, default=0, help="seed for a random relation")
        p.add_argument("--max-degree", type=int, required=True)
        p.add_argument("--cap", type=int, help="override the default degree cap")
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("dims", help="dimensions of B_i[m]")
    relation_args(p)
    p.add_argument("--i", type=_index_list, default=[2], help="series indices, e.g. 2,3,4")
    p.add_argument("--mode", choices=("graded", "filtered"), default="graded")
    p.add_argument("--truncation-max", type=int, help="largest truncation level in filtered mode")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("compare", help="B_2 against Omega^1/dOmega^0")
    relation_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("table", help="recompute a reference table")
    p.add_argument("preset", choices=sorted(PRESETS))
    p.add_argument("--cap", type=int)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_table)
    return parser


def _cache_path(argv: list[str]) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = hashlib.sha256("\0".join(argv).encode()).hexdigest()[:32]
    return Path(root) / f"{key}.out"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    cached = _cache_path([a for a in argv if a not in ("-v", "--verbose")])
    if cached is not None and cached.exists():
        sys.stdout.write(cached.read_text())
        return 0
    try:
        config, results, extra = args.func(args)
    except (ParseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    out = RENDER[args.format](config, results, extra)
    if cached is not None:
        cached.parent.mkdir(parents=True, exist_ok=True)
        cached.write_text(out)
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
