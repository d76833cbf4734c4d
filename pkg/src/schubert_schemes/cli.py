"""Command-line interface: ``schubert-schemes {cells,scheme,verify,gwp,gaussian}``.

Exit status is 0 on success / PASS, 1 when a verification fails and 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .fields import FieldSpec, FiniteField
from .posets import Poset, antichain_json, parse_partition, parse_positions
from .schemes import (
    SchemeInstance,
    cyclic_scheme,
    intersection_csv,
    intersection_table,
    is_symmetric,
    one_class_scheme,
    valencies,
    verify_scheme,
)
from .schubert import SchubertCell, all_cells, cell_scheme, make_cell
from .verify import (
    FULL_COMPARISON_CAP,
    VerificationReport,
    gaussian_binomial,
    verify_cell,
    verify_gaussian_binomial,
)
from .wreath import GwpSpec, build_gwp, label_count

SCHEMA_VERSION = 1
JOBS_ENV = "SCHUBERT_SCHEMES_JOBS"


class ConfigError(Exception):
    pass


# -- argument handling ------------------------------------------------------


def _field(args) -> FiniteField:
    try:
        return FiniteField(FieldSpec.parse(args.q, args.modulus))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _selected_cells(args, field: FiniteField, m: int) -> list[SchubertCell]:
    try:
        if args.alpha is not None:
            return [make_cell(args.n, m, field, alpha=parse_positions(args.alpha))]
        if args.lam is not None:
            lam = parse_partition(args.lam)
            lam = lam + (0,) * (args.n - m - len(lam))
            return [make_cell(args.n, m, field, lam=lam)]
        return all_cells(args.n, m, field)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _ms(args) -> list[int]:
    if getattr(args, "all_m", False):
        return list(range(1, args.n))
    if args.m is None:
        raise ConfigError("--m is required (or --all-m)")
    return [args.m]


def _cap(args) -> int:
    return args.max_cell_size if args.max_cell_size is not None else FULL_COMPARISON_CAP


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2, sort_keys=True) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands ------------------------------------------------------------


def cmd_cells(args) -> int:
    field = _field(args)
    rows = []
    total = 0
    for m in _ms(args):
        for cell in _selected_cells(args, field, m):
            rows.append(
                {
                    "m": m,
                    "alpha": antichain_json(cell.alpha),
                    "lambda": list(cell.lam),
                    "free": cell.dimension,
                    "size": cell.size,
                    "relations": len(cell.relation_labels()),
                }
            )
            total += cell.size
    whole = args.alpha is None and args.lam is None
    totals = {"cells": len(rows), "points": total}
    if whole:
        totals["gaussian_binomial"] = sum(gaussian_binomial(args.n, m, field.q) for m in _ms(args))
    if args.format == "json":
        _emit(args, _dump({"n": args.n, "q": field.q, "cells": rows, "totals": totals}))
    elif args.format == "csv":
        table = [
            [r["m"], json.dumps(r["alpha"]), json.dumps(r["lambda"]), r["free"], r["size"], r["relations"], ""]
            for r in rows
        ]
        table.append(["total", "", "", "", total, "", totals.get("gaussian_binomial", "")])
        _emit(args, _csv(table, ["m", "alpha", "lambda", "free", "size", "relations", "gaussian_binomial"]))
    else:
        lines = [
            f"m={r['m']} alpha={r['alpha']} lambda={r['lambda']} |O|={r['size']} relations={r['relations']}"
            for r in rows
        ]
        tail = f"total {total}"
        if whole:
            tail += f" (gaussian binomial {totals['gaussian_binomial']})"
        _emit(args, "\n".join(lines + [tail]) + "\n")
    return 0


def _scheme_payload(S: SchemeInstance, label_json, cap_exhaustive: int, seed: int):
    rep = verify_scheme(S, bound=cap_exhaustive, rng=seed)
    payload = {
        "size": S.size,
        "labels": [label_json(lab) for lab in S.labels],
        "valencies": valencies(S),
        "symmetric": is_symmetric(S),
        "verdict": {"status": rep.status, "exhaustive": rep.exhaustive, "counterexample": rep.counterexample, "notes": rep.notes},
    }
    if rep.ok:
        payload["transpose"] = rep.transpose
        payload["intersection_numbers"] = intersection_table(rep.intersection_numbers)
    return payload, rep


def cmd_scheme(args) -> int:
    field = _field(args)
    m = _ms(args)[0]
    if args.alpha is None and args.lam is None:
        # default to the open cell, lambda = (m, ..., m)
        args.lam = ",".join([str(m)] * (args.n - m))
    cell = _selected_cells(args, field, m)[0]
    cap = _cap(args)
    if cell.size > cap and not args.allow_large:
        raise ConfigError(f"cell has {cell.size} points, above --max-cell-size {cap}")
    S = cell_scheme(cell, bound=max(cap, cell.size))
    payload, rep = _scheme_payload(S, antichain_json, 1024, args.seed)
    payload.update(n=cell.n, m=cell.m, q=field.q, alpha=antichain_json(cell.alpha), **{"lambda": list(cell.lam)})
    if args.format == "csv":
        if not rep.ok:
            raise ConfigError("not an association scheme; nothing to tabulate")
        _emit(args, intersection_csv(rep.intersection_numbers))
    else:
        _emit(args, _dump(payload))
    return 0 if rep.ok else 1


def _verify_one(job):
    cell, trials, seed, cap = job
    return verify_cell(cell, trials=trials, rng=seed, cap=cap).to_dict()


def _strip_timing(report: dict) -> dict:
    for check in report["checks"]:
        check.pop("seconds", None)
    return report


def cmd_verify(args) -> int:
    field = _field(args)
    cap = _cap(args)
    jobs_in = []
    for m in _ms(args):
        for cell in _selected_cells(args, field, m):
            if cell.size > cap and not args.allow_large:
                raise ConfigError(f"cell {list(cell.lam)} has {cell.size} points > {cap}; pass --allow-large for sampled checks")
            jobs_in.append((cell, args.trials, args.seed, cap))
    jobs = args.jobs if args.jobs is not None else int(os.environ.get(JOBS_ENV, "1"))
    if jobs > 1 and len(jobs_in) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_one, jobs_in))
    else:
        reports = [_verify_one(j) for j in jobs_in]
    for m in _ms(args):
        summary = VerificationReport({"n": args.n, "m": m, "q": field.q})
        summary.checks.append(verify_gaussian_binomial(args.n, m, field))
        reports.append(summary.to_dict())
    if not args.timings:
        reports = [_strip_timing(r) for r in reports]
    ok = all(r["status"] == "PASS" for r in reports)
    if args.format == "json":
        _emit(args, _dump({"status": "PASS" if ok else "FAIL", "reports": reports}))
    else:
        lines = []
        for r in reports:
            cfg = r["configuration"]
            where = f"lambda={cfg['lambda']}" if "lambda" in cfg else "grassmannian"
            for c in r["checks"]:
                lines.append(f"{c['status']} n={cfg['n']} m={cfg['m']} q={cfg['q']} {where} {c['name']}")
        lines.append("PASS" if ok else "FAIL")
        _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def _component(text: str) -> SchemeInstance:
    kind, _, size = text.partition(":")
    size = int(size)
    if kind == "one":
        return one_class_scheme(size)
    if kind == "cyclic":
        return cyclic_scheme(size)
    raise ConfigError(f"unknown component kind {kind!r}; use one:Q or cyclic:Q")


def cmd_gwp(args) -> int:
    try:
        with open(args.poset) as fh:
            poset = Poset.from_json(fh.read())
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise ConfigError(f"invalid poset file: {exc}") from exc
    if args.components:
        comps = [_component(t) for t in args.components.split(",")]
    else:
        try:
            comps = [one_class_scheme(int(t)) for t in args.sizes.split(",")]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if len(comps) == 1:
        comps = comps * len(poset)
    if len(comps) != len(poset):
        raise ConfigError(f"need {len(poset)} components, got {len(comps)}")
    spec = GwpSpec(poset, comps)
    cap = _cap(args)
    if spec.size > cap:
        raise ConfigError(f"product set has {spec.size} points, above --max-cell-size {cap}")
    S = build_gwp(spec, bound=cap)
    payload, rep = _scheme_payload(S, lambda lab: lab.to_json(), 1024, args.seed)
    payload["expected_label_count"] = label_count(spec)
    if args.format == "csv":
        if not rep.ok:
            raise ConfigError("not an association scheme; nothing to tabulate")
        _emit(args, intersection_csv(rep.intersection_numbers))
    else:
        _emit(args, _dump(payload))
    return 0 if rep.ok else 1


def cmd_gaussian(args) -> int:
    field = _field(args)
    rows, ok = [], True
    for m in _ms(args):
        check = verify_gaussian_binomial(args.n, m, field)
        ok &= check.ok
        rows.append({"m": m, "status": check.status, **check.detail})
    if args.format == "json":
        _emit(args, _dump({"n": args.n, "q": field.q, "rows": rows}))
    elif args.format == "csv":
        _emit(args, _csv([[r["m"], r["sum"], r["gaussian_binomial"], r["cells"], r["status"]] for r in rows],
                         ["m", "sum", "gaussian_binomial", "cells", "status"]))
    else:
        _emit(args, "".join(f"{r['status']} m={r['m']} sum={r['sum']} [n m]_q={r['gaussian_binomial']}\n" for r in rows))
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schubert-schemes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cell=True, fmt=("json", "csv", "text")):
        p.add_argument("--format", choices=fmt, default="text" if "text" in fmt else "json")
        p.add_argument("--output", help="write to this path instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-cell-size", type=int, default=None)
        p.add_argument("--allow-large", action="store_true", help="accept sampled checks above the size cap")
        if cell:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--m", type=int)
            p.add_argument("--q", required=True, help="P (prime), P^K, or a prime power")
            p.add_argument("--modulus", help="c0,c1,...,ck for P^K")
            sel = p.add_mutually_exclusive_group()
            sel.add_argument("--alpha", help='pivot set, e.g. "2,4;4,3;5,2;7,1"')
            sel.add_argument("--lambda", dest="lam", help="partition, e.g. 4,3,1")

    p = sub.add_parser("cells", help="list Schubert cells")
    common(p)
    p.add_argument("--all-m", action="store_true")
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("scheme", help="parameters of one cell's scheme")
    common(p, fmt=("json", "csv"))
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("verify", help="run the verification suite")
    common(p)
    p.add_argument("--all-m", action="store_true")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gwp", help="build and verify a generalized wreath product")
    common(p, cell=False, fmt=("json", "csv"))
    p.add_argument("--poset", required=True, help="poset JSON file: elements + covers")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sizes", help="one-class component sizes, one per element (or a single size)")
    g.add_argument("--components", help="per element one:Q or cyclic:Q, comma separated")
    p.set_defaults(func=cmd_gwp)

    p = sub.add_parser("gaussian", help="cell sizes versus the Gaussian binomial")
    common(p)
    p.add_argument("--all-m", action="store_true")
    p.set_defaults(func=cmd_gaussian)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
