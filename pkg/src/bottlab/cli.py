"""``bott-lab`` command line.

Exit status: 0 success, 1 a verification check failed, 2 invalid list,
3 unsupported request, 4 height cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import List, Optional

from . import cohom, ktheory, kotheory, steenrod, structures
from .kotheory import UnsupportedFamilyError
from .towers import (
    BottList,
    HeightCapError,
    ListShapeError,
    Omniorientation,
    check_cap,
    family_list,
)

FAMILY_CHOICES = ["cp1-power", "bounded-flag", "A-family", "big-entry"]


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("tower")
    src.add_argument("--list", dest="list_text", help='stages as "a12;a13,a23;..." or a JSON array')
    src.add_argument("--file", help="file holding the list in either format")
    src.add_argument("--family", choices=FAMILY_CHOICES)
    src.add_argument("--height", type=int, help="height for --family (or to force height 0/1)")
    src.add_argument("--seed", type=int, default=0, help="seed for big-entry lists")
    common.add_argument("--omni", help='omniorientation "<delta bits>;<epsilon bits>"')
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--jobs", type=int, help="worker processes (default: available cores)")
    common.add_argument("--cap", type=int, help="height cap (default 16, or $BOTTLAB_CAP)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="bott-lab", description="Exact invariants of Bott towers.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="list, parity, exactness flags")
    sub.add_parser("cohomology", parents=[common], help="integral cohomology relations")
    sub.add_parser("ktheory", parents=[common], help="K-theory relations and difference element")
    sub.add_parser("bb", parents=[common], help="KO summand counts from Sq^2")
    ko = sub.add_parser("ko", parents=[common], help="KO^-2 basis and relations")
    ko.add_argument("--unreduced", action="store_true")
    sub.add_parser("chern", parents=[common], help="Chern classes and numbers of one structure")
    sub.add_parser("enumerate", parents=[common], help="classify all omniorientations")
    v = sub.add_parser("verify", parents=[common], help="compare with closed forms")
    v.add_argument("--max-height", type=int, default=4)
    v.add_argument("--samples", type=int, default=1, help="random lists per height (big-entry)")
    return p


def _load_list(args) -> BottList:
    given = [x for x in (args.list_text, args.file, args.family) if x is not None]
    if len(given) != 1:
        raise ListShapeError("give exactly one of --list, --file, --family")
    if args.family:
        if args.height is None:
            raise ListShapeError("--family needs --height")
        check_cap(args.height, args.cap)
        return family_list(args.family, args.height, args.seed)
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
    else:
        text = args.list_text
    lst = BottList.parse(text, args.height)
    check_cap(lst.height, args.cap)
    return lst


def _omni(args, k: int) -> Omniorientation:
    if not args.omni:
        return Omniorientation.canonical(k)
    try:
        o = Omniorientation.parse(args.omni)
    except ValueError as exc:
        raise ListShapeError(str(exc)) from None
    if o.k != k:
        raise ListShapeError(f"omniorientation has length {o.k}, tower height is {k}")
    return o


def _cls_text(cls) -> str:
    return str(cls)


def cmd_info(args) -> dict:
    lst = _load_list(args)
    return {
        "k": lst.height,
        "list": lst.to_text(),
        "parity": lst.parity,
        "euler_characteristic": cohom.euler_characteristic(lst),
        "o_exact": structures.o_is_exact(lst),
        "ko_supported": lst.is_totally_even or lst.is_terminally_odd,
    }


def cmd_cohomology(args) -> dict:
    lst = _load_list(args)
    alg = cohom.h_algebra(lst)
    return {
        "k": lst.height,
        "list": lst.to_text(),
        "relations": {f"x{j}^2": _cls_text(r * alg.gen(j)) for j, r in enumerate(alg.relations, 1)},
        "rank": 1 << lst.height,
    }


def cmd_ktheory(args) -> dict:
    lst = _load_list(args)
    alg = ktheory.k_algebra(lst)
    out = {
        "k": lst.height,
        "list": lst.to_text(),
        "relations": {f"g{j}^2": _cls_text(r * alg.gen(j)) for j, r in enumerate(alg.relations, 1)},
    }
    omni = _omni(args, lst.height)
    out["omni"] = omni.to_text()
    out["difference_element"] = _cls_text(ktheory.diff_element(lst, omni))
    return out


def cmd_bb(args) -> dict:
    lst = _load_list(args)
    return steenrod.bb_profile(lst).to_json()


def cmd_ko(args) -> dict:
    lst = _load_list(args)
    fam = kotheory.family(lst)
    reduced = not args.unreduced
    basis = kotheory.ko_minus2_basis(lst, reduced)
    out = {
        "k": lst.height,
        "list": lst.to_text(),
        "family": fam,
        "reduced": reduced,
        "ko_minus2": str(kotheory.ko_minus2_group(lst, reduced)),
        "basis": [{"element": str(b.element), "order": b.order} for b in basis],
    }
    if fam == "totally_even":
        rels = {}
        for j in range(1, lst.height + 1):
            rel = kotheory.te_relation(lst, j)
            rels[f"U{j}"] = {"value": str(rel.value), "torsion_determined": rel.determined}
        out["relations"] = rels
    return out


def cmd_chern(args) -> dict:
    lst = _load_list(args)
    omni = _omni(args, lst.height)
    rec = structures.make_record(lst, omni)
    return {
        "k": lst.height,
        "list": lst.to_text(),
        "omni": omni.to_text(),
        "total_chern": _cls_text(rec.total_chern),
        "chern_numbers": rec.chern_numbers,
        "almost_complex": rec.almost_complex,
        "bounds": rec.bounds,
    }


def cmd_enumerate(args) -> structures.EnumerationReport:
    lst = _load_list(args)
    return structures.enumerate_structures(lst, jobs=args.jobs, cap=args.cap)


def cmd_verify(args) -> List[structures.Check]:
    if args.family:
        check_cap(args.max_height, args.cap)
        return structures.verify_paper(
            args.family, args.max_height, seed=args.seed, jobs=args.jobs, samples=args.samples
        )
    lst = _load_list(args)
    return structures.verify_paper("custom", lst.height, lst=lst, jobs=args.jobs)


COMMANDS = {
    "info": cmd_info,
    "cohomology": cmd_cohomology,
    "ktheory": cmd_ktheory,
    "bb": cmd_bb,
    "ko": cmd_ko,
    "chern": cmd_chern,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


# rendering


def _csv(rows: List[List]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _render_report(rep: structures.EnumerationReport, fmt: str) -> str:
    data = rep.to_json()
    if fmt == "json":
        return json.dumps(data, indent=2)
    if fmt == "csv":
        keys = [cohom.partition_key(p) for p in cohom.partitions(rep.k)]
        rows = [["delta", "epsilon", *keys, "bounds"]]
        for c in data["classes"]:
            rows.append(
                ["".join(map(str, c["delta"])), "".join(map(str, c["epsilon"]))]
                + [c["chern_numbers"][key] for key in keys]
                + [int(c["bounds"])]
            )
        return _csv(rows).rstrip("\n")
    exact = "" if rep.o_exact else " (lower bound)"
    return "\n".join(
        [
            f"list {rep.lst.to_text() or '(none)'}  k={rep.k}",
            f"distinct structures: {rep.o_count}{exact}",
            f"almost complex: {rep.ac_count}",
            f"bounding: {rep.b_count}",
        ]
    )


def _render_checks(checks: List[structures.Check], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([c.to_json() for c in checks], indent=2)
    if fmt == "csv":
        rows = [["claim", "k", "list", "expected", "computed", "passed"]]
        rows += [[c.claim, c.k, c.list_text, c.expected, c.computed, int(c.passed)] for c in checks]
        return _csv(rows).rstrip("\n")
    lines = []
    for c in checks:
        tag = "PASS" if c.passed else "FAIL"
        lines.append(f"{tag}  k={c.k}  {c.claim}: expected {c.expected}, got {c.computed}")
    n = sum(c.passed for c in checks)
    lines.append(f"{n}/{len(checks)} checks passed")
    return "\n".join(lines)


def _render_dict(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2)
    rows = []
    for key, val in data.items():
        if isinstance(val, dict):
            for k2, v2 in val.items():
                rows.append([f"{key}.{k2}", v2 if not isinstance(v2, dict) else json.dumps(v2)])
        elif isinstance(val, list):
            rows.append([key, json.dumps(val)])
        else:
            rows.append([key, val])
    if fmt == "csv":
        return _csv([["key", "value"]] + rows).rstrip("\n")
    return "\n".join(f"{k}: {v}" for k, v in rows)


def render(result, fmt: str) -> str:
    if isinstance(result, structures.EnumerationReport):
        return _render_report(result, fmt)
    if isinstance(result, list):
        return _render_checks(result, fmt)
    return _render_dict(result, fmt)


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    if args.jobs is None:
        args.jobs = structures.default_jobs()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        result = COMMANDS[args.command](args)
    except HeightCapError as exc:
        print(f"bott-lab: {exc}", file=sys.stderr)
        return 4
    except ListShapeError as exc:
        print(f"bott-lab: invalid list: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedFamilyError, ValueError) as exc:
        print(f"bott-lab: unsupported: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"bott-lab: {exc}", file=sys.stderr)
        return 2
    print(render(result, args.format))
    if isinstance(result, list) and not all(c.passed for c in result):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
