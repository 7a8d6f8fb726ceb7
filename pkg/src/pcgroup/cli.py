"""Command-line front end.

Exit codes: 0 success, 1 a checked claim failed, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import analysis
from .analysis import CapExceeded
from .automorphism import (
    DEFAULT_AUT_CAP,
    induce,
    is_automorphism,
    is_class_preserving,
    is_inner,
    out_c,
)
from .claims import drop_relation, run_claims
from .consistency import check_consistency
from .families import FamilySpec, build_family, eps_str, parse_eps, theta
from .pc import PresentationError, read_presentation, write_presentation
from .quadform import classify_epsilons

OK, CLAIM_FAILED, USAGE, IO_ERROR = 0, 1, 2, 3

SURVEY_COLUMNS = ["file", "|G|", "class", "|Aut|", "|Aut_c|", "|Inn|", "|Out_c|"]


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        return read_presentation(path)
    except OSError as exc:
        raise IOError(str(exc)) from exc
    except (PresentationError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(args, result: dict, text: str) -> None:
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        print(text)


# -- commands ---------------------------------------------------------------------------


def cmd_family(args) -> int:
    pres = build_family(FamilySpec(args.n, parse_eps(args.eps)))
    if args.emit:
        write_presentation(pres, args.emit)
    else:
        print(json.dumps(pres.to_document(), indent=1))
    return OK


def cmd_check_consistency(args) -> int:
    pres = _load(args.presentation)
    try:
        rep = check_consistency(pres, args.class_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = {
        "consistent": rep.consistent,
        "triples_checked": rep.triples_checked,
        "failure_count": rep.failure_count,
        "failures": [
            {"triple": t.describe(pres), "left": pres.format(a), "right": pres.format(b)}
            for t, a, b in rep.failures
        ],
    }
    lines = [f"consistent: {rep.consistent}", f"triples checked: {rep.triples_checked}"]
    for f in result["failures"]:
        lines.append(f"  FAIL {f['triple']}: {f['left']} != {f['right']}")
    _emit(args, result, "\n".join(lines))
    return OK if rep.consistent else CLAIM_FAILED


def analyze_result(pres, cap=None) -> dict:
    s = analysis.analyze(pres, cap)
    return {
        "order": s.order,
        "class": s.nilpotency_class,
        "coclass": s.coclass,
        "center": [pres.format(w) for w in analysis.center(pres, cap)],
        "class_count": s.class_count,
        "series_orders": s.series_orders,
    }


def cmd_analyze(args) -> int:
    pres = _load(args.presentation)
    if pres.prime == 2 and not check_consistency(pres).consistent:
        raise UsageError(f"{args.presentation}: presentation is inconsistent")
    r = analyze_result(pres, args.cap)
    text = "\n".join([
        f"order: {r['order']}",
        f"class: {r['class']}",
        f"coclass: {r['coclass']}",
        f"center: {{{', '.join(r['center'])}}}",
        f"conjugacy classes: {r['class_count']}",
        f"lower central series orders: {' '.join(map(str, r['series_orders']))}",
    ])
    _emit(args, r, text)
    return OK


def cmd_theta_check(args) -> int:
    spec = FamilySpec(args.n, parse_eps(args.eps))
    pres = build_family(spec)
    em = induce(pres, theta(spec), args.cap)
    inner = is_inner(pres, em)
    preserving, moved = is_class_preserving(pres, em)
    r = {
        "n": spec.n,
        "eps": eps_str(spec.epsilon),
        "homomorphism": True,
        "automorphism": is_automorphism(pres, em),
        "inner_witness": None if inner is None else pres.format(inner),
        "class_preserving": preserving,
        "moved_class": None if moved is None else pres.format(moved),
    }
    passed = r["automorphism"] and inner is None and preserving
    text = "\n".join([
        f"H_{spec.n}^{eps_str(spec.epsilon)}: theta = (x_4 -> x_4z)",
        "homomorphism: True",
        f"automorphism: {r['automorphism']}",
        f"inner: {'no' if inner is None else 'yes, by ' + r['inner_witness']}",
        f"class-preserving: {preserving}",
        "PASS" if passed else "FAIL",
    ])
    _emit(args, r, text)
    return OK if passed else CLAIM_FAILED


def _outc_row(pres, cap) -> dict:
    res = out_c(pres, cap)
    return {
        "|G|": pres.prime**pres.ngens,
        "class": analysis.nilpotency_class(pres),
        "|Aut|": res.aut_order,
        "|Aut_c|": res.aut_c_order,
        "|Inn|": res.inn_order,
        "|Out_c|": res.order,
        "representatives": [
            [pres.format(w) for w in rep.group.words(rep.key)] for rep in res.representatives
        ],
    }


def cmd_outc(args) -> int:
    pres = _load(args.presentation)
    cap = args.cap or DEFAULT_AUT_CAP
    r = _outc_row(pres, cap)
    lines = [f"{k}: {r[k]}" for k in SURVEY_COLUMNS[1:]]
    lines.append("coset representatives (images of the minimal generators):")
    lines += ["  " + ", ".join(imgs) for imgs in r["representatives"]]
    _emit(args, r, "\n".join(lines))
    return OK


def cmd_quadclass(args) -> int:
    cls = classify_epsilons()
    r = {
        "classes": [[eps_str(e) for e in c] for c in cls.classes],
        "sizes": cls.sizes,
        "witnesses": {
            eps_str(e): {
                "from": eps_str(src),
                "g": ["".join(map(str, row)) for row in w.g],
                "h": ["".join(map(str, row)) for row in w.h],
            }
            for e, (src, w) in sorted(cls.witnesses.items())
        },
    }
    lines = [f"{len(cls.classes)} classes"]
    for c, size in zip(r["classes"], r["sizes"]):
        lines.append(f"  [{size}] " + " ".join(c))
    for e, w in r["witnesses"].items():
        lines.append(f"  {w['from']} -> {e}: g={' '.join(w['g'])} h={' '.join(w['h'])}")
    _emit(args, r, "\n".join(lines))
    return OK


def survey_row(path: str, cap: int) -> dict:
    row = {"file": Path(path).name, "status": "OK"}
    try:
        pres = read_presentation(path)
    except (OSError, PresentationError, json.JSONDecodeError) as exc:
        row.update(status="ERROR", reason=str(exc))
        return row
    size = pres.prime**pres.ngens
    row["|G|"] = size
    if size > cap:
        row.update(status="SKIPPED", reason=f"order {size} exceeds cap {cap}")
        return row
    if pres.prime == 2 and not check_consistency(pres).consistent:
        row.update(status="SKIPPED", reason="inconsistent presentation")
        return row
    try:
        r = _outc_row(pres, cap)
    except ValueError as exc:
        row.update(status="SKIPPED", reason=str(exc))
        return row
    r.pop("representatives")
    row.update(r)
    return row


def _parallel_map(fn, items, threads: int):
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, *zip(*items)))
    return [fn(*it) for it in items]


def render_survey(rows: list[dict]) -> str:
    table = [SURVEY_COLUMNS]
    for row in rows:
        if row["status"] == "OK":
            table.append([str(row[c]) for c in SURVEY_COLUMNS])
        else:
            table.append([row["file"], str(row.get("|G|", "-")), f"{row['status']}: {row['reason']}"])
    full = [r for r in table if len(r) == len(SURVEY_COLUMNS)]
    widths = [max(len(r[i]) for r in full) for i in range(len(SURVEY_COLUMNS))]
    out = []
    for r in table:
        out.append("  ".join(cell.ljust(widths[i]) if i < len(r) - 1 else cell for i, cell in enumerate(r)))
    return "\n".join(out)


def cmd_survey(args) -> int:
    folder = Path(args.directory)
    if not folder.is_dir():
        raise IOError(f"{folder} is not a directory")
    files = sorted(str(p) for p in folder.glob("*.json"))
    cap = args.cap or DEFAULT_AUT_CAP
    rows = _parallel_map(survey_row, [(f, cap) for f in files], args.threads)
    body = json.dumps({"columns": SURVEY_COLUMNS, "rows": rows}, indent=2) if args.json else render_survey(rows)
    if args.report:
        Path(args.report).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)
    return OK


def cmd_reproduce(args) -> int:
    corrupt = drop_relation(args.corrupt_relation) if args.corrupt_relation else None
    claims = run_claims(args.n_max, corrupt=corrupt, outc=not args.skip_outc)
    r = {
        "n_max": args.n_max,
        "passed": all(c.passed for c in claims),
        "claims": [
            {"claim": c.name, "passed": c.passed, "checked": c.checked,
             "details": c.details, "values": c.values}
            for c in claims
        ],
    }
    lines = []
    for c in claims:
        extra = f"  {c.values}" if c.values else ""
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.checked} checked]{extra}")
        lines += [f"      {d}" for d in c.details]
    lines.append("ALL PASS" if r["passed"] else "SOME CLAIMS FAILED")
    _emit(args, r, "\n".join(lines))
    return OK if r["passed"] else CLAIM_FAILED


# -- parser -------------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--cap", type=_positive, default=argparse.SUPPRESS,
                        help="enumeration cap (automorphism search cap for outc/survey)")
    common.add_argument("--threads", type=_positive, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="pcgroup", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", parents=[common], help="emit the presentation of H_n^eps")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--eps", required=True, help="four bits, e.g. 0110")
    p.add_argument("--emit", help="write the presentation document here")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("check-consistency", parents=[common])
    p.add_argument("presentation")
    p.add_argument("--class", dest="class_bound", type=_positive, default=None)
    p.set_defaults(func=cmd_check_consistency)

    p = sub.add_parser("analyze", parents=[common])
    p.add_argument("presentation")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("theta-check", parents=[common])
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--eps", required=True)
    p.set_defaults(func=cmd_theta_check)

    p = sub.add_parser("outc", parents=[common])
    p.add_argument("presentation")
    p.set_defaults(func=cmd_outc)

    p = sub.add_parser("quadclass", parents=[common])
    p.set_defaults(func=cmd_quadclass)

    p = sub.add_parser("survey", parents=[common])
    p.add_argument("directory")
    p.add_argument("--report")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("reproduce", parents=[common])
    p.add_argument("--n-max", type=_positive, default=6)
    p.add_argument("--skip-outc", action="store_true")
    p.add_argument("--corrupt-relation", metavar="KIND:INDICES",
                   help="test hook: drop a relation (e.g. conj:1,6 or power:6) from every family member")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("cap", None), ("threads", 1)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (UsageError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
