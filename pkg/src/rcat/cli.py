"""Command-line front end: one verb per run, a deterministic report out.

Verbs either check a loaded category against a family of laws or build
something from it (split, total subcategory, extensive completion,
matrix forms, decisions, limits, lattices).  Output is byte-identical
for identical input and flags; timing appears only behind --timing.
Exit status: 0 all checks passed, 1 a law failed or a size cap
truncated the run, 2 malformed input.

The only environment knob is RCAT_CAP, which overrides the default
exhaustive-verification cap of 10,000 morphisms.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import io as rio
from .coproducts import (
    discover_coproducts,
    find_decision,
    find_restriction_zero,
    is_extensive_map,
    matrix_decompose,
    matrix_multiply,
    matrix_recompose,
    check_restriction_coproducts,
    check_restriction_zero,
)
from .copycat import extensive_completion, finset_distributive
from .core import (
    FinCategory,
    LawReport,
    RestrictionCategory,
    check_category_laws,
    check_restriction_axioms,
)
from .errors import CapExceeded, RcatError
from .parfin import DEFAULT_CAP
from .products import (
    check_restriction_products,
    discover_restriction_products,
    idempotent_lattice,
    restriction_limit_of_diagram,
)
from .splitting import (
    check_extensive_category,
    is_extensive_rcat,
    split_idempotents,
    total_subcategory,
)

__all__ = ["main", "run"]

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_MALFORMED = 2


def _cap() -> int:
    raw = os.environ.get("RCAT_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
        if cap <= 0:
            raise ValueError
        return cap
    except ValueError:
        raise RcatError(f"RCAT_CAP: expected a positive integer, got {raw!r}") from None


class Report:
    """Accumulates what one verb did; rendered once at the end."""

    def __init__(self, command: str, argv: list[str]):
        self.command = command
        self.argv = list(argv)
        self.checked = 0
        self.truncated = False
        self.violations: list[dict] = []
        self.result: dict = {}
        self.artifact: str | None = None

    def merge(self, rep: LawReport, cat) -> None:
        self.checked += rep.checked
        self.truncated = self.truncated or rep.truncated
        for v in rep.violations:
            self.violations.append(
                {
                    "law": v.law,
                    "witnesses": [cat.mor_names[w] for w in v.witnesses],
                    "detail": v.detail,
                }
            )

    @property
    def status(self) -> str:
        if self.violations:
            return "fail"
        if self.truncated:
            return "truncated"
        return "pass"

    def render(self, *, as_json: bool, timing_ms: float | None) -> str:
        if as_json:
            doc = {
                "command": self.command,
                "argv": self.argv,
                "status": self.status,
                "checked": self.checked,
                "violations": self.violations,
                "result": self.result,
                "artifact": self.artifact,
            }
            if timing_ms is not None:
                doc["timing_ms"] = round(timing_ms, 3)
            return json.dumps(doc, **rio.JSON_KW) + "\n"
        lines = [f"status: {self.status}", f"checked: {self.checked}"]
        for v in self.violations:
            w = ", ".join(v["witnesses"])
            suffix = f" ({v['detail']})" if v["detail"] else ""
            lines.append(f"violation: {v['law']} [{w}]{suffix}")
        for k in sorted(self.result):
            lines.append(f"{k}: {_flat(self.result[k])}")
        if self.artifact is not None:
            lines.append(f"artifact: {self.artifact}")
        if timing_ms is not None:
            lines.append(f"timing_ms: {round(timing_ms, 3)}")
        return "\n".join(lines) + "\n"


def _flat(x) -> str:
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_flat(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_flat(v)}" for k, v in sorted(x.items())) + "}"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _load_restriction(path) -> RestrictionCategory:
    cat = rio.read_category(path)
    if not isinstance(cat, RestrictionCategory):
        raise RcatError(f"{path}: the document has no restriction map")
    return cat


def _resolve_mor(cat, name: str) -> int:
    return cat.mor_id(name)


def _parse_blocks(cat, text: str) -> tuple[int, ...]:
    parts = text.split("+")
    if len(parts) < 2:
        raise RcatError(f"expected object names joined by '+', got {text!r}")
    return tuple(cat.obj_id(p) for p in parts)


def _structures(rc):
    cp = discover_coproducts(rc)
    zero = find_restriction_zero(rc)
    return cp, zero


def _emit_category(report: Report, cat, out_path, *, as_json: bool) -> str | None:
    """Constructions either land in --out (artifact path recorded) or are
    carried inline so stdout stays a single document."""
    if out_path is not None:
        rio.save_category(cat, out_path)
        report.artifact = str(out_path)
        return None
    if as_json:
        report.result["category"] = rio.dump_category(cat)
        return None
    return json.dumps(rio.dump_category(cat), **rio.JSON_KW) + "\n"


# -- verbs -------------------------------------------------------------------


def _cmd_check(args, report: Report) -> str | None:
    cat = rio.read_category(args.file)
    cap = _cap()
    if cat.n_morphisms > cap:
        report.truncated = True
        report.result["skipped"] = f"{cat.n_morphisms} morphisms over cap {cap}"
        return None
    report.merge(check_category_laws(cat, all_violations=args.all_violations), cat)
    if isinstance(cat, RestrictionCategory):
        report.merge(
            check_restriction_axioms(cat, all_violations=args.all_violations), cat
        )
    elif args.coproducts or args.zero or args.products:
        raise RcatError("structure checks need a restriction map in the document")
    if args.coproducts or args.zero:
        cp, zero = _structures(cat)
        if args.coproducts:
            report.merge(
                check_restriction_coproducts(cat, cp, all_violations=args.all_violations),
                cat,
            )
        if args.zero:
            report.merge(
                check_restriction_zero(cat, cp, all_violations=args.all_violations), cat
            )
    if args.products:
        rp = discover_restriction_products(cat)
        report.merge(
            check_restriction_products(cat, rp, all_violations=args.all_violations), cat
        )
    return None


def _cmd_decide(args, report: Report) -> str | None:
    rc = _load_restriction(args.file)
    f = _resolve_mor(rc, args.morphism)
    blocks = _parse_blocks(rc, args.coproduct)
    cp, zero = _structures(rc)
    d = find_decision(rc, cp, zero, f, blocks)
    if d is None:
        report.violations.append(
            {"law": "decision-missing", "witnesses": [args.morphism], "detail": ""}
        )
        return None
    report.checked += 1
    report.result["decision"] = rc.mor_names[d.h]
    report.result["unique"] = d.unique
    return None


def _cmd_matrix(args, report: Report) -> str | None:
    rc = _load_restriction(args.file)
    cp, zero = _structures(rc)

    def read_matrix(path):
        with open(path, encoding="utf-8") as fh:
            return rio.parse_matrix_text(fh.read(), rc)

    if args.action == "decompose":
        f = _resolve_mor(rc, args.morphism)
        rows = _parse_blocks(rc, args.rows)
        cols = _parse_blocks(rc, args.cols)
        m = matrix_decompose(rc, cp, zero, f, rows, cols)
        report.checked += 1
        text = rio.dump_matrix_text(m, rc)
    elif args.action == "recompose":
        m = read_matrix(args.matrix)
        g = matrix_recompose(rc, cp, zero, m)
        report.checked += 1
        report.result["morphism"] = rc.mor_names[g]
        return None
    else:
        g = read_matrix(args.left)
        f = read_matrix(args.right)
        m = matrix_multiply(rc, cp, zero, g, f)
        report.checked += 1
        text = rio.dump_matrix_text(m, rc)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.artifact = str(args.out)
        return None
    if args.json:
        report.result["matrix"] = text
        return None
    return text


def _cmd_split(args, report: Report) -> str | None:
    rc = _load_restriction(args.file)
    sm = split_idempotents(rc, cap=_cap())
    report.checked += 1
    report.result["objects"] = sm.kr.n_objects
    report.result["morphisms"] = sm.kr.n_morphisms
    return _emit_category(report, sm.kr, args.out, as_json=args.json)


def _cmd_total(args, report: Report) -> str | None:
    rc = _load_restriction(args.file)
    tot, _omap, _mmap = total_subcategory(rc)
    report.checked += 1
    report.result["objects"] = tot.n_objects
    report.result["morphisms"] = tot.n_morphisms
    return _emit_category(report, tot, args.out, as_json=args.json)


def _cmd_complete(args, report: Report) -> str | None:
    if (args.finset is None) == (args.file is None):
        raise RcatError("complete: pass exactly one of --finset N or --file d.json")
    if args.finset is not None:
        if args.finset < 0:
            raise RcatError("complete: --finset must be non-negative")
        data = finset_distributive(args.finset)
    else:
        with open(args.file, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise RcatError(f"{args.file}: invalid JSON at line {exc.lineno}") from None
        data = rio.load_distributive(doc)
    comp = extensive_completion(data, cap=_cap())
    for rep in comp.reports.values():
        report.merge(rep, comp.total)
    report.result["objects"] = comp.total.n_objects
    report.result["morphisms"] = comp.total.n_morphisms
    return _emit_category(report, comp.total, args.out, as_json=args.json)


def _cmd_limits(args, report: Report) -> str | None:
    rc = _load_restriction(args.file)
    with open(args.diagram, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RcatError(f"{args.diagram}: invalid JSON at line {exc.lineno}") from None
    diag = rio.parse_diagram(doc, rc)
    lim = restriction_limit_of_diagram(rc, diag)
    report.merge(lim.report, rc)
    report.result["apex"] = rc.objects[lim.apex]
    report.result["legs"] = [rc.mor_names[m] for m in lim.legs]
    return None


def _cmd_lattice(args, report: Report) -> str | None:
    rc = _load_restriction(args.file)
    a = rc.obj_id(args.object)
    lat = idempotent_lattice(rc, a)
    report.merge(lat.report, rc)
    names = [rc.mor_names[e] for e in lat.elements]
    report.result["elements"] = names
    report.result["bottom"] = rc.mor_names[lat.bottom]
    report.result["top"] = rc.mor_names[lat.top]
    if args.tables:
        report.result["joins"] = {
            f"{rc.mor_names[x]} v {rc.mor_names[y]}": rc.mor_names[j]
            for (x, y), j in sorted(lat.joins.items())
        }
        report.result["meets"] = {
            f"{rc.mor_names[x]} ^ {rc.mor_names[y]}": rc.mor_names[m]
            for (x, y), m in sorted(lat.meets.items())
        }
    return None


def _cmd_extensive(args, report: Report) -> str | None:
    cat = rio.read_category(args.file)
    if args.morphism is not None:
        if not isinstance(cat, RestrictionCategory):
            raise RcatError("extensive --morphism needs a restriction map in the document")
        cp, zero = _structures(cat)
        f = _resolve_mor(cat, args.morphism)
        ok = is_extensive_map(cat, cp, zero, f)
        report.checked += 1
        report.result["morphism"] = args.morphism
        report.result["extensive"] = ok
        if not ok:
            report.violations.append(
                {"law": "decision-missing", "witnesses": [args.morphism], "detail": ""}
            )
        return None
    trivial = isinstance(cat, RestrictionCategory) and all(
        cat.restriction(f) == cat.id_of(cat.dom(f)) for f in range(cat.n_morphisms)
    )
    if isinstance(cat, RestrictionCategory) and not trivial:
        cp, zero = _structures(cat)
        report.result["notion"] = "decisions"
        report.merge(
            is_extensive_rcat(cat, cp, zero, all_violations=args.all_violations), cat
        )
        return None
    # with no partiality in play, extensivity is the plain pullback notion
    cp = discover_coproducts(cat)
    report.result["notion"] = "pullbacks"
    report.merge(
        check_extensive_category(cat, cp, all_violations=args.all_violations), cat
    )
    return None


_VERBS = {
    "check": _cmd_check,
    "decide": _cmd_decide,
    "matrix": _cmd_matrix,
    "split": _cmd_split,
    "total": _cmd_total,
    "complete": _cmd_complete,
    "limits": _cmd_limits,
    "lattice": _cmd_lattice,
    "extensive": _cmd_extensive,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as one JSON document")
    common.add_argument("--timing", action="store_true", help="include elapsed milliseconds")
    common.add_argument(
        "--all-violations",
        action="store_true",
        help="report every violation instead of the first per law",
    )

    parser = argparse.ArgumentParser(
        prog="rcat",
        description="check and build finite restriction categories from table files",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="category and restriction laws")
    p.add_argument("file")
    p.add_argument("--coproducts", action="store_true", help="also check chosen coproducts")
    p.add_argument("--zero", action="store_true", help="also check the zero maps")
    p.add_argument("--products", action="store_true", help="also check discovered restriction products")

    p = sub.add_parser("decide", parents=[common], help="decision of a map into a sum")
    p.add_argument("file")
    p.add_argument("--morphism", required=True)
    p.add_argument("--coproduct", required=True, metavar="A+B")

    p = sub.add_parser("matrix", parents=[common], help="matrix forms over chosen sums")
    p.add_argument("action", choices=("decompose", "recompose", "multiply"))
    p.add_argument("file")
    p.add_argument("--morphism")
    p.add_argument("--rows", metavar="A+B")
    p.add_argument("--cols", metavar="C+D")
    p.add_argument("--matrix", help="matrix text file (recompose)")
    p.add_argument("--left", help="matrix text file (multiply)")
    p.add_argument("--right", help="matrix text file (multiply)")
    p.add_argument("--out")

    p = sub.add_parser("split", parents=[common], help="split the restriction idempotents")
    p.add_argument("file")
    p.add_argument("--out")

    p = sub.add_parser("total", parents=[common], help="the total-map subcategory")
    p.add_argument("file")
    p.add_argument("--out")

    p = sub.add_parser("complete", parents=[common], help="extensive completion")
    p.add_argument("--finset", type=int, metavar="N")
    p.add_argument("--file", metavar="d.json")
    p.add_argument("--out")

    p = sub.add_parser("limits", parents=[common], help="restriction limit of a diagram")
    p.add_argument("file")
    p.add_argument("--diagram", required=True, metavar="d.json")

    p = sub.add_parser("lattice", parents=[common], help="restriction idempotents under leq")
    p.add_argument("file")
    p.add_argument("object")
    p.add_argument("--tables", action="store_true", help="include join and meet tables")

    p = sub.add_parser("extensive", parents=[common], help="decisions for a map or the category")
    p.add_argument("file")
    p.add_argument("--morphism")

    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    required = {
        ("matrix", "decompose"): ("morphism", "rows", "cols"),
        ("matrix", "recompose"): ("matrix",),
        ("matrix", "multiply"): ("left", "right"),
    }
    if args.command == "matrix":
        for field in required[(args.command, args.action)]:
            if getattr(args, field) is None:
                parser.error(f"matrix {args.action}: --{field} is required")

    report = Report(args.command, argv)
    t0 = time.perf_counter()
    try:
        extra = _VERBS[args.command](args, report)
    except CapExceeded as exc:
        report.truncated = True
        report.result["skipped"] = str(exc)
        extra = None
    except RcatError as exc:
        msg = str(exc)
        if args.json:
            doc = {
                "command": args.command,
                "argv": list(argv),
                "status": "error",
                "error": msg,
            }
            sys.stdout.write(json.dumps(doc, **rio.JSON_KW) + "\n")
        else:
            sys.stderr.write(f"rcat: error: {msg}\n")
        return EXIT_MALFORMED
    except OSError as exc:
        sys.stderr.write(f"rcat: error: {exc}\n")
        return EXIT_MALFORMED
    elapsed = (time.perf_counter() - t0) * 1000.0

    timing = elapsed if args.timing else None
    sys.stdout.write(report.render(as_json=args.json, timing_ms=timing))
    if extra is not None:
        sys.stdout.write(extra)
    return EXIT_PASS if report.status == "pass" else EXIT_FAIL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
