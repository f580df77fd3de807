"""Command-line front end.

Subcommands:
    validate FILE          check a presentation file, print findings
    classes FILE           germ classes, induced map, preimages, diagnostics
    ktheory FILE           the full K-theory report
    sft --matrix "1,1;1,1" invariant of a subshift of finite type
    limit --matrix "3"     classify a stationary limit lim(Z^r, T)

Exit codes: 0 success, 1 validation errors, 2 parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .germs import DegreeNotConstant, GermClass, UnreachableVertex, occurring_classes, quotient_summary
from .intlin import IntMatrix
from .ktheory import KTheoryReport, ktheory_report, with_class_order
from .limits import StationaryLimitGroup, make_limit
from .model import ParseError, parse_presentation, validate
from .sft import SftPresentation, sft_dimension_group, validate_sft


def _class_label(c: GermClass) -> str:
    return f"{c.in_dart}|{c.out_dart}@{c.vertex}"


def _class_json(c: GermClass) -> dict:
    return {"vertex": c.vertex, "in": str(c.in_dart), "out": str(c.out_dart)}


def _matrix_json(m: IntMatrix) -> list[list[int]]:
    return m.to_rows()


def _limit_json(g: StationaryLimitGroup) -> dict:
    return {
        "ambient_rank": g.ambient_rank,
        "endomorphism": _matrix_json(g.endomorphism),
        "eventual_rank": g.eventual_rank,
        "eventual_basis": _matrix_json(g.eventual_basis),
        "reduced_endomorphism": _matrix_json(g.reduced_endomorphism),
        "classification": str(g.classify()),
    }


def _print_matrix(m: IntMatrix, row_labels: list[str] | None = None, indent: str = "  ") -> None:
    if m.rows == 0 or m.cols == 0:
        print(f"{indent}(empty {m.rows}x{m.cols} matrix)")
        return
    width = max(len(str(x)) for row in m.to_rows() for x in row)
    label_w = max((len(l) for l in row_labels), default=0) if row_labels else 0
    for i, row in enumerate(m.to_rows()):
        label = f"{row_labels[i]:>{label_w}} " if row_labels else ""
        print(f"{indent}{label}[ " + "  ".join(f"{x:>{width}}" for x in row) + " ]")


def _parse_matrix_flag(text: str) -> IntMatrix:
    try:
        rows = [[int(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise ValueError(f"bad --matrix value: {exc}") from exc
    if len({len(r) for r in rows}) != 1:
        raise ValueError("bad --matrix value: ragged rows")
    return IntMatrix.from_rows(rows, cols=len(rows[0]))


def _load_presentation(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def _print_findings(report) -> None:
    for f in report.findings:
        print(f"{f.severity}: [{f.code}] {f.message}")


def _emit_json(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_validate(args) -> int:
    p = _load_presentation(args.file)
    report = validate(p)
    _print_findings(report)
    if report.ok:
        print("ok")
        return 0
    return 1


def _cmd_classes(args) -> int:
    p = _load_presentation(args.file)
    report = validate(p)
    if not report.ok:
        _print_findings(report)
        return 1
    model = with_class_order(occurring_classes(p), args.order)
    summary = quotient_summary(p)
    if args.json:
        obj = {
            "classes": [_class_json(c) for c in model.classes],
            "gtilde": {
                _class_label(c): _class_label(model.gtilde[c]) for c in model.classes
            },
            "interior_preimages": {
                _class_label(c): [[e, i] for e, i in model.interior_preimage_table[c]]
                for c in model.classes
            },
            "diagnostics": _diagnostics_json_from_summary(summary),
        }
        _emit_json(obj)
        return 0
    print(f"classes ({args.order} order):")
    for c in model.classes:
        print(f"  {_class_label(c)}")
    print("induced map:")
    for c in model.classes:
        print(f"  {_class_label(c)} -> {_class_label(model.gtilde[c])}")
    print("interior preimages:")
    for c in model.classes:
        pairs = ", ".join(f"({e},{i})" for e, i in model.interior_preimage_table[c]) or "-"
        print(f"  {_class_label(c)} <- {pairs}")
    _print_summary(summary)
    return 0


def _diagnostics_json_from_summary(summary) -> dict:
    return {
        "hausdorff": summary.hausdorff,
        "hausdorff_witness": (
            [_class_label(c) for c in summary.hausdorff_witness]
            if summary.hausdorff_witness
            else None
        ),
        "connected": summary.connected,
        "degree": summary.degree,
        "nuclear_dimension_bound": summary.nuclear_dimension_bound,
    }


def _print_summary(summary) -> None:
    print("diagnostics:")
    print(f"  hausdorff: {'yes' if summary.hausdorff else 'no'}")
    if summary.hausdorff_witness:
        a, b = summary.hausdorff_witness
        print(f"  witness: {_class_label(a)} / {_class_label(b)}")
    print(f"  connected: {'yes' if summary.connected else 'no'}")
    if summary.degree is not None:
        print(f"  degree: {summary.degree}")
    print(f"  nuclear dimension bound: {summary.nuclear_dimension_bound}")


def _report_json(r: KTheoryReport) -> dict:
    class_labels = [_class_label(c) for c in r.classes]
    return {
        "classes": [_class_json(c) for c in r.classes],
        "delta0": {
            "row_labels": list(r.edges),
            "col_labels": class_labels,
            "entries": _matrix_json(r.delta0),
        },
        "k0_basis": {
            "row_labels": class_labels,
            "entries": _matrix_json(r.k0_basis),
        },
        "psi0": _matrix_json(r.psi0),
        "k1": {"free_rank": r.k1.free_rank, "torsion": list(r.k1.torsion)},
        "psi1": {"entries": _matrix_json(r.psi1.matrix), "moduli": list(r.psi1.moduli)},
        "k0_limit": _limit_json(r.k0_limit),
        "k1_limit": {
            "free": _limit_json(r.k1_limit),
            "torsion_limit": list(r.k1_torsion_limit),
        },
        "diagnostics": {
            "hausdorff": r.hausdorff,
            "hausdorff_witness": (
                [_class_label(c) for c in r.hausdorff_witness] if r.hausdorff_witness else None
            ),
            "connected": r.connected,
            "degree": r.degree,
            "nuclear_dimension_bound": r.nuclear_dimension_bound,
            "zn_target": r.zn_target,
        },
    }


def _cmd_ktheory(args) -> int:
    p = _load_presentation(args.file)
    report = validate(p)
    if not report.ok:
        _print_findings(report)
        return 1
    r = ktheory_report(p, order=args.order)
    if args.json:
        _emit_json(_report_json(r))
        return 0
    for f in report.warnings():
        print(f"warning: [{f.code}] {f.message}")
    class_labels = [_class_label(c) for c in r.classes]
    print(f"classes ({r.order} order): " + ", ".join(class_labels))
    print("boundary matrix (rows = edges, cols = classes):")
    _print_matrix(r.delta0, row_labels=list(r.edges))
    print(f"K0 of the cell algebra: free of rank {r.k0_basis.cols}")
    print("  basis columns (class coordinates):")
    _print_matrix(r.k0_basis, row_labels=class_labels, indent="    ")
    k1_desc = " + ".join([f"Z/{t}" for t in r.k1.torsion] + [f"Z^{r.k1.free_rank}"])
    print(f"K1 of the cell algebra: {k1_desc}")
    print("connecting endomorphism on K0 (in the basis above):")
    _print_matrix(r.psi0)
    print("connecting endomorphism on K1 (cokernel generators):")
    _print_matrix(r.psi1.matrix)
    print(f"K0 of the limit algebra: {r.k0_classification}")
    k1_lim = str(r.k1_classification)
    if r.k1_torsion_limit:
        k1_lim += " + " + " + ".join(f"Z/{t}" for t in r.k1_torsion_limit)
    print(f"K1 of the limit algebra: {k1_lim}")
    if r.zn_target:
        print(f"trace target: {r.zn_target}")
    _print_ktheory_diagnostics(r)
    return 0


def _print_ktheory_diagnostics(r: KTheoryReport) -> None:
    print("diagnostics:")
    print(f"  hausdorff: {'yes' if r.hausdorff else 'no'}")
    if r.hausdorff_witness:
        a, b = r.hausdorff_witness
        print(f"  witness: {_class_label(a)} / {_class_label(b)}")
    print(f"  connected: {'yes' if r.connected else 'no'}")
    if r.degree is not None:
        print(f"  degree: {r.degree}")
    print(f"  nuclear dimension bound: {r.nuclear_dimension_bound}")


def _cmd_sft(args) -> int:
    A = _parse_matrix_flag(args.matrix)
    if A.rows != A.cols:
        print("error: adjacency matrix must be square", file=sys.stderr)
        return 2
    s = SftPresentation.from_matrix(A.to_rows())
    report = validate_sft(s)
    if not report.ok:
        _print_findings(report)
        return 1
    dg = sft_dimension_group(s)
    if args.json:
        _emit_json(
            {
                "states": list(s.states),
                "adjacency": _matrix_json(s.adjacency),
                "k0": _limit_json(dg.k0),
                "k1": dg.k1,
                "warnings": [f.message for f in report.warnings()],
            }
        )
        return 0
    for f in report.warnings():
        print(f"warning: [{f.code}] {f.message}")
    print(f"K0: {dg.k0_classification}")
    print(f"K1: {dg.k1}")
    return 0


def _cmd_limit(args) -> int:
    T = _parse_matrix_flag(args.matrix)
    if T.rows != T.cols:
        print("error: matrix must be square", file=sys.stderr)
        return 2
    g = make_limit(T)
    if args.json:
        _emit_json(_limit_json(g))
        return 0
    print(f"classification: {g.classify()}")
    print(f"eventual rank: {g.eventual_rank}")
    print("eventual basis (columns):")
    _print_matrix(g.eventual_basis)
    print("reduced endomorphism:")
    _print_matrix(g.reduced_endomorphism)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="solk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("validate", help="validate a presentation file")
    pv.add_argument("file")
    pv.set_defaults(fn=_cmd_validate)

    pc = sub.add_parser("classes", help="germ classes and quotient diagnostics")
    pc.add_argument("file")
    pc.add_argument("--order", choices=["lex", "paper"], default="lex")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(fn=_cmd_classes)

    pk = sub.add_parser("ktheory", help="full K-theory report")
    pk.add_argument("file")
    pk.add_argument("--order", choices=["lex", "paper"], default="lex")
    pk.add_argument("--json", action="store_true")
    pk.set_defaults(fn=_cmd_ktheory)

    ps = sub.add_parser("sft", help="dimension group of a subshift of finite type")
    ps.add_argument("--matrix", required=True, help='rows separated by ";", entries by ","')
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(fn=_cmd_sft)

    pl = sub.add_parser("limit", help="classify a stationary limit lim(Z^r, T)")
    pl.add_argument("--matrix", required=True, help='rows separated by ";", entries by ","')
    pl.add_argument("--json", action="store_true")
    pl.set_defaults(fn=_cmd_limit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnreachableVertex, DegreeNotConstant) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
