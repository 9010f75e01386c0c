"""Command-line front end: generate, export, verify and self-test bases.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .forms import (
    DifferentialForm,
    FormError,
    alternator_name,
    exterior_derivative,
    format_polynomial,
    koszul,
    trace,
)
from .render import (
    face_to_json,
    form_from_json,
    form_to_json,
    format_form,
    latex_polynomial,
    parse_face,
    parse_form,
)
from .serendipity import AssociatedBasis, FamilyId, column_order, NotComputationalError, assemble, associate_face
from .spaces import SpanningSet, standard_span
from .verify import check_computational_basis, describe_failure, verify_basis

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FAMILY_FLAGS = {"q-": "Q_minus", "s": "S", "s-": "S_minus"}
FLAG_OF = {v: k for k, v in FAMILY_FLAGS.items()}


class UsageError(Exception):
    pass


def _family(args) -> FamilyId:
    try:
        return FamilyId(FAMILY_FLAGS[args.family], args.r, args.k, args.n)
    except FormError as exc:
        raise UsageError(str(exc)) from exc


# --- rendering of whole bases ---------------------------------------------------------


def basis_to_json(b: AssociatedBasis) -> dict:
    fam = b.family
    return {
        "family": FLAG_OF[fam.family],
        "n": fam.n,
        "k": fam.k,
        "r": fam.r,
        "elements": [
            {
                "face": face_to_json(el.face),
                "subspace": el.subspace.kind,
                "grade": el.subspace.i,
                "form": form_to_json(el.form),
            }
            for el in b.elements
        ],
    }


def _columns(b: AssociatedBasis) -> list:
    return column_order(b.family.n, b.family.k)


def render_basis(b: AssociatedBasis, fmt: str) -> str:
    if fmt == "text":
        return "".join(format_form(w) + "\n" for w in b.forms)
    if fmt == "json":
        return json.dumps(basis_to_json(b), indent=1) + "\n"
    cols = _columns(b)
    n = b.family.n
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["face", "subspace", "grade"] + [alternator_name(s, n) or "1" for s in cols])
        for el in b.elements:
            writer.writerow(
                [str(el.face), el.subspace.kind, el.subspace.i]
                + [format_polynomial(el.form[s]) for s in cols]
            )
        return buf.getvalue()
    if fmt == "latex":
        lines = ["\\begin{array}{" + "l" * len(cols) + "}"]
        if b.family.k > 0:
            lines.append(" & ".join(alternator_name(s, n) for s in cols) + " \\\\")
        lines.append("\\hline")
        for w in b.forms:
            lines.append(" & ".join(latex_polynomial(w[s]) for s in cols) + " \\\\")
        lines.append("\\end{array}")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc}") from exc


# --- subcommands ----------------------------------------------------------------------


def cmd_basis(args) -> int:
    b = assemble(_family(args))
    _write(render_basis(b, args.format), args.out)
    return EXIT_OK


def load_candidate(path: str, n: int, k: int) -> SpanningSet:
    """Read forms from a basis JSON file or from text with one form per line."""
    text = Path(path).read_text(encoding="utf-8")
    forms: list[DifferentialForm] = []
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed JSON in {path}: {exc}") from exc
        items = data["elements"] if isinstance(data, dict) and "elements" in data else data
        if isinstance(items, dict):
            items = [items]
        for item in items:
            forms.append(form_from_json(item.get("form", item), n, k))
    else:
        for line in text.splitlines():
            if line.strip():
                forms.append(parse_form(line, n))
    # a bare "0" parses as the zero 0-form
    forms = [DifferentialForm.zero(n, k) if w.is_zero() else w for w in forms]
    for w in forms:
        if (w.n, w.k) != (n, k):
            raise UsageError(f"candidate form {format_form(w)!r} is not a {k}-form on R^{n}")
    return SpanningSet(n, k, tuple(forms), ("candidate",) * len(forms))


def cmd_verify(args) -> int:
    fam = _family(args)
    standard = standard_span(fam.family, fam.r, fam.k, fam.n)
    if args.candidate is None:
        res = check_computational_basis(assemble(fam), standard)
        report, ok, why = res.report, res.ok, describe_failure(res)
    else:
        cand = load_candidate(args.candidate, fam.n, fam.k)
        cand = SpanningSet(cand.n, cand.k, cand.elements, cand.tags, fam)
        report = verify_basis(cand, standard)
        ok, why = report.passed, "rank test failed"
        if ok:
            for w in cand:
                try:
                    associate_face(w, fam.n)
                except NotComputationalError as exc:
                    ok, why = False, f"{exc}: {format_form(w)}"
                    break
    data = json.loads(report.to_json())
    data["family"] = FLAG_OF[fam.family]
    data["verdict"] = "pass" if ok else "fail"
    print(json.dumps(data))
    if not ok:
        print(why, file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def selftest_cases(scope: str) -> list[tuple]:
    fams = ("Q_minus", "S", "S_minus")
    if scope == "quick":
        return [(f, n, k, r) for f in fams for n in (2, 3) for k in range(n + 1) for r in (1, 2)]
    return [(f, 2, k, r) for f in fams for k in range(3) for r in range(1, 7)] + [
        (f, 3, k, r) for f in fams for k in range(4) for r in range(1, 5)
    ]


def _run_case(case) -> tuple:
    f, n, k, r = case
    t0 = time.perf_counter()
    res = check_computational_basis(assemble(FamilyId(f, r, k, n)))
    return res.ok, res.report.card_B, (time.perf_counter() - t0) * 1000, "" if res.ok else describe_failure(res)


def cmd_selftest(args) -> int:
    from .golden import GOLDEN_CASES, compare_golden

    cases = selftest_cases(args.scope)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_case, cases))
    else:
        results = [_run_case(c) for c in cases]
    failures = 0
    print(f"{'family':<8} {'n':>2} {'k':>2} {'r':>2} {'dim':>5} {'ms':>9}  verdict")
    for (f, n, k, r), (ok, card, ms, why) in zip(cases, results):
        failures += not ok
        print(f"{FLAG_OF[f]:<8} {n:>2} {k:>2} {r:>2} {card:>5} {ms:>9.1f}  {'pass' if ok else 'FAIL ' + why}")
    print(f"{len(cases)} verifications, {len(cases) - failures} passed")
    if args.scope == "full":
        gfail = 0
        for family, r, k in GOLDEN_CASES:
            t0 = time.perf_counter()
            try:
                cmp = compare_golden(family, r, k)
            except OSError as exc:
                print(f"golden {FLAG_OF[family]} r={r} k={k}: cannot read ({exc})")
                gfail += 1
                continue
            ms = (time.perf_counter() - t0) * 1000
            status = "pass" if cmp.ok else f"FAIL missing={len(cmp.missing)} extra={len(cmp.extra)}"
            gfail += not cmp.ok
            print(f"golden {FLAG_OF[family]:<3} r={r} k={k} {cmp.expected:>4} {ms:>9.1f}  {status}")
        print(f"{len(GOLDEN_CASES)} golden lists, {len(GOLDEN_CASES) - gfail} equal")
        failures += gfail
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _read_op_input(args) -> DifferentialForm:
    if args.form is not None:
        return parse_form(args.form, args.n)
    raw = sys.stdin.read() if args.json == "-" else Path(args.json).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("form JSON must be an object")
    return form_from_json(data, args.n)


def cmd_op(args) -> int:
    w = _read_op_input(args)
    if args.operation == "d":
        out = exterior_derivative(w)
    elif args.operation == "kappa":
        out = koszul(w)
    else:
        if args.face is None:
            raise UsageError("trace needs --face, e.g. --face x=1")
        out = trace(w, parse_face(args.face, w.n))
    if args.format == "json":
        print(json.dumps(form_to_json(out)))
    else:
        print(format_form(out))
    return EXIT_OK


def cmd_golden(args) -> int:
    from .golden import GOLDEN_CASES, compare_golden, regenerate

    if args.regen:
        for p in regenerate(args.dir):
            print(p)
        return EXIT_OK
    bad = 0
    for family, r, k in GOLDEN_CASES:
        cmp = compare_golden(family, r, k)
        bad += not cmp.ok
        print(f"{FLAG_OF[family]:<3} r={r} k={k}: {'equal' if cmp.ok else 'DIFFERENT'}")
    return EXIT_OK if not bad else EXIT_FAIL


# --- parser ---------------------------------------------------------------------------


def _add_family_args(p, candidate=False):
    p.add_argument("--family", required=True, choices=sorted(FAMILY_FLAGS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    if candidate:
        p.add_argument("--candidate", metavar="PATH", help="verify this basis file instead of the built-in one")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="feec-bases", description="Computational bases for cube finite elements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="write an assembled basis")
    _add_family_args(p)
    p.add_argument("--format", choices=("text", "json", "latex", "csv"), default="text")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="run the rank-based basis check")
    _add_family_args(p, candidate=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="verify a whole parameter sweep")
    p.add_argument("--scope", choices=("quick", "full"), default="quick")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("op", help="apply d, kappa or a face trace to a form")
    p.add_argument("operation", choices=("d", "kappa", "trace"))
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--form", help="form in canonical text, e.g. '(x+1)*dy'")
    src.add_argument("--json", metavar="PATH", help="form JSON file, or - for stdin")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--face", help="face constraints such as 'x=1' or 'y=-1,z=1'")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("golden", help="compare against (or regenerate) the reference lists")
    p.add_argument("--regen", action="store_true")
    p.add_argument("--dir", type=Path, default=None)
    p.set_defaults(func=cmd_golden)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
