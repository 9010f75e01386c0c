"""Text and JSON encodings of forms.

The canonical text of a form lists components in alternator order, each as
its expanded coefficient followed by the alternator name, e.g.
``2*x*y*z + 2*x dx + x^2*z - z dy``.  Alternator tokens delimit the
coefficients, so no parentheses are needed to parse it back.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction

from .forms import (
    DifferentialForm,
    Face,
    FormError,
    Polynomial,
    alternator_name,
    format_polynomial,
    variable_names,
    wedge,
)

_ALT_TOKEN = re.compile(r"(?<![A-Za-z0-9_])((?:d(?:x\d+|[xyz]))+)(?![A-Za-z0-9_])")


def format_form(w: DifferentialForm) -> str:
    if w.is_zero():
        return "0"
    if w.k == 0:
        return format_polynomial(w[()])
    chunks = []
    for sigma in sorted(w.components):
        chunks.append(f"{format_polynomial(w.components[sigma])} {alternator_name(sigma, w.n)}")
    out = chunks[0]
    for c in chunks[1:]:
        out += " - " + c[1:] if c.startswith("-") else " + " + c
    return out


class _PolyBuilder(ast.NodeVisitor):
    def __init__(self, n: int):
        self.n = n
        self.names = {name: Polynomial.variable(n, i) for i, name in enumerate(variable_names(n))}

    def build(self, text: str) -> Polynomial:
        text = text.replace("^", "**")
        try:
            tree = ast.parse(text, mode="eval")
        except SyntaxError as exc:
            raise FormError(f"cannot parse polynomial {text!r}") from exc
        out = self.visit(tree.body)
        if not isinstance(out, Polynomial):
            out = Polynomial.constant(self.n, out)
        return out

    def visit_Constant(self, node):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        raise FormError(f"unsupported constant {node.value!r}")

    def visit_Name(self, node):
        try:
            return self.names[node.id]
        except KeyError:
            raise FormError(f"unknown variable {node.id!r} for n={self.n}") from None

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise FormError("unsupported unary operator")

    def visit_BinOp(self, node):
        a, b = self.visit(node.left), self.visit(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        if isinstance(op, ast.Mult):
            return a * b
        if isinstance(op, ast.Div):
            if isinstance(b, Polynomial):
                raise FormError("division by a polynomial")
            return a * (1 / b) if isinstance(a, Polynomial) else a / b
        if isinstance(op, ast.Pow):
            if isinstance(b, Polynomial) or b.denominator != 1 or b < 0:
                raise FormError("exponents must be non-negative integers")
            return a ** int(b)
        raise FormError("unsupported operator")

    def generic_visit(self, node):
        raise FormError(f"unsupported syntax: {type(node).__name__}")


def parse_polynomial(text: str, n: int) -> Polynomial:
    return _PolyBuilder(n).build(text)


def _parse_alternator(token: str, n: int) -> DifferentialForm:
    names = variable_names(n)
    parts = re.findall(r"d(x\d+|[xyz])", token)
    out = DifferentialForm.scalar(Polynomial.constant(n))
    for name in parts:
        if name not in names:
            raise FormError(f"unknown differential d{name} for n={n}")
        out = wedge(out, DifferentialForm.monomial((0,) * n, (names.index(name),)))
    return out


def parse_form(text: str, n: int) -> DifferentialForm:
    """Parse the canonical text (or any sum of ``coefficient alternator`` chunks).

    Coefficients may be written with explicit ``*`` before the alternator,
    e.g. ``(y + 1)*(z + 1)*dx``.  Unsorted alternators such as ``dydx`` pick
    up the permutation sign.
    """
    text = text.strip()
    matches = list(_ALT_TOKEN.finditer(text))
    if not matches:
        return DifferentialForm.scalar(parse_polynomial(text, n))
    if text[matches[-1].end():].strip():
        raise FormError("trailing text after the last alternator")
    total = None
    start = 0
    for m in matches:
        coeff = text[start:m.start()].strip()
        start = m.end()
        coeff = coeff.rstrip("*").strip()
        if coeff.startswith("+"):
            coeff = coeff[1:].strip()
        if coeff in ("", "-"):
            coeff += "1"
        piece = _parse_alternator(m.group(1), n) * parse_polynomial(coeff, n)
        if total is not None and piece.k != total.k:
            raise FormError("mixed form orders in one expression")
        total = piece if total is None else total + piece
    return total


def form_to_json(w: DifferentialForm) -> dict:
    comps = {}
    for sigma in sorted(w.components):
        p = w.components[sigma]
        comps[alternator_name(sigma, w.n) or "1"] = [
            {"exps": list(e), "num": p.terms[e].numerator, "den": p.terms[e].denominator}
            for e in sorted(p.terms)
        ]
    return {"n": w.n, "k": w.k, "components": comps}


def form_from_json(data: dict, n: int | None = None, k: int | None = None) -> DifferentialForm:
    try:
        n = data.get("n", n)
        comps_in = data["components"]
        if n is None:
            raise FormError("ambient dimension missing")
        out = {}
        order = None
        for name, terms in comps_in.items():
            sigma = () if name in ("", "1") else _alternator_indices(name, n)
            order = len(sigma) if order is None else order
            if len(sigma) != order:
                raise FormError("mixed form orders in components")
            poly = Polynomial(n, {tuple(t["exps"]): Fraction(int(t["num"]), int(t.get("den", 1))) for t in terms})
            out[sigma] = out[sigma] + poly if sigma in out else poly
        k = data.get("k", k if k is not None else (order or 0))
        return DifferentialForm(n, k, out)
    except (KeyError, TypeError, AttributeError, ZeroDivisionError) as exc:
        raise FormError(f"malformed form JSON: {exc}") from exc


def _alternator_indices(name: str, n: int) -> tuple:
    names = variable_names(n)
    parts = re.findall(r"d(x\d+|[xyz])", name)
    if "".join("d" + p for p in parts) != name:
        raise FormError(f"bad alternator name {name!r}")
    try:
        idx = tuple(names.index(p) for p in parts)
    except ValueError:
        raise FormError(f"alternator {name!r} invalid for n={n}") from None
    if list(idx) != sorted(set(idx)):
        raise FormError(f"alternator {name!r} must be strictly increasing")
    return idx


def face_to_json(f: Face) -> dict:
    names = variable_names(f.n)
    return {"dim": f.dim, "constraints": [{"axis": names[a], "value": v} for a, v in f.constraints]}


def face_from_json(data: dict, n: int) -> Face:
    names = variable_names(n)
    return Face(n, [(names.index(c["axis"]), int(c["value"])) for c in data["constraints"]])


def parse_face(text: str, n: int) -> Face:
    """Parse ``"x=1"`` or ``"y=-1,z=1"``; an empty string is the whole cube."""
    names = variable_names(n)
    cons = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            axis, value = (s.strip() for s in part.split("="))
            cons.append((names.index(axis), int(value)))
        except ValueError:
            raise FormError(f"bad face constraint {part!r}") from None
    return Face(n, cons)


def latex_polynomial(p: Polynomial) -> str:
    s = format_polynomial(p).replace("*", "")
    return re.sub(r"\^(\d+)", lambda m: "^{" + m.group(1) + "}" if len(m.group(1)) > 1 else "^" + m.group(1), s)
