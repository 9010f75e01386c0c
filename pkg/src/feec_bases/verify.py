"""Rank-based certification that a candidate list is a basis.

A form is flattened to a coefficient row indexed by (alternator, exponent
vector).  Alternators come in canonical order; within one alternator the
exponent vectors run in odometer order with x the slowest digit, each digit
ranging over 0..deg.

``verify_basis`` compares three ranks: the standard spanning set A, the
candidate B, and A stacked on B.  B is a basis of span(A) exactly when
#B = rank B = rank (A;B) = rank A.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .forms import DifferentialForm, FormError, alternators
from .linalg import Echelon, RationalMatrix, rank_exact
from .render import format_form
from .serendipity import AssociatedBasis, NotComputationalError, associate_face
from .spaces import STANDARD_SPANS, SpanningSet, standard_span


class VerificationError(FormError):
    pass


def _column_index(n: int, k: int, deg: int):
    alt_pos = {s: i for i, s in enumerate(alternators(k, n))}
    base = deg + 1
    block = base**n

    def index(sigma, exps) -> int:
        flat = 0
        for e in exps:
            if e > deg:
                raise VerificationError(f"exponent {e} exceeds the coefficient bound deg={deg}")
            flat = flat * base + e
        return alt_pos[sigma] * block + flat

    return index, len(alt_pos) * block


def coefficient_row(w: DifferentialForm, deg: int) -> list[Fraction]:
    """Dense coefficient vector of length C(n,k)*(deg+1)^n."""
    if deg < 0:
        raise VerificationError("deg must be non-negative")
    index, length = _column_index(w.n, w.k, deg)
    row = [Fraction(0)] * length
    for sigma, e, c in w.terms():
        row[index(sigma, e)] = c
    return row


def _sparse_row(w: DifferentialForm, index) -> dict:
    return {index(sigma, e): c for sigma, e, c in w.terms()}


def forms_matrix(forms: Sequence[DifferentialForm], deg: int | None = None) -> RationalMatrix:
    forms = list(forms)
    if not forms:
        return RationalMatrix([], 0)
    if deg is None:
        deg = max(w.max_exponent() for w in forms)
    return RationalMatrix([coefficient_row(w, deg) for w in forms])


def _common(*sets: Iterable[DifferentialForm]) -> int:
    forms = [w for s in sets for w in s]
    deg = max((w.max_exponent() for w in forms), default=0)
    return deg


def _family_params(space) -> dict:
    out = {"family": None, "n": None, "k": None, "r": None}
    for key in ("n", "k", "r"):
        if hasattr(space, key):
            out[key] = getattr(space, key)
    if hasattr(space, "family"):
        out["family"] = space.family
    elif hasattr(space, "tag"):
        out["family"] = space.tag
    return out


@dataclass
class VerificationReport:
    family: str | None
    n: int
    k: int
    r: int | None
    card_B: int
    rank_A: int
    rank_B: int
    rank_C: int
    verdict: str
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def verify_basis(candidate: SpanningSet, standard: SpanningSet) -> VerificationReport:
    if (candidate.n, candidate.k) != (standard.n, standard.k):
        raise VerificationError(
            f"candidate lives in Lambda^{candidate.k}(R^{candidate.n}), standard in Lambda^{standard.k}(R^{standard.n})"
        )
    t0 = time.perf_counter()
    n, k = standard.n, standard.k
    deg = _common(candidate, standard)
    index, _ = _column_index(n, k, deg)

    ea = Echelon()
    for w in standard:
        ea.insert(_sparse_row(w, index))
    ec = ea.copy()
    eb = Echelon()
    for w in candidate:
        row = _sparse_row(w, index)
        eb.insert(row)
        ec.insert(row)

    card = len(candidate)
    ok = card == eb.rank == ec.rank == ea.rank
    params = _family_params(candidate.space if candidate.space is not None else standard.space)
    return VerificationReport(
        family=params["family"],
        n=n,
        k=k,
        r=params["r"],
        card_B=card,
        rank_A=ea.rank,
        rank_B=eb.rank,
        rank_C=ec.rank,
        verdict="pass" if ok else "fail",
        elapsed_ms=round((time.perf_counter() - t0) * 1000, 3),
    )


def membership_residual(w: DifferentialForm, s: SpanningSet) -> dict:
    """Residual of w's coefficient row after elimination against s; empty iff w is in span(s)."""
    if (w.n, w.k) != (s.n, s.k):
        raise VerificationError("form and spanning set differ in (n, k)")
    deg = _common(s, [w])
    index, _ = _column_index(s.n, s.k, deg)
    e = Echelon()
    for v in s:
        e.insert(_sparse_row(v, index))
    return e.reduce(_sparse_row(w, index))


def in_span(w: DifferentialForm, s: SpanningSet) -> bool:
    return not membership_residual(w, s)


@dataclass
class CheckResult:
    ok: bool
    report: VerificationReport
    offending: DifferentialForm | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_computational_basis(b: AssociatedBasis, standard: SpanningSet | None = None) -> CheckResult:
    """Basis check against the matching standard span plus unique face association per element."""
    fam = b.family
    if standard is None:
        standard = standard_span(fam.family, fam.r, fam.k, fam.n)
    report = verify_basis(b.spanning_set(), standard)
    if not report.passed:
        return CheckResult(False, report, reason="rank test failed")
    for el in b.elements:
        try:
            face = associate_face(el.form, fam.n)
        except NotComputationalError as exc:
            return CheckResult(False, report, el.form, str(exc))
        if face != el.face:
            return CheckResult(
                False, report, el.form, f"trace analysis gives {face}, construction gives {el.face}"
            )
    return CheckResult(True, report)


def describe_failure(res: CheckResult) -> str:
    if res.ok:
        return "ok"
    if res.offending is None:
        r = res.report
        return f"{res.reason}: card_B={r.card_B} rank_A={r.rank_A} rank_B={r.rank_B} rank_C={r.rank_C}"
    return f"{res.reason}: {format_form(res.offending)}"


__all__ = [
    "STANDARD_SPANS",
    "CheckResult",
    "VerificationError",
    "VerificationReport",
    "check_computational_basis",
    "coefficient_row",
    "describe_failure",
    "forms_matrix",
    "in_span",
    "membership_residual",
    "rank_exact",
    "verify_basis",
]
