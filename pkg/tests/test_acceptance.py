"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION n: PASS|FAIL`` line (visible with
``pytest -s`` or when run as a script) and then asserts the outcome.
"""

import random
import sys
import time
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from feec_bases.forms import (  # noqa: E402
    DifferentialForm,
    Polynomial,
    alternators,
    exponent_vectors,
    exterior_derivative,
    faces_of_cube,
    koszul,
    restrict_to_face,
)
from feec_bases.golden import GOLDEN_CASES, compare_golden, load_golden  # noqa: E402
from feec_bases.linalg import sparse_rank  # noqa: E402
from feec_bases.render import parse_form  # noqa: E402
from feec_bases.serendipity import FamilyId, SubspaceId, assemble, associate_face, subspace  # noqa: E402
from feec_bases.spaces import j_span, q_minus_span, s_span  # noqa: E402
from feec_bases.verify import forms_matrix, in_span, rank_exact, verify_basis  # noqa: E402

FAMILIES = ("Q_minus", "S", "S_minus")
GRID = [(f, 2, k, r) for f in FAMILIES for k in range(3) for r in range(1, 7)] + [
    (f, 3, k, r) for f in FAMILIES for k in range(4) for r in range(1, 5)
]

_LINES = []


def report(number, ok, detail=""):
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'}" + (f" - {detail}" if detail else "")
    _LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def assembled():
    return {case: assemble(FamilyId(case[0], case[3], case[2], case[1])) for case in GRID}


def rank(forms):
    return sparse_rank({(s, e): c for s, e, c in w.terms()} for w in forms)


def P(text):
    return parse_form(text, 3)


def test_criterion_1_basis_verification_grid():
    from feec_bases.spaces import standard_span

    t0 = time.perf_counter()
    failed = []
    for case in GRID:
        f, n, k, r = case
        b = assemble(FamilyId(f, r, k, n))
        rep = verify_basis(b.spanning_set(), standard_span(f, r, k, n))
        if not rep.passed:
            failed.append((case, rep))
    elapsed = time.perf_counter() - t0
    ok = not failed and elapsed < 600
    report(1, ok, f"{len(GRID) - len(failed)}/{len(GRID)} cases pass in {elapsed:.1f}s" + (f"; failures {failed[:3]}" if failed else ""))


def test_criterion_2_pinned_ranks():
    b = assemble(FamilyId("S", 1, 1, 3))
    rep = verify_basis(b.spanning_set(), s_span(1, 1, 3))
    dj = [exterior_derivative(w) for w in j_span(1, 1, 3)]
    dj_rank = rank_exact(forms_matrix(dj))
    named = [
        P("-x dydz + y dxdz + 2*z dxdy"),
        P("x dydz + 2*y dxdz + z dxdy"),
        P("2*x dydz + y dxdz - z dxdy"),
    ]
    triple = rank_exact(forms_matrix(named))
    ok = (rep.rank_A, rep.rank_B, rep.rank_C) == (24, 24, 24) and dj_rank == 2 and triple == 2 and rank(dj + named) == 2
    report(2, ok, f"S1 ranks {rep.rank_A}/{rep.rank_B}/{rep.rank_C}; dJ1 rank {dj_rank}; triple rank {triple}")


def test_criterion_3_reference_list_equality():
    bad = []
    for family, r, k in GOLDEN_CASES:
        cmp = compare_golden(family, r, k)
        if not cmp.ok:
            bad.append((family, r, k, len(cmp.missing), len(cmp.extra)))
    expected_counts = {("S", 1, 1): 24, ("S", 2, 1): 48, ("S_minus", 1, 1): 12, ("S", 1, 2): 18, ("S", 2, 2): 39, ("S_minus", 1, 2): 6}
    counts = {key: len(load_golden(*key)) for key in expected_counts}
    ok = not bad and counts == expected_counts and len(GOLDEN_CASES) == 18
    report(3, ok, f"{18 - len(bad)}/18 lists equal; counts {sorted(counts.values())}" + (f"; mismatches {bad}" if bad else ""))


def test_criterion_4_q_minus_cardinality(assembled):
    bad = []
    for case in GRID:
        f, n, k, r = case
        if f != "Q_minus":
            continue
        b = assembled[case]
        rep = verify_basis(b.spanning_set(), q_minus_span(r, k, n))
        if len(b) != comb(n, k) * r**k * (r + 1) ** (n - k) or not rep.passed:
            bad.append(case)
    report(4, not bad, f"{'all' if not bad else 'not all'} Q_minus cases match C(n,k) r^k (r+1)^(n-k)" + (f"; bad {bad}" if bad else ""))


def test_criterion_5_membership_suite():
    S = s_span(1, 1, 3)
    obvious = []
    guesses = []
    for a in (1, -1):
        for b in (1, -1):
            obvious += [P(f"(y+{a})*(z+{b}) dx"), P(f"(x+{a})*(z+{b}) dy"), P(f"(x+{a})*(y+{b}) dz")]
            guesses += [P(f"x*(y+{a})*(z+{b}) dx"), P(f"y*(x+{a})*(z+{b}) dy"), P(f"z*(x+{a})*(y+{b}) dz")]
    checks = {
        "xyz dx not in": not in_span(P("x*y*z dx"), S),
        "12 guesses not in": len(guesses) == 12 and not any(in_span(w, S) for w in guesses),
        "prep form in": in_span(P("2*x*y*z dx + x^2*z dy + x^2*y dz"), S),
        "edge form in": in_span(P("2*x*(y+1)*(z+1) dx + (z+1)*(x^2-1) dy + (y+1)*(x^2-1) dz"), S),
        "12 obvious in": len(set(obvious)) == 12 and all(in_span(w, S) for w in obvious),
    }
    failed = [k for k, v in checks.items() if not v]
    report(5, not failed, "all membership checks hold" if not failed else f"failed: {failed}")


def _random_form(rng, n, k):
    comps = {}
    for sigma in alternators(k, n):
        comps[sigma] = Polynomial(n, {tuple(rng.randint(0, 4) for _ in range(n)): rng.randint(-9, 9) for _ in range(rng.randint(0, 4))})
    return DifferentialForm(n, k, comps)


def test_criterion_6_calculus_properties():
    rng = random.Random(6)
    dd = all(exterior_derivative(exterior_derivative(_random_form(rng, 3, rng.randint(0, 1)))).is_zero() for _ in range(200))
    kk = all(koszul(koszul(_random_form(rng, 3, rng.randint(2, 3)))).is_zero() for _ in range(200))
    homotopy = True
    checked = 0
    n = 3
    for r in range(5):
        for k in range(n + 1):
            if r + k == 0:
                continue
            for sigma in alternators(k, n):
                for e in exponent_vectors(r, n):
                    w = DifferentialForm.monomial(e, sigma)
                    lhs = DifferentialForm.zero(n, k)
                    if k > 0:
                        lhs = lhs + exterior_derivative(koszul(w))
                    if k < n:
                        lhs = lhs + koszul(exterior_derivative(w))
                    homotopy &= lhs == w * (r + k)
                    checked += 1
    report(6, dd and kk and homotopy, f"dd=0 {dd}, kk=0 {kk}, homotopy on {checked} monomials {homotopy}")


def test_criterion_7_unique_face_association(assembled):
    bad = []
    total = 0
    for case, b in assembled.items():
        for el in b:
            total += 1
            try:
                face = associate_face(el.form, case[1])
            except ValueError:
                bad.append((case, str(el.subspace)))
                continue
            if face != el.face or face.dim != el.face.dim:
                bad.append((case, str(el.subspace)))
    report(7, not bad, f"{total - len(bad)}/{total} elements attach to exactly one face" + (f"; bad {bad[:3]}" if bad else ""))


def _same_span(a, b):
    a, b = [w for w in a if w], [w for w in b if w]
    return rank(a) == rank(b) == rank(a + b)


def test_criterion_8_trace_restriction():
    pairs = [("E", "E", range(0, 5)), ("E_tilde", "E_tilde", range(0, 5)), ("F_hat", "F", range(2, 5)), ("F_tilde", "F_tilde", range(2, 5))]
    bad = []
    count = 0
    for f in faces_of_cube(3, 2):
        for cube_kind, square_kind, grades in pairs:
            for i in grades:
                traces = [restrict_to_face(w, f) for w in subspace(SubspaceId(cube_kind, i, 1, 3))]
                count += 1
                if not _same_span(traces, list(subspace(SubspaceId(square_kind, i, 1, 2)))):
                    bad.append((str(f), cube_kind, i))
    report(8, not bad, f"{count - len(bad)}/{count} span equalities hold" + (f"; bad {bad[:3]}" if bad else ""))


def test_criterion_9_tensor_reconstruction_gate(assembled):
    bad = []
    for n in (2, 3):
        for k in range(n + 1):
            for r in range(1, 5):
                b = assembled[("Q_minus", n, k, r)]
                kinds = {el.subspace.kind for el in b}
                rep = verify_basis(b.spanning_set(), q_minus_span(r, k, n))
                if not rep.passed:
                    bad.append((n, k, r, kinds))
    report(9, not bad, "per-row decrement convention certified for r = 1..4" if not bad else f"open transcription issue: {bad}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
