import json
import random
from fractions import Fraction

import pytest

from feec_bases.forms import DifferentialForm
from feec_bases.serendipity import FamilyId, assemble
from feec_bases.spaces import SpanningSet, q_minus_span, s_minus_span, s_span
from feec_bases.verify import (
    VerificationError,
    check_computational_basis,
    coefficient_row,
    describe_failure,
    forms_matrix,
    in_span,
    membership_residual,
    rank_exact,
    verify_basis,
)
from helpers import P


def spanning(forms, n=3, k=1):
    forms = tuple(forms)
    return SpanningSet(n, k, forms, ("t",) * len(forms))


def test_coefficient_row_example():
    row = coefficient_row(P("(5*x + 4*y*z + 3*y + 2*z + 1) dx"), 1)
    assert len(row) == 24
    assert row[:8] == [1, 2, 3, 4, 5, 0, 0, 0]
    assert all(v == 0 for v in row[8:])


def test_coefficient_row_zero_and_too_small():
    assert coefficient_row(DifferentialForm.zero(3, 2), 2) == [0] * 81
    with pytest.raises(VerificationError):
        coefficient_row(P("x^2 dx"), 1)


def test_dense_and_sparse_ranks_agree():
    S = s_span(1, 1, 3)
    assert rank_exact(forms_matrix(list(S))) == 24


def test_dj1_dense_rank():
    from feec_bases.forms import exterior_derivative
    from feec_bases.spaces import j_span

    assert rank_exact(forms_matrix([exterior_derivative(w) for w in j_span(1, 1, 3)])) == 2


def test_verify_s1_one_forms():
    rep = verify_basis(assemble(FamilyId("S", 1, 1, 3)).spanning_set(), s_span(1, 1, 3))
    assert (rep.card_B, rep.rank_A, rep.rank_B, rep.rank_C) == (24, 24, 24, 24)
    assert rep.passed
    data = json.loads(rep.to_json())
    assert set(data) == {"family", "n", "k", "r", "card_B", "rank_A", "rank_B", "rank_C", "verdict", "elapsed_ms"}
    assert data["family"] == "S" and data["r"] == 1


def test_verify_detects_deleted_element():
    B = assemble(FamilyId("S", 1, 1, 3)).forms
    rep = verify_basis(spanning(B[1:]), s_span(1, 1, 3))
    assert rep.verdict == "fail"
    assert rep.card_B == rep.rank_B == 23 < rep.rank_A == 24


def test_verify_detects_duplicate():
    B = assemble(FamilyId("S", 1, 1, 3)).forms
    rep = verify_basis(spanning(B + B[:1]), s_span(1, 1, 3))
    assert rep.verdict == "fail"
    assert rep.card_B == 25 and rep.rank_B == 24


def test_verify_detects_foreign_element():
    B = assemble(FamilyId("S", 1, 1, 3)).forms
    rep = verify_basis(spanning(B[1:] + [P("x*y*z dx")]), s_span(1, 1, 3))
    assert rep.verdict == "fail" and rep.rank_C == 25


def test_verify_rejects_mismatched_types():
    with pytest.raises(VerificationError):
        verify_basis(spanning([P("x")], k=0), s_span(1, 1, 3))


def test_verdict_invariant_under_permutation_and_scaling():
    B = list(assemble(FamilyId("S_minus", 2, 1, 3)).forms)
    A = list(s_minus_span(2, 1, 3))
    rng = random.Random(3)
    for _ in range(5):
        rng.shuffle(B)
        rng.shuffle(A)
        scaled = [w * Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 7])) for w in B]
        rep = verify_basis(spanning(scaled), spanning(A))
        assert rep.passed


def test_in_span_examples():
    S = s_span(1, 1, 3)
    assert not in_span(P("x*y*z dx"), S)
    assert in_span(P("2*x*y*z dx + x^2*z dy + x^2*y dz"), S)
    assert membership_residual(P("x*y*z dx"), S)


def test_check_computational_basis_passes():
    res = check_computational_basis(assemble(FamilyId("S", 1, 1, 3)))
    assert res and res.offending is None


def test_check_reports_bad_face_element():
    from feec_bases.serendipity import AssociatedBasis, BasisElement, SubspaceId

    b = assemble(FamilyId("Q_minus", 1, 0, 2))
    els = list(b.elements)
    # replace one vertex function by a combination of two: same span, no unique vertex
    bad = els[0].form + els[1].form
    els[0] = BasisElement(bad, els[0].face, SubspaceId("V", 0, 0, 2))
    res = check_computational_basis(AssociatedBasis(b.family, tuple(els)))
    assert not res and res.offending == bad
    assert "faces" in describe_failure(res)


def test_check_q_minus_against_standard():
    res = check_computational_basis(assemble(FamilyId("Q_minus", 2, 1, 3)), q_minus_span(2, 1, 3))
    assert res
