from collections import Counter
from math import comb

import pytest

from feec_bases.forms import FormError, faces_of_cube, restrict_to_face, trace
from feec_bases.linalg import sparse_rank
from feec_bases.serendipity import (
    FamilyId,
    NotComputationalError,
    SubspaceId,
    assemble,
    associate_face,
    min_grade,
    subspace,
    table_summands,
)
from feec_bases.forms import Face
from helpers import P


def rank(forms):
    return sparse_rank({(s, e): c for s, e, c in w.terms()} for w in forms)


def same_span(a, b):
    a, b = [w for w in a if w], [w for w in b if w]
    return rank(a) == rank(b) == rank(a + b)


# --- individual subspaces -------------------------------------------------------


def test_vertex_functions():
    V = subspace(SubspaceId("V", 0, 0, 3))
    assert len(V) == 8
    assert P("(x-1)*(y+1)*(z-1)") in set(V)


@pytest.mark.parametrize("r", range(1, 5))
def test_e_tilde_counts(r):
    assert len(subspace(SubspaceId("E_tilde", r, 1, 2))) == 4
    assert len(subspace(SubspaceId("E_tilde", r, 1, 3))) == 12


def test_f_tilde_two_forms_grade_one():
    assert len(subspace(SubspaceId("F_tilde", 1, 2, 3))) == 12


def test_f_tilde_row_matches_hand_expansion():
    assert P("2*(x+1)*y dydz + (y^2-1) dxdz") in set(subspace(SubspaceId("F_tilde", 1, 2, 3)))


def test_i_tilde_five_is_independent():
    S = subspace(SubspaceId("I_tilde", 5, 1, 3))
    assert rank(S) == len(S)


@pytest.mark.parametrize("i", [4, 6, 7])
def test_i_tilde_other_grades_independent(i):
    S = subspace(SubspaceId("I_tilde", i, 1, 3))
    assert rank(S) == len(S)


def test_subspace_id_validation():
    with pytest.raises(FormError):
        SubspaceId("F_hat", 2, 1, 2)
    with pytest.raises(FormError):
        SubspaceId("F", 3, 0, 2)
    with pytest.raises(FormError):
        SubspaceId("V", 1, 0, 3)
    with pytest.raises(FormError):
        SubspaceId("Q", 1, 0, 3)
    assert min_grade("F", 1, 2) == 2 and min_grade("F", 2, 2) == 0


def test_family_id_validation():
    for bad in [("S", 0, 1, 3), ("S", 1, 4, 3), ("S", 1, 1, 4), ("T", 1, 1, 3)]:
        with pytest.raises(FormError):
            FamilyId(*bad)


# --- assembly -------------------------------------------------------------------


def test_s1_one_forms_cube():
    b = assemble(FamilyId("S", 1, 1, 3))
    assert len(b) == 24
    assert Counter(el.subspace.kind for el in b) == {"E": 12, "E_tilde": 12}


def test_s2_two_forms_cube_composition():
    b = assemble(FamilyId("S", 2, 2, 3))
    assert len(b) == 39
    counts = Counter(str(el.subspace) for el in b)
    assert counts == {"F_0": 6, "F_1": 12, "F_tilde_2": 18, "I_2": 3}


def test_q1_square_vertices_only():
    b = assemble(FamilyId("Q_minus", 1, 0, 2))
    assert len(b) == 4 and {el.subspace.kind for el in b} == {"V"}


def test_s3_one_forms_square_summands():
    got = [str(sid) for _, sid in table_summands(FamilyId("S", 3, 1, 2))]
    assert got == ["E_0", "E_1", "E_2", "E_tilde_3", "F_2", "F_3"]


@pytest.mark.parametrize("n", [2, 3])
def test_q_minus_cardinality_law(n):
    for k in range(n + 1):
        for r in range(1, 5):
            assert len(assemble(FamilyId("Q_minus", r, k, n))) == comb(n, k) * r**k * (r + 1) ** (n - k)


def test_element_faces_match_table_rows():
    for fam in ("Q_minus", "S", "S_minus"):
        for n in (2, 3):
            for k in range(n + 1):
                b = assemble(FamilyId(fam, 3, k, n))
                ms = [el.face.dim for el in b]
                assert ms == sorted(ms)


def test_assemble_is_deterministic():
    a = assemble(FamilyId("S", 3, 1, 3)).forms
    b = assemble(FamilyId("S", 3, 1, 3)).forms
    assert a == b


@pytest.mark.parametrize("fam", ["Q_minus", "S", "S_minus"])
@pytest.mark.parametrize("n", [2, 3])
def test_faces_of_equal_dimension_get_equal_counts(fam, n):
    for k in range(n + 1):
        for r in (1, 2, 3):
            b = assemble(FamilyId(fam, r, k, n))
            per_face = Counter(el.face for el in b)
            for d in range(n + 1):
                counts = {per_face.get(f, 0) for f in faces_of_cube(n, d)}
                assert len(counts) == 1, (fam, n, k, r, d, counts)


@pytest.mark.parametrize("n", [2, 3])
def test_hierarchy(n):
    for r in range(1, 4):
        for k in range(n + 1):
            small = set(assemble(FamilyId("Q_minus", r, k, n)).forms)
            assert small <= set(assemble(FamilyId("Q_minus", r + 1, k, n)).forms)
        for k in (0, n):
            small = set(assemble(FamilyId("S", r, k, n)).forms)
            assert small <= set(assemble(FamilyId("S", r + 1, k, n)).forms)


# --- face association -----------------------------------------------------------


def test_associate_face_examples():
    assert associate_face(P("(y+1)*(z+1) dx")) == Face(3, [(1, 1), (2, 1)])
    w = P("2*x*(y+1)*(z+1) dx + (z+1)*(x^2-1) dy + (y+1)*(x^2-1) dz")
    assert associate_face(w) == Face(3, [(1, 1), (2, 1)])
    assert associate_face(P("(x^2-1)*(y^2-1)*(z^2-1)")).dim == 3


def test_associate_face_rejects_shared_forms():
    with pytest.raises(NotComputationalError):
        associate_face(P("x*(y+1)*(z+1) dx + (y-1)*(z-1) dx"))
    with pytest.raises(NotComputationalError):
        associate_face(P("dx"))


@pytest.mark.parametrize("kind,k,grades", [
    ("I", 0, range(6, 9)),
    ("I_tensor", 0, range(1, 4)),
    ("I", 1, range(4, 7)),
    ("I_tilde", 1, range(4, 7)),
    ("I_tensor", 1, range(1, 4)),
    ("I", 2, range(2, 5)),
    ("I_tilde", 2, range(2, 5)),
    ("I_tensor", 2, range(1, 4)),
])
def test_bubbles_vanish_on_boundary(kind, k, grades):
    boundary = faces_of_cube(3, 2)
    for i in grades:
        for w in subspace(SubspaceId(kind, i, k, 3)):
            assert all(trace(w, f).is_zero() for f in boundary)


# --- trace restriction identities -----------------------------------------------


def _traces(kind, i, f):
    return [restrict_to_face(w, f) for w in subspace(SubspaceId(kind, i, 1, 3))]


def _square(kind, i):
    return list(subspace(SubspaceId(kind, i, 1, 2)))


@pytest.mark.parametrize("f", faces_of_cube(3, 2), ids=str)
def test_trace_of_edge_spaces(f):
    for i in range(0, 5):
        assert same_span(_traces("E", i, f), _square("E", i))
        assert same_span(_traces("E_tilde", i, f), _square("E_tilde", i))


@pytest.mark.parametrize("f", faces_of_cube(3, 2), ids=str)
def test_trace_of_face_spaces(f):
    for r in range(2, 5):
        assert same_span(_traces("F_hat", r, f), _square("F", r))
        assert same_span(_traces("F_tilde", r, f), _square("F_tilde", r))


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_trimmed_family_is_a_complex(r, k):
    from feec_bases.spaces import s_minus_span
    from feec_bases.verify import in_span
    from feec_bases.forms import exterior_derivative

    target = s_minus_span(r, k + 1, 3)
    for w in assemble(FamilyId("S_minus", r, k, 3)).forms:
        dw = exterior_derivative(w)
        assert dw.is_zero() or in_span(dw, target)
