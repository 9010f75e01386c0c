"""Exact polynomial differential forms and computational bases on the square and cube."""

from .forms import (
    DifferentialForm,
    Face,
    FormError,
    Polynomial,
    exterior_derivative,
    faces_of_cube,
    koszul,
    linear_degree,
    min_trace_dim,
    total_degree,
    trace,
    wedge,
)
from .linalg import RationalMatrix, rank_exact
from .render import form_from_json, form_to_json, format_form, parse_form
from .serendipity import AssociatedBasis, FamilyId, SubspaceId, assemble, associate_face, subspace
from .spaces import (
    SpanningSet,
    homogeneous_basis,
    homogeneous_ldeg_basis,
    j_span,
    p_minus_span,
    p_span,
    q_minus_span,
    s_minus_span,
    s_span,
)
from .verify import (
    VerificationReport,
    check_computational_basis,
    coefficient_row,
    in_span,
    verify_basis,
)

__version__ = "0.1.0"
