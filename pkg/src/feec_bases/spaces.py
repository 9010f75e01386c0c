"""Standard spanning sets for the polynomial form spaces on R^n.

These are the reference sets used by the basis verification: homogeneous
forms H_r, the Koszul-built J_r, full and trimmed polynomial spaces, the
tensor product space Q_r^-, and the two serendipity families S_r, S_r^-.
Sets may be linearly dependent; only exact duplicates are removed, and
only where noted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .forms import (
    DifferentialForm,
    FormError,
    alternators,
    exponent_vectors,
    exterior_derivative,
    koszul,
    linear_degree,
)

SPACE_TAGS = ("H", "H_ldeg", "J", "P", "P_minus", "Q_minus", "S", "S_minus")


@dataclass(frozen=True)
class SpaceKind:
    tag: str
    r: int
    k: int
    n: int
    ldeg: int | None = None

    def __post_init__(self):
        if self.tag not in SPACE_TAGS:
            raise FormError(f"unknown space tag {self.tag!r}")
        if not 0 <= self.k <= self.n:
            raise FormError(f"form order {self.k} outside 0..{self.n}")
        if self.r < 0:
            raise FormError("polynomial order must be non-negative")
        if self.tag in ("Q_minus", "S", "S_minus", "P_minus", "J") and self.r < 1:
            raise FormError(f"{self.tag} requires r >= 1")

    def __str__(self):
        extra = f",l={self.ldeg}" if self.ldeg is not None else ""
        return f"{self.tag}(r={self.r},k={self.k},n={self.n}{extra})"


@dataclass(frozen=True)
class SpanningSet:
    """An ordered list of k-forms on R^n, each tagged with the rule that produced it."""

    n: int
    k: int
    elements: tuple = ()
    tags: tuple = ()
    space: object = None

    def __post_init__(self):
        if len(self.elements) != len(self.tags):
            raise FormError("every element needs a provenance tag")
        for w in self.elements:
            if (w.n, w.k) != (self.n, self.k):
                raise FormError("spanning set elements must share ambient dimension and order")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __add__(self, other: "SpanningSet") -> "SpanningSet":
        if (self.n, self.k) != (other.n, other.k):
            raise FormError("cannot concatenate spanning sets of different type")
        return SpanningSet(self.n, self.k, self.elements + other.elements, self.tags + other.tags, self.space)

    def with_space(self, space) -> "SpanningSet":
        return SpanningSet(self.n, self.k, self.elements, self.tags, space)


def _make(n: int, k: int, forms: Iterable[DifferentialForm], tag: str, space=None) -> SpanningSet:
    forms = tuple(forms)
    return SpanningSet(n, k, forms, (tag,) * len(forms), space)


def _check(r: int, k: int, n: int, rmin: int = 0):
    if n < 1:
        raise FormError("ambient dimension must be positive")
    if not 0 <= k <= n:
        raise FormError(f"form order {k} outside 0..{n}")
    if r < rmin:
        raise FormError(f"polynomial order must be at least {rmin}")


def homogeneous_basis(r: int, k: int, n: int) -> SpanningSet:
    """Form monomials x^a dx_s with |a| = r, |s| = k: alternators outer, exponents inner."""
    _check(r, k, n)
    forms = [DifferentialForm.monomial(e, s) for s in alternators(k, n) for e in exponent_vectors(r, n)]
    return _make(n, k, forms, f"H{r}", SpaceKind("H", r, k, n))


def homogeneous_ldeg_basis(r: int, k: int, n: int, ldeg: int) -> SpanningSet:
    """Monomials of H_r Lambda^k with linear degree at least ``ldeg``."""
    if ldeg < 0:
        raise FormError("linear degree bound must be non-negative")
    H = homogeneous_basis(r, k, n)
    forms = [w for w in H if linear_degree(w) >= ldeg]
    return _make(n, k, forms, f"H{r},{ldeg}", SpaceKind("H_ldeg", r, k, n, ldeg))


def j_span(r: int, k: int, n: int) -> SpanningSet:
    """Spanning set of J_r Lambda^k: Koszul images of H_{r+l-1,l} Lambda^{k+1}, l = 1 .. n-k-1."""
    _check(r, k, n, 1)
    picked = []
    for l in range(1, n - k):
        picked.extend(homogeneous_ldeg_basis(r + l - 1, k + 1, n, l))
    out = []
    seen = set()
    for w in picked:
        kw = koszul(w)
        if kw and kw not in seen:
            seen.add(kw)
            out.append(kw)
    return _make(n, k, out, f"J{r}", SpaceKind("J", r, k, n))


def p_span(r: int, k: int, n: int) -> SpanningSet:
    _check(r, k, n)
    out = _make(n, k, (), "P")
    for j in range(r + 1):
        out = out + homogeneous_basis(j, k, n)
    return out.with_space(SpaceKind("P", r, k, n))


def p_minus_span(r: int, k: int, n: int) -> SpanningSet:
    _check(r, k, n, 1)
    base = p_span(r - 1, k, n)
    kappa = []
    if k + 1 <= n:
        kappa = [koszul(w) for w in homogeneous_basis(r - 1, k + 1, n)]
    return (base + _make(n, k, [w for w in kappa if w], f"kH{r - 1}")).with_space(SpaceKind("P_minus", r, k, n))


def q_minus_span(r: int, k: int, n: int) -> SpanningSet:
    """Monomials of degree <= r-1 in alternator variables and <= r in the others."""
    _check(r, k, n, 1)
    forms = []
    for s in alternators(k, n):
        ranges = [range(r if i in s else r + 1) for i in range(n)]
        for e in itertools.product(*ranges):
            forms.append(DifferentialForm.monomial(e, s))
    return _make(n, k, forms, f"Q{r}", SpaceKind("Q_minus", r, k, n))


def _d_image(S: SpanningSet, n: int, k: int, tag: str) -> SpanningSet:
    forms = [exterior_derivative(w) for w in S]
    return _make(n, k, [w for w in forms if w], tag)


def s_span(r: int, k: int, n: int) -> SpanningSet:
    """P_r + J_r + d J_{r+1} Lambda^{k-1}."""
    _check(r, k, n, 1)
    out = p_span(r, k, n) + j_span(r, k, n)
    if k >= 1:
        out = out + _d_image(j_span(r + 1, k - 1, n), n, k, f"dJ{r + 1}")
    return out.with_space(SpaceKind("S", r, k, n))


def s_minus_span(r: int, k: int, n: int) -> SpanningSet:
    """P_r^- + J_r + d J_r Lambda^{k-1}."""
    _check(r, k, n, 1)
    out = p_minus_span(r, k, n) + j_span(r, k, n)
    if k >= 1:
        out = out + _d_image(j_span(r, k - 1, n), n, k, f"dJ{r}")
    return out.with_space(SpaceKind("S_minus", r, k, n))


STANDARD_SPANS = {"Q_minus": q_minus_span, "S": s_span, "S_minus": s_minus_span}


def standard_span(family: str, r: int, k: int, n: int) -> SpanningSet:
    try:
        return STANDARD_SPANS[family](r, k, n)
    except KeyError:
        raise FormError(f"unknown family {family!r}") from None
