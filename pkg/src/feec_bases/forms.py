"""Polynomial differential forms on R^n with exact rational coefficients.

Indices are 0-based throughout: variable ``i`` is ``x_{i+1}``, and an
alternator is a strictly increasing tuple of variable indices.  For n <= 3
the variables render as ``x, y, z``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Tuple

Exponents = Tuple[int, ...]
Alternator = Tuple[int, ...]

__all__ = [
    "FormError",
    "Polynomial",
    "DifferentialForm",
    "Face",
    "alternators",
    "exponent_vectors",
    "variable_names",
    "alternator_name",
    "faces_of_cube",
    "min_trace_dim",
    "wedge",
    "exterior_derivative",
    "koszul",
    "trace",
    "total_degree",
    "linear_degree",
]


class FormError(ValueError):
    """Raised for malformed forms, mismatched operands or undefined quantities."""


def _scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    if isinstance(c, float):
        raise FormError("floating point coefficients are not allowed")
    return Fraction(c)


def variable_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def alternator_name(sigma: Alternator, n: int) -> str:
    names = variable_names(n)
    return "".join("d" + names[i] for i in sigma)


def alternators(k: int, n: int) -> list[Alternator]:
    """All strictly increasing k-tuples from range(n), in lexicographic order."""
    if not 0 <= k <= n:
        raise FormError(f"form order {k} outside 0..{n}")
    return list(itertools.combinations(range(n), k))


def exponent_vectors(r: int, n: int) -> list[Exponents]:
    """Exponent vectors of total degree r in n variables, lexicographically ascending."""
    if r < 0:
        raise FormError("degree must be non-negative")
    out = []
    for combo in itertools.combinations_with_replacement(range(n), r):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort()
    return out


class Polynomial:
    """Sparse polynomial in n variables; immutable once built."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponents, object] | None = None):
        self.n = n
        clean: Dict[Exponents, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(a < 0 for a in e):
                    raise FormError(f"bad exponent vector {e} for n={n}")
                c = _scalar(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: Dict[Exponents, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.n = n
        p._terms = {e: c for e, c in terms.items() if c}
        p._hash = None
        return p

    @classmethod
    def constant(cls, n: int, c=1) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Exponents, c=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise FormError("polynomials live in different ambient dimensions")
            return other
        return Polynomial.constant(self.n, _scalar(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _scalar(other)
            return Polynomial._raw(self.n, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, p: int):
        if not isinstance(p, int) or p < 0:
            raise FormError("only non-negative integer powers are supported")
        result = Polynomial.constant(self.n)
        base = self
        while p:
            if p & 1:
                result = result * base
            base = base * base
            p >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def diff(self, i: int) -> "Polynomial":
        out: Dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial._raw(self.n, out)

    def shift(self, i: int) -> "Polynomial":
        """Multiply by x_i."""
        out = {}
        for e, c in self._terms.items():
            f = list(e)
            f[i] += 1
            out[tuple(f)] = c
        return Polynomial._raw(self.n, out)

    def substitute(self, i: int, value) -> "Polynomial":
        """Set x_i = value; the result keeps n variables with x_i absent."""
        value = _scalar(value)
        out: Dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            f = list(e)
            f[i] = 0
            f = tuple(f)
            out[f] = out.get(f, 0) + c * value ** e[i]
        return Polynomial._raw(self.n, out)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, a in zip(point, e):
                t *= Fraction(v) ** a
            total += t
        return total

    def degree(self) -> int:
        if not self._terms:
            raise FormError("degree undefined for the zero polynomial")
        return max(sum(e) for e in self._terms)

    def max_exponent(self) -> int:
        return max((max(e, default=0) for e in self._terms), default=0)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, n={self.n})"

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(p: Polynomial) -> str:
    """Expanded rendering, terms in descending lexicographic exponent order."""
    if p.is_zero():
        return "0"
    names = variable_names(p.n)
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        factors = []
        for name, a in zip(names, e):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        parts.append((c < 0, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


class DifferentialForm:
    """A polynomial k-form on R^n: a map from alternators to polynomial coefficients."""

    __slots__ = ("n", "k", "_components", "_hash")

    def __init__(self, n: int, k: int, components: Mapping[Alternator, Polynomial] | None = None):
        if n < 0 or k < 0:
            raise FormError("dimension and order must be non-negative")
        self.n = n
        self.k = k
        comps: Dict[Alternator, Polynomial] = {}
        for sigma, p in (components or {}).items():
            sigma = tuple(sigma)
            if len(sigma) != k or list(sigma) != sorted(set(sigma)) or any(not 0 <= s < n for s in sigma):
                raise FormError(f"alternator {sigma} invalid for a {k}-form on R^{n}")
            if not isinstance(p, Polynomial):
                p = Polynomial.constant(n, p)
            if p.n != n:
                raise FormError("coefficient polynomial has wrong ambient dimension")
            if p:
                comps[sigma] = p
        if k > n and comps:
            raise FormError("order exceeds dimension")
        self._components = comps
        self._hash = None

    @classmethod
    def zero(cls, n: int, k: int) -> "DifferentialForm":
        return cls(n, k)

    @classmethod
    def scalar(cls, p: Polynomial) -> "DifferentialForm":
        return cls(p.n, 0, {(): p})

    @classmethod
    def monomial(cls, exps: Exponents, sigma: Alternator, c=1) -> "DifferentialForm":
        n = len(exps)
        return cls(n, len(sigma), {tuple(sigma): Polynomial.monomial(exps, c)})

    @property
    def components(self) -> Mapping[Alternator, Polynomial]:
        return self._components

    def terms(self) -> Iterator[Tuple[Alternator, Exponents, Fraction]]:
        """(alternator, exponents, coefficient) in canonical order."""
        for sigma in sorted(self._components):
            p = self._components[sigma]
            for e in sorted(p.terms):
                yield sigma, e, p.terms[e]

    def monomials(self) -> Iterator["DifferentialForm"]:
        for sigma, e, c in self.terms():
            yield DifferentialForm.monomial(e, sigma, c)

    def is_zero(self) -> bool:
        return not self._components

    def __bool__(self):
        return bool(self._components)

    def __getitem__(self, sigma) -> Polynomial:
        return self._components.get(tuple(sigma), Polynomial(self.n))

    def _check(self, other: "DifferentialForm"):
        if not isinstance(other, DifferentialForm):
            raise FormError(f"expected a DifferentialForm, got {type(other).__name__}")
        if (self.n, self.k) != (other.n, other.k):
            raise FormError(
                f"cannot combine a {self.k}-form on R^{self.n} with a {other.k}-form on R^{other.n}"
            )

    def __add__(self, other):
        if isinstance(other, int) and other == 0:  # lets sum() work
            return self
        self._check(other)
        comps = dict(self._components)
        for sigma, p in other._components.items():
            comps[sigma] = comps[sigma] + p if sigma in comps else p
        return DifferentialForm(self.n, self.k, comps)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialForm(self.n, self.k, {s: -p for s, p in self._components.items()})

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __mul__(self, other):
        """Scale by a rational number or multiply coefficients by a polynomial."""
        if isinstance(other, DifferentialForm):
            return wedge(self, other)
        if isinstance(other, Polynomial) and other.n != self.n:
            raise FormError("polynomial factor has wrong ambient dimension")
        return DifferentialForm(self.n, self.k, {s: p * other for s, p in self._components.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and self._components == other._components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.k, frozenset(self._components.items())))
        return self._hash

    def max_exponent(self) -> int:
        return max((p.max_exponent() for p in self._components.values()), default=0)

    def __repr__(self):
        from .render import format_form

        return f"DifferentialForm({format_form(self)!r}, n={self.n}, k={self.k})"

    def __str__(self):
        from .render import format_form

        return format_form(self)


def _merge_sign(a: Alternator, b: Alternator) -> Tuple[int, Alternator | None]:
    """Sign of the permutation sorting a+b, or (0, None) if an index repeats."""
    seq = a + b
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inversions, tuple(sorted(seq))


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    if a.n != b.n:
        raise FormError("wedge of forms on different ambient spaces")
    k = a.k + b.k
    if k > a.n:
        raise FormError("order exceeds dimension")
    comps: Dict[Alternator, Polynomial] = {}
    for s1, p1 in a.components.items():
        for s2, p2 in b.components.items():
            sign, s = _merge_sign(s1, s2)
            if sign:
                term = p1 * p2 * sign
                comps[s] = comps[s] + term if s in comps else term
    return DifferentialForm(a.n, k, comps)


def exterior_derivative(w: DifferentialForm) -> DifferentialForm:
    """d(x^a dx_s) = sum_i d_i(x^a) dx_i ^ dx_s.  d of an n-form is the zero (n+1)-form."""
    n = w.n
    comps: Dict[Alternator, Polynomial] = {}
    for sigma, p in w.components.items():
        for i in range(n):
            if i in sigma:
                continue
            dp = p.diff(i)
            if not dp:
                continue
            below = sum(1 for s in sigma if s < i)
            target = tuple(sorted(sigma + (i,)))
            term = dp if below % 2 == 0 else -dp
            comps[target] = comps[target] + term if target in comps else term
    return DifferentialForm(n, w.k + 1, comps)


def koszul(w: DifferentialForm) -> DifferentialForm:
    """kappa(x^a dx_s) = sum_i (-1)^i x^a x_{s(i)} dx_{s without s(i)}, i counted from 0.

    The Koszul operator of a 0-form is the zero 0-form.
    """
    if w.k == 0:
        return DifferentialForm.zero(w.n, 0)
    comps: Dict[Alternator, Polynomial] = {}
    for sigma, p in w.components.items():
        for pos, v in enumerate(sigma):
            target = sigma[:pos] + sigma[pos + 1:]
            term = p.shift(v)
            if pos % 2:
                term = -term
            comps[target] = comps[target] + term if target in comps else term
    return DifferentialForm(w.n, w.k - 1, comps)


def total_degree(w: DifferentialForm) -> int:
    if w.is_zero():
        raise FormError("degree undefined for the zero form")
    return max(p.degree() for p in w.components.values())


def _monomial_ldeg(sigma: Alternator, e: Exponents) -> int:
    return sum(1 for i, a in enumerate(e) if a == 1 and i not in sigma)


def linear_degree(w: DifferentialForm) -> int:
    """Minimum over form monomials of the number of non-alternator variables with exponent 1."""
    if w.is_zero():
        raise FormError("linear degree undefined for the zero form")
    return min(_monomial_ldeg(sigma, e) for sigma, e, _ in w.terms())


class Face:
    """A face of the cube [-1, 1]^n, given by fixing some coordinates to +1 or -1."""

    __slots__ = ("n", "constraints")

    def __init__(self, n: int, constraints: Iterable[Tuple[int, int]] = ()):
        cons = tuple(sorted((int(a), int(v)) for a, v in constraints))
        axes = [a for a, _ in cons]
        if len(set(axes)) != len(axes):
            raise FormError("a face may constrain each axis at most once")
        for a, v in cons:
            if not 0 <= a < n:
                raise FormError(f"axis {a} outside 0..{n - 1}")
            if v not in (1, -1):
                raise FormError("face constraints must fix a coordinate to +1 or -1")
        self.n = n
        self.constraints = cons

    @property
    def dim(self) -> int:
        return self.n - len(self.constraints)

    @property
    def free_axes(self) -> tuple[int, ...]:
        fixed = {a for a, _ in self.constraints}
        return tuple(i for i in range(self.n) if i not in fixed)

    def __eq__(self, other):
        return isinstance(other, Face) and (self.n, self.constraints) == (other.n, other.constraints)

    def __hash__(self):
        return hash((self.n, self.constraints))

    def __str__(self):
        if not self.constraints:
            return "interior"
        names = variable_names(self.n)
        return "{" + ", ".join(f"{names[a]}={v:+d}" for a, v in self.constraints) + "}"

    __repr__ = __str__


def faces_of_cube(n: int, dim: int) -> list[Face]:
    """Faces of [-1,1]^n of the given dimension: axes ascending, then signs with +1 before -1."""
    if not 0 <= dim <= n:
        raise FormError(f"face dimension {dim} outside 0..{n}")
    out = []
    for axes in itertools.combinations(range(n), n - dim):
        for signs in itertools.product((1, -1), repeat=len(axes)):
            out.append(Face(n, zip(axes, signs)))
    assert len(out) == comb(n, n - dim) * 2 ** (n - dim)
    return out


def trace(w: DifferentialForm, f: Face) -> DifferentialForm:
    """Pullback of w to the face f, still written in the n ambient variables."""
    if w.n != f.n:
        raise FormError("form and face live in different dimensions")
    comps = dict(w.components)
    for axis, value in f.constraints:
        comps = {s: p.substitute(axis, value) for s, p in comps.items() if axis not in s}
    return DifferentialForm(w.n, w.k, comps)


def restrict_to_face(w: DifferentialForm, f: Face) -> DifferentialForm:
    """Trace of w on f, rewritten in the face's own coordinates (free axes in increasing order)."""
    t = trace(w, f)
    free = f.free_axes
    pos = {a: i for i, a in enumerate(free)}
    comps = {}
    for sigma, poly in t.components.items():
        terms = {tuple(e[a] for a in free): c for e, c in poly.terms.items()}
        comps[tuple(pos[a] for a in sigma)] = Polynomial(len(free), terms)
    if w.k > len(free):
        return DifferentialForm(len(free), w.k, {})
    return DifferentialForm(len(free), w.k, comps)


def min_trace_dim(w: DifferentialForm) -> int:
    """Smallest dimension of a face of the cube on which w has nonzero trace."""
    if w.is_zero():
        raise FormError("minimum trace dimension undefined for the zero form")
    for d in range(w.k, w.n + 1):
        if any(trace(w, f) for f in faces_of_cube(w.n, d)):
            return d
    raise AssertionError("unreachable: the full cube always carries a nonzero trace")
