"""Computational bases for Q_r^-, S_r and S_r^- on the square and the cube.

Every basis is a direct sum of small named subspaces (V, E_i, E~_i, F_i,
F^_i, F~_i, F(x)_i, I_i, I~_i, I(x)_i).  Each subspace is a list of rows;
a row is a tuple of coefficient polynomials, one per alternator, and may
carry ``(v +- 1)`` factors whose signs are enumerated.  The chosen signs
fix the face of the cube the element is attached to.

Column order of a row: 1-forms ``dx, dy[, dz]``; 2-forms on the cube
``dydz, dxdz, dxdy``; top forms have a single column.

Conventions:
  * a power with negative exponent is the zero polynomial, and rows that
    vanish entirely are dropped;
  * a subspace is a set, so exact duplicate elements are kept once;
  * summands whose grade lies below the subspace's minimum grade are empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .forms import (
    DifferentialForm,
    Face,
    FormError,
    Polynomial,
    faces_of_cube,
    min_trace_dim,
    trace,
)
from .spaces import SpanningSet

KINDS = ("V", "E", "E_tilde", "F", "F_hat", "F_tilde", "F_tensor", "I", "I_tilde", "I_tensor")
FAMILIES = ("Q_minus", "S", "S_minus")

_COLUMNS = {
    (2, 0): [()],
    (2, 1): [(0,), (1,)],
    (2, 2): [(0, 1)],
    (3, 0): [()],
    (3, 1): [(0,), (1,), (2,)],
    (3, 2): [(1, 2), (0, 2), (0, 1)],
    (3, 3): [(0, 1, 2)],
}


@dataclass(frozen=True)
class SubspaceId:
    kind: str
    i: int
    k: int
    n: int

    def __post_init__(self):
        key = (self.kind, self.k, self.n)
        if key not in _REGISTRY:
            raise FormError(f"no subspace {self.kind} for k={self.k}, n={self.n}")
        lo = _REGISTRY[key][0]
        if self.kind == "V":
            if self.i != 0:
                raise FormError("V carries no grade; use i=0")
        elif self.i < lo:
            raise FormError(f"{self.kind} Lambda^{self.k} on the {self.n}-cube needs i >= {lo}, got {self.i}")

    def __str__(self):
        return self.kind if self.kind == "V" else f"{self.kind}_{self.i}"


@dataclass(frozen=True)
class FamilyId:
    family: str
    r: int
    k: int
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FormError(f"unknown family {self.family!r}")
        if self.n not in (2, 3):
            raise FormError("cube bases exist for n = 2 and n = 3 only")
        if not 0 <= self.k <= self.n:
            raise FormError(f"form order {self.k} outside 0..{self.n}")
        if self.r < 1:
            raise FormError("polynomial order r must be at least 1")


@dataclass(frozen=True)
class BasisElement:
    form: DifferentialForm
    face: Face
    subspace: SubspaceId


@dataclass(frozen=True)
class AssociatedBasis:
    family: FamilyId
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def forms(self) -> list[DifferentialForm]:
        return [el.form for el in self.elements]

    def spanning_set(self) -> SpanningSet:
        return SpanningSet(
            self.family.n,
            self.family.k,
            tuple(el.form for el in self.elements),
            tuple(str(el.subspace) for el in self.elements),
            self.family,
        )


# --- row construction helpers ---------------------------------------------------------


class _Cube:
    def __init__(self, n: int):
        self.n = n
        self.zero = Polynomial(n)
        self.one = Polynomial.constant(n)
        self.x = [Polynomial.variable(n, a) for a in range(n)]

    def m(self, a: int, e: int) -> Polynomial:
        """x_a^e, with negative powers read as 0."""
        return self.zero if e < 0 else self.x[a] ** e

    def mono(self, *pairs) -> Polynomial:
        out = self.one
        for a, e in pairs:
            out = out * self.m(a, e)
        return out

    def B(self, a: int) -> Polynomial:
        return self.x[a] ** 2 - 1

    def L(self, a: int, s: int) -> Polynomial:
        return self.x[a] + s


# a row: axes carrying (v +- 1) factors, and a builder from {axis: sign} to columns
Row = tuple  # (tuple[int, ...], Callable[[dict], Sequence[Polynomial]])


def _sum_eq(total: int, count: int) -> Iterator[tuple]:
    if total < 0:
        return
    for e in itertools.product(range(total + 1), repeat=count):
        if sum(e) == total:
            yield e


def _max_eq(target: int, shifts: Sequence[int]) -> Iterator[tuple]:
    """Exponent tuples e >= 0 with max(e_v + shift_v) == target, lexicographic."""
    ranges = [range(max(target - s, -1) + 1) for s in shifts]
    for e in itertools.product(*ranges):
        if max(a + s for a, s in zip(e, shifts)) == target:
            yield e


# --- 2D -------------------------------------------------------------------------------


def _v0(c: _Cube, i: int) -> list[Row]:
    axes = tuple(range(c.n))

    def build(s):
        out = c.one
        for a in axes:
            out = out * c.L(a, s[a])
        return [out]

    return [(axes, build)]


def _e0_2(c, i):
    return [
        ((0,), lambda s: [c.m(1, i) * c.L(0, s[0]) * c.B(1)]),
        ((1,), lambda s: [c.m(0, i) * c.L(1, s[1]) * c.B(0)]),
    ]


def _f0_2_rows(c, pairs):
    return [((), lambda s, j=j, k=k: [c.mono((0, j), (1, k)) * c.B(0) * c.B(1)]) for j, k in pairs]


def _f0_2(c, i):
    return _f0_2_rows(c, _sum_eq(i - 4, 2))


def _ft0_2(c, i):
    return _f0_2_rows(c, _max_eq(i - 1, (0, 0)))


def _e1_2(c, i):
    return [
        ((1,), lambda s: [c.m(0, i) * c.L(1, s[1]), c.zero]),
        ((0,), lambda s: [c.zero, c.m(1, i) * c.L(0, s[0])]),
    ]


def _et1_2(c, i):
    return [
        ((1,), lambda s: [(i + 1) * c.m(0, i) * c.L(1, s[1]), c.m(0, i - 1) * c.B(0)]),
        ((0,), lambda s: [c.m(1, i - 1) * c.B(1), (i + 1) * c.m(1, i) * c.L(0, s[0])]),
    ]


def _f1_2_dx(c, j, k):
    return ((), lambda s: [c.mono((0, j), (1, k)) * c.B(1), c.zero])


def _f1_2_dy(c, j, k):
    return ((), lambda s: [c.zero, c.mono((0, j), (1, k)) * c.B(0)])


def _f1_2(c, i):
    pairs = list(_sum_eq(i - 2, 2))
    return [_f1_2_dx(c, j, k) for j, k in pairs] + [_f1_2_dy(c, j, k) for j, k in pairs]


def _ft1_2(c, i):
    # the alternator variable's exponent is decremented inside the max
    return [_f1_2_dx(c, j, k) for j, k in _max_eq(i - 1, (-1, 0))] + [
        _f1_2_dy(c, j, k) for j, k in _max_eq(i - 1, (0, -1))
    ]


def _ftilde1_2(c, i):
    rows = [
        ((), lambda s: [c.m(1, i - 2) * c.B(1), c.zero]),
        ((), lambda s: [c.zero, c.m(0, i - 2) * c.B(0)]),
    ]
    for k in range(1, i - 1):
        rows.append(
            (
                (),
                lambda s, k=k: [
                    c.mono((0, k), (1, i - k - 2)) * c.B(1),
                    -c.mono((0, k - 1), (1, i - k - 1)) * c.B(0),
                ],
            )
        )
    return rows


def _f2_2(c, i):
    return [((), lambda s, j=j, k=k: [c.mono((0, j), (1, k))]) for j, k in _sum_eq(i, 2)]


def _ft2_2(c, i):
    return [((), lambda s, j=j, k=k: [c.mono((0, j), (1, k))]) for j, k in _max_eq(i - 1, (0, 0))]


# --- 3D, 0-forms ----------------------------------------------------------------------


def _e0_3(c, i):
    return [
        ((0, 1), lambda s: [c.m(2, i) * c.L(0, s[0]) * c.L(1, s[1]) * c.B(2)]),
        ((0, 2), lambda s: [c.m(1, i) * c.L(0, s[0]) * c.L(2, s[2]) * c.B(1)]),
        ((1, 2), lambda s: [c.m(0, i) * c.L(1, s[1]) * c.L(2, s[2]) * c.B(0)]),
    ]


def _f0_3_rows(c, pairs):
    pairs = list(pairs)
    rows = []
    # (face axis, monomial axes)
    for face, (a, b) in ((2, (0, 1)), (1, (0, 2)), (0, (1, 2))):
        for j, k in pairs:
            rows.append(
                (
                    (face,),
                    lambda s, face=face, a=a, b=b, j=j, k=k: [
                        c.mono((a, j), (b, k)) * c.L(face, s[face]) * c.B(a) * c.B(b)
                    ],
                )
            )
    return rows


def _f0_3(c, i):
    return _f0_3_rows(c, _sum_eq(i - 4, 2))


def _ft0_3(c, i):
    return _f0_3_rows(c, _max_eq(i - 1, (0, 0)))


def _i0_rows(c, triples):
    return [
        ((), lambda s, t=t: [c.mono((0, t[0]), (1, t[1]), (2, t[2])) * c.B(0) * c.B(1) * c.B(2)])
        for t in triples
    ]


def _i0_3(c, i):
    return _i0_rows(c, _sum_eq(i - 6, 3))


def _it0_3(c, i):
    return _i0_rows(c, _max_eq(i - 1, (0, 0, 0)))


# --- 3D, 1-forms ----------------------------------------------------------------------


def _cols3(**kw) -> Callable:
    """Place named columns (dx/dy/dz or dydz/dxdz/dxdy) into a 3-slot row."""
    order = {"dx": 0, "dy": 1, "dz": 2, "dydz": 0, "dxdz": 1, "dxdy": 2}

    def place(c):
        out = [c.zero] * 3
        for name, val in kw.items():
            out[order[name]] = val
        return out

    return place


def _e1_3(c, i):
    return [
        ((1, 2), lambda s: [c.m(0, i) * c.L(1, s[1]) * c.L(2, s[2]), c.zero, c.zero]),
        ((0, 2), lambda s: [c.zero, c.m(1, i) * c.L(0, s[0]) * c.L(2, s[2]), c.zero]),
        ((0, 1), lambda s: [c.zero, c.zero, c.m(2, i) * c.L(0, s[0]) * c.L(1, s[1])]),
    ]


def _et1_3(c, i):
    # one sign per repeated (v +- 1) factor within a row
    return [
        (
            (1, 2),
            lambda s: [
                (i + 1) * c.m(0, i) * c.L(1, s[1]) * c.L(2, s[2]),
                c.m(0, i - 1) * c.L(2, s[2]) * c.B(0),
                c.m(0, i - 1) * c.L(1, s[1]) * c.B(0),
            ],
        ),
        (
            (0, 2),
            lambda s: [
                c.m(1, i - 1) * c.L(2, s[2]) * c.B(1),
                (i + 1) * c.m(1, i) * c.L(0, s[0]) * c.L(2, s[2]),
                c.m(1, i - 1) * c.L(0, s[0]) * c.B(1),
            ],
        ),
        (
            (0, 1),
            lambda s: [
                c.m(2, i - 1) * c.L(1, s[1]) * c.B(2),
                c.m(2, i - 1) * c.L(0, s[0]) * c.B(2),
                (i + 1) * c.m(2, i) * c.L(0, s[0]) * c.L(1, s[1]),
            ],
        ),
    ]


# F_i Lambda^1 rows: (column, alternator axis, other axis, face axis).
# Column j always belongs to the alternator axis, k to the other in-face axis.
_F1_3_ROWS = (
    (0, 0, 1, 2),
    (0, 0, 2, 1),
    (1, 1, 0, 2),
    (1, 1, 2, 0),
    (2, 2, 0, 1),
    (2, 2, 1, 0),
)


def _f1_3_rows(c, pairs_for_row):
    rows = []
    for col, alt, other, face in _F1_3_ROWS:
        for j, k in pairs_for_row():
            def build(s, col=col, alt=alt, other=other, face=face, j=j, k=k):
                out = [c.zero] * 3
                out[col] = c.mono((alt, j), (other, k)) * c.L(face, s[face]) * c.B(other)
                return out

            rows.append(((face,), build))
    return rows


def _f1_3(c, i):
    return _f1_3_rows(c, lambda: _sum_eq(i - 2, 2))


def _ft1_3(c, i):
    return _f1_3_rows(c, lambda: _max_eq(i - 1, (-1, 0)))


def _fhat_first6(c, i):
    rows = []
    for col, alt, other, face in _F1_3_ROWS:
        def build(s, col=col, other=other, face=face):
            out = [c.zero] * 3
            out[col] = c.m(other, i - 2) * c.L(face, s[face]) * c.B(other)
            return out

        rows.append(((face,), build))
    return rows


def _fhat1_3(c, i):
    rows = _fhat_first6(c, i)
    X, Y, Z = 0, 1, 2
    m, B, L = c.mono, c.B, c.L
    p = i + 1
    specs = [
        (Z, lambda s, j: _cols3(dx=p * m((X, j), (Y, i - j - 2)) * L(Z, s[Z]) * B(Y),
                                dz=m((X, j - 1), (Y, i - j - 2)) * B(X) * B(Y))(c)),
        (Y, lambda s, j: _cols3(dx=p * m((X, j), (Z, i - j - 2)) * L(Y, s[Y]) * B(Z),
                                dy=m((X, j - 1), (Z, i - j - 2)) * B(X) * B(Z))(c)),
        (X, lambda s, j: _cols3(dx=m((Y, j - 1), (Z, i - j - 2)) * B(Y) * B(Z),
                                dy=p * m((Y, j), (Z, i - j - 2)) * L(X, s[X]) * B(Z))(c)),
        (Z, lambda s, j: _cols3(dy=p * m((Y, j), (X, i - j - 2)) * L(Z, s[Z]) * B(X),
                                dz=m((Y, j - 1), (X, i - j - 2)) * B(X) * B(Y))(c)),
        (Y, lambda s, j: _cols3(dy=m((Z, j - 1), (X, i - j - 2)) * B(X) * B(Z),
                                dz=p * m((Z, j), (X, i - j - 2)) * L(Y, s[Y]) * B(X))(c)),
        (X, lambda s, j: _cols3(dx=m((Z, j - 1), (Y, i - j - 2)) * B(Y) * B(Z),
                                dz=p * m((Z, j), (Y, i - j - 2)) * L(X, s[X]) * B(Y))(c)),
    ]
    for face, fn in specs:
        for j in range(1, i - 1):
            rows.append(((face,), lambda s, fn=fn, j=j: fn(s, j)))
    return rows


def _ftilde1_3(c, i):
    rows = _fhat_first6(c, i)
    X, Y, Z = 0, 1, 2
    m, B, L = c.mono, c.B, c.L
    specs = [
        (Z, lambda s, j: _cols3(dx=m((X, j), (Y, i - j - 2)) * L(Z, s[Z]) * B(Y),
                                dy=-m((X, j - 1), (Y, i - j - 1)) * L(Z, s[Z]) * B(X))(c)),
        (Y, lambda s, j: _cols3(dx=m((X, j), (Z, i - j - 2)) * L(Y, s[Y]) * B(Z),
                                dz=-m((X, j - 1), (Z, i - j - 1)) * L(Y, s[Y]) * B(X))(c)),
        (X, lambda s, j: _cols3(dy=m((Y, j), (Z, i - j - 2)) * L(X, s[X]) * B(Z),
                                dz=-m((Y, j - 1), (Z, i - j - 1)) * L(X, s[X]) * B(Y))(c)),
    ]
    for face, fn in specs:
        for j in range(1, i - 1):
            rows.append(((face,), lambda s, fn=fn, j=j: fn(s, j)))
    return rows


def _i1_rows(c, triples_for_col):
    rows = []
    bubbles = {0: (1, 2), 1: (0, 2), 2: (0, 1)}
    for col in range(3):
        a, b = bubbles[col]
        for t in triples_for_col(col):
            def build(s, col=col, a=a, b=b, t=t):
                out = [c.zero] * 3
                out[col] = c.mono((0, t[0]), (1, t[1]), (2, t[2])) * c.B(a) * c.B(b)
                return out

            rows.append(((), build))
    return rows


def _i1_3(c, i):
    return _i1_rows(c, lambda col: _sum_eq(i - 4, 3))


def _it1_3(c, i):
    return _i1_rows(c, lambda col: _max_eq(i - 1, tuple(-1 if v == col else 0 for v in range(3))))


def _itilde1_3(c, i):
    X, Y, Z = 0, 1, 2
    m, B = c.mono, c.B
    rows = [
        ((), lambda s: _cols3(dx=m((Y, i - 4)) * B(Y) * B(Z))(c)),
        ((), lambda s: _cols3(dx=m((Z, i - 4)) * B(Y) * B(Z))(c)),
        ((), lambda s: _cols3(dy=m((X, i - 4)) * B(X) * B(Z))(c)),
        ((), lambda s: _cols3(dy=m((Z, i - 4)) * B(X) * B(Z))(c)),
        ((), lambda s: _cols3(dz=m((X, i - 4)) * B(X) * B(Y))(c)),
        ((), lambda s: _cols3(dz=m((Y, i - 4)) * B(X) * B(Y))(c)),
    ]
    specs = [
        lambda j: _cols3(dx=m((X, j), (Y, i - j - 4)) * B(Y) * B(Z),
                         dy=-m((X, j - 1), (Y, i - j - 3)) * B(X) * B(Z))(c),
        lambda j: _cols3(dx=m((X, j), (Z, i - j - 4)) * B(Y) * B(Z),
                         dz=-m((X, j - 1), (Z, i - j - 3)) * B(X) * B(Y))(c),
    ]
    if i != 5:
        # this row makes the last three dependent at i = 5
        specs.append(
            lambda j: _cols3(dy=m((Y, j), (Z, i - j - 4)) * B(X) * B(Z),
                             dz=-m((Y, j - 1), (Z, i - j - 3)) * B(X) * B(Y))(c)
        )
    for fn in specs:
        for j in range(1, i - 3):
            rows.append(((), lambda s, fn=fn, j=j: fn(j)))
    return rows


# --- 3D, 2-forms ----------------------------------------------------------------------

# (column, face axis, the two in-face axes)
_F2_3_ROWS = ((0, 0, (1, 2)), (1, 1, (0, 2)), (2, 2, (0, 1)))


def _f2_3_rows(c, pairs_for_row):
    rows = []
    for col, face, (a, b) in _F2_3_ROWS:
        for j, k in pairs_for_row():
            def build(s, col=col, face=face, a=a, b=b, j=j, k=k):
                out = [c.zero] * 3
                out[col] = c.mono((a, j), (b, k)) * c.L(face, s[face])
                return out

            rows.append(((face,), build))
    return rows


def _f2_3(c, i):
    return _f2_3_rows(c, lambda: _sum_eq(i, 2))


def _ft2_3(c, i):
    # face rows carry no power of the normal variable
    return _f2_3_rows(c, lambda: _max_eq(i - 1, (0, 0)))


def _ftilde2_3(c, i):
    X, Y, Z = 0, 1, 2
    m, B, L = c.mono, c.B, c.L
    p, q = i + 1, i + 2
    rows = [
        ((X,), lambda s: _cols3(dydz=p * m((Y, i)) * L(X, s[X]), dxdz=m((Y, i - 1)) * B(Y))(c)),
        ((X,), lambda s: _cols3(dydz=p * m((Z, i)) * L(X, s[X]), dxdy=-m((Z, i - 1)) * B(Z))(c)),
        ((Y,), lambda s: _cols3(dydz=m((X, i - 1)) * B(X), dxdz=p * m((X, i)) * L(Y, s[Y]))(c)),
        ((Y,), lambda s: _cols3(dxdz=p * m((Z, i)) * L(Y, s[Y]), dxdy=m((Z, i - 1)) * B(Z))(c)),
        ((Z,), lambda s: _cols3(dydz=-m((X, i - 1)) * B(X), dxdy=p * m((X, i)) * L(Z, s[Z]))(c)),
        ((Z,), lambda s: _cols3(dxdz=m((Y, i - 1)) * B(Y), dxdy=p * m((Y, i)) * L(Z, s[Z]))(c)),
    ]
    specs = [
        (X, lambda s, j: _cols3(dydz=q * m((Y, j), (Z, i - j)) * L(X, s[X]),
                                dxdz=m((Y, j - 1), (Z, i - j)) * B(Y),
                                dxdy=-m((Y, j), (Z, i - j - 1)) * B(Z))(c)),
        (Y, lambda s, j: _cols3(dydz=m((X, j - 1), (Z, i - j)) * B(X),
                                dxdz=q * m((X, j), (Z, i - j)) * L(Y, s[Y]),
                                dxdy=m((X, j), (Z, i - j - 1)) * B(Z))(c)),
        (Z, lambda s, j: _cols3(dydz=-m((X, j - 1), (Y, i - j)) * B(X),
                                dxdz=m((X, j), (Y, i - j - 1)) * B(Y),
                                dxdy=q * m((X, j), (Y, i - j)) * L(Z, s[Z]))(c)),
    ]
    for face, fn in specs:
        for j in range(1, i):
            rows.append(((face,), lambda s, fn=fn, j=j: fn(s, j)))
    return rows


def _i2_rows(c, triples_for_col):
    rows = []
    for col in range(3):
        # column dydz carries (x^2-1), dxdz (y^2-1), dxdy (z^2-1)
        for t in triples_for_col(col):
            def build(s, col=col, t=t):
                out = [c.zero] * 3
                out[col] = c.mono((0, t[0]), (1, t[1]), (2, t[2])) * c.B(col)
                return out

            rows.append(((), build))
    return rows


def _i2_3(c, i):
    return _i2_rows(c, lambda col: _sum_eq(i - 2, 3))


def _it2_3(c, i):
    return _i2_rows(c, lambda col: _max_eq(i - 1, tuple(0 if v == col else -1 for v in range(3))))


def _itilde2_3(c, i):
    X, Y, Z = 0, 1, 2
    m, B = c.mono, c.B
    rows = [
        ((), lambda s: _cols3(dydz=m((X, i - 2)) * B(X))(c)),
        ((), lambda s: _cols3(dxdz=m((Y, i - 2)) * B(Y))(c)),
        ((), lambda s: _cols3(dxdy=m((Z, i - 2)) * B(Z))(c)),
    ]
    specs = [
        lambda j: _cols3(dydz=m((X, i - j - 2), (Y, j)) * B(X),
                         dxdz=-m((X, i - j - 1), (Y, j - 1)) * B(Y))(c),
        lambda j: _cols3(dydz=m((X, i - j - 2), (Z, j)) * B(X),
                         dxdy=m((X, i - j - 1), (Z, j - 1)) * B(Z))(c),
        lambda j: _cols3(dxdz=m((Y, i - j - 2), (Z, j)) * B(Y),
                         dxdy=-m((Y, i - j - 1), (Z, j - 1)) * B(Z))(c),
    ]
    for fn in specs:
        for j in range(1, i - 1):
            rows.append(((), lambda s, fn=fn, j=j: fn(j)))
    for j, k, l in _sum_eq(i - 2, 3):
        if k >= 1 and l >= 1:
            rows.append(
                (
                    (),
                    lambda s, j=j, k=k, l=l: _cols3(
                        dydz=m((X, j), (Y, k), (Z, l)) * B(X),
                        dxdz=-m((X, j + 1), (Y, k - 1), (Z, l)) * B(Y),
                        dxdy=m((X, j + 1), (Y, k), (Z, l - 1)) * B(Z),
                    )(c),
                )
            )
    return rows


# --- 3D, 3-forms ----------------------------------------------------------------------


def _i3_3(c, i):
    return [((), lambda s, t=t: [c.mono((0, t[0]), (1, t[1]), (2, t[2]))]) for t in _sum_eq(i, 3)]


def _it3_3(c, i):
    return [((), lambda s, t=t: [c.mono((0, t[0]), (1, t[1]), (2, t[2]))]) for t in _max_eq(i - 1, (0, 0, 0))]


# (kind, k, n) -> (minimum grade, row builder)
_REGISTRY = {
    ("V", 0, 2): (0, _v0),
    ("E", 0, 2): (0, _e0_2),
    ("F", 0, 2): (4, _f0_2),
    ("F_tensor", 0, 2): (1, _ft0_2),
    ("E", 1, 2): (0, _e1_2),
    ("E_tilde", 1, 2): (0, _et1_2),
    ("F", 1, 2): (2, _f1_2),
    ("F_tensor", 1, 2): (1, _ft1_2),
    ("F_tilde", 1, 2): (2, _ftilde1_2),
    ("F", 2, 2): (0, _f2_2),
    ("F_tensor", 2, 2): (1, _ft2_2),
    ("V", 0, 3): (0, _v0),
    ("E", 0, 3): (0, _e0_3),
    ("F", 0, 3): (4, _f0_3),
    ("F_tensor", 0, 3): (1, _ft0_3),
    ("I", 0, 3): (6, _i0_3),
    ("I_tensor", 0, 3): (1, _it0_3),
    ("E", 1, 3): (0, _e1_3),
    ("E_tilde", 1, 3): (0, _et1_3),
    ("F", 1, 3): (2, _f1_3),
    ("F_tensor", 1, 3): (1, _ft1_3),
    ("F_hat", 1, 3): (2, _fhat1_3),
    ("F_tilde", 1, 3): (2, _ftilde1_3),
    ("I", 1, 3): (4, _i1_3),
    ("I_tensor", 1, 3): (1, _it1_3),
    ("I_tilde", 1, 3): (4, _itilde1_3),
    ("F", 2, 3): (0, _f2_3),
    ("F_tensor", 2, 3): (1, _ft2_3),
    ("F_tilde", 2, 3): (1, _ftilde2_3),
    ("I", 2, 3): (2, _i2_3),
    ("I_tensor", 2, 3): (1, _it2_3),
    ("I_tilde", 2, 3): (2, _itilde2_3),
    ("I", 3, 3): (0, _i3_3),
    ("I_tensor", 3, 3): (1, _it3_3),
}


def min_grade(kind: str, k: int, n: int) -> int:
    try:
        return _REGISTRY[(kind, k, n)][0]
    except KeyError:
        raise FormError(f"no subspace {kind} for k={k}, n={n}") from None


def column_order(n: int, k: int) -> list:
    """Alternators in the order rows are written (dydz, dxdz, dxdy for 2-forms on the cube)."""
    return list(_COLUMNS[(n, k)])


def _columns_to_form(n: int, k: int, cols: Sequence[Polynomial]) -> DifferentialForm:
    return DifferentialForm(n, k, dict(zip(_COLUMNS[(n, k)], cols)))


def subspace_elements(sid: SubspaceId) -> list[BasisElement]:
    """Elements of one subspace, each with the face read off its (v +- 1) factors."""
    c = _Cube(sid.n)
    rows = _REGISTRY[(sid.kind, sid.k, sid.n)][1](c, sid.i)
    out = []
    seen = set()
    for slots, build in rows:
        for signs in itertools.product((1, -1), repeat=len(slots)):
            s = dict(zip(slots, signs))
            w = _columns_to_form(sid.n, sid.k, build(s))
            if w.is_zero() or w in seen:
                continue
            seen.add(w)
            out.append(BasisElement(w, Face(sid.n, s.items()), sid))
    return out


def subspace(sid: SubspaceId) -> SpanningSet:
    els = subspace_elements(sid)
    return SpanningSet(sid.n, sid.k, tuple(e.form for e in els), (str(sid),) * len(els), sid)


# --- tables ---------------------------------------------------------------------------

# Each summand is (kind, low, high) with bounds given as (a, b) meaning a*r + b.
_R = lambda b: (1, b)  # noqa: E731
_C = lambda b: (0, b)  # noqa: E731

_TABLES = {
    ("Q_minus", 2, 0): [(0, [("V", _C(0), _C(0))]), (1, [("E", _C(0), _R(-2))]), (2, [("F_tensor", _C(1), _R(-1))])],
    ("Q_minus", 2, 1): [(1, [("E", _C(0), _R(-1))]), (2, [("F_tensor", _C(1), _R(-1))])],
    ("Q_minus", 2, 2): [(2, [("F_tensor", _C(1), _R(0))])],
    ("S", 2, 0): [(0, [("V", _C(0), _C(0))]), (1, [("E", _C(0), _R(-2))]), (2, [("F", _C(4), _R(0))])],
    ("S", 2, 1): [
        (1, [("E", _C(0), _R(-1)), ("E_tilde", _R(0), _R(0))]),
        (2, [("F", _C(2), _R(0))]),
    ],
    ("S", 2, 2): [(2, [("F", _C(0), _R(0))])],
    ("S_minus", 2, 0): [(0, [("V", _C(0), _C(0))]), (1, [("E", _C(0), _R(-2))]), (2, [("F", _C(4), _R(0))])],
    ("S_minus", 2, 1): [
        (1, [("E", _C(0), _R(-1))]),
        (2, [("F", _C(2), _R(-1)), ("F_tilde", _R(0), _R(0))]),
    ],
    ("S_minus", 2, 2): [(2, [("F", _C(0), _R(-1))])],
    ("Q_minus", 3, 0): [
        (0, [("V", _C(0), _C(0))]),
        (1, [("E", _C(0), _R(-2))]),
        (2, [("F_tensor", _C(1), _R(-1))]),
        (3, [("I_tensor", _C(1), _R(-1))]),
    ],
    ("Q_minus", 3, 1): [
        (1, [("E", _C(0), _R(-1))]),
        (2, [("F_tensor", _C(1), _R(-1))]),
        (3, [("I_tensor", _C(1), _R(-1))]),
    ],
    ("Q_minus", 3, 2): [(2, [("F_tensor", _C(1), _R(0))]), (3, [("I_tensor", _C(1), _R(-1))])],
    # upper grade r (not r-1) so that the top-form space has r^3 elements
    ("Q_minus", 3, 3): [(3, [("I_tensor", _C(1), _R(0))])],
    ("S", 3, 0): [
        (0, [("V", _C(0), _C(0))]),
        (1, [("E", _C(0), _R(-2))]),
        (2, [("F", _C(4), _R(0))]),
        (3, [("I", _C(6), _R(0))]),
    ],
    ("S", 3, 1): [
        (1, [("E", _C(0), _R(-1)), ("E_tilde", _R(0), _R(0))]),
        (2, [("F", _C(2), _R(-1)), ("F_hat", _R(0), _R(0))]),
        (3, [("I", _C(4), _R(0))]),
    ],
    ("S", 3, 2): [
        (2, [("F", _C(0), _R(-1)), ("F_tilde", _R(0), _R(0))]),
        (3, [("I", _C(2), _R(0))]),
    ],
    # top forms: all of P_r, grades from 0
    ("S", 3, 3): [(3, [("I", _C(0), _R(0))])],
    ("S_minus", 3, 0): [
        (0, [("V", _C(0), _C(0))]),
        (1, [("E", _C(0), _R(-2))]),
        (2, [("F", _C(4), _R(0))]),
        (3, [("I", _C(6), _R(0))]),
    ],
    ("S_minus", 3, 1): [
        (1, [("E", _C(0), _R(-1))]),
        (2, [("F", _C(2), _R(-1)), ("F_tilde", _R(0), _R(0))]),
        (3, [("I", _C(4), _R(-1)), ("I_tilde", _R(0), _R(0))]),
    ],
    ("S_minus", 3, 2): [
        (2, [("F", _C(0), _R(-1))]),
        (3, [("I", _C(2), _R(-1)), ("I_tilde", _R(0), _R(0))]),
    ],
    ("S_minus", 3, 3): [(3, [("I", _C(0), _R(-1))])],
}


def table_summands(fam: FamilyId) -> list[tuple[int, SubspaceId]]:
    """(m, subspace) pairs making up the basis, in table order; out-of-range grades skipped."""
    out = []
    r = fam.r
    for m, summands in _TABLES[(fam.family, fam.n, fam.k)]:
        for kind, (a, b), (c, d) in summands:
            lo, hi = a * r + b, c * r + d
            lo = max(lo, min_grade(kind, fam.k, fam.n))
            for i in range(lo, hi + 1):
                out.append((m, SubspaceId(kind, i, fam.k, fam.n)))
    return out


def assemble(fam: FamilyId) -> AssociatedBasis:
    """Computational basis for the family, grouped by m, then summand, then face."""
    elements = []
    for m, sid in table_summands(fam):
        faces = {f: idx for idx, f in enumerate(faces_of_cube(fam.n, m))}
        els = subspace_elements(sid)
        for el in els:
            if el.face.dim != m:
                raise FormError(f"{sid} produced an element on a {el.face.dim}-face in the m={m} row")
        elements.extend(sorted(els, key=lambda el: faces[el.face]))
    return AssociatedBasis(fam, tuple(elements))


class NotComputationalError(FormError):
    pass


def associate_face(w: DifferentialForm, n: int | None = None) -> Face:
    """The unique face of dimension m_w on which w has nonzero trace."""
    n = w.n if n is None else n
    if w.n != n:
        raise FormError("form does not live on the requested cube")
    if w.is_zero():
        raise NotComputationalError("the zero form is not a computational basis element")
    m = min_trace_dim(w)
    hits = [f for f in faces_of_cube(n, m) if trace(w, f)]
    if len(hits) != 1:
        raise NotComputationalError(f"{len(hits)} faces of dimension {m} carry a nonzero trace: {hits}")
    return hits[0]
