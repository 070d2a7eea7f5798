"""Exact linear algebra over Cyclotomic scalars, with elimination done by sympy"""

from __future__ import annotations

import functools
import math
import typing
from fractions import Fraction

import sympy
from sympy.polys.matrices import DomainMatrix
from sympy.polys.specialpolys import cyclotomic_poly

from .scalars import Cyclotomic, Rational

Vector = dict[int, Cyclotomic]


class SparseMatrix:
    """A rows × cols matrix stored as ``{(r, c): value}`` with no explicit zeros."""

    __slots__ = ('_shape', '_entries')

    def __init__(
        self, shape: tuple[int, int], entries: dict[tuple[int, int], Cyclotomic] | None = None
    ) -> None:
        self._shape = (int(shape[0]), int(shape[1]))
        self._entries = {key: value for key, value in (entries or {}).items() if value}

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls((n, n), {(i, i): Cyclotomic.one() for i in range(n)})

    @classmethod
    def monomial(
        cls, shape: tuple[int, int], images: typing.Iterable[tuple[int, int, Cyclotomic]]
    ) -> SparseMatrix:
        """Build from ``(source column, target row, scalar)`` triples."""
        return cls(shape, {(row, col): value for col, row, value in images})

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def entries(self) -> dict[tuple[int, int], Cyclotomic]:
        return self._entries

    def __getitem__(self, key: tuple[int, int]) -> Cyclotomic:
        return self._entries.get(key, Cyclotomic.zero())

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self._shape[1] != other._shape[0]:
            raise ValueError(f'shape mismatch: {self._shape} @ {other._shape}')
        by_row: dict[int, list[tuple[int, Cyclotomic]]] = {}
        for (r, c), v in other._entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Cyclotomic] = {}
        for (r, k), v in self._entries.items():
            for c, w in by_row.get(k, ()):
                out[r, c] = out[r, c] + v * w if (r, c) in out else v * w
        return SparseMatrix((self._shape[0], other._shape[1]), out)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        out = dict(self._entries)
        for key, value in other._entries.items():
            out[key] = out[key] - value if key in out else -value
        return SparseMatrix(self._shape, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self._shape == other._shape and (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self._entries

    def is_identity(self) -> bool:
        return self._shape[0] == self._shape[1] and self == SparseMatrix.identity(self._shape[0])

    def scale_rows(self, factors: typing.Sequence[Cyclotomic]) -> SparseMatrix:
        return SparseMatrix(
            self._shape, {(r, c): factors[r] * v for (r, c), v in self._entries.items()}
        )

    def trace(self) -> Cyclotomic:
        total = Cyclotomic.zero()
        for (r, c), v in self._entries.items():
            if r == c:
                total = total + v
        return total

    def column(self, c: int) -> Vector:
        return {r: v for (r, cc), v in self._entries.items() if cc == c}

    def columns(self) -> dict[int, list[tuple[int, Cyclotomic]]]:
        out: dict[int, list[tuple[int, Cyclotomic]]] = {}
        for (r, c), v in sorted(self._entries.items()):
            out.setdefault(c, []).append((r, v))
        return out

    def monomial_inverse(self) -> SparseMatrix:
        """Inverse of a matrix with exactly one nonzero entry per row and column."""
        rows, cols = zip(*self._entries) if self._entries else ((), ())
        n = self._shape[0]
        if self._shape[1] != n or sorted(rows) != list(range(n)) or sorted(cols) != list(range(n)):
            raise ValueError('matrix is not monomial')
        return SparseMatrix((n, n), {(c, r): v.inverse() for (r, c), v in self._entries.items()})

    def rows(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self._shape[0])]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def map(self, func: typing.Callable[[Cyclotomic], Cyclotomic]) -> SparseMatrix:
        return SparseMatrix(self._shape, {key: func(v) for key, v in self._entries.items()})

    def to_json(self) -> list[list[typing.Any]]:
        return [[r, c, v.to_json()] for (r, c), v in sorted(self._entries.items())]

    def __repr__(self) -> str:
        body = ', '.join(f'{key}: {v}' for key, v in sorted(self._entries.items()))
        return f'SparseMatrix({self._shape}, {{{body}}})'


# Elimination runs on sympy DomainMatrix over QQ<ζ_N>, N the lcm of the entry orders.

_X = sympy.Symbol('x')


@functools.lru_cache(maxsize=None)
def _field(order: int) -> sympy.polys.domains.Domain:
    if sympy.totient(order) == 1:
        return sympy.QQ
    minimal = sympy.Poly(cyclotomic_poly(order, _X), _X, domain=sympy.QQ)
    return sympy.QQ.algebraic_field((minimal, sympy.exp(2 * sympy.pi * sympy.I / order)))


def _scalar(value: Cyclotomic | Rational) -> Cyclotomic:
    return value if isinstance(value, Cyclotomic) else Cyclotomic.from_rational(value)


def _to_domain(value: Cyclotomic, order: int, field: typing.Any) -> typing.Any:
    coeffs = [sympy.QQ(c.numerator, c.denominator) for c in value.embed(order).coefficients]
    if field == sympy.QQ:
        return coeffs[0]
    return field(coeffs[::-1])


def _from_domain(element: typing.Any, order: int, field: typing.Any) -> Cyclotomic:
    coeffs = [element] if field == sympy.QQ else element.to_list()[::-1]
    return Cyclotomic(order, [Fraction(int(c.numerator), int(c.denominator)) for c in coeffs])


def _reduce(
    rows: typing.Sequence[typing.Sequence[Cyclotomic]], ncols: int
) -> tuple[list[list[Cyclotomic]], tuple[int, ...]]:
    """Reduced row echelon form of a dense matrix, and its pivot columns."""
    if not rows or not ncols:
        return [], ()
    order = math.lcm(1, *(value.order for row in rows for value in row))
    field = _field(order)
    matrix = DomainMatrix(
        [[_to_domain(value, order, field) for value in row] for row in rows], (len(rows), ncols), field
    )
    reduced, pivots = matrix.rref()
    echelon = [
        [_from_domain(reduced[r, c].element, order, field) for c in range(ncols)]
        for r in range(len(pivots))
    ]
    return echelon, tuple(pivots)


def _dense(rows: typing.Iterable[Vector], ncols: int) -> list[list[Cyclotomic]]:
    zero = Cyclotomic.zero()
    return [[_scalar(row.get(c, zero)) for c in range(ncols)] for row in rows if row]


def rank(rows: typing.Sequence[Vector]) -> int:
    ncols = 1 + max((c for row in rows for c in row), default=-1)
    return len(_reduce(_dense(rows, ncols), ncols)[1])


def nullspace(rows: typing.Iterable[Vector], ncols: int) -> list[Vector]:
    """Basis of ``{x : row·x = 0 for every row}``, one vector per free column."""
    echelon, pivots = _reduce(_dense(rows, ncols), ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector: Vector = {free: Cyclotomic.one()}
        for row, pivot in zip(echelon, pivots):
            if row[free]:
                vector[pivot] = -row[free]
        basis.append(vector)
    return basis


def solve(
    equations: typing.Iterable[tuple[Vector, Cyclotomic | Rational]], ncols: int
) -> Vector | None:
    """One solution of ``row·x = rhs`` with free variables at zero, or None when inconsistent."""
    zero = Cyclotomic.zero()
    augmented = [
        [_scalar(row.get(c, zero)) for c in range(ncols)] + [_scalar(rhs)]
        for row, rhs in equations
        if row or rhs
    ]
    echelon, pivots = _reduce(augmented, ncols + 1)
    if ncols in pivots:
        return None
    return {pivot: row[ncols] for row, pivot in zip(echelon, pivots) if row[ncols]}
