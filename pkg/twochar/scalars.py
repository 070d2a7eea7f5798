"""Exact arithmetic in cyclotomic fields Q(ζ_N)"""

from __future__ import annotations

import cmath
import enum
import functools
import math
import typing
from fractions import Fraction

import sympy
from sympy.polys.matrices import DomainMatrix
from sympy.polys.specialpolys import cyclotomic_poly

Rational = int | Fraction


class ZeroInversionError(ZeroDivisionError):
    pass


class FieldOp(str, enum.Enum):
    add = 'add'
    mul = 'mul'
    neg = 'neg'
    inv = 'inv'


@functools.lru_cache(maxsize=None)
def _reduction_table(order: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coordinates of x^k modulo the order-th cyclotomic polynomial, for k in 0..order-1"""
    degree = int(sympy.totient(order))
    # monic, highest degree first
    poly = [int(c) for c in cyclotomic_poly(order, polys=True).all_coeffs()]
    lower = poly[1:][::-1]  # x^degree = -sum(lower[m] x^m)
    rows = []
    current = [Fraction(0)] * degree
    current[0] = Fraction(1)
    for _ in range(order):
        rows.append(tuple(current))
        top = current[-1]
        shifted = [Fraction(0)] + current[:-1]
        if top:
            shifted = [s - top * lower[m] for m, s in enumerate(shifted)]
        current = shifted
    return tuple(rows)


def _degree(order: int) -> int:
    return len(_reduction_table(order)[0])


def _reduce_powers(order: int, raw: dict[int, Fraction]) -> tuple[Fraction, ...]:
    table = _reduction_table(order)
    out = [Fraction(0)] * len(table[0])
    for k, value in raw.items():
        if not value:
            continue
        for m, t in enumerate(table[k % order]):
            if t:
                out[m] += value * t
    return tuple(out)


_X = sympy.Symbol('x')


@functools.lru_cache(maxsize=None)
def _modulus(order: int) -> sympy.Poly:
    return cyclotomic_poly(order, _X, polys=True)


def _as_poly(coeffs: typing.Sequence[Fraction]) -> sympy.Poly:
    return sympy.Poly.from_list(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], _X, domain=sympy.QQ
    )


def _from_poly(poly: sympy.Poly, degree: int) -> tuple[Fraction, ...]:
    low_first = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return tuple(low_first + [Fraction(0)] * (degree - len(low_first)))


@functools.lru_cache(maxsize=4096)
def _minimal_form(order: int, coeffs: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    """The smallest d | order with the value in Q(ζ_d), and its coordinates there.

    The fields containing a value are closed under gcd of their orders, so d does not
    depend on the order the value happens to be written at.
    """
    for d in sympy.divisors(order):
        if d == order:
            break
        step, width = order // d, _degree(d)
        # columns: images of ζ_d^k in Q(ζ_order), augmented by the value itself
        images = [_reduce_powers(order, {k * step: Fraction(1)}) for k in range(width)]
        rows = [
            [sympy.QQ(c.numerator, c.denominator) for c in [*(image[m] for image in images), coeffs[m]]]
            for m in range(len(coeffs))
        ]
        reduced, pivots = DomainMatrix(rows, (len(rows), width + 1), sympy.QQ).rref()
        if width in pivots:
            continue
        found = [Fraction(0)] * width
        for row, col in enumerate(pivots):
            value = reduced[row, width].element
            found[col] = Fraction(int(value.numerator), int(value.denominator))
        return d, tuple(found)
    return order, coeffs


class Cyclotomic:
    """An element of Q(ζ_N) in the power basis ζ^0 .. ζ^{φ(N)-1}.

    Values are immutable; equal values of the same order have identical coefficient tuples.
    Operands of different orders are embedded into Q(ζ_lcm) before combining.
    """

    __slots__ = ('_order', '_coeffs')

    def __init__(self, order: int, coefficients: typing.Iterable[Rational] = ()) -> None:
        if order < 1:
            raise ValueError(f'cyclotomic order must be a positive integer, got {order}')
        coeffs = [Fraction(c) for c in coefficients]
        degree = _degree(order)
        if len(coeffs) > degree:
            coeffs = list(_reduce_powers(order, dict(enumerate(coeffs))))
        coeffs += [Fraction(0)] * (degree - len(coeffs))
        self._order = order
        self._coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj._order = order
        obj._coeffs = coeffs
        return obj

    @classmethod
    def from_rational(cls, value: Rational, order: int = 1) -> Cyclotomic:
        coeffs = [Fraction(0)] * _degree(order)
        coeffs[0] = Fraction(value)
        return cls._raw(order, tuple(coeffs))

    @classmethod
    def zero(cls, order: int = 1) -> Cyclotomic:
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> Cyclotomic:
        return cls.from_rational(1, order)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    # embedding

    def embed(self, order: int) -> Cyclotomic:
        """Embed into Q(ζ_order); ``order`` must be a multiple of the current order."""
        if order == self._order:
            return self
        if order % self._order:
            raise ValueError(f'cannot embed Q(ζ_{self._order}) into Q(ζ_{order})')
        step = order // self._order
        raw = {k * step: c for k, c in enumerate(self._coeffs) if c}
        return Cyclotomic._raw(order, _reduce_powers(order, raw))

    def _align(self, other: Cyclotomic | Rational) -> tuple[Cyclotomic, Cyclotomic]:
        if not isinstance(other, Cyclotomic):
            return self, Cyclotomic.from_rational(other, self._order)
        if other._order == self._order:
            return self, other
        order = math.lcm(self._order, other._order)
        return self.embed(order), other.embed(order)

    # predicates

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f'{self!r} is not rational')
        return self._coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self._coeffs[0].denominator == 1

    # arithmetic

    def __add__(self, other: Cyclotomic | Rational) -> Cyclotomic:
        if not isinstance(other, Cyclotomic | int | Fraction):
            return NotImplemented
        a, b = self._align(other)
        return Cyclotomic._raw(a._order, tuple(x + y for x, y in zip(a._coeffs, b._coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self._order, tuple(-x for x in self._coeffs))

    def __sub__(self, other: Cyclotomic | Rational) -> Cyclotomic:
        if not isinstance(other, Cyclotomic | int | Fraction):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Rational) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: Cyclotomic | Rational) -> Cyclotomic:
        if isinstance(other, int | Fraction):
            return Cyclotomic._raw(self._order, tuple(x * other for x in self._coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._align(other)
        if a.is_rational():
            return b * a._coeffs[0]
        if b.is_rational():
            return a * b._coeffs[0]
        raw: dict[int, Fraction] = {}
        for i, x in enumerate(a._coeffs):
            if not x:
                continue
            for j, y in enumerate(b._coeffs):
                if y:
                    raw[i + j] = raw.get(i + j, Fraction(0)) + x * y
        return Cyclotomic._raw(a._order, _reduce_powers(a._order, raw))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        """Multiplicative inverse, as the inverse of the coefficient polynomial modulo Φ_N."""
        if self.is_zero():
            raise ZeroInversionError('inversion of the zero cyclotomic')
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self._coeffs[0], self._order)
        inverse = sympy.invert(_as_poly(self._coeffs), _modulus(self._order), polys=True)
        return Cyclotomic._raw(self._order, _from_poly(inverse, len(self._coeffs)))

    def __truediv__(self, other: Cyclotomic | Rational) -> Cyclotomic:
        if isinstance(other, int | Fraction):
            if not other:
                raise ZeroInversionError('division by zero')
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Rational) -> Cyclotomic:
        return self.inverse() * other

    def __pow__(self, exponent: int) -> Cyclotomic:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self._order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> Cyclotomic:
        """Complex conjugate, ζ ↦ ζ^{-1}."""
        raw = {(-k) % self._order: c for k, c in enumerate(self._coeffs) if c}
        return Cyclotomic._raw(self._order, _reduce_powers(self._order, raw))

    # comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            return self.is_rational() and self._coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._align(other)
        return a._coeffs == b._coeffs

    def __hash__(self) -> int:
        order, coeffs = _minimal_form(self._order, self._coeffs)
        if order == 1:
            return hash(coeffs[0])
        return hash((order, coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f'Cyclotomic({self._order}, {[str(c) for c in self._coeffs]})'

    def __str__(self) -> str:
        if self.is_rational():
            return str(self._coeffs[0])
        terms = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            power = '' if k == 0 else (f'ζ{self._order}' if k == 1 else f'ζ{self._order}^{k}')
            if not power:
                terms.append(str(c))
            elif c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f'-{power}')
            else:
                terms.append(f'{c}*{power}')
        return ' + '.join(terms).replace('+ -', '- ')

    # serialization

    def to_json(self) -> dict[str, typing.Any]:
        return {'order': self._order, 'coefficients': [str(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: typing.Any, order: int | None = None) -> Cyclotomic:
        """Accept ``{"order": N, "coefficients": [...]}``, a rational (int or "p/q" string),
        or ``{"root": [N, k]}`` for ζ_N^k."""
        if isinstance(data, dict):
            if 'root' in data:
                n, k = data['root']
                return root_of_unity(n, k)
            return cls(int(data['order']), [Fraction(c) for c in data['coefficients']])
        if isinstance(data, bool):
            raise ValueError(f'{data!r} is not a scalar')
        return cls.from_rational(Fraction(data), order or 1)


def root_of_unity(order: int, k: int) -> Cyclotomic:
    """Return ζ_order^k reduced canonically.

    Parameters
    ----------
    order : int
        The N of the primitive root ζ_N; must be positive.
    k : int
        The exponent (any integer, read modulo N).

    Returns
    -------
    Cyclotomic
        An element of Q(ζ_N).
    """
    if order < 1:
        raise ValueError(f'root_of_unity requires a positive order, got {order}')
    return Cyclotomic._raw(order, _reduce_powers(order, {k % order: Fraction(1)}))


def field_arithmetic(
    a: Cyclotomic, b: Cyclotomic | None = None, op: FieldOp | str = FieldOp.add
) -> Cyclotomic:
    """Apply one exact field operation; ``b`` is ignored for the unary ``neg`` and ``inv``."""
    op = FieldOp(op)
    if op is FieldOp.add:
        return a + b
    if op is FieldOp.mul:
        return a * b
    if op is FieldOp.neg:
        return -a
    return a.inverse()


def approximate_complex(a: Cyclotomic) -> tuple[float, float]:
    """Numerical embedding ζ_N ↦ exp(2πi/N), for display only."""
    zeta = cmath.exp(2j * cmath.pi / a.order)
    value = sum(float(c) * zeta**k for k, c in enumerate(a.coefficients))
    value = complex(value)
    return (value.real, value.imag)


def discrete_log(value: Cyclotomic, order: int) -> int | None:
    """The k in 0..order-1 with ζ_order^k == value, or None when value is not such a root."""
    for k in range(order):
        if root_of_unity(order, k) == value:
            return k
    return None
