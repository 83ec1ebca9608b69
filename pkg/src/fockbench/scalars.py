"""Scalar backends: exact Gaussian rationals and complex doubles."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Complex, Rational

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

# relative tolerance for float-backend equality
TAU = 1e-12


class GaussianRational:
    """Complex number with rational real and imaginary parts.

    Arithmetic is closed and exact; equality is decidable.  Mixed arithmetic
    with ``int`` and ``Fraction`` is supported; mixing with floats is not,
    so a float can never silently leak into an exact computation.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return cls(other)
        return NotImplemented

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"

    def __eq__(self, other):
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == coerced.re and self.im == coerced.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = other.abs_sq()
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im


def conj(x):
    return x.conjugate()


def abs_sq(x):
    """Squared modulus; exact (a ``Fraction``) for exact scalars."""
    if isinstance(x, GaussianRational):
        return x.abs_sq()
    if isinstance(x, (int, Rational)):
        return Fraction(x) * Fraction(x)
    return x.real * x.real + x.imag * x.imag


def to_backend(x, backend: str):
    """Convert a number (or ``"p/q"`` string) to the scalar type of ``backend``."""
    if backend == EXACT:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return GaussianRational(Fraction(x))
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(x, (int, Rational)):
            return GaussianRational(x)
        if isinstance(x, float) and x.is_integer():
            return GaussianRational(int(x))
        raise TypeError(f"cannot convert {x!r} to an exact scalar")
    if backend == FLOAT:
        if isinstance(x, str):
            return complex(float(Fraction(x)))
        if isinstance(x, Complex):
            return complex(x)
        return complex(x)
    raise ValueError(f"unknown backend {backend!r}")


def is_real(x) -> bool:
    return x.imag == 0


def is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, Rational))


def close(x, y, tau: float = TAU) -> bool:
    """Equality: exact for exact scalars, relative tolerance otherwise."""
    if is_exact(x) and is_exact(y):
        return x == y
    diff = abs(complex(x) - complex(y))
    return diff <= tau * max(1.0, abs(complex(x)), abs(complex(y)))


def residual(x, y) -> float:
    if is_exact(x) and is_exact(y):
        return 0.0 if x == y else float(abs(x - y))
    return abs(complex(x) - complex(y))


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def scalar_to_json(x):
    """Compact JSON form used in reports.

    Exact integers become ints, other exact rationals ``"p/q"`` strings, and
    anything with a nonzero imaginary part an ``{"re", "im"}`` object.
    """
    if isinstance(x, (GaussianRational, Rational)):
        g = GaussianRational(x) if not isinstance(x, GaussianRational) else x

        def part(f):
            return f.numerator if f.denominator == 1 else _fraction_str(f)

        if g.im == 0:
            return part(g.re)
        return {"re": part(g.re), "im": part(g.im)}
    if isinstance(x, complex):
        if x.imag == 0:
            return x.real
        return {"re": x.real, "im": x.imag}
    return x


def scalar_from_json(obj, backend: str | None = None):
    """Inverse of :func:`scalar_to_json`; the backend is inferred when omitted."""
    if isinstance(obj, dict):
        re, im = obj.get("re", 0), obj.get("im", 0)
    elif isinstance(obj, (list, tuple)) and len(obj) == 2:
        re, im = obj
    else:
        re, im = obj, 0
    if backend is None:
        backend = FLOAT if isinstance(re, float) or isinstance(im, float) else EXACT
    for part in (re, im):
        if isinstance(part, bool) or not isinstance(part, (int, float, str)):
            raise TypeError(f"malformed scalar {obj!r}")
    if backend == EXACT:
        return GaussianRational(Fraction(re), Fraction(im))
    return complex(float(Fraction(re)) if isinstance(re, str) else float(re),
                   float(Fraction(im)) if isinstance(im, str) else float(im))
