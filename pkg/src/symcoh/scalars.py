"""Exact scalars: rationals everywhere, Gaussian rationals in one corner.

Every number the engine touches is a ``fractions.Fraction``.  Structure
constants, cochain coordinates, polynomial values: all rational, so every
rank and betti number is exact and the real and rational dimensions agree.

Gaussian rationals (a + b*i with a, b rational) exist only so that traces of
complex matrix models (unitary and quaternionic algebras) can be evaluated
exactly.  Nothing imaginary may leak out of those evaluations; ``real_part``
asserts that.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Q", "rat", "format_rational", "GaussianRational", "GI", "G_ZERO", "G_ONE"]

Q = Fraction


def rat(x) -> Fraction:
    """Coerce ints, "num/den" strings and Fractions to an exact rational.

    >>> rat("3/4")
    Fraction(3, 4)
    >>> rat(-2)
    Fraction(-2, 1)
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError("cannot interpret %r as an exact rational" % (x,))


def format_rational(q: Fraction) -> str:
    """Render a rational as "num/den", or just "num" for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


class GaussianRational:
    """a + b*i with exact rational parts.  Immutable.

    >>> GaussianRational(1, 2) * GaussianRational(1, -2)
    GaussianRational(5, 0)
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def real_part(self) -> Fraction:
        """The real part of a value that must be real.

        Trace forms on the unitary-type algebras are real on the nose; any
        imaginary residue here means a bug in the generator tables, so this
        is an assertion rather than a recoverable error.
        """
        assert self.im == 0, "imaginary residue %s leaked out of a trace evaluation" % (self.im,)
        return self.re

    def __repr__(self):
        return "GaussianRational(%s, %s)" % (self.re, self.im)


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    raise TypeError("cannot mix %r with GaussianRational" % (x,))


GI = GaussianRational(0, 1)
G_ZERO = GaussianRational(0, 0)
G_ONE = GaussianRational(1, 0)
