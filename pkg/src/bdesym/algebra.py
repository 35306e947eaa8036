"""Exact sparse polynomials over Q and Q[i].

Real polynomials live in ``x, y``; complex ones in ``z, zb`` (``zb`` is the
conjugate variable).  Conversion between the two uses ``z = x + iy``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple, Union

from .errors import NotRealValued

Rational = Fraction
Monomial = Tuple[int, int]
Number = Union[int, Fraction]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Number = 0, im: Number = 0):
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def coerce(v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        return GaussianRational(_frac(v), 0)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        o = _frac(other)
        return GaussianRational(self.re * o, self.im * o)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{format_rational(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        im = "i" if mag == 1 else f"{format_rational(mag)}*i"
        return f"({format_rational(self.re)} {sign} {im})"


I = GaussianRational(0, 1)


class _SparsePoly:
    """Shared dict-of-monomials machinery.  Instances are treated as immutable."""

    __slots__ = ("terms",)
    _vars: Tuple[str, str] = ("?", "?")

    def __init__(self, terms: Dict[Monomial, object] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = self._coerce(c)
                if c:
                    clean[(int(mono[0]), int(mono[1]))] = c
        self.terms = clean

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c=1):
        return cls({(0, 0): c})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def monomial(cls, e0: int, e1: int, c=1):
        return cls({(e0, e1): c})

    def _lift(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, _SparsePoly):
            return NotImplemented
        return type(self).const(other)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, _SparsePoly):
            c = self._coerce(other)
            if not c:
                return self.zero()
            return self._raw({m: v * c for m, v in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (a0, a1), ca in self.terms.items():
            for (b0, b1), cb in other.terms.items():
                m = (a0 + b0, a1 + b1)
                s = out.get(m)
                out[m] = ca * cb if s is None else s + ca * cb
        return self._raw({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, _SparsePoly):
            return NotImplemented
        c = self._coerce(other)
        return self._raw({m: v / c for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e0: int, e1: int):
        return self.terms.get((e0, e1), self._coerce(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({a + b for a, b in self.terms}) <= 1

    def homogeneous_part(self, t: int):
        return self._raw({m: c for m, c in self.terms.items() if m[0] + m[1] == t})

    def sorted_terms(self):
        # graded lex, first variable before second
        return sorted(self.terms.items(), key=lambda mc: (-(mc[0][0] + mc[0][1]), -mc[0][0]))

    def _mono_str(self, m: Monomial) -> str:
        parts = []
        for v, e in zip(self._vars, m):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class RealPoly(_SparsePoly):
    """Polynomial in ``x, y`` with rational coefficients."""

    __slots__ = ()
    _vars = ("x", "y")

    @staticmethod
    def _coerce(c):
        return _frac(c)

    @classmethod
    def x(cls):
        return cls._raw({(1, 0): Fraction(1)})

    @classmethod
    def y(cls):
        return cls._raw({(0, 1): Fraction(1)})

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            mono = self._mono_str(m)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def evaluate(self, x, y):
        """Evaluate at a point; exact for rationals, float otherwise."""
        total = 0
        for (ex, ey), c in self.terms.items():
            if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
                total += c * Fraction(x) ** ex * Fraction(y) ** ey
            else:
                total = total + float(c) * x**ex * y**ey
        return total

    def linear_substitute(self, m00, m01, m10, m11) -> "RealPoly":
        """Return ``p(m00*x + m01*y, m10*x + m11*y)`` for a rational matrix."""
        X = RealPoly({(1, 0): m00, (0, 1): m01})
        Y = RealPoly({(1, 0): m10, (0, 1): m11})
        xp = [RealPoly.const(1)]
        yp = [RealPoly.const(1)]
        out = RealPoly.zero()
        for (ex, ey), c in self.terms.items():
            while len(xp) <= ex:
                xp.append(xp[-1] * X)
            while len(yp) <= ey:
                yp.append(yp[-1] * Y)
            out = out + xp[ex] * yp[ey] * c
        return out

    def swap_xy(self) -> "RealPoly":
        return RealPoly._raw({(b, a): c for (a, b), c in self.terms.items()})


class ComplexPoly(_SparsePoly):
    """Polynomial in ``z, zb`` with Gaussian rational coefficients.

    The key ``(j, k)`` stands for ``z**j * zb**k``.
    """

    __slots__ = ()
    _vars = ("z", "zb")

    @staticmethod
    def _coerce(c):
        return GaussianRational.coerce(c)

    @classmethod
    def z(cls):
        return cls._raw({(1, 0): GaussianRational(1)})

    @classmethod
    def zb(cls):
        return cls._raw({(0, 1): GaussianRational(1)})

    def conj(self) -> "ComplexPoly":
        """Pointwise complex conjugate of the function ``z -> f(z)``."""
        return ComplexPoly._raw({(k, j): c.conjugate() for (j, k), c in self.terms.items()})

    def is_real_valued(self) -> bool:
        for (j, k), c in self.terms.items():
            if self.terms.get((k, j)) != c.conjugate():
                return False
        return True

    def real_part(self) -> "ComplexPoly":
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self) -> "ComplexPoly":
        return (self - self.conj()) * GaussianRational(0, Fraction(-1, 2))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = self._mono_str(m)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _x_power(e: int) -> ComplexPoly:
    if e == 0:
        return ComplexPoly.const(1)
    return _x_power(e - 1) * ComplexPoly({(1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2)})


@lru_cache(maxsize=None)
def _y_power(e: int) -> ComplexPoly:
    if e == 0:
        return ComplexPoly.const(1)
    half_i = GaussianRational(0, Fraction(1, 2))
    # y = (z - zb) / (2i) = -i/2 z + i/2 zb
    return _y_power(e - 1) * ComplexPoly({(1, 0): -half_i, (0, 1): half_i})


@lru_cache(maxsize=None)
def _zz_power(j: int, k: int) -> Dict[Monomial, GaussianRational]:
    """(x+iy)^j (x-iy)^k as a dict over monomials in x, y."""
    if j == 0 and k == 0:
        return {(0, 0): GaussianRational(1)}
    if j > 0:
        prev = _zz_power(j - 1, k)
        factor = {(1, 0): GaussianRational(1), (0, 1): GaussianRational(0, 1)}
    else:
        prev = _zz_power(j, k - 1)
        factor = {(1, 0): GaussianRational(1), (0, 1): GaussianRational(0, -1)}
    out: Dict[Monomial, GaussianRational] = {}
    for (a, b), c in prev.items():
        for (p, q), f in factor.items():
            m = (a + p, b + q)
            out[m] = out.get(m, GaussianRational(0)) + c * f
    return {m: c for m, c in out.items() if c}


def real_to_complex(p: RealPoly) -> ComplexPoly:
    """Substitute ``x = (z+zb)/2``, ``y = (z-zb)/(2i)``."""
    out = ComplexPoly.zero()
    for (ex, ey), c in p.terms.items():
        out = out + _x_power(ex) * _y_power(ey) * c
    return out


def complex_to_real(q: ComplexPoly) -> RealPoly:
    """Substitute ``z = x+iy``, ``zb = x-iy``; the result must be real."""
    acc: Dict[Monomial, GaussianRational] = {}
    for (j, k), c in q.terms.items():
        for m, v in _zz_power(j, k).items():
            acc[m] = acc.get(m, GaussianRational(0)) + c * v
    out = {}
    for m, v in acc.items():
        if v.im != 0:
            raise NotRealValued(f"imaginary residue {v} on x^{m[0]} y^{m[1]} in {q}")
        if v.re != 0:
            out[m] = v.re
    return RealPoly(out)


@dataclass(frozen=True)
class ComplexMapForm:
    """The map ``w -> alpha(z) w + beta(z) conj(w)`` on tangent vectors."""

    alpha: ComplexPoly
    beta: ComplexPoly

    def __add__(self, other: "ComplexMapForm") -> "ComplexMapForm":
        return ComplexMapForm(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "ComplexMapForm") -> "ComplexMapForm":
        return ComplexMapForm(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self):
        return ComplexMapForm(-self.alpha, -self.beta)

    def scale(self, r) -> "ComplexMapForm":
        """Multiply by a rational scalar or by a real-valued polynomial."""
        return ComplexMapForm(self.alpha * r, self.beta * r)

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.beta.is_zero()

    def degree(self) -> int:
        return max(self.alpha.degree(), self.beta.degree())

    def symmetrized(self) -> "ComplexMapForm":
        """Drop the imaginary part of alpha, i.e. the antisymmetric component."""
        return ComplexMapForm(self.alpha.real_part(), self.beta)

    def leading_coefficient(self):
        """First nonzero coefficient, alpha before beta, graded lex within each."""
        for poly in (self.alpha, self.beta):
            items = poly.sorted_terms()
            if items:
                return items[0][1]
        return None

    def normalized(self) -> "ComplexMapForm":
        """Rescale by a rational so the leading coefficient is +1 (or +i when purely imaginary)."""
        lead = self.leading_coefficient()
        if lead is None:
            return self
        r = lead.re if lead.re != 0 else lead.im
        return self.scale(1 / r)

    def __str__(self):
        parts = []
        if self.alpha:
            parts.append(f"({self.alpha})*w")
        if self.beta:
            parts.append(f"({self.beta})*wb")
        return " + ".join(parts) if parts else "0"


def triple_to_complex_form(a: RealPoly, b: RealPoly, c: RealPoly) -> ComplexMapForm:
    """Complex form of the symmetric matrix ``[[c, b], [b, a]]``."""
    alpha = real_to_complex((a + c) * Fraction(1, 2))
    beta = real_to_complex((c - a) * Fraction(1, 2)) + real_to_complex(b) * I
    return ComplexMapForm(alpha, beta)


def complex_form_to_triple(f: ComplexMapForm) -> Tuple[RealPoly, RealPoly, RealPoly]:
    """Symmetrize and read off ``(a, b, c)``; the imaginary part of alpha is discarded."""
    a1 = complex_to_real(f.alpha.real_part())
    b1 = complex_to_real(f.beta.real_part())
    b2 = complex_to_real(f.beta.imag_part())
    return a1 - b1, b2, a1 + b1


