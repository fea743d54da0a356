"""Exact coefficient field Q(i)(hbar).

Scalars are rational functions in one formal variable ``hbar`` whose
coefficients are Gaussian rationals a + b*i.  All arithmetic is exact;
numerator and denominator are kept coprime with a monic denominator, so
structural equality coincides with mathematical equality.  Conjugation maps
i -> -i and fixes hbar (hbar plays the role of a real parameter).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union


_F_ZERO = Fraction(0)


class GaussRat:
    """Gaussian rational number re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other: "GaussRat") -> "GaussRat":
        # pure-real and pure-imaginary operands dominate in practice
        if not self.im:
            if not other.im:
                return GaussRat(self.re * other.re, _F_ZERO)
            return GaussRat(self.re * other.re, self.re * other.im)
        if not self.re:
            if not other.re:
                return GaussRat(-(self.im * other.im), _F_ZERO)
            if not other.im:
                return GaussRat(_F_ZERO, self.im * other.re)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussRat") -> "GaussRat":
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


G_ZERO = GaussRat(0)
G_ONE = GaussRat(1)
G_I = GaussRat(0, 1)

# Polynomials in hbar: tuples of GaussRat coefficients, ascending degree,
# with no trailing zeros.  The zero polynomial is the empty tuple.
Poly = tuple

P_ZERO: Poly = ()
P_ONE: Poly = (G_ONE,)


def poly_trim(coeffs: list) -> Poly:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = out[k] + c
    return poly_trim(out)


def poly_neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return P_ZERO
    out = [G_ZERO] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        if not ca:
            continue
        for b, cb in enumerate(q):
            if cb:
                out[a + b] = out[a + b] + ca * cb
    return poly_trim(out)


def poly_scale(p: Poly, c: GaussRat) -> Poly:
    if not c:
        return P_ZERO
    return tuple(x * c for x in p)


def poly_conj(p: Poly) -> Poly:
    return tuple(c.conjugate() for c in p)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [G_ZERO] * max(len(p) - dq, 0)
    while len(rem) - 1 >= dq and any(rem):
        while rem and not rem[-1]:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        shift = len(rem) - 1 - dq
        factor = rem[-1] / lead
        quot[shift] = quot[shift] + factor
        for k, c in enumerate(q):
            rem[shift + k] = rem[shift + k] - factor * c
    return poly_trim(quot), poly_trim(rem)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    while q:
        _, r = poly_divmod(p, q)
        p, q = q, r
    if not p:
        return P_ZERO
    return poly_scale(p, G_ONE / p[-1])  # monic


def poly_monomial(k: int, c: GaussRat = G_ONE) -> Poly:
    return poly_trim([G_ZERO] * k + [c])


def poly_is_monomial(p: Poly) -> bool:
    return bool(p) and all(not c for c in p[:-1])


def poly_eval(p: Poly, x):
    """Horner evaluation; x may be a Fraction (exact) or complex."""
    if not p:
        return GaussRat(0) if isinstance(x, Fraction) else 0j
    if isinstance(x, Fraction):
        acc = G_ZERO
        gx = GaussRat(x)
        for c in reversed(p):
            acc = acc * gx + c
        return acc
    acc = 0j
    for c in reversed(p):
        acc = acc * x + complex(c)
    return acc


ScalarLike = Union["Scalar", GaussRat, Fraction, int]


class Scalar:
    """Element of Q(i)(hbar): a reduced fraction of hbar-polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = P_ONE, *, _normalized: bool = False):
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def coerce(value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, GaussRat):
            return Scalar((value,) if value else P_ZERO, P_ONE, _normalized=True)
        if isinstance(value, (int, Fraction)):
            g = GaussRat(value)
            return Scalar((g,) if g else P_ZERO, P_ONE, _normalized=True)
        raise TypeError(f"cannot interpret {value!r} as a scalar")

    @staticmethod
    def from_rational(re, im=0) -> "Scalar":
        return Scalar.coerce(GaussRat(re, im))

    @staticmethod
    def hbar(power: int = 1) -> "Scalar":
        return Scalar(poly_monomial(power), P_ONE, _normalized=True)

    # -- arithmetic ----------------------------------------------------

    _COERCIBLE = (GaussRat, Fraction, int)

    def __add__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, (Scalar, *Scalar._COERCIBLE)):
            return NotImplemented
        other = Scalar.coerce(other)
        if self.den == P_ONE and other.den == P_ONE:
            return Scalar(poly_add(self.num, other.num), P_ONE, _normalized=True)
        num = poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den))
        return Scalar(num, poly_mul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, (Scalar, *Scalar._COERCIBLE)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, (Scalar, *Scalar._COERCIBLE)):
            return NotImplemented
        return Scalar.coerce(other) + (-self)

    def __neg__(self) -> "Scalar":
        return Scalar(poly_neg(self.num), self.den, _normalized=True)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, (Scalar, *Scalar._COERCIBLE)):
            return NotImplemented
        other = Scalar.coerce(other)
        if self.num == P_ONE and self.den == P_ONE:
            return other
        if other.num == P_ONE and other.den == P_ONE:
            return self
        if not self.num or not other.num:
            return S_ZERO
        if self.den == P_ONE and other.den == P_ONE:
            return Scalar(poly_mul(self.num, other.num), P_ONE, _normalized=True)
        return Scalar(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, (Scalar, *Scalar._COERCIBLE)):
            return NotImplemented
        other = Scalar.coerce(other)
        if not other.num:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(poly_mul(self.num, other.den), poly_mul(self.den, other.num))

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, (Scalar, *Scalar._COERCIBLE)):
            return NotImplemented
        return Scalar.coerce(other) / self

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("zero scalar has no inverse")
        return Scalar(self.den, self.num)

    def conjugate(self) -> "Scalar":
        """Complex conjugation: i -> -i, hbar fixed."""
        return Scalar(poly_conj(self.num), poly_conj(self.den))

    # -- predicates and conversions -------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == P_ONE and self.den == P_ONE

    def is_polynomial(self) -> bool:
        return self.den == P_ONE

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and self.den == P_ONE

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError("scalar is not constant in hbar")
        return self.num[0] if self.num else G_ZERO

    def eval_exact(self, hbar: Fraction) -> GaussRat:
        den = poly_eval(self.den, hbar)
        if not den:
            raise ZeroDivisionError(f"denominator vanishes at hbar={hbar}")
        return poly_eval(self.num, hbar) / den

    def eval_complex(self, hbar: complex) -> complex:
        den = poly_eval(self.den, complex(hbar))
        return poly_eval(self.num, complex(hbar)) / den

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussRat)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        from .textform import scalar_text

        return scalar_text(self)


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num = poly_trim(list(num))
    den = poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return P_ZERO, P_ONE
    if den == P_ONE:
        return num, den
    # monomial denominators (hbar powers) are the common case; shift instead
    # of running the Euclidean algorithm
    if poly_is_monomial(den):
        shift = 0
        for c in num:
            if c:
                break
            shift += 1
        k = min(shift, len(den) - 1)
        num = num[k:]
        den = den[k:]
        lead = den[-1]
        if lead != G_ONE:
            num = poly_scale(num, G_ONE / lead)
            den = poly_scale(den, G_ONE / lead)
        return num, den
    g = poly_gcd(num, den)
    if len(g) > 1:
        num, _ = poly_divmod(num, g)
        den, _ = poly_divmod(den, g)
    lead = den[-1]
    if lead != G_ONE:
        num = poly_scale(num, G_ONE / lead)
        den = poly_scale(den, G_ONE / lead)
    return num, den


S_ZERO = Scalar(P_ZERO, P_ONE, _normalized=True)
S_ONE = Scalar(P_ONE, P_ONE, _normalized=True)
S_I = Scalar((G_I,), P_ONE, _normalized=True)
S_MINUS_I = Scalar((-G_I,), P_ONE, _normalized=True)
S_HBAR = Scalar.hbar()
