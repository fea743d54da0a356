"""Shipped algebra presentations and their standard derivations.

Three presentations are bundled:

* ``fuzzy_sphere()``   - hermitian X, Y, Z with [X_i, X_j] = i*hbar*eps_ijk X_k
  and X^2 + Y^2 + Z^2 = 1.  Normal words have the shape X^a Y^b Z^c, c <= 1.
  The rotation derivations d_a(f) = (1/(i*hbar)) [X_a, f] close under the
  bracket with structure constants eps_abc.
* ``weyl_uv()``        - hermitian U, V with [U, V] = i*hbar.
* ``weyl_lambda()``    - the complex chart L = U + iV, Ls = L* of the same
  algebra, with [L, Ls] = 2*hbar; normal words are L^a Ls^b.

hbar is a formal parameter by default; passing a rational value builds the
presentation at that parameter point (used by the monopole bundle where
exactness requires rational alpha).

Sign conventions for the Weyl derivations: with

    d   = (1/(2 hbar)) [. , Ls]          dbar = (1/(2 hbar)) [L , .]
    d_u = d + dbar                       d_v  = i (d - dbar)

the pair (d_u, d_v) is hermitian and commuting, d = (d_u - i d_v)/2,
dbar = (d_u + i d_v)/2, the adjoint of d is dbar, and
d_u^2 + d_v^2 = 4 d dbar.  In particular d(L) = dbar(Ls) = 1 and
d(Ls) = dbar(L) = 0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import AlgebraElement, Derivation, Presentation
from .scalars import S_I, S_MINUS_I, S_ONE, Scalar

EPSILON = {
    (1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
    (2, 1, 3): -1, (3, 2, 1): -1, (1, 3, 2): -1,
}


def epsilon(i: int, j: int, k: int) -> int:
    """Totally antisymmetric symbol on indices 1..3, eps_123 = 1."""
    return EPSILON.get((i, j, k), 0)


def _hbar_scalar(hbar_value: Fraction | None) -> Scalar:
    if hbar_value is None:
        return Scalar.hbar()
    return Scalar.coerce(hbar_value)


def fuzzy_sphere(hbar_value: Fraction | None = None) -> Presentation:
    """Unit fuzzy sphere generated by hermitian X, Y, Z."""
    return _fuzzy_sphere_cached(hbar_value)


@lru_cache(maxsize=None)
def _fuzzy_sphere_cached(hbar_value: Fraction | None) -> Presentation:
    if hbar_value is not None and hbar_value <= 0:
        raise ValueError("hbar must be positive")
    h = _hbar_scalar(hbar_value)
    ih = S_I * h
    name = "fuzzy-sphere" if hbar_value is None else f"fuzzy-sphere@{hbar_value}"
    pres = Presentation(
        name,
        ("X", "Y", "Z"),
        {"X": "X", "Y": "Y", "Z": "Z"},
        [
            (("Y", "X"), {("X", "Y"): S_ONE, ("Z",): -ih}),
            (("Z", "X"), {("X", "Z"): S_ONE, ("Y",): ih}),
            (("Z", "Y"), {("Y", "Z"): S_ONE, ("X",): -ih}),
            (("Z", "Z"), {(): S_ONE, ("X", "X"): -S_ONE, ("Y", "Y"): -S_ONE}),
        ],
        hbar_value=hbar_value,
    )
    # d_a = (1/(i hbar)) [X_a, .]
    c = S_MINUS_I / h
    for k, g in enumerate(("X", "Y", "Z"), start=1):
        pres.register_derivation(Derivation(pres, c, pres.gen(g), name=f"d{k}"))
    return pres


def weyl_uv(hbar_value: Fraction | None = None) -> Presentation:
    """Weyl algebra on hermitian generators U, V with [U, V] = i*hbar."""
    return _weyl_uv_cached(hbar_value)


@lru_cache(maxsize=None)
def _weyl_uv_cached(hbar_value: Fraction | None) -> Presentation:
    h = _hbar_scalar(hbar_value)
    name = "weyl-uv" if hbar_value is None else f"weyl-uv@{hbar_value}"
    pres = Presentation(
        name,
        ("U", "V"),
        {"U": "U", "V": "V"},
        [(("V", "U"), {("U", "V"): S_ONE, (): -(S_I * h)})],
        hbar_value=hbar_value,
    )
    pres.register_derivation(Derivation(pres, S_I / h, pres.gen("V"), name="du"))
    pres.register_derivation(Derivation(pres, S_MINUS_I / h, pres.gen("U"), name="dv"))
    return pres


def weyl_lambda(hbar_value: Fraction | None = None) -> Presentation:
    """Complex chart of the Weyl algebra: L, Ls with [L, Ls] = 2*hbar."""
    return _weyl_lambda_cached(hbar_value)


@lru_cache(maxsize=None)
def _weyl_lambda_cached(hbar_value: Fraction | None) -> Presentation:
    h = _hbar_scalar(hbar_value)
    name = "weyl-lambda" if hbar_value is None else f"weyl-lambda@{hbar_value}"
    pres = Presentation(
        name,
        ("L", "Ls"),
        {"L": "Ls", "Ls": "L"},
        [(("Ls", "L"), {("L", "Ls"): S_ONE, (): -(Scalar.coerce(2) * h)})],
        hbar_value=hbar_value,
    )
    half = Scalar.coerce(Fraction(1, 2))
    L, Ls = pres.gen("L"), pres.gen("Ls")
    pres.register_derivation(Derivation(pres, -half / h, Ls, name="d"))
    pres.register_derivation(Derivation(pres, half / h, L, name="dbar"))
    pres.register_derivation(Derivation(pres, -half / h, Ls - L, name="du"))
    pres.register_derivation(
        Derivation(pres, -(half * S_I) / h, L + Ls, name="dv")
    )
    return pres


def to_lambda_chart(x: AlgebraElement) -> AlgebraElement:
    """Rewrite a (U, V)-chart element in the L = U + iV chart, losslessly."""
    src = x.presentation
    dst = weyl_lambda(src.hbar_value)
    half = Scalar.coerce(Fraction(1, 2))
    images = {
        "U": (dst.gen("L") + dst.gen("Ls")).scale(half),
        "V": (dst.gen("L") - dst.gen("Ls")).scale(half * S_MINUS_I),
    }
    return _substitute(x, dst, images)


def to_uv_chart(x: AlgebraElement) -> AlgebraElement:
    """Rewrite an L-chart element in the hermitian (U, V) chart, losslessly."""
    src = x.presentation
    dst = weyl_uv(src.hbar_value)
    images = {
        "L": dst.gen("U") + dst.gen("V").scale(S_I),
        "Ls": dst.gen("U") - dst.gen("V").scale(S_I),
    }
    return _substitute(x, dst, images)


def _substitute(
    x: AlgebraElement, dst: Presentation, images: dict[str, AlgebraElement]
) -> AlgebraElement:
    out = dst.zero()
    for word, coeff in x.terms.items():
        acc = dst.one()
        for sym in word:
            acc = acc * images[sym]
        out = out + acc.scale(coeff)
    return out
