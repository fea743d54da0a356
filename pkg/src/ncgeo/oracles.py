"""Matrix and polynomial representations for cross-validating identities.

Three oracles:

* ``spin_rep(j)``: the 2j+1 dimensional representation X_i = J_i/sqrt(j(j+1))
  of the fuzzy sphere at hbar = 1/sqrt(j(j+1)); the defining relations hold
  to machine precision.
* ``fock_rep(hbar, N)``: truncated ladder representation of the complex Weyl
  chart, L|n> = sqrt(2 hbar n)|n-1>.  Relations hold exactly away from the
  truncation corner, so comparisons are restricted to a safe column window
  shrunk by the expression degree and re-run at doubled dimension.
* ``PolyRep``: U as multiplication by t and V as -i hbar d/dt on polynomials
  with exact coefficients over the formal-hbar scalar field.  This action is
  faithful, giving an independent exact decision procedure for equality in
  the Weyl algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement
from .localization import RInv, RLeaf, RProd, RSum, RationalExpr
from .scalars import S_I, S_MINUS_I, S_ONE, Scalar

CONDITION_LIMIT = 1e8


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixRep:
    """Complex matrix images of the generators at a numeric hbar."""

    kind: str  # "spin" | "fock"
    dim: int
    hbar: float
    images: dict
    exact_window: int  # columns 0..window-1 satisfy the relations exactly

    def generator(self, name: str) -> np.ndarray:
        try:
            return self.images[name]
        except KeyError:
            raise RepresentationError(f"representation has no generator {name!r}")

    def safe_columns(self, degree: int) -> int:
        """Number of leading basis columns unaffected by truncation."""
        if self.kind == "fock":
            return max(self.dim - max(degree, 0), 0)
        return self.dim


def spin_rep(j: Fraction | float) -> MatrixRep:
    """Spin-j images of the fuzzy sphere generators; hbar = 1/sqrt(j(j+1))."""
    jf = Fraction(j).limit_denominator() if not isinstance(j, Fraction) else j
    two_j = 2 * jf
    if two_j.denominator != 1 or two_j <= 0:
        raise RepresentationError("spin j must be a positive half-integer")
    n = int(two_j) + 1
    m = np.array([float(jf - k) for k in range(n)])
    jz = np.diag(m).astype(complex)
    jp = np.zeros((n, n), dtype=complex)
    jval = float(jf)
    for k in range(1, n):
        mk = m[k]
        jp[k - 1, k] = np.sqrt(jval * (jval + 1) - mk * (mk + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2
    jy = (jp - jm) / (2j)
    scale = 1.0 / np.sqrt(jval * (jval + 1))
    images = {"X": jx * scale, "Y": jy * scale, "Z": jz * scale}
    return MatrixRep(
        kind="spin", dim=n, hbar=scale, images=images, exact_window=n
    )


def fock_rep(hbar: Fraction | float, dim: int) -> MatrixRep:
    """Truncated Fock representation of the L-chart Weyl algebra."""
    if dim < 4:
        raise RepresentationError("Fock dimension must be at least 4")
    h = float(hbar)
    if h <= 0:
        raise RepresentationError("hbar must be positive")
    lowering = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        lowering[n - 1, n] = np.sqrt(2 * h * n)
    raising = lowering.conj().T
    images = {
        "L": lowering,
        "Ls": raising,
        "U": (lowering + raising) / 2,
        "V": (lowering - raising) / 2j,
    }
    return MatrixRep(
        kind="fock", dim=dim, hbar=h, images=images, exact_window=dim - 1
    )


def relation_residual(rep: MatrixRep) -> float:
    """Largest residual of the defining relations in the representation."""
    h = rep.hbar
    if rep.kind == "spin":
        x, y, z = rep.generator("X"), rep.generator("Y"), rep.generator("Z")
        eye = np.eye(rep.dim)
        residuals = [
            np.abs(x @ y - y @ x - 1j * h * z).max(),
            np.abs(y @ z - z @ y - 1j * h * x).max(),
            np.abs(z @ x - x @ z - 1j * h * y).max(),
            np.abs(x @ x + y @ y + z @ z - eye).max(),
        ]
        return float(max(residuals))
    lo, hi = rep.generator("L"), rep.generator("Ls")
    comm = lo @ hi - hi @ lo
    window = rep.safe_columns(2)
    target = 2 * h * np.eye(rep.dim)
    return float(np.abs(comm[:, :window] - target[:, :window]).max())


def evaluate(x, rep: MatrixRep) -> np.ndarray:
    """Matrix image of an element or localized expression.

    Scalar coefficients substitute the representation's hbar value.
    Marked inverses become linear solves; an ill-conditioned factor
    (condition number above 1e8) is rejected rather than inverted.
    """
    if isinstance(x, AlgebraElement):
        out = np.zeros((rep.dim, rep.dim), dtype=complex)
        eye = np.eye(rep.dim, dtype=complex)
        for word, coeff in x.terms.items():
            m = eye
            for sym in word:
                m = m @ rep.generator(sym)
            out = out + coeff.eval_complex(rep.hbar) * m
        return out
    if isinstance(x, RLeaf):
        return evaluate(x.element, rep)
    if isinstance(x, RInv):
        m = evaluate(x.element, rep)
        cond = np.linalg.cond(m)
        if not np.isfinite(cond) or cond > CONDITION_LIMIT:
            raise RepresentationError(
                f"inverse of {x.element.canonical_text()} is ill-conditioned "
                f"on the truncation (cond={cond:.2e})"
            )
        return np.linalg.inv(m)
    if isinstance(x, RSum):
        return sum(evaluate(t, rep) for t in x.terms)
    if isinstance(x, RProd):
        out = np.eye(rep.dim, dtype=complex)
        for f in x.factors:
            out = out @ evaluate(f, rep)
        return out
    raise TypeError(f"cannot evaluate {x!r}")


def _expr_degree(x) -> int:
    if isinstance(x, AlgebraElement):
        return max(x.degree(), 0)
    if isinstance(x, RLeaf):
        return _expr_degree(x.element)
    if isinstance(x, RInv):
        return _expr_degree(x.element)
    if isinstance(x, RSum):
        return max((_expr_degree(t) for t in x.terms), default=0)
    if isinstance(x, RProd):
        return sum(_expr_degree(f) for f in x.factors)
    return 0


def expr_residual(lhs, rhs, rep: MatrixRep) -> float:
    """Max-abs difference of two images on the safe column window."""
    degree = max(_expr_degree(lhs), _expr_degree(rhs))
    window = rep.safe_columns(degree)
    if window <= 0:
        raise RepresentationError("expression degree exhausts the safe window")
    diff = evaluate(lhs, rep) - evaluate(rhs, rep)
    return float(np.abs(diff[:, :window]).max())


def expr_max_abs(x, rep: MatrixRep) -> float:
    degree = _expr_degree(x)
    window = rep.safe_columns(degree)
    if window <= 0:
        raise RepresentationError("expression degree exhausts the safe window")
    m = evaluate(x, rep)
    return float(np.abs(m[:, :window]).max())


def check_identity_numeric(
    lhs,
    rhs,
    rep_builder,
    tolerance: float = 1e-10,
    dims: tuple[int, int] | None = None,
) -> tuple[str, tuple[float, float], bool]:
    """Two-dimension stability check of lhs = rhs.

    Evaluates at the base dimension and at twice that dimension; declares
    numeric equality only if both residuals are below tolerance and their
    difference is stable.  Returns (verdict, residuals, stable).
    """
    if dims is None:
        base = rep_builder(64).dim if callable(rep_builder) else 64
        dims = (base, 2 * base)
    r0 = expr_residual(lhs, rhs, rep_builder(dims[0]))
    r1 = expr_residual(lhs, rhs, rep_builder(dims[1]))
    stable = abs(r0 - r1) < tolerance
    ok = max(r0, r1) < tolerance and stable
    return ("numeric-equal" if ok else "inconclusive", (r0, r1), stable)


# -- exact polynomial representation of the Weyl algebra ----------------------


class PolyRep:
    """Faithful action on polynomials in t with exact scalar coefficients.

    U acts as multiplication by t, V as -i hbar d/dt; in the complex chart
    L = U + iV acts as t^k -> t^(k+1) + hbar k t^(k-1) and Ls = U - iV as
    t^k -> t^(k+1) - hbar k t^(k-1).  With formal hbar (the default) the
    action decides equality in the Weyl algebra exactly: x = y iff the
    images of all t^k up to the combined degree agree.
    """

    def __init__(self, hbar: Scalar | Fraction | None = None):
        if hbar is None:
            self.hbar = Scalar.hbar()
        else:
            self.hbar = Scalar.coerce(hbar) if not isinstance(hbar, Scalar) else hbar

    def _apply_generator(self, sym: str, poly: dict[int, Scalar]) -> dict[int, Scalar]:
        h = self.hbar
        out: dict[int, Scalar] = {}

        def bump(k: int, c: Scalar) -> None:
            if c.is_zero():
                return
            prev = out.get(k)
            val = c if prev is None else prev + c
            if val.is_zero():
                out.pop(k, None)
            else:
                out[k] = val

        for k, c in poly.items():
            if sym == "U":
                bump(k + 1, c)
            elif sym == "V":
                if k > 0:
                    bump(k - 1, S_MINUS_I * h * k * c)
            elif sym == "L":
                bump(k + 1, c)
                if k > 0:
                    bump(k - 1, h * k * c)
            elif sym == "Ls":
                bump(k + 1, c)
                if k > 0:
                    bump(k - 1, -(h * k * c))
            else:
                raise RepresentationError(
                    f"polynomial representation has no generator {sym!r}"
                )
        return out

    def apply(self, x: AlgebraElement, k: int) -> dict[int, Scalar]:
        """Image of the monomial t^k under the element's action."""
        total: dict[int, Scalar] = {}
        for word, coeff in x.terms.items():
            poly = {k: S_ONE}
            for sym in reversed(word):
                poly = self._apply_generator(sym, poly)
            for deg, c in poly.items():
                val = total.get(deg)
                new = c * coeff if val is None else val + c * coeff
                if new.is_zero():
                    total.pop(deg, None)
                else:
                    total[deg] = new
        return total

    def images_agree(self, x: AlgebraElement, y: AlgebraElement, degree: int) -> bool:
        """Exact agreement of the two actions on t^k for k = 0..degree."""
        return all(self.apply(x, k) == self.apply(y, k) for k in range(degree + 1))

    def is_zero_operator(self, x: AlgebraElement, degree: int) -> bool:
        return all(not self.apply(x, k) for k in range(degree + 1))
