"""Restricted fraction-field calculus: formal inverses of declared elements.

Expression trees combine algebra elements with marked inverses ``inv(a)``.
Only elements explicitly registered as invertible (with a justification
tag) may be inverted; scalar multiples of the unit are always invertible
and collapse immediately.  No Ore machinery is attempted: inverses never
commute past other factors symbolically.  Simplification flattens sums and
products, merges adjacent plain leaves through the kernel, and cancels
adjacent a * inv(a) pairs; derivations extend by d(inv(a)) =
-inv(a) d(a) inv(a).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .algebra import AlgebraElement, Derivation
from .scalars import S_ONE


class InversionError(ValueError):
    """Raised when inverting zero or an unregistered element."""


@dataclass
class InvertibleRegistry:
    """Append-only record of elements asserted invertible, with reasons."""

    entries: dict[tuple[str, str], str] = field(default_factory=dict)

    @staticmethod
    def _key(a: AlgebraElement) -> tuple[str, str]:
        return (a.presentation.name, a.canonical_text())

    def register(self, a: AlgebraElement, justification: str) -> None:
        # an element is invertible iff its adjoint is; record both
        self.entries.setdefault(self._key(a), justification)
        self.entries.setdefault(self._key(a.adjoint()), justification)

    def is_registered(self, a: AlgebraElement) -> bool:
        return a.is_scalar_multiple_of_one() or self._key(a) in self.entries

    def justification(self, a: AlgebraElement) -> str | None:
        return self.entries.get(self._key(a))


DEFAULT_REGISTRY = InvertibleRegistry()


class RationalExpr:
    """Base class for localized expression trees.  Immutable."""

    __slots__ = ()

    def __add__(self, other):
        return RSum((self, as_rexpr(other)))

    def __radd__(self, other):
        return RSum((as_rexpr(other), self))

    def __sub__(self, other):
        return RSum((self, RProd((_MINUS_ONE_MARKER, as_rexpr(other)))))

    def __mul__(self, other):
        return RProd((self, as_rexpr(other)))

    def __rmul__(self, other):
        return RProd((as_rexpr(other), self))

    def __neg__(self):
        return RProd((_MINUS_ONE_MARKER, self))


@dataclass(frozen=True)
class RLeaf(RationalExpr):
    element: AlgebraElement

    def __repr__(self) -> str:
        return self.element.canonical_text()


@dataclass(frozen=True)
class RInv(RationalExpr):
    element: AlgebraElement

    def __repr__(self) -> str:
        return f"inv({self.element.canonical_text()})"


@dataclass(frozen=True)
class RSum(RationalExpr):
    terms: tuple

    def __repr__(self) -> str:
        return "(" + " + ".join(map(repr, self.terms)) + ")"


@dataclass(frozen=True)
class RProd(RationalExpr):
    factors: tuple

    def __repr__(self) -> str:
        return "*".join(map(repr, self.factors))


ExprLike = Union[RationalExpr, AlgebraElement]

_MINUS_ONE_MARKER: RationalExpr  # assigned after as_rexpr is defined


def as_rexpr(x: ExprLike) -> RationalExpr:
    if isinstance(x, RationalExpr):
        return x
    if isinstance(x, AlgebraElement):
        return RLeaf(x)
    raise TypeError(f"cannot interpret {x!r} as a localized expression")


class _MinusOne(RationalExpr):
    """Placeholder resolved against the first sibling's presentation."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "-1"


_MINUS_ONE_MARKER = _MinusOne()


def make_inverse(
    a: AlgebraElement,
    justification: str | None = None,
    registry: InvertibleRegistry = DEFAULT_REGISTRY,
) -> RationalExpr:
    """Formal inverse of ``a``; scalar multiples of 1 invert exactly."""
    if a.is_zero():
        raise InversionError("zero is not invertible")
    if a.is_scalar_multiple_of_one():
        return RLeaf(a.presentation.scalar(a.scalar_part().inverse()))
    if justification is not None:
        registry.register(a, justification)
    elif not registry.is_registered(a):
        raise InversionError(
            f"{a.canonical_text()} is not registered invertible; "
            "pass a justification tag"
        )
    return RInv(a)


def _presentation_of(e: RationalExpr):
    if isinstance(e, (RLeaf, RInv)):
        return e.element.presentation
    if isinstance(e, RSum):
        children = e.terms
    elif isinstance(e, RProd):
        children = e.factors
    else:
        return None
    for c in children:
        p = _presentation_of(c)
        if p is not None:
            return p
    return None


def simplify(e: ExprLike) -> RationalExpr:
    """Flatten, merge adjacent leaves, cancel adjacent a*inv(a) pairs."""
    e = as_rexpr(e)
    pres = _presentation_of(e)
    if pres is None:
        raise ValueError("expression contains no algebra elements")
    return _simplify(e, pres)


def _simplify(e: RationalExpr, pres) -> RationalExpr:
    if isinstance(e, _MinusOne):
        return RLeaf(pres.scalar(-1))
    if isinstance(e, RLeaf):
        return e
    if isinstance(e, RInv):
        a = e.element
        if a.is_zero():
            raise InversionError("zero is not invertible")
        if a.is_scalar_multiple_of_one():
            return RLeaf(pres.scalar(a.scalar_part().inverse()))
        return e
    if isinstance(e, RSum):
        pending: list[RationalExpr] = []
        leaf_sum = pres.zero()
        have_leaf = False
        for t in e.terms:
            t = _simplify(t, pres)
            parts = t.terms if isinstance(t, RSum) else (t,)
            for p in parts:
                if isinstance(p, RLeaf):
                    leaf_sum = leaf_sum + p.element
                    have_leaf = True
                else:
                    pending.append(p)
        # collect structurally identical non-leaf terms; central scalar
        # prefixes (canonical after product simplification) add up
        groups: list[list] = []  # [core_factors, coefficient_element]
        for p in pending:
            if isinstance(p, RProd) and p.factors and isinstance(p.factors[0], RLeaf) \
                    and p.factors[0].element.is_scalar_multiple_of_one():
                coeff = p.factors[0].element
                core = p.factors[1:]
            else:
                coeff = pres.one()
                core = p.factors if isinstance(p, RProd) else (p,)
            for group in groups:
                if group[0] == core:
                    group[1] = group[1] + coeff
                    break
            else:
                groups.append([core, coeff])
        flat: list[RationalExpr] = []
        for core, coeff in groups:
            if coeff.is_zero():
                continue
            if coeff == pres.one():
                flat.append(core[0] if len(core) == 1 else RProd(core))
            else:
                flat.append(RProd((RLeaf(coeff),) + tuple(core)))
        if have_leaf and not leaf_sum.is_zero():
            flat.append(RLeaf(leaf_sum))
        if not flat:
            return RLeaf(pres.zero())
        if len(flat) == 1:
            return flat[0]
        return RSum(tuple(flat))
    if isinstance(e, RProd):
        # flatten nested products before any merging so that adjacent
        # cancellations like inv(a) * (a * b) fire
        factors: list[RationalExpr] = []

        def flatten(node: RationalExpr) -> None:
            if isinstance(node, RProd):
                for child in node.factors:
                    flatten(child)
                return
            s = _simplify(node, pres)
            if isinstance(s, RProd):
                factors.extend(s.factors)
            else:
                factors.append(s)

        flatten(e)
        # central scalar factors commute with everything and are pulled to
        # the front, keeping products in a shape that sums can collect
        scalar = S_ONE
        while True:
            if any(isinstance(f, RLeaf) and f.element.is_zero() for f in factors):
                return RLeaf(pres.zero())
            core: list[RationalExpr] = []
            for f in factors:
                if isinstance(f, RLeaf) and f.element.is_scalar_multiple_of_one():
                    scalar = scalar * f.element.scalar_part()
                else:
                    core.append(f)
            factors = core
            # cancellation takes priority over leaf merging
            cancelled = False
            for k in range(len(factors) - 1):
                cur, nxt = factors[k], factors[k + 1]
                if (
                    isinstance(cur, RLeaf)
                    and isinstance(nxt, RInv)
                    and cur.element == nxt.element
                ) or (
                    isinstance(cur, RInv)
                    and isinstance(nxt, RLeaf)
                    and cur.element == nxt.element
                ):
                    factors = factors[:k] + factors[k + 2:]
                    cancelled = True
                    break
            if cancelled:
                continue
            merged = False
            for k in range(len(factors) - 1):
                cur, nxt = factors[k], factors[k + 1]
                if isinstance(cur, RLeaf) and isinstance(nxt, RLeaf):
                    factors = (
                        factors[:k]
                        + [RLeaf(cur.element * nxt.element)]
                        + factors[k + 2:]
                    )
                    merged = True
                    break
            if not merged:
                break
        if scalar.is_zero():
            return RLeaf(pres.zero())
        if not factors:
            return RLeaf(pres.scalar(scalar))
        if len(factors) == 1 and isinstance(factors[0], RLeaf):
            return RLeaf(factors[0].element.scale(scalar))
        if not scalar.is_one():
            factors = [RLeaf(pres.scalar(scalar))] + factors
        if len(factors) == 1:
            return factors[0]
        return RProd(tuple(factors))
    raise TypeError(f"unknown expression node {e!r}")


def adjoint_expr(e: ExprLike) -> RationalExpr:
    """Involution on localized expressions; (inv a)* = inv(a*)."""
    e = as_rexpr(e)
    if isinstance(e, RLeaf):
        return RLeaf(e.element.adjoint())
    if isinstance(e, RInv):
        return RInv(e.element.adjoint())
    if isinstance(e, RSum):
        return RSum(tuple(adjoint_expr(t) for t in e.terms))
    if isinstance(e, RProd):
        return RProd(tuple(adjoint_expr(f) for f in reversed(e.factors)))
    if isinstance(e, _MinusOne):
        return e
    raise TypeError(f"unknown expression node {e!r}")


def derive_expr(d: Derivation, e: ExprLike) -> RationalExpr:
    """Leibniz extension of a derivation, with d(inv a) = -inv(a) d(a) inv(a).

    The input is simplified first, so e.g. d(a * inv(a)) is literally d(1) = 0.
    """
    pres = d.presentation
    e = _simplify(as_rexpr(e), pres)
    if isinstance(e, _MinusOne):
        return RLeaf(pres.zero())
    if isinstance(e, RLeaf):
        return RLeaf(d(e.element))
    if isinstance(e, RInv):
        return _simplify(
            RProd((RInv(e.element), RLeaf(-d(e.element)), RInv(e.element))), pres
        )
    if isinstance(e, RSum):
        return _simplify(RSum(tuple(derive_expr(d, t) for t in e.terms)), pres)
    if isinstance(e, RProd):
        terms = []
        for k in range(len(e.factors)):
            factors = list(e.factors)
            factors[k] = derive_expr(d, factors[k])
            terms.append(RProd(tuple(factors)))
        return _simplify(RSum(tuple(terms)), pres)
    raise TypeError(f"unknown expression node {e!r}")


def exact_leaf(e: ExprLike) -> AlgebraElement | None:
    """The expression as a plain algebra element, if it simplifies to one."""
    s = simplify(e)
    return s.element if isinstance(s, RLeaf) else None


# -- structural equality strategies ---------------------------------------


@dataclass(frozen=True)
class ExprVerdict:
    """Outcome of an equality strategy on localized expressions."""

    verdict: str  # proved-equal | proved-unequal | numeric-equal | inconclusive
    strategy: str
    residual: float | None = None
    detail: str = ""

    @property
    def is_equal(self) -> bool:
        return self.verdict in ("proved-equal", "numeric-equal")


def _denominator_pattern(e: RationalExpr, side: str):
    """Decompose into (denominator, cleared terms) for one-sided clearing.

    Recognizes sums of products in which each term carries at most one
    ``inv(d)`` with a common ``d`` at the leftmost (side="left") or
    rightmost (side="right") position; remaining factors must be plain
    leaves.  Returns (d, list-of-elements) or None.
    """
    terms = e.terms if isinstance(e, RSum) else (e,)
    den: AlgebraElement | None = None
    cleared: list[tuple[bool, AlgebraElement]] = []
    pres = _presentation_of(e)
    for t in terms:
        factors = list(t.factors) if isinstance(t, RProd) else [t]
        invs = [k for k, f in enumerate(factors) if isinstance(f, RInv)]
        if any(not isinstance(f, (RLeaf, RInv)) for f in factors):
            return None
        if len(invs) > 1:
            return None
        if invs:
            k = invs[0]
            if side == "left" and k != 0:
                return None
            if side == "right" and k != len(factors) - 1:
                return None
            d = factors[k].element
            if den is None:
                den = d
            elif den != d:
                return None
            rest = [f.element for f in factors if isinstance(f, RLeaf)]
            prod = pres.one()
            for r in rest:
                prod = prod * r
            cleared.append((True, prod))
        else:
            prod = pres.one()
            for f in factors:
                prod = prod * f.element
            cleared.append((False, prod))
    if den is None:
        return None
    return den, cleared


def _clear_denominator(e: RationalExpr, den: AlgebraElement, side: str):
    pattern = _denominator_pattern(e, side)
    if pattern is None:
        return None
    d, cleared = pattern
    if d != den:
        return None
    pres = den.presentation
    total = pres.zero()
    for had_inv, elem in cleared:
        if had_inv:
            total = total + elem
        else:
            total = total + (den * elem if side == "left" else elem * den)
    return total


def equals_expr(
    e1: ExprLike,
    e2: ExprLike,
    strategy: str = "structural",
    *,
    rep_builder=None,
    dims: tuple[int, int] | None = None,
    tolerance: float = 1e-8,
) -> ExprVerdict:
    """Equality check under a named strategy; never returns a wrong verdict.

    Strategies:

    * ``structural``: simplify both sides; identical trees prove equality,
      and two distinct plain leaves prove inequality.
    * ``clear-single-denominator``: applies when both sides are sums of
      products carrying at most one shared ``inv(d)`` in leftmost (or
      rightmost) position; multiplies the denominator out and compares in
      the kernel.
    * ``numeric-fock``: evaluates both sides in truncated Fock
      representations supplied by ``rep_builder(dim)`` at two dimensions
      and reports a residual-based verdict.
    """
    s1, s2 = simplify(e1), simplify(e2)
    if s1 == s2:
        return ExprVerdict("proved-equal", strategy)
    if isinstance(s1, RLeaf) and isinstance(s2, RLeaf):
        verdict = "proved-equal" if s1.element == s2.element else "proved-unequal"
        return ExprVerdict(verdict, strategy)

    if strategy == "structural":
        return ExprVerdict("inconclusive", strategy, detail="trees differ")

    if strategy == "clear-single-denominator":
        for side in ("left", "right"):
            for probe in (s1, s2):
                pat = _denominator_pattern(probe, side)
                if pat is None:
                    continue
                den = pat[0]
                c1 = _clear_denominator(s1, den, side)
                c2 = _clear_denominator(s2, den, side)
                if c1 is None or c2 is None:
                    continue
                verdict = "proved-equal" if c1 == c2 else "proved-unequal"
                return ExprVerdict(verdict, strategy, detail=f"cleared {side} inv")
        return ExprVerdict("inconclusive", strategy, detail="no shared denominator")

    if strategy == "numeric-fock":
        if rep_builder is None:
            return ExprVerdict("inconclusive", strategy, detail="no representation")
        from .oracles import expr_residual

        n0 = dims[0] if dims else 64
        n1 = dims[1] if dims else 2 * n0
        r0 = expr_residual(s1, s2, rep_builder(n0))
        r1 = expr_residual(s1, s2, rep_builder(n1))
        residual = max(r0, r1)
        if residual < tolerance and abs(r0 - r1) < tolerance:
            return ExprVerdict("numeric-equal", strategy, residual=residual)
        return ExprVerdict(
            "inconclusive",
            strategy,
            residual=residual,
            detail="residual above tolerance or unstable",
        )

    raise ValueError(f"unknown strategy {strategy!r}")
