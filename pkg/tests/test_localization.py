import random
from fractions import Fraction

import numpy as np
import pytest

from ncgeo.algebra import random_element
from ncgeo.localization import (
    InversionError,
    InvertibleRegistry,
    RInv,
    RLeaf,
    RProd,
    adjoint_expr,
    derive_expr,
    equals_expr,
    make_inverse,
    simplify,
)
from ncgeo.oracles import evaluate, fock_rep
from ncgeo.presentations import weyl_lambda
from ncgeo.scalars import Scalar


def enneper_s():
    pres = weyl_lambda()
    lam, ls = pres.gens()
    return pres, (pres.one() + ls * ls * lam * lam + (ls * lam).scale(2)).scale(2)


def test_make_inverse_registry_and_scalars():
    pres, s = enneper_s()
    registry = InvertibleRegistry()
    with pytest.raises(InversionError):
        make_inverse(s, registry=registry)
    inv = make_inverse(s, "diagonal positive in the Fock basis", registry=registry)
    assert isinstance(inv, RInv)
    assert registry.is_registered(s)
    assert registry.is_registered(s.adjoint())
    # unit multiples collapse immediately
    two = pres.scalar(2)
    assert make_inverse(two, registry=registry) == RLeaf(pres.scalar(Fraction(1, 2)))
    with pytest.raises(InversionError):
        make_inverse(pres.zero(), registry=registry)


def test_simplify_cancellation_and_flattening():
    pres, s = enneper_s()
    lam = pres.gen("L")
    inv = make_inverse(s, "test")
    assert simplify(RLeaf(s) * inv * RLeaf(lam)) == RLeaf(lam)
    assert simplify(inv * (RLeaf(s) * RLeaf(s))) == RLeaf(s)
    assert simplify(RLeaf(lam) + RLeaf(pres.zero())) == RLeaf(lam)
    assert simplify(RLeaf(pres.zero()) * inv) == RLeaf(pres.zero())
    # adjacent plain leaves merge through the kernel
    assert simplify(RLeaf(lam) * RLeaf(lam)) == RLeaf(lam * lam)


def test_adjoint_expr():
    pres, s = enneper_s()
    lam = pres.gen("L")
    inv = make_inverse(s, "test")
    expr = simplify(inv * RLeaf(lam))
    adj = simplify(adjoint_expr(expr))
    # (inv(S) L)* = Ls inv(S*) with S hermitian
    assert adj == simplify(RLeaf(lam.adjoint()) * RInv(s.adjoint()))
    assert s.adjoint() == s


def test_derive_expr_inverse_rule():
    pres, s = enneper_s()
    dbar = pres.derivations["dbar"]
    inv = make_inverse(s, "test")
    got = derive_expr(dbar, inv)
    expected = simplify(RProd((RInv(s), RLeaf(-dbar(s)), RInv(s))))
    assert got == expected
    # derivation consistency: d(a inv(a)) simplifies to exactly zero
    expr = derive_expr(dbar, RLeaf(s) * inv)
    assert expr == RLeaf(pres.zero())
    rep = fock_rep(Fraction(1, 2), 32)
    assert float(np.abs(evaluate(expr, rep)[:, :20]).max()) == 0.0


def test_derivation_leibniz_on_trees():
    pres, s = enneper_s()
    lam = pres.gen("L")
    d = pres.derivations["d"]
    inv = make_inverse(s, "test")
    expr = simplify(RLeaf(lam) * inv)
    derived = derive_expr(d, expr)
    manual = simplify(
        RLeaf(d(lam)) * inv
        + RLeaf(lam) * RProd((RInv(s), RLeaf(-d(s)), RInv(s)))
    )
    assert derived == manual


def test_equals_expr_structural():
    pres, s = enneper_s()
    lam = pres.gen("L")
    inv = make_inverse(s, "test")
    v = equals_expr(RLeaf(lam) * inv * RLeaf(s), RLeaf(lam))
    assert v.verdict == "proved-equal"
    v = equals_expr(RLeaf(lam), RLeaf(lam + pres.one()))
    assert v.verdict == "proved-unequal"
    v = equals_expr(inv * RLeaf(lam), RLeaf(lam) * inv, strategy="structural")
    assert v.verdict == "inconclusive"


def test_equals_expr_clear_single_denominator():
    pres, s = enneper_s()
    lam, ls = pres.gens()
    inv = make_inverse(s, "test")
    lhs = inv * RLeaf(lam) + inv * RLeaf(ls)
    rhs = inv * RLeaf(lam + ls)
    v = equals_expr(lhs, rhs, strategy="clear-single-denominator")
    assert v.verdict == "proved-equal"
    v = equals_expr(lhs, inv * RLeaf(lam), strategy="clear-single-denominator")
    assert v.verdict == "proved-unequal"
    # pattern mismatch stays inconclusive rather than guessing
    v = equals_expr(inv * RLeaf(lam), RLeaf(lam) * inv,
                    strategy="clear-single-denominator")
    assert v.verdict == "inconclusive"


def test_equals_expr_numeric_fock():
    pres, s = enneper_s()
    lam, ls = pres.gens()
    d = pres.derivations["d"]
    inv = make_inverse(s, "test")
    # undistributed vs distributed trees agree numerically
    lhs = RProd((RInv(s), RLeaf(d(s) + lam)))
    rhs = simplify(inv * RLeaf(d(s))) + simplify(inv * RLeaf(lam))
    v = equals_expr(
        lhs,
        rhs,
        strategy="numeric-fock",
        rep_builder=lambda n: fock_rep(Fraction(1, 2), n),
        dims=(48, 96),
    )
    assert v.verdict == "numeric-equal"
    assert v.residual is not None and v.residual < 1e-8
    # a diagonal S does not commute past the shift-type dS: the honest
    # verdict for inv(S) dS = dS inv(S) is inconclusive, with the genuine
    # residual recorded
    v = equals_expr(
        simplify(inv * RLeaf(d(s))),
        simplify(RLeaf(d(s)) * inv),
        strategy="numeric-fock",
        rep_builder=lambda n: fock_rep(Fraction(1, 2), n),
        dims=(48, 96),
    )
    assert v.verdict == "inconclusive"
    assert v.residual is not None and v.residual > 1e-2
    wrong = simplify(RLeaf(d(s)) * inv + RLeaf(pres.one()))
    v = equals_expr(
        simplify(inv * RLeaf(d(s))),
        wrong,
        strategy="numeric-fock",
        rep_builder=lambda n: fock_rep(Fraction(1, 2), n),
        dims=(48, 96),
    )
    assert v.verdict == "inconclusive"


def test_cancellation_soundness_numeric():
    """Simplification must not change the value in a faithful representation."""
    pres, s = enneper_s()
    rng = random.Random(17)
    inv = make_inverse(s, "test")
    rep = fock_rep(Fraction(1, 2), 48)
    for _ in range(10):
        x = random_element(pres, rng, max_degree=3, max_terms=2)
        raw = RLeaf(x) * RLeaf(s) * inv + inv * RLeaf(s) * RLeaf(x)
        simplified = simplify(raw)
        window = 30
        diff = evaluate(raw, rep) - evaluate(simplified, rep)
        assert float(np.abs(diff[:, :window]).max()) < 1e-9
