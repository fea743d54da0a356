import random
from fractions import Fraction

import pytest

from ncgeo.algebra import random_element
from ncgeo.localization import InversionError, RationalExpr, make_inverse, simplify, RLeaf
from ncgeo.parsing import ParseError, parse_expression, print_expression
from ncgeo.presentations import fuzzy_sphere, weyl_lambda, weyl_uv
from ncgeo.scalars import S_I, Scalar


def test_commutator_examples():
    lam_pres = weyl_lambda()
    assert parse_expression("L*Ls - Ls*L", lam_pres) == lam_pres.scalar(
        Scalar.hbar() * 2
    )
    uv = weyl_uv()
    u, v = uv.gens()
    assert parse_expression("adj(U*V)", uv) == u * v - uv.scalar(S_I * Scalar.hbar())
    pres = fuzzy_sphere()
    assert parse_expression("X^2 + Y^2 + Z^2", pres) == pres.one()


def test_implicit_multiplication_and_precedence():
    pres = fuzzy_sphere()
    x, y = pres.gen("X"), pres.gen("Y")
    assert parse_expression("2 X Y", pres) == (x * y).scale(2)
    # '^' binds above juxtaposition: 2X^2 = 2*(X^2)
    assert parse_expression("2X^2", pres) == (x * x).scale(2)
    # unary minus binds below multiplication
    assert parse_expression("-i*X", pres) == x.scale(-S_I)
    assert parse_expression("1 - 2*X", pres) == pres.one() - x.scale(2)
    assert parse_expression("(X + Y)^2", pres) == (x + y) * (x + y)


def test_rational_and_hbar_atoms():
    pres = fuzzy_sphere()
    x = pres.gen("X")
    assert parse_expression("3/2*hbar^2*X", pres) == x.scale(
        Scalar.hbar(2) * Fraction(3, 2)
    )
    assert parse_expression("hbar", pres) == pres.scalar(Scalar.hbar())
    assert parse_expression("0", pres) == pres.zero()


def test_syntax_errors_carry_positions():
    pres = fuzzy_sphere()
    with pytest.raises(ParseError) as err:
        parse_expression("X + $", pres)
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse_expression("X +", pres)
    with pytest.raises(ParseError):
        parse_expression("(X", pres)
    with pytest.raises(ParseError):
        parse_expression("X^(2)", pres)
    with pytest.raises(ParseError):
        parse_expression("", pres)


def test_unknown_generator_rejected():
    with pytest.raises(ParseError):
        parse_expression("X + Q", fuzzy_sphere())
    with pytest.raises(ParseError):
        parse_expression("X", weyl_uv())


def test_inverse_of_scalar_collapses():
    pres = fuzzy_sphere()
    parsed = parse_expression("inv(2)*X", pres)
    assert parsed == pres.gen("X") * Fraction(1, 2)
    parsed = parse_expression("inv(hbar^2 + 4)", pres)
    assert parsed == pres.scalar(Scalar.coerce(1) / (Scalar.hbar(2) + 4))


def test_inverse_requires_registration():
    lam_pres = weyl_lambda()
    with pytest.raises(InversionError):
        parse_expression("inv(L*Ls + 3)", lam_pres)
    elem = parse_expression("L*Ls + 3", lam_pres)
    make_inverse(elem, "test registration")
    expr = parse_expression("inv(L*Ls + 3)*L", lam_pres)
    assert isinstance(expr, RationalExpr)
    text = print_expression(expr)
    assert parse_expression(text, lam_pres) == expr


def test_localized_cancellation_through_parser():
    lam_pres = weyl_lambda()
    elem = parse_expression("L*Ls", lam_pres)
    make_inverse(elem, "test registration")
    assert parse_expression("L*Ls*inv(L*Ls)*L", lam_pres) == lam_pres.gen("L")


def test_round_trip_random_elements():
    rng = random.Random(2024)
    presentations = (fuzzy_sphere(), weyl_uv(), weyl_lambda())
    for k in range(500):
        pres = presentations[k % 3]
        x = random_element(
            pres, rng, max_degree=5, max_terms=4, allow_hbar=True
        )
        text = print_expression(x)
        assert parse_expression(text, pres) == x, text


def test_round_trip_scalar_denominators():
    pres = fuzzy_sphere()
    x = pres.gen("X")
    for scalar in (
        S_I / Scalar.hbar(),
        Scalar.coerce(1) / (Scalar.hbar(2) + 4),
        (Scalar.hbar() + Scalar.coerce(Fraction(3, 7))) / Scalar.hbar(3),
    ):
        elem = x.scale(scalar) + pres.one()
        text = print_expression(elem)
        assert parse_expression(text, pres) == elem
