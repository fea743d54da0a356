import random
from fractions import Fraction

import pytest

from ncgeo.algebra import PresentationError
from ncgeo.localization import RLeaf, exact_leaf, simplify
from ncgeo.minimal import (
    MinimalSurface,
    WeierstrassData,
    complex_frame_lie_pair,
    conformality_check,
    curvature_expressions,
    diagonal_table_check,
    integrate,
    levi_civita_connection,
    metric_compatibility_expressions,
    metric_derivative_identities,
    numeric_connection_checks,
    torsion_expressions,
    vanishing_products_check,
    weierstrass_from_polynomial,
)
from ncgeo.presentations import weyl_lambda
from ncgeo.scalars import S_I, Scalar


def test_enneper_data_and_isotropy():
    pres = weyl_lambda()
    lam = pres.gen("L")
    data = weierstrass_from_polynomial(pres.one())
    assert data.phi[0] == pres.one() - lam * lam
    assert data.phi[1] == (pres.one() + lam * lam).scale(S_I)
    assert data.phi[2] == lam.scale(2)
    assert data.validate().passed


def test_family_members_validate():
    pres = weyl_lambda()
    lam = pres.gen("L")
    for f in (lam, pres.one() + lam * lam, lam * lam * lam - lam.scale(2)):
        assert weierstrass_from_polynomial(f).validate().passed


def test_zero_or_mixed_generator_rejected():
    pres = weyl_lambda()
    with pytest.raises(ValueError):
        weierstrass_from_polynomial(pres.zero())
    with pytest.raises(PresentationError):
        weierstrass_from_polynomial(pres.gen("Ls"))


def test_enneper_coordinates():
    pres = weyl_lambda()
    lam, ls = pres.gens()
    surface = integrate(weierstrass_from_polynomial(pres.one()))
    third = Fraction(1, 3)
    assert surface.coordinates[0] == lam - (lam**3) * third + ls - (ls**3) * third
    assert surface.coordinates[2] == lam * lam + ls * ls
    d = pres.derivations["d"]
    assert d(surface.coordinates[0]) == surface.phi[0]
    # hermitian coordinates
    for x in surface.coordinates:
        assert x.is_hermitian()


def test_enneper_metric_components_match_displays():
    pres = weyl_lambda()
    lam, ls = pres.gens()
    surface = integrate(weierstrass_from_polynomial(pres.one()))
    s_expected = (pres.one() + (ls * ls) * (lam * lam) + (ls * lam).scale(2)).scale(2)
    t_expected = (pres.one() + (lam * lam) * (ls * ls) + (lam * ls).scale(2)).scale(2)
    assert surface.s_component == s_expected
    assert surface.t_component == t_expected
    # noncommutativity shows in S - T; its unit-word part starts at -8 hbar
    skew = surface.skew_component
    assert not skew.is_zero()
    h = Scalar.hbar()
    assert skew.coefficient(()) == h * h * 16 - h * 8
    assert skew.coefficient(("L", "Ls")) == -(h * 16)


def test_conformality_and_vanishing_products():
    pres = weyl_lambda()
    lam = pres.gen("L")
    for f in (pres.one(), lam):
        surface = integrate(weierstrass_from_polynomial(f))
        assert conformality_check(surface).passed
        assert vanishing_products_check(surface).passed
        assert metric_derivative_identities(surface).passed


def test_degenerate_single_component_data():
    pres = weyl_lambda()
    data = WeierstrassData(pres, (pres.zero(),))
    assert data.validate().passed
    surface = integrate(data)
    assert vanishing_products_check(surface).passed
    assert surface.s_component.is_zero()


def test_flat_constant_data_has_zero_curvature():
    pres = weyl_lambda()
    # constant isotropic data: (1, i, 0)
    data = WeierstrassData(
        pres, (pres.one(), pres.scalar(S_I), pres.zero())
    )
    assert data.validate().passed
    surface = integrate(data)
    assert surface.s_component == pres.scalar(2)
    sc = levi_civita_connection(surface)
    closed, composed = curvature_expressions(sc)
    for expr in closed + composed:
        leaf = exact_leaf(expr)
        assert leaf is not None and leaf.is_zero()


def test_diagonal_connection_table():
    pres = weyl_lambda()
    surface = integrate(weierstrass_from_polynomial(pres.one()))
    sc = levi_civita_connection(surface)
    assert sc.is_diagonal
    assert diagonal_table_check(sc).passed
    lie = complex_frame_lie_pair(pres)
    assert lie.validate().passed


def test_torsion_vanishes_with_symmetric_gamma():
    pres = weyl_lambda()
    lam, ls = pres.gens()
    surface = integrate(weierstrass_from_polynomial(pres.one()))
    gamma1 = lam + ls  # arbitrary parameters; the table enforces symmetry
    gamma2 = pres.one()
    sc = levi_civita_connection(surface, gamma1, gamma2)
    for component in torsion_expressions(sc):
        leaf = exact_leaf(component)
        assert leaf is not None and leaf.is_zero()


def test_numeric_checks_enneper():
    pres = weyl_lambda()
    surface = integrate(weierstrass_from_polynomial(pres.one()))
    sc = levi_civita_connection(surface)
    for report in numeric_connection_checks(sc, Fraction(1, 2), base_dim=32):
        assert report.passed, report.check_id
    defects = metric_compatibility_expressions(sc)
    assert len(defects) == 8


def test_random_low_degree_families_property():
    pres = weyl_lambda()
    lam = pres.gen("L")
    rng = random.Random(77)
    for _ in range(8):
        coeffs = [rng.randint(-2, 2) for _ in range(5)]
        if not any(coeffs):
            coeffs[0] = 1
        f = pres.zero()
        power = pres.one()
        for c in coeffs:
            if c:
                f = f + power.scale(c)
            power = power * lam
        data = weierstrass_from_polynomial(f)
        assert data.validate().passed
        surface = integrate(data)
        assert vanishing_products_check(surface).passed
        assert conformality_check(surface).passed
