import random
from fractions import Fraction

import numpy as np
import pytest

from ncgeo.algebra import random_element
from ncgeo.connections import metric_compatibility_zeros
from ncgeo.fuzzy import build_fuzzy, nabla_zero
from ncgeo.oracles import (
    PolyRep,
    RepresentationError,
    check_identity_numeric,
    evaluate,
    expr_residual,
    fock_rep,
    relation_residual,
    spin_rep,
)
from ncgeo.presentations import fuzzy_sphere, weyl_lambda, weyl_uv
from ncgeo.scalars import S_I, Scalar


def test_spin_half_matches_pauli():
    rep = spin_rep(Fraction(1, 2))
    assert rep.dim == 2
    assert abs(rep.hbar - 2 / np.sqrt(3)) < 1e-15
    sx = np.array([[0, 1], [1, 0]], dtype=complex) / np.sqrt(3)
    assert np.abs(rep.generator("X") - sx).max() < 1e-15
    total = sum(rep.generator(g) @ rep.generator(g) for g in "XYZ")
    assert np.abs(total - np.eye(2)).max() < 1e-14


def test_spin_one_dimension_and_relations():
    rep = spin_rep(Fraction(1))
    assert rep.dim == 3
    assert abs(rep.hbar - 1 / np.sqrt(2)) < 1e-15
    assert relation_residual(rep) < 1e-12


def test_spin_relations_across_j():
    for j in (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2),
              Fraction(3), Fraction(6)):
        assert relation_residual(spin_rep(j)) < 1e-12


def test_spin_zero_rejected():
    with pytest.raises(RepresentationError):
        spin_rep(Fraction(0))


def test_fock_entries_and_corner_defect():
    rep = fock_rep(Fraction(1, 2), 4)
    lo = rep.generator("L")
    # subdiagonal sqrt(2 hbar n) = sqrt(n) at hbar = 1/2
    assert abs(lo[0, 1] - 1.0) < 1e-15
    assert abs(lo[1, 2] - np.sqrt(2)) < 1e-15
    assert abs(lo[2, 3] - np.sqrt(3)) < 1e-15
    comm = lo @ rep.generator("Ls") - rep.generator("Ls") @ lo
    # the lowest column is exact, the truncation corner is not
    assert abs(comm[0, 0] - 2 * rep.hbar) < 1e-15
    assert abs(comm[3, 3] - 2 * rep.hbar) > 0.1
    assert rep.safe_columns(2) == 2


def test_fock_rejects_bad_parameters():
    with pytest.raises(RepresentationError):
        fock_rep(Fraction(1, 2), 3)
    with pytest.raises(RepresentationError):
        fock_rep(Fraction(-1), 8)


def test_evaluate_casimir_and_identity():
    pres = fuzzy_sphere()
    x, y, z = pres.gens()
    rep = spin_rep(Fraction(3, 2))
    img = evaluate(x * x + y * y + z * z - pres.one(), rep)
    assert np.abs(img).max() < 1e-12
    assert np.abs(evaluate(pres.one(), rep) - np.eye(rep.dim)).max() == 0


def test_evaluate_enneper_metric_diagonal():
    pres = weyl_lambda()
    lam, ls = pres.gens()
    s = (pres.one() + ls * ls * lam * lam + (ls * lam).scale(2)).scale(2)
    hbar = Fraction(1, 2)
    rep = fock_rep(hbar, 16)
    img = evaluate(s, rep)
    h = float(hbar)
    for n in range(12):
        expected = 2 * (1 + 4 * h * h * n * (n - 1) + 4 * h * n)
        assert abs(img[n, n] - expected) < 1e-10
    off = img - np.diag(np.diag(img))
    assert np.abs(off[:12, :12]).max() < 1e-10


def test_representation_soundness_random_weyl():
    rng = random.Random(23)
    pres = weyl_lambda()
    rep = fock_rep(Fraction(1, 2), 48)
    for _ in range(25):
        x = random_element(pres, rng, max_degree=5, max_terms=3)
        raw = {}
        # rebuild from unreduced products to compare both evaluation routes
        y = pres.one()
        parts = [x, pres.one() + pres.gen("L")]
        for p in parts:
            y = y * p
        lhs = evaluate(y, rep)
        rhs = evaluate(x, rep) @ evaluate(pres.one() + pres.gen("L"), rep)
        window = rep.safe_columns(y.degree() + 1)
        assert np.abs((lhs - rhs)[:, :window]).max() < 1e-10


def test_check_identity_numeric_stability():
    g = build_fuzzy()
    conn = nabla_zero(g)
    zeros = metric_compatibility_zeros(conn, g.tangent_projection.matrix)
    rep = spin_rep(Fraction(2))
    worst = max(float(np.abs(evaluate(z, rep)).max()) for z in zeros)
    assert worst < 1e-10

    pres = weyl_lambda()
    verdict, residuals, stable = check_identity_numeric(
        pres.zero(), pres.zero(), lambda n: fock_rep(Fraction(1, 2), n),
        dims=(16, 32),
    )
    assert verdict == "numeric-equal" and stable
    verdict, residuals, stable = check_identity_numeric(
        pres.one(), pres.zero(), lambda n: fock_rep(Fraction(1, 2), n),
        dims=(16, 32),
    )
    assert verdict == "inconclusive"


def test_ill_conditioned_inverse_rejected():
    from ncgeo.localization import RInv

    pres = weyl_lambda()
    lam = pres.gen("L")  # strictly lower triangular: singular truncation
    rep = fock_rep(Fraction(1, 2), 8)
    with pytest.raises(RepresentationError):
        evaluate(RInv(lam), rep)


def test_polyrep_commutation_exact():
    rep = PolyRep()
    uv = weyl_uv()
    u, v = uv.gens()
    comm = u * v - v * u
    ihbar = uv.scalar(Scalar.hbar() * S_I)
    for k in range(6):
        assert rep.apply(comm, k) == rep.apply(ihbar, k)


def test_polyrep_equivalence_battery():
    rng = random.Random(31)
    rep = PolyRep()
    for pres in (weyl_uv(), weyl_lambda()):
        for _ in range(40):
            a = random_element(pres, rng, max_degree=3, max_terms=2)
            b = random_element(pres, rng, max_degree=3, max_terms=2)
            c = random_element(pres, rng, max_degree=2, max_terms=2)
            x, y = (a * b) * c, a * (b * c)
            degree = 2 * max(x.degree(), y.degree(), 1)
            assert rep.images_agree(x, y, degree) == (x == y)
            z = a * b + c
            degree = 2 * max((a * b).degree(), z.degree(), 1)
            assert rep.images_agree(a * b, z, degree) == ((a * b) == z)


def test_expr_residual_safe_window():
    pres = weyl_lambda()
    ls = pres.gen("Ls")
    rep = fock_rep(Fraction(1, 2), 8)
    # Ls^8 exhausts the truncation window entirely
    with pytest.raises(RepresentationError):
        expr_residual(ls**8, ls**8, rep)
