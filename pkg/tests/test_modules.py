import random

import pytest

from ncgeo.algebra import PresentationError, random_element
from ncgeo.fuzzy import build_fuzzy
from ncgeo.modules import (
    GeneratorSet,
    HermitianForm,
    ModuleMap,
    ModuleVector,
    basis_vector,
    check_pseudo_inverse,
    embed_regular_module,
    form_eval,
    hat_h,
    identity_matrix,
    is_orthogonal_projection,
    mat_scale,
    projection_from_generators,
)
from ncgeo.presentations import fuzzy_sphere
from ncgeo.scalars import Scalar


def test_form_eval_examples():
    g = build_fuzzy()
    pres = g.presentation
    h0 = HermitianForm.standard(pres, 3)
    assert form_eval(h0, g.xi, g.xi) == pres.one()
    zero_vec = ModuleVector((pres.zero(),) * 3)
    assert form_eval(h0, zero_vec, g.xi).is_zero()
    x = pres.gen("X")
    assert form_eval(h0, g.e_tilde[0], g.e_tilde[0]) == pres.one() - x * x
    # self-pairing equals the projector entry
    assert form_eval(h0, g.e_tilde[0], g.e_tilde[0]) == g.tangent_projection.matrix[0][0]


def test_form_sesquilinearity_and_hermiticity():
    g = build_fuzzy()
    pres = g.presentation
    h0 = HermitianForm.standard(pres, 3)
    rng = random.Random(6)
    for _ in range(10):
        m1 = ModuleVector(tuple(random_element(pres, rng, 3) for _ in range(3)))
        m2 = ModuleVector(tuple(random_element(pres, rng, 3) for _ in range(3)))
        a = random_element(pres, rng, 2)
        assert form_eval(h0, m1, m2.right_mul(a)) == form_eval(h0, m1, m2) * a
        assert form_eval(h0, m1, m2).adjoint() == form_eval(h0, m2, m1)


def test_hat_h_examples():
    g = build_fuzzy()
    pres = g.presentation
    h0 = HermitianForm.standard(pres, 3)
    e1 = basis_vector(pres, 3, 0)
    row = hat_h(h0, e1)
    assert row.components == (pres.one(), pres.zero(), pres.zero())
    a = random_element(pres, random.Random(8), 3)
    row_a = hat_h(h0, e1.right_mul(a))
    assert row_a.components == (a.adjoint(), pres.zero(), pres.zero())
    xi_row = hat_h(h0, g.xi)
    assert xi_row.components == tuple(pres.gens())
    # antilinearity: hat(m a) = a* hat(m)
    assert row_a.components == row.right_mul(a).components


def test_orthogonal_projection_check():
    g = build_fuzzy()
    pres = g.presentation
    h0 = HermitianForm.standard(pres, 3)
    assert is_orthogonal_projection(g.normal_projection, h0).passed
    assert is_orthogonal_projection(ModuleMap.identity(pres, 3), h0).passed
    corrupted = [list(row) for row in g.normal_projection.matrix]
    corrupted[0][1] = corrupted[0][1] + pres.one()
    bad = is_orthogonal_projection(ModuleMap(tuple(map(tuple, corrupted))), h0)
    assert not bad.passed
    assert bad.witness


def test_check_pseudo_inverse_free_module_flags_basis():
    pres = fuzzy_sphere()
    basis = tuple(basis_vector(pres, 3, i) for i in range(3))
    gens = GeneratorSet(basis, pseudo_inverse=identity_matrix(pres, 3))
    result = check_pseudo_inverse(gens, HermitianForm.standard(pres, 3))
    assert result.passed
    assert result.extra["basis"] is True


def test_check_pseudo_inverse_tangent_generators():
    g = build_fuzzy()
    gens = GeneratorSet(g.e_cross, pseudo_inverse=g.metric_inverse)
    result = check_pseudo_inverse(gens, g.ambient_form)
    assert result.passed
    # three generators of a rank-2 module are not a basis
    assert result.extra["basis"] is False


def test_check_pseudo_inverse_requires_candidate():
    g = build_fuzzy()
    gens = GeneratorSet(g.e_cross, pseudo_inverse=None)
    with pytest.raises(PresentationError):
        check_pseudo_inverse(gens, g.ambient_form)


def test_projection_from_generators():
    g = build_fuzzy()
    pres = g.presentation
    h0 = HermitianForm.standard(pres, 3)
    xi_gens = GeneratorSet((g.xi,), pseudo_inverse=((pres.one(),),))
    assert projection_from_generators(xi_gens, h0).matrix == g.normal_projection.matrix
    frame = GeneratorSet(g.e_cross, pseudo_inverse=g.metric_inverse)
    assert projection_from_generators(frame, h0).matrix == g.tangent_projection.matrix
    basis = GeneratorSet(
        tuple(basis_vector(pres, 3, i) for i in range(3)),
        pseudo_inverse=identity_matrix(pres, 3),
    )
    assert projection_from_generators(basis, h0).matrix == identity_matrix(pres, 3)


def test_embed_identity_projection_is_trivial():
    pres = fuzzy_sphere()
    h0 = HermitianForm.standard(pres, 2)
    doubled = embed_regular_module(ModuleMap.identity(pres, 2), h0)
    assert doubled.passed
    # p-hat is the averaging projection onto the graph of the pairing
    assert doubled.projection.matrix == mat_scale(
        (
            (pres.one(), pres.zero(), pres.one(), pres.zero()),
            (pres.zero(), pres.one(), pres.zero(), pres.one()),
            (pres.one(), pres.zero(), pres.one(), pres.zero()),
            (pres.zero(), pres.one(), pres.zero(), pres.one()),
        ),
        Scalar.coerce(1) / 2,
    )


def test_embed_fuzzy_tangent_instance():
    g = build_fuzzy()
    doubled = embed_regular_module(
        g.tangent_projection, HermitianForm.standard(g.presentation, 3)
    )
    assert doubled.passed
    ids = {c.check_id for c in doubled.checks}
    assert "doubled-projection-idempotent" in ids
    assert "doubled-projection-orthogonal" in ids
    assert "doubled-isometry-pairing" in ids


def test_doubled_pairing_is_hermitian():
    g = build_fuzzy()
    pres = g.presentation
    doubled = embed_regular_module(
        g.tangent_projection, HermitianForm.standard(pres, 3)
    )
    rng = random.Random(12)
    for _ in range(5):
        m1 = ModuleVector(tuple(random_element(pres, rng, 2) for _ in range(6)))
        m2 = ModuleVector(tuple(random_element(pres, rng, 2) for _ in range(6)))
        b = doubled.form
        assert form_eval(b, m1, m2).adjoint() == form_eval(b, m2, m1)


def test_embed_rejects_noninvertible_form():
    pres = fuzzy_sphere()
    x = pres.gen("X")
    # h = diag(X, 1) has no two-sided matrix inverse supplied
    h = HermitianForm(((x, pres.zero()), (pres.zero(), pres.one())))
    with pytest.raises(PresentationError):
        embed_regular_module(ModuleMap.identity(pres, 2), h)
