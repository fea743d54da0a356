import random
from fractions import Fraction

import pytest

from ncgeo.fuzzy import (
    build_fuzzy,
    build_monopole,
    frame_relations_check,
    identity_suite,
    metric_inverse_check,
    monopole_identity_suite,
    monopole_matrix_checks,
    nabla_epsilon,
    nabla_zero,
    random_symmetric_gamma,
    rotation_frame_instance,
    rotation_frame_levi_civita,
    tangent_regularity_check,
    verify_spin_matrix,
    verify_symbolic,
)
from ncgeo.modules import ModuleVector, mat_mul
from ncgeo.scalars import S_I, Scalar


def test_build_fuzzy_core_values():
    g = build_fuzzy()
    pres = g.presentation
    x, y, z = pres.gens()
    h = Scalar.hbar()
    # metric in the rotational frame: g_ij = P_ji - hbar^2 Pi_ij
    p, pi = g.tangent_projection.matrix, g.normal_projection.matrix
    assert g.metric[0][0] == pres.one() - x * x - (x * x).scale(h * h)
    assert g.metric[0][1] == -(y * x) - (x * y).scale(h * h)
    for i in range(3):
        for j in range(3):
            assert g.metric[i][j] == p[j][i] - pi[i][j].scale(h * h)
    # first rotational frame vector: (0, Z, -Y) - i hbar xi X
    ih = S_I * h
    expected = ModuleVector((pres.zero() - (x * x).scale(ih),
                             z - (y * x).scale(ih),
                             -y - (z * x).scale(ih)))
    assert g.e_cross[0] == expected


def test_frame_and_metric_checks_pass():
    g = build_fuzzy()
    assert frame_relations_check(g).passed
    assert metric_inverse_check(g).passed
    assert tangent_regularity_check(g).passed


def test_nabla_zero_table_entry():
    g = build_fuzzy()
    pres = g.presentation
    gens = pres.gens()
    conn = nabla_zero(g)
    # nabla_{d_i} e~_j = -e_i X_j, checked on one concrete pair
    got = conn.ambient(conn.apply_to_generator(0, 1))
    expected = -(g.e_cross[0].right_mul(gens[1]))
    assert all((a - b).is_zero() for a, b in zip(got, expected.coefficients))


def test_nabla_zero_leibniz_example():
    g = build_fuzzy()
    pres = g.presentation
    z = pres.gen("Z")
    conn = nabla_zero(g)
    d = g.lie_pair.derivations[0]
    # nabla_{d_1}(e~_2 Z) = (nabla_{d_1} e~_2) Z + e~_2 d_1(Z)
    coeffs = (pres.zero(), z, pres.zero())
    got = conn.ambient(conn.apply(0, coeffs))
    table = conn.ambient(conn.apply_to_generator(0, 1))
    expected = [t * z + e for t, e in
                zip(table, g.e_tilde[1].right_mul(d(z)).coefficients)]
    assert all((a - b).is_zero() for a, b in zip(got, expected))


def test_nabla_epsilon_acts_as_rotation():
    g = build_fuzzy()
    conn = nabla_epsilon(g)
    got = conn.ambient(conn.apply_to_generator(0, 1))  # nabla_{d_1} e~_2
    expected = g.e_tilde[2]
    assert all((a - b).is_zero() for a, b in zip(got, expected.coefficients))
    # flat: R = 0
    r = conn.curvature(0, 1, 2)
    assert all(c.is_zero() for c in conn.ambient(r))


def test_full_identity_suite_passes():
    g = build_fuzzy()
    for check in verify_symbolic(identity_suite(g)):
        assert check.passed, check.check_id


def test_spin_matrix_cross_validation_small():
    g = build_fuzzy()
    identities = identity_suite(g, connection="zero")
    for check in verify_spin_matrix(identities, Fraction(3, 2)):
        assert check.passed, (check.check_id, check.residual)


def test_monopole_values_at_t2():
    bundle = build_monopole(Fraction(2))
    assert bundle.hbar == Fraction(3, 2)
    assert bundle.alpha == Fraction(1, 2)
    assert bundle.norm == Fraction(5, 2)
    pres = bundle.presentation
    # normalization 1/sqrt(4+hbar^2) = 2/5 sits in every projection entry
    z = pres.gen("Z")
    assert bundle.projection.matrix[0][0] == (
        pres.scalar(Fraction(1, 2)) + z
    ) * Fraction(2, 5)


def test_monopole_suite_exact():
    bundle = build_monopole(Fraction(2))
    for check in verify_symbolic(monopole_identity_suite(bundle)):
        assert check.passed, check.check_id


def test_monopole_connection_entry_d3():
    bundle = build_monopole(Fraction(2))
    pres = bundle.presentation
    x, y, z = pres.gens()
    conn = bundle.connection
    # nabla_{d_3} e~_1 = (1/sqrt(4+hbar^2)) i e~_2 (X - iY)
    got = conn.ambient(conn.apply_to_generator(2, 0))
    e2 = ModuleVector(tuple(bundle.projection.matrix[r][1] for r in range(2)))
    coeff = (x - y.scale(S_I)).scale(S_I)
    expected = e2.right_mul(coeff) * (Fraction(1) / bundle.norm)
    assert all((a - b).is_zero() for a, b in zip(got, expected.coefficients))


def test_monopole_requires_t_above_one():
    with pytest.raises(ValueError):
        build_monopole(Fraction(1))
    with pytest.raises(ValueError):
        build_monopole(Fraction(1, 2))


def test_monopole_at_other_rational_points():
    for t in (Fraction(3, 2), Fraction(3)):
        bundle = build_monopole(t)
        for check in verify_symbolic(monopole_identity_suite(bundle)):
            assert check.passed, (t, check.check_id)


def test_monopole_numeric_spin_projection():
    for check in monopole_matrix_checks(Fraction(2)):
        assert check.passed


def test_decomposition_of_random_vectors():
    g = build_fuzzy()
    from ncgeo.algebra import random_element

    rng = random.Random(42)
    for _ in range(5):
        vec = ModuleVector(
            tuple(random_element(g.presentation, rng, 3) for _ in range(3))
        )
        total = g.tangent_projection(vec) + g.normal_projection(vec)
        assert all(
            (a - b).is_zero() for a, b in zip(total.coefficients, vec.coefficients)
        )


def test_rotation_frame_is_basis():
    frame = rotation_frame_instance()
    ident = tuple(
        tuple(
            frame.presentation.one() if i == j else frame.presentation.zero()
            for j in range(3)
        )
        for i in range(3)
    )
    assert mat_mul(frame.coframe, frame.frame_matrix) == ident
    assert mat_mul(frame.frame_matrix, frame.coframe) == ident
    assert mat_mul(frame.gram_inverse, frame.gram) == ident


def test_rotation_frame_gram_matches_projection_transpose():
    frame = rotation_frame_instance()
    g = build_fuzzy()
    p = g.tangent_projection.matrix
    for a in range(3):
        for b in range(3):
            assert frame.gram[a][b] == p[b][a]


def test_random_symmetric_gamma_connection():
    frame = rotation_frame_instance()
    rng = random.Random(99)
    ambient, table = random_symmetric_gamma(frame, rng)
    from ncgeo.connections import derived_gamma_table

    derived = derived_gamma_table(frame.frame, ambient)
    for a in range(3):
        for p in range(3):
            for b in range(3):
                assert derived[a][p][b] == table[a][p][b]
    conn = rotation_frame_levi_civita(frame, ambient)
    assert conn.is_exact()
