"""Prebuilt verification suites shared by the CLI and the test battery."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import random_element
from .connections import gamma_parameter_count
from .fuzzy import (
    build_fuzzy,
    build_monopole,
    identity_suite,
    monopole_identity_suite,
    monopole_matrix_checks,
    random_symmetric_gamma,
    rotation_frame_instance,
    rotation_frame_levi_civita,
    tangent_regularity_check,
    verify_symbolic,
)
from .spin_twin import spin_geometry_checks
from .minimal import (
    conformality_check,
    diagonal_table_check,
    fock_invertibility_evidence,
    integrate,
    levi_civita_connection,
    metric_derivative_identities,
    numeric_connection_checks,
    vanishing_products_check,
    weierstrass_from_polynomial,
)
from .modules import HermitianForm, ModuleVector, embed_regular_module
from .oracles import PolyRep
from .presentations import fuzzy_sphere, weyl_lambda, weyl_uv
from .reporting import CheckResult, Report
from .scalars import Scalar

ACCEPTANCE_SPINS = (
    Fraction(1, 2),
    Fraction(1),
    Fraction(3, 2),
    Fraction(2),
    Fraction(3),
    Fraction(6),
)


def fuzzy_symbolic_report(connection: str = "both") -> Report:
    """Exact fuzzy-sphere suite at formal hbar."""
    report = Report(command=f"verify fuzzy --mode symbolic --connection {connection}",
                    presentation="fuzzy-sphere")
    geometry = build_fuzzy()
    report.add(geometry.lie_pair.validate())
    report.extend(verify_symbolic(identity_suite(geometry, connection)))
    report.add(tangent_regularity_check(geometry))
    rng = random.Random(20240)
    decomposition_ok = True
    for _ in range(5):
        vec = ModuleVector(
            tuple(
                random_element(geometry.presentation, rng, max_degree=3, max_terms=3)
                for _ in range(3)
            )
        )
        total = geometry.tangent_projection(vec) + geometry.normal_projection(vec)
        if not all(
            (a - b).is_zero() for a, b in zip(total.coefficients, vec.coefficients)
        ):
            decomposition_ok = False
    report.add(
        CheckResult(
            check_id="fuzzy-decomposition",
            statement="P(U) + Pi(U) = U for random vectors",
            mode="exact",
            passed=decomposition_ok,
        )
    )
    return report


def fuzzy_matrix_report(spins=ACCEPTANCE_SPINS, connection: str = "both") -> Report:
    """Spin-representation cross-validation of the symbolic suite.

    The whole geometry is re-derived with numpy block matrices and numeric
    commutator derivations, independently of the rewriting kernel.
    """
    report = Report(
        command=f"verify fuzzy --mode matrix --connection {connection}",
        presentation="fuzzy-sphere",
    )
    for j in spins:
        report.extend(spin_geometry_checks(j, connection=connection))
    return report


def monopole_report(t: Fraction) -> Report:
    report = Report(command=f"verify monopole --t {t}", presentation="fuzzy-sphere")
    bundle = build_monopole(t)
    report.extend(verify_symbolic(monopole_identity_suite(bundle)))
    return report


def monopole_matrix_report(spins=ACCEPTANCE_SPINS) -> Report:
    report = Report(command="verify monopole --mode matrix",
                    presentation="fuzzy-sphere")
    for j in spins:
        report.extend(monopole_matrix_checks(j))
    return report


def embedding_report() -> Report:
    """Doubled-module embedding of the fuzzy tangent data."""
    report = Report(command="verify embedding", presentation="fuzzy-sphere")
    geometry = build_fuzzy()
    doubled = embed_regular_module(
        geometry.tangent_projection,
        HermitianForm.standard(geometry.presentation, 3),
    )
    report.extend(doubled.checks)
    return report


def levi_civita_report(samples: int = 20, seed: int = 7, max_degree: int = 2) -> Report:
    """Random fully symmetric gamma families on the embedded sphere."""
    report = Report(command=f"verify levi-civita --samples {samples}",
                    presentation="fuzzy-sphere")
    for m, expected in ((1, 1), (2, 4), (3, 10)):
        report.add(
            CheckResult(
                check_id=f"gamma-count-m{m}",
                statement="independent symmetric gamma components",
                mode="exact",
                passed=gamma_parameter_count(m) == expected,
                extra={"m": m, "count": gamma_parameter_count(m)},
            )
        )
    frame = rotation_frame_instance()
    conn0 = rotation_frame_levi_civita(frame)
    report.add(
        CheckResult(
            check_id="levi-civita-gamma-zero",
            statement="gamma = 0 connection is metric and torsion-free",
            mode="exact",
            passed=conn0 is not None,
        )
    )
    rng = random.Random(seed)
    from .connections import derived_gamma_table

    for k in range(samples):
        ambient, table = random_symmetric_gamma(frame, rng, max_degree=max_degree)
        derived = derived_gamma_table(frame.frame, ambient)
        faithful = all(
            derived[a][p][b] == table[a][p][b]
            for a in range(3)
            for p in range(3)
            for b in range(3)
        )
        try:
            rotation_frame_levi_civita(frame, ambient)
            constructed = True
        except Exception:
            constructed = False
        report.add(
            CheckResult(
                check_id=f"levi-civita-random-gamma-{k}",
                statement="random symmetric gamma yields a Levi-Civita connection",
                mode="exact",
                passed=faithful and constructed,
                extra={"coframe_pullback_faithful": faithful},
            )
        )
    return report


ENNEPER_S_TEXT = "paper display 2(1 + Ls^2 L^2 + 2 Ls L)"


def minimal_exact_report() -> Report:
    """Exact Weierstrass suite for F in {1, L, 1 + L^2}."""
    report = Report(command="minimal --exact-suite", presentation="weyl-lambda")
    pres = weyl_lambda()
    lam = pres.gen("L")
    ls = pres.gen("Ls")
    one = pres.one()
    families = {"1": one, "L": lam, "1+L^2": one + lam * lam}
    for label, f in families.items():
        data = weierstrass_from_polynomial(f)
        report.add(
            CheckResult(
                check_id=f"weierstrass-invariants[{label}]",
                statement=data.validate().statement,
                mode="exact",
                passed=data.validate().passed,
            )
        )
        surface = integrate(data)
        checks = [
            conformality_check(surface),
            vanishing_products_check(surface),
            metric_derivative_identities(surface),
        ]
        for c in checks:
            report.add(
                CheckResult(
                    check_id=f"{c.check_id}[{label}]",
                    statement=c.statement,
                    mode=c.mode,
                    passed=c.passed,
                    witness=c.witness,
                )
            )
        sc = levi_civita_connection(surface)
        dt = diagonal_table_check(sc)
        report.add(
            CheckResult(
                check_id=f"{dt.check_id}[{label}]",
                statement=dt.statement,
                mode="exact",
                passed=dt.passed,
                witness=dt.witness,
            )
        )
    # the F = 1 instance reproduces the Enneper displays verbatim
    data = weierstrass_from_polynomial(one)
    surface = integrate(data)
    third = Fraction(1, 3)
    lam3 = lam * lam * lam
    ls3 = ls * ls * ls
    x1_expected = lam - lam3 * third + ls - ls3 * third
    x3_expected = lam * lam + ls * ls
    s_expected = (one + (ls * ls) * (lam * lam) + (ls * lam).scale(2)).scale(2)
    t_expected = (one + (lam * lam) * (ls * ls) + (lam * ls).scale(2)).scale(2)
    report.add(
        CheckResult(
            check_id="enneper-coordinates",
            statement="first and third Enneper coordinates match the displays",
            mode="exact",
            passed=(surface.coordinates[0] == x1_expected)
            and (surface.coordinates[2] == x3_expected),
        )
    )
    report.add(
        CheckResult(
            check_id="enneper-metric-components",
            statement="S and T match the quoted displays after normal form",
            mode="exact",
            passed=(surface.s_component == s_expected)
            and (surface.t_component == t_expected),
        )
    )
    return report


def minimal_numeric_report(
    hbars=(Fraction(1, 2), Fraction(1)), base_dim: int = 64
) -> Report:
    """Fock-representation verdicts for the diagonal connection."""
    report = Report(
        command=f"minimal --numeric-suite --fock-dim {base_dim}",
        presentation="weyl-lambda",
    )
    surface = integrate(weierstrass_from_polynomial(weyl_lambda().one()))
    sc = levi_civita_connection(surface)
    for hbar in hbars:
        report.add(fock_invertibility_evidence(surface, hbar,
                                               dims=(base_dim, 2 * base_dim)))
        report.extend(numeric_connection_checks(sc, hbar, base_dim=base_dim))
    return report


def kernel_property_report(
    seed: int = 11,
    confluence_cases: int = 1000,
    oracle_pairs: int = 500,
) -> Report:
    """Normal-form, involution, Leibniz and oracle-equivalence batteries."""
    report = Report(command="verify kernel", presentation="all")
    rng = random.Random(seed)
    presentations = (fuzzy_sphere(), weyl_uv(), weyl_lambda())

    idempotent = True
    for _ in range(200):
        pres = presentations[rng.randrange(3)]
        x = random_element(pres, rng, max_degree=5, max_terms=4, allow_hbar=True)
        if pres.reduce_terms(x.terms) != x.terms:
            idempotent = False
    report.add(
        CheckResult(
            check_id="normal-form-idempotent",
            statement="reducing a normal form is the identity",
            mode="exact",
            passed=idempotent,
        )
    )

    confluent = True
    per = confluence_cases // len(presentations)
    for pres in presentations:
        for _ in range(per):
            raw = {}
            for _ in range(rng.randint(1, 3)):
                length = rng.randint(0, 6)
                word = tuple(rng.choice(pres.generators) for _ in range(length))
                c = Scalar.from_rational(rng.randint(-3, 3), rng.randint(-3, 3))
                raw[word] = raw.get(word, Scalar.coerce(0)) + c
            ordered = pres.reduce_terms(raw)
            shuffled = pres.reduce_terms_random_order(raw, rng)
            if ordered != shuffled:
                confluent = False
    report.add(
        CheckResult(
            check_id="confluence-witness",
            statement="randomized rule application reproduces the normal form",
            mode="exact",
            passed=confluent,
            extra={"cases": per * len(presentations)},
        )
    )

    involutive = True
    leibniz = True
    for _ in range(150):
        pres = presentations[rng.randrange(3)]
        x = random_element(pres, rng, max_degree=4, max_terms=3)
        y = random_element(pres, rng, max_degree=4, max_terms=3)
        if (x * y).adjoint() != y.adjoint() * x.adjoint():
            involutive = False
        if x.adjoint().adjoint() != x:
            involutive = False
        for d in pres.derivations.values():
            if d(x * y) != d(x) * y + x * d(y):
                leibniz = False
    report.add(
        CheckResult(
            check_id="involution-laws",
            statement="the involution is antimultiplicative and involutive",
            mode="exact",
            passed=involutive,
        )
    )
    report.add(
        CheckResult(
            check_id="derivation-leibniz",
            statement="all registered derivations satisfy the Leibniz rule",
            mode="exact",
            passed=leibniz,
        )
    )

    polyrep_ok = True
    rep = PolyRep()
    weyl_presentations = (weyl_uv(), weyl_lambda())
    for k in range(oracle_pairs):
        pres = weyl_presentations[k % 2]
        a = random_element(pres, rng, max_degree=3, max_terms=2)
        b = random_element(pres, rng, max_degree=3, max_terms=2)
        c = random_element(pres, rng, max_degree=2, max_terms=2)
        if k % 2 == 0:
            # associativity instances: equal by different reduction routes
            x, y = (a * b) * c, a * (b * c)
        else:
            x, y = a * b, a * b + c
        degree = 2 * max(x.degree(), y.degree(), 1)
        agrees = rep.images_agree(x, y, degree)
        if agrees != (x == y):
            polyrep_ok = False
    report.add(
        CheckResult(
            check_id="polynomial-oracle-equivalence",
            statement="kernel equality matches the faithful polynomial action",
            mode="exact",
            passed=polyrep_ok,
            extra={"pairs": oracle_pairs},
        )
    )
    return report


def full_suite_reports() -> list[Report]:
    """Everything the acceptance battery runs, in a fixed order."""
    return [
        fuzzy_symbolic_report(),
        monopole_report(Fraction(2)),
        fuzzy_matrix_report(),
        embedding_report(),
        levi_civita_report(),
        minimal_exact_report(),
        minimal_numeric_report(),
        kernel_property_report(),
    ]
