"""Minimal surfaces over the Weyl algebra from Weierstrass data.

A Weierstrass family is generated from a polynomial F in the complex
generator L:

    phi^1 = (1 - L^2) F     phi^2 = i (1 + L^2) F     phi^3 = 2 L F

Each phi^i is holomorphic (dbar phi^i = 0), the family is isotropic
(sum (phi^i)^2 = 0), and [phi^i, d phi^i] = 0 since everything is a
polynomial in L.  Integration produces hermitian coordinates with
d X^i = phi^i; the embedded surface has conformal induced metric with
diagonal components S = h0(Phi, Phi) and T = h0(Phibar, Phibar) in the
complex frame, and the torsion-free metric connections are

    nabla_d Phi    = Phi inv(S) dS + i Phi inv(S) g1 + i Phibar inv(T) g2
    nabla_dbar Phibar = Phibar inv(T) dbar T + i Phi inv(S) g2* + i Phibar inv(T) g1*
    nabla_d Phibar = nabla_dbar Phi = i Phi inv(S) g1* + i Phibar inv(T) g1

for parameters (g1, g2).  S and T have no polynomial inverses, so the
connection lives in the localized calculus and its compatibility checks
are numeric (truncated Fock representations at two dimensions); the
F = 1 instance is the noncommutative Enneper surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, Presentation, PresentationError
from .connections import Connection, LiePair, curvature_applied
from .localization import (
    RLeaf,
    RationalExpr,
    as_rexpr,
    derive_expr,
    make_inverse,
    simplify,
)
from .modules import HermitianForm, ModuleVector
from .oracles import expr_max_abs, expr_residual, fock_rep
from .reporting import CheckResult, VerdictReport
from .scalars import S_I


@dataclass(frozen=True)
class WeierstrassData:
    """Holomorphic isotropic data generating a minimal surface."""

    presentation: Presentation
    phi: tuple[AlgebraElement, ...]

    @property
    def n(self) -> int:
        return len(self.phi)

    def validate(self) -> CheckResult:
        """Holomorphy, isotropy and [phi^i, d phi^i] = 0, all exact."""
        pres = self.presentation
        dbar = pres.derivations["dbar"]
        d = pres.derivations["d"]
        witness = []
        for i, p in enumerate(self.phi):
            if not dbar(p).is_zero():
                witness.append({"identity": "holomorphy", "index": i})
            if not (p * d(p) - d(p) * p).is_zero():
                witness.append({"identity": "phi-commutes-with-derivative", "index": i})
        iso = sum((p * p for p in self.phi), start=pres.zero())
        if not iso.is_zero():
            witness.append({"identity": "isotropy", "value": iso.canonical_text()})
        return CheckResult(
            check_id="weierstrass-data",
            statement="holomorphy, isotropy and commutation with derivatives",
            mode="exact",
            passed=not witness,
            witness=witness or None,
        )


def weierstrass_from_polynomial(f: AlgebraElement) -> WeierstrassData:
    """The three-component family ((1-L^2)F, i(1+L^2)F, 2LF)."""
    if f.is_zero():
        raise ValueError("the generating polynomial must be nonzero")
    pres = f.presentation
    for word in f.terms:
        if any(sym != "L" for sym in word):
            raise PresentationError("the generating element must be a polynomial in L")
    lam = pres.gen("L")
    one = pres.one()
    lam2 = lam * lam
    phi = (
        (one - lam2) * f,
        ((one + lam2) * f).scale(S_I),
        (lam * f).scale(2),
    )
    data = WeierstrassData(pres, phi)
    check = data.validate()
    if not check.passed:
        raise RuntimeError(f"generated Weierstrass data failed validation: {check.witness}")
    return data


def _antiderivative(p: AlgebraElement) -> AlgebraElement:
    """Coefficientwise antiderivative of a polynomial in L (constant 0)."""
    pres = p.presentation
    terms = {}
    for word, coeff in p.terms.items():
        k = len(word)
        terms[("L",) * (k + 1)] = coeff * Fraction(1, k + 1)
    return pres.element(terms)


@dataclass(frozen=True)
class MinimalSurface:
    """Integrated surface with frames and induced metric components."""

    data: WeierstrassData
    coordinates: tuple[AlgebraElement, ...]   # hermitian X^i with d X^i = phi^i
    s_component: AlgebraElement               # S = h0(Phi, Phi)
    t_component: AlgebraElement               # T = h0(Phibar, Phibar)

    @property
    def presentation(self) -> Presentation:
        return self.data.presentation

    @property
    def phi(self) -> tuple[AlgebraElement, ...]:
        return self.data.phi

    @property
    def phi_bar(self) -> tuple[AlgebraElement, ...]:
        return tuple(p.adjoint() for p in self.data.phi)

    @property
    def energy_component(self) -> AlgebraElement:
        """E = h(e_u, e_u) = h(e_v, e_v) = S + T."""
        return self.s_component + self.t_component

    @property
    def skew_component(self) -> AlgebraElement:
        """F with h(e_u, e_v) = i F; equals S - T."""
        return self.s_component - self.t_component

    def frame_u(self) -> ModuleVector:
        return ModuleVector(tuple(p + q for p, q in zip(self.phi, self.phi_bar)))

    def frame_v(self) -> ModuleVector:
        return ModuleVector(
            tuple((p - q).scale(S_I) for p, q in zip(self.phi, self.phi_bar))
        )


def integrate(data: WeierstrassData) -> MinimalSurface:
    """Hermitian coordinates X^i = A^i + (A^i)* with d X^i = phi^i.

    Harmonicity is verified in both guises: 4 d dbar X^i = 0 and
    (d_u^2 + d_v^2) X^i = 0.
    """
    pres = data.presentation
    d = pres.derivations["d"]
    dbar = pres.derivations["dbar"]
    du = pres.derivations["du"]
    dv = pres.derivations["dv"]
    coords = []
    for p in data.phi:
        a = _antiderivative(p)
        x = a + a.adjoint()
        if not x.is_hermitian():
            raise RuntimeError("integrated coordinate is not hermitian")
        if d(x) != p:
            raise RuntimeError("antiderivative does not invert the derivation")
        if not (d(dbar(x)).is_zero() and (du(du(x)) + dv(dv(x))).is_zero()):
            raise RuntimeError("integrated coordinate is not harmonic")
        coords.append(x)
    h0 = HermitianForm.standard(pres, data.n)
    phi_col = ModuleVector(data.phi)
    phibar_col = ModuleVector(tuple(p.adjoint() for p in data.phi))
    surface = MinimalSurface(
        data=data,
        coordinates=tuple(coords),
        s_component=h0(phi_col, phi_col),
        t_component=h0(phibar_col, phibar_col),
    )
    cross = h0(phibar_col, phi_col)
    if not cross.is_zero():
        raise RuntimeError("h0(Phibar, Phi) does not vanish; data is not isotropic")
    return surface


def metric_components(
    m: MinimalSurface,
) -> tuple[AlgebraElement, AlgebraElement, AlgebraElement, AlgebraElement]:
    """The induced metric data (S, T, E, F) with E = S + T and F = S - T."""
    return (
        m.s_component,
        m.t_component,
        m.energy_component,
        m.skew_component,
    )


def conformality_check(m: MinimalSurface) -> CheckResult:
    """Exact minimal-surface conditions in the hermitian (u, v) frame."""
    pres = m.presentation
    h0 = HermitianForm.standard(pres, m.data.n)
    eu, ev = m.frame_u(), m.frame_v()
    witness = []
    if h0(eu, eu) != h0(ev, ev):
        witness.append({"identity": "h(e_u,e_u) = h(e_v,e_v)"})
    cross = h0(eu, ev)
    if not (cross + cross.adjoint()).is_zero():
        witness.append({"identity": "h(e_u,e_v) is skew-adjoint"})
    if h0(eu, eu) != m.energy_component:
        witness.append({"identity": "h(e_u,e_u) = S + T"})
    if cross != m.skew_component.scale(S_I):
        witness.append({"identity": "h(e_u,e_v) = i(S - T)"})
    # the complex frame recombines: Phi = (e_u - i e_v)/2
    half = Fraction(1, 2)
    for k in range(m.data.n):
        recombined = (eu.coefficients[k] - ev.coefficients[k].scale(S_I)) * half
        if recombined != m.phi[k]:
            witness.append({"identity": "Phi = (e_u - i e_v)/2", "index": k})
    return CheckResult(
        check_id="minimal-surface-conformality",
        statement="conformality and frame recombination identities",
        mode="exact",
        passed=not witness,
        witness=witness or None,
    )


def vanishing_products_check(m: MinimalSurface) -> CheckResult:
    """h(Phibar, d Phi) = h(Phi, dbar Phibar) = 0, exact."""
    pres = m.presentation
    d = pres.derivations["d"]
    dbar = pres.derivations["dbar"]
    h0 = HermitianForm.standard(pres, m.data.n)
    phi_col = ModuleVector(m.phi)
    phibar_col = ModuleVector(m.phi_bar)
    d_phi = ModuleVector(tuple(d(p) for p in m.phi))
    dbar_phibar = ModuleVector(tuple(dbar(p) for p in m.phi_bar))
    first = h0(phibar_col, d_phi)
    second = h0(phi_col, dbar_phibar)
    witness = []
    if not first.is_zero():
        witness.append({"identity": "h(Phibar, d Phi)", "value": first.canonical_text()})
    if not second.is_zero():
        witness.append(
            {"identity": "h(Phi, dbar Phibar)", "value": second.canonical_text()}
        )
    return CheckResult(
        check_id="minimal-surface-vanishing-products",
        statement="the two mixed metric derivatives vanish",
        mode="exact",
        passed=not witness,
        witness=witness or None,
    )


def metric_derivative_identities(m: MinimalSurface) -> CheckResult:
    """dS = h0(Phi, d Phi) and dbar T = h0(Phibar, dbar Phibar), exact."""
    pres = m.presentation
    d = pres.derivations["d"]
    dbar = pres.derivations["dbar"]
    h0 = HermitianForm.standard(pres, m.data.n)
    phi_col = ModuleVector(m.phi)
    phibar_col = ModuleVector(m.phi_bar)
    ok_s = d(m.s_component) == h0(phi_col, ModuleVector(tuple(d(p) for p in m.phi)))
    ok_t = dbar(m.t_component) == h0(
        phibar_col, ModuleVector(tuple(dbar(p) for p in m.phi_bar))
    )
    return CheckResult(
        check_id="minimal-surface-metric-derivatives",
        statement="dS and dbar T reduce to frame pairings",
        mode="exact",
        passed=ok_s and ok_t,
    )


def complex_frame_lie_pair(pres: Presentation) -> LiePair:
    """The (d, dbar) frame: star-closed with d* = dbar, abelian bracket."""
    d = pres.derivations["d"]
    dbar = pres.derivations["dbar"]
    return LiePair(pres, (d, dbar), {}, (1, 0))


@dataclass(frozen=True)
class SurfaceConnection:
    """Torsion-free metric connection on the (Phi, Phibar) frame."""

    surface: MinimalSurface
    connection: Connection
    gamma1: AlgebraElement
    gamma2: AlgebraElement

    @property
    def is_diagonal(self) -> bool:
        return self.gamma1.is_zero() and self.gamma2.is_zero()


def levi_civita_connection(
    m: MinimalSurface,
    gamma1: AlgebraElement | None = None,
    gamma2: AlgebraElement | None = None,
) -> SurfaceConnection:
    """The localized connection table for parameters (gamma1, gamma2).

    S and T are registered invertible (their truncated Fock images are
    positive diagonal matrices).  For gamma1 = gamma2 = 0 the table
    collapses to nabla_d Phi = Phi inv(S) dS, nabla_dbar Phibar =
    Phibar inv(T) dbar T with the mixed entries vanishing.
    """
    pres = m.presentation
    g1 = gamma1 if gamma1 is not None else pres.zero()
    g2 = gamma2 if gamma2 is not None else pres.zero()
    d = pres.derivations["d"]
    dbar = pres.derivations["dbar"]
    inv_s = make_inverse(m.s_component, "positive diagonal in the Fock basis")
    inv_t = make_inverse(m.t_component, "positive diagonal in the Fock basis")
    i_one = pres.scalar(S_I)

    def entry(*pieces) -> RationalExpr:
        total = None
        for piece in pieces:
            total = piece if total is None else total + piece
        return simplify(total)

    ds = RLeaf(d(m.s_component))
    dbar_t = RLeaf(dbar(m.t_component))
    # columns indexed by frame: 0 -> Phi, 1 -> Phibar
    on_phi_d = (
        entry(inv_s * ds, inv_s * RLeaf(i_one * g1)),
        entry(inv_t * RLeaf(i_one * g2)),
    )
    on_phibar_d = (
        entry(inv_s * RLeaf(i_one * g1.adjoint())),
        entry(inv_t * RLeaf(i_one * g1)),
    )
    on_phi_dbar = on_phibar_d  # nabla_dbar Phi = nabla_d Phibar
    on_phibar_dbar = (
        entry(inv_s * RLeaf(i_one * g2.adjoint())),
        entry(inv_t * dbar_t, inv_t * RLeaf(i_one * g1.adjoint())),
    )
    christoffel = (
        # derivation d: columns for Phi and Phibar
        (
            (on_phi_d[0], on_phibar_d[0]),
            (on_phi_d[1], on_phibar_d[1]),
        ),
        (
            (on_phi_dbar[0], on_phibar_dbar[0]),
            (on_phi_dbar[1], on_phibar_dbar[1]),
        ),
    )
    lie_pair = complex_frame_lie_pair(pres)
    generators = (ModuleVector(m.phi), ModuleVector(m.phi_bar))
    conn = Connection(lie_pair, generators, christoffel)
    return SurfaceConnection(surface=m, connection=conn, gamma1=g1, gamma2=g2)


def diagonal_table_check(sc: SurfaceConnection) -> CheckResult:
    """For gamma = 0: nabla_d Phi = Phi inv(S) dS, mixed entries vanish."""
    m = sc.surface
    pres = m.presentation
    d = pres.derivations["d"]
    dbar = pres.derivations["dbar"]
    conn = sc.connection
    inv_s = make_inverse(m.s_component)
    inv_t = make_inverse(m.t_component)
    expected = {
        (0, 0, 0): simplify(inv_s * RLeaf(d(m.s_component))),
        (0, 1, 0): RLeaf(pres.zero()),
        (0, 0, 1): RLeaf(pres.zero()),
        (0, 1, 1): RLeaf(pres.zero()),
        (1, 0, 0): RLeaf(pres.zero()),
        (1, 1, 0): RLeaf(pres.zero()),
        (1, 0, 1): RLeaf(pres.zero()),
        (1, 1, 1): simplify(inv_t * RLeaf(dbar(m.t_component))),
    }
    witness = []
    for (a, j, i), want in expected.items():
        got = simplify(as_rexpr(conn.gamma(a, j, i)))
        if got != want:
            witness.append({"entry": [a, j, i], "got": repr(got), "want": repr(want)})
    return CheckResult(
        check_id="minimal-surface-diagonal-table",
        statement="gamma = 0 table collapses to the diagonal closed form",
        mode="exact",
        passed=not witness,
        witness=witness or None,
    )


def torsion_expressions(sc: SurfaceConnection) -> tuple:
    """Ambient components of nabla_d Phibar - nabla_dbar Phi (abelian frame)."""
    conn = sc.connection
    col_d_phibar = conn.apply_to_generator(0, 1)
    col_dbar_phi = conn.apply_to_generator(1, 0)
    diff = tuple(
        simplify(as_rexpr(a) - as_rexpr(b))
        for a, b in zip(col_d_phibar, col_dbar_phi)
    )
    return conn.ambient(diff)


def metric_compatibility_expressions(sc: SurfaceConnection) -> list:
    """All (a, b, c) compatibility defects as localized expressions."""
    m = sc.surface
    pres = m.presentation
    conn = sc.connection
    gram = (
        (m.s_component, pres.zero()),
        (pres.zero(), m.t_component),
    )
    lp = conn.lie_pair
    out = []
    for a in range(2):
        d = lp.derivations[a]
        a_star = lp.adjoint_index[a]
        for b in range(2):
            for c in range(2):
                lhs = as_rexpr(d(gram[b][c]))
                col_b = conn.apply_to_generator(a_star, b)
                col_c = conn.apply_to_generator(a, c)
                rhs = None
                for p in range(2):
                    # h(nabla_{a*} e_b, e_c) stars the frame coefficient
                    t1 = simplify(_adjoint(col_b[p]) * RLeaf(gram[p][c]))
                    t2 = simplify(RLeaf(gram[b][p]) * as_rexpr(col_c[p]))
                    rhs = t1 if rhs is None else rhs + t1
                    rhs = rhs + t2
                out.append(simplify(lhs - rhs))
    return out


def _adjoint(x) -> RationalExpr:
    from .localization import adjoint_expr

    return simplify(adjoint_expr(as_rexpr(x)))


def numeric_connection_checks(
    sc: SurfaceConnection,
    hbar: Fraction,
    base_dim: int = 64,
    tolerance: float = 1e-8,
) -> list[VerdictReport]:
    """Metric compatibility, torsion and curvature agreement in Fock space.

    Runs at the base dimension and at twice the base dimension; a check
    passes only if the residual is below tolerance at both sizes and does
    not drift between them.
    """

    def rep_builder(n: int):
        return fock_rep(hbar, n)

    dims = (base_dim, 2 * base_dim)
    reports = []

    defects = metric_compatibility_expressions(sc)
    residuals = []
    for n in dims:
        rep = rep_builder(n)
        residuals.append(max(expr_max_abs(e, rep) for e in defects))
    stable = abs(residuals[0] - residuals[1]) < tolerance
    ok = max(residuals) < tolerance and stable
    reports.append(
        VerdictReport(
            check_id=f"minimal-metric-compatibility@hbar={hbar}",
            statement="connection is metric-compatible on the complex frame",
            verdict="numeric-equal" if ok else "inconclusive",
            residuals=tuple(residuals),
            dims=dims,
            stable=stable,
        )
    )

    torsion_parts = torsion_expressions(sc)
    residuals = []
    for n in dims:
        rep = rep_builder(n)
        residuals.append(max(expr_max_abs(e, rep) for e in torsion_parts))
    stable = abs(residuals[0] - residuals[1]) < tolerance
    ok = max(residuals) < tolerance and stable
    reports.append(
        VerdictReport(
            check_id=f"minimal-torsion@hbar={hbar}",
            statement="nabla_d Phibar = nabla_dbar Phi (torsion-free frame)",
            verdict="numeric-equal" if ok else "inconclusive",
            residuals=tuple(residuals),
            dims=dims,
            stable=stable,
        )
    )

    closed, composed = curvature_expressions(sc)
    residuals = []
    scale = 0.0
    for n in dims:
        rep = rep_builder(n)
        residuals.append(
            max(expr_residual(a, b, rep) for a, b in zip(closed, composed))
        )
        scale = max(scale, max(expr_max_abs(e, rep) for e in closed))
    stable = abs(residuals[0] - residuals[1]) < tolerance
    ok = max(residuals) < tolerance and stable and scale > tolerance
    reports.append(
        VerdictReport(
            check_id=f"minimal-curvature-agreement@hbar={hbar}",
            statement="closed-form curvature matches operator composition",
            verdict="numeric-equal" if ok else "inconclusive",
            residuals=tuple(residuals),
            dims=dims,
            stable=stable,
            extra={"curvature_scale": scale},
        )
    )
    return reports


def curvature_expressions(sc: SurfaceConnection) -> tuple[list, list]:
    """Closed-form and operator-composition curvature, ambient components.

    Closed form (gamma = 0): R(d, dbar) Phi = -Phi dbar(inv(S) dS) and
    R(d, dbar) Phibar = Phibar d(inv(T) dbar T).  The composition route
    evaluates nabla_d nabla_dbar - nabla_dbar nabla_d on the frame columns
    (the bracket term vanishes, the frame derivations commute).
    """
    if not sc.is_diagonal:
        raise ValueError("closed-form curvature is stated for gamma = 0")
    m = sc.surface
    pres = m.presentation
    d = pres.derivations["d"]
    dbar = pres.derivations["dbar"]
    conn = sc.connection
    inv_s = make_inverse(m.s_component)
    inv_t = make_inverse(m.t_component)

    phi_term = simplify(derive_expr(dbar, simplify(inv_s * RLeaf(d(m.s_component)))))
    phibar_term = simplify(derive_expr(d, simplify(inv_t * RLeaf(dbar(m.t_component)))))
    closed_phi = conn.ambient((simplify(-phi_term), RLeaf(pres.zero())))
    closed_phibar = conn.ambient((RLeaf(pres.zero()), phibar_term))

    one = pres.one()
    zero = pres.zero()
    composed_phi = conn.ambient(curvature_applied(conn, 0, 1, (RLeaf(one), RLeaf(zero))))
    composed_phibar = conn.ambient(
        curvature_applied(conn, 0, 1, (RLeaf(zero), RLeaf(one)))
    )
    return (
        list(closed_phi) + list(closed_phibar),
        list(composed_phi) + list(composed_phibar),
    )


def fock_invertibility_evidence(
    m: MinimalSurface, hbar: Fraction, dims: tuple[int, ...] = (64, 128)
) -> CheckResult:
    """Record that truncated images of S and T are comfortably invertible.

    This is evidence for the invertibility assumption behind inv(S) and
    inv(T), not a proof; the verdict is deliberately labeled numeric.
    """
    import numpy as np

    from .oracles import evaluate

    worst = 0.0
    for n in dims:
        rep = fock_rep(hbar, n)
        for elem in (m.s_component, m.t_component):
            worst = max(worst, float(np.linalg.cond(evaluate(elem, rep))))
    return CheckResult(
        check_id=f"minimal-fock-invertibility@hbar={hbar}",
        statement="Fock truncations of S and T are well-conditioned",
        mode="numeric",
        passed=worst < 1e8,
        residual=worst,
        extra={"condition_bound": 1e8},
    )
