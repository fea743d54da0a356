"""Connections over Lie pairs as Christoffel tables on a generator frame.

A :class:`LiePair` is a presentation together with a star-closed list of
derivations and the structure constants of their bracket.  A
:class:`Connection` stores nabla_{d_a} e_i = sum_j e_j Gamma^j_{a i}
extensionally on a fixed generator list; generators need not be a basis,
so equality of module elements is always decided in ambient coordinates.
Christoffel entries are algebra elements for the exact instances and may
be localized expressions (with marked inverses) for the minimal-surface
instances, in which case compatibility checks return numeric verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .algebra import AlgebraElement, Derivation, Presentation, PresentationError
from .localization import (
    RationalExpr,
    RLeaf,
    adjoint_expr,
    as_rexpr,
    derive_expr,
    exact_leaf,
    simplify,
)
from .modules import GeneratorSet, HermitianForm, Matrix, ModuleVector, form_eval
from .reporting import CheckResult, VerdictReport
from .scalars import S_I, Scalar

Coefficient = Union[AlgebraElement, RationalExpr]


def _is_exact(c: Coefficient) -> bool:
    return isinstance(c, AlgebraElement)


def c_add(a: Coefficient, b: Coefficient) -> Coefficient:
    if _is_exact(a) and _is_exact(b):
        return a + b
    return simplify(as_rexpr(a) + as_rexpr(b))


def c_mul(a: Coefficient, b: Coefficient) -> Coefficient:
    if _is_exact(a) and _is_exact(b):
        return a * b
    return simplify(as_rexpr(a) * as_rexpr(b))


def c_neg(a: Coefficient) -> Coefficient:
    if _is_exact(a):
        return -a
    return simplify(-as_rexpr(a))


def c_star(a: Coefficient) -> Coefficient:
    if _is_exact(a):
        return a.adjoint()
    return simplify(adjoint_expr(a))


def c_derive(d: Derivation, a: Coefficient) -> Coefficient:
    if _is_exact(a):
        return d(a)
    return derive_expr(d, a)


def c_is_zero(a: Coefficient) -> bool:
    if _is_exact(a):
        return a.is_zero()
    leaf = exact_leaf(a)
    return leaf is not None and leaf.is_zero()


@dataclass(frozen=True)
class LiePair:
    """A presentation with a star-closed derivation family and its bracket.

    ``structure`` maps (a, b, c) to the scalar f_ab^c in
    [d_a, d_b] = f_ab^c d_c (missing keys are zero); ``adjoint_index``
    names the frame member equal to each derivation's adjoint, so both a
    hermitian basis (fixed points) and a conjugate pair like (d, dbar) fit.
    """

    presentation: Presentation
    derivations: tuple[Derivation, ...]
    structure: dict
    adjoint_index: tuple[int, ...]

    @staticmethod
    def hermitian(
        presentation: Presentation,
        derivations: Sequence[Derivation],
        structure: dict | None = None,
    ) -> "LiePair":
        ders = tuple(derivations)
        return LiePair(
            presentation,
            ders,
            structure or {},
            tuple(range(len(ders))),
        )

    @property
    def dim(self) -> int:
        return len(self.derivations)

    def f(self, a: int, b: int, c: int) -> Scalar:
        return Scalar.coerce(self.structure.get((a, b, c), 0))

    def bracket_defect(self, a: int, b: int, x: AlgebraElement) -> AlgebraElement:
        """[d_a, d_b](x) - f_ab^c d_c(x); zero when the table is correct."""
        da, db = self.derivations[a], self.derivations[b]
        out = da(db(x)) - db(da(x))
        for c in range(self.dim):
            coeff = self.f(a, b, c)
            if not coeff.is_zero():
                out = out - self.derivations[c](x).scale(coeff)
        return out

    def validate(self) -> CheckResult:
        """Check the bracket table and the adjoint assignment on generators."""
        witness = []
        pres = self.presentation
        for a in range(self.dim):
            adj = self.derivations[a].adjoint()
            partner = self.derivations[self.adjoint_index[a]]
            if not adj.same_action(partner):
                witness.append({"identity": "adjoint-assignment", "index": a})
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                for g in pres.generators:
                    defect = self.bracket_defect(a, b, pres.gen(g))
                    if not defect.is_zero():
                        witness.append(
                            {"identity": "bracket-structure", "pair": [a, b],
                             "generator": g, "value": defect.canonical_text()}
                        )
        return CheckResult(
            check_id="lie-pair-structure",
            statement="derivation frame is star-closed with the stated bracket",
            mode="exact",
            passed=not witness,
            witness=witness or None,
        )


@dataclass(frozen=True)
class Connection:
    """Christoffel table over a generator frame: nabla_a e_i = e_j G[a][j][i]."""

    lie_pair: LiePair
    generators: tuple[ModuleVector, ...]
    christoffel: tuple  # christoffel[a][j][i]

    @property
    def presentation(self) -> Presentation:
        return self.lie_pair.presentation

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def gamma(self, a: int, j: int, i: int) -> Coefficient:
        return self.christoffel[a][j][i]

    def is_exact(self) -> bool:
        return all(
            _is_exact(entry)
            for table in self.christoffel
            for row in table
            for entry in row
        )

    def apply(self, a: int, coefficients: Sequence[Coefficient]) -> tuple:
        """Covariant derivative of e_b m^b in frame coefficients.

        Returns Gamma^j_{a b} m^b + d_a(m^j) for each j (Leibniz rule).
        """
        d = self.lie_pair.derivations[a]
        n = self.n_generators
        out = []
        for j in range(n):
            acc: Coefficient = self.presentation.zero()
            for b in range(n):
                g = self.christoffel[a][j][b]
                if c_is_zero(g):
                    continue
                acc = c_add(acc, c_mul(g, coefficients[b]))
            acc = c_add(acc, c_derive(d, coefficients[j]))
            out.append(acc)
        return tuple(out)

    def apply_to_generator(self, a: int, i: int) -> tuple:
        """Frame coefficients of nabla_{d_a} e_i (the Christoffel column)."""
        return tuple(self.christoffel[a][j][i] for j in range(self.n_generators))

    def ambient(self, coefficients: Sequence[Coefficient]) -> tuple:
        """Ambient coordinates of e_b c^b; exact when coefficients are."""
        n_amb = self.generators[0].dim
        out = []
        for k in range(n_amb):
            acc: Coefficient = self.presentation.zero()
            for b, e in enumerate(self.generators):
                if c_is_zero(coefficients[b]):
                    continue
                acc = c_add(acc, c_mul(e.coefficients[k], coefficients[b]))
            out.append(acc)
        return tuple(out)

    def curvature(self, a: int, b: int, k: int) -> tuple:
        """Frame coefficients of R(d_a, d_b) e_k.

        R = nabla_a nabla_b - nabla_b nabla_a - f_ab^c nabla_c, so the
        bracket term honours the Lie pair structure constants.
        """
        col_b = self.apply_to_generator(b, k)
        col_a = self.apply_to_generator(a, k)
        term1 = self.apply(a, col_b)
        term2 = self.apply(b, col_a)
        out = [c_add(t1, c_neg(t2)) for t1, t2 in zip(term1, term2)]
        for c in range(self.lie_pair.dim):
            f = self.lie_pair.f(a, b, c)
            if f.is_zero():
                continue
            col_c = self.apply_to_generator(c, k)
            fs = self.presentation.scalar(f)
            out = [c_add(o, c_neg(c_mul(fs, g))) for o, g in zip(out, col_c)]
        return tuple(out)


def free_hermitian_connection(
    lie_pair: LiePair,
    h: HermitianForm,
    h_inverse: Matrix,
    gamma: Sequence[Matrix],
) -> Connection:
    """Hermitian connection on the free module from a gamma parameter.

    Gamma^i_{a j} = 1/2 h^{ik} d_a(h_{kj}) + i h^{ik} gamma_{a,kj}, where
    gamma_{a,ij}* = gamma_{a,ji} is verified, as is that ``h_inverse`` is a
    genuine two-sided inverse.  The result is metric-compatible by
    construction (and checkable via :func:`check_metric_compatibility`).
    """
    pres = lie_pair.presentation
    n = h.dim
    from .modules import identity_matrix, mat_mul, mat_star_transpose

    ident = identity_matrix(pres, n)
    if mat_mul(h_inverse, h.matrix) != ident or mat_mul(h.matrix, h_inverse) != ident:
        raise PresentationError("h_inverse is not a two-sided inverse of h")
    for a, g_a in enumerate(gamma):
        if mat_star_transpose(g_a) != g_a:
            raise PresentationError(f"gamma[{a}] is not hermitian")
    half = Scalar.coerce(1) / 2
    tables = []
    for a in range(lie_pair.dim):
        d = lie_pair.derivations[a]
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = pres.zero()
                for k in range(n):
                    acc = acc + h_inverse[i][k] * d(h.matrix[k][j]).scale(half)
                    acc = acc + (h_inverse[i][k] * gamma[a][k][j]).scale(S_I)
                row.append(acc)
            table.append(tuple(row))
        tables.append(tuple(table))
    generators = tuple(
        ModuleVector(tuple(pres.one() if r == i else pres.zero() for r in range(n)))
        for i in range(n)
    )
    return Connection(lie_pair, generators, tuple(tables))


def project_connection(p_matrix: Matrix, conn: Connection) -> Connection:
    """Push a free-module connection to the image frame of a projection.

    With generators e~_i = e_j P^j_i the projected table is
    Gamma'_a = d_a(P) + Gamma_a P, which realizes p o nabla.
    """
    pres = conn.presentation
    n = len(p_matrix)
    from .modules import mat_mul

    tables = []
    for a in range(conn.lie_pair.dim):
        d = conn.lie_pair.derivations[a]
        gamma_p = mat_mul(conn.christoffel[a], p_matrix)
        table = tuple(
            tuple(d(p_matrix[j][i]) + gamma_p[j][i] for i in range(n))
            for j in range(n)
        )
        tables.append(table)
    generators = tuple(
        ModuleVector(tuple(p_matrix[k][i] for k in range(n))) for i in range(n)
    )
    return Connection(conn.lie_pair, generators, tuple(tables))


def apply_connection(
    conn: Connection, a: int, coefficients: Sequence[Coefficient]
) -> tuple:
    return conn.apply(a, coefficients)


def check_metric_compatibility(
    conn: Connection,
    gram: Matrix,
    *,
    check_id: str = "metric-compatibility",
    rep_builder: Callable | None = None,
    dims: tuple[int, int] = (64, 128),
    tolerance: float = 1e-8,
):
    """Verify d_a h(e_b, e_c) = h(nabla_{d_a*} e_b, e_c) + h(e_b, nabla_a e_c).

    ``gram`` holds h(e_b, e_c) on the connection's generators.  Exact
    entries give an exact CheckResult; localized entries are compared in
    truncated Fock representations and give a VerdictReport.
    """
    lp = conn.lie_pair
    n = conn.n_generators
    exact = conn.is_exact()
    witness = []
    identities = []
    for a in range(lp.dim):
        d = lp.derivations[a]
        a_star = lp.adjoint_index[a]
        for b in range(n):
            for c in range(n):
                lhs: Coefficient = c_derive(d, gram[b][c])
                rhs: Coefficient = conn.presentation.zero()
                col_b = conn.apply_to_generator(a_star, b)
                col_c = conn.apply_to_generator(a, c)
                for p in range(n):
                    if not c_is_zero(col_b[p]):
                        rhs = c_add(rhs, c_mul(c_star(col_b[p]), gram[p][c]))
                    if not c_is_zero(col_c[p]):
                        rhs = c_add(rhs, c_mul(gram[b][p], col_c[p]))
                diff = c_add(lhs, c_neg(rhs))
                if exact:
                    if not diff.is_zero():
                        witness.append(
                            {"indices": [a, b, c], "value": diff.canonical_text()}
                        )
                else:
                    identities.append(((a, b, c), diff))
    if exact:
        return CheckResult(
            check_id=check_id,
            statement="connection is compatible with the hermitian form",
            mode="exact",
            passed=not witness,
            witness=witness or None,
        )
    if rep_builder is None:
        raise ValueError("localized connection requires a representation builder")
    from .oracles import expr_max_abs

    residuals = []
    for dim in dims:
        rep = rep_builder(dim)
        residuals.append(
            max(expr_max_abs(diff, rep) for _, diff in identities)
        )
    stable = abs(residuals[0] - residuals[1]) < tolerance
    ok = max(residuals) < tolerance and stable
    return VerdictReport(
        check_id=check_id,
        statement="connection is compatible with the hermitian form",
        verdict="numeric-equal" if ok else "inconclusive",
        residuals=tuple(residuals),
        dims=tuple(dims),
        stable=stable,
    )


def torsion(conn: Connection) -> list[tuple]:
    """Ambient torsion vectors T_ab = nabla_a e_b - nabla_b e_a - e_c f_ab^c.

    Requires the connection generators to be the derivation images
    phi(d_a); returns one ambient coefficient tuple per pair a < b.
    """
    lp = conn.lie_pair
    if conn.n_generators != lp.dim:
        raise PresentationError("torsion needs one generator per derivation")
    out = []
    pres = conn.presentation
    for a in range(lp.dim):
        for b in range(a + 1, lp.dim):
            coeffs = [
                c_add(x, c_neg(y))
                for x, y in zip(conn.apply_to_generator(a, b),
                                conn.apply_to_generator(b, a))
            ]
            for c in range(lp.dim):
                f = lp.f(a, b, c)
                if not f.is_zero():
                    coeffs[c] = c_add(coeffs[c], c_neg(pres.scalar(f)))
            out.append(conn.ambient(coeffs))
    return out


def curvature(conn: Connection, a: int, b: int, k: int) -> tuple:
    return conn.curvature(a, b, k)


def curvature_applied(
    conn: Connection, a: int, b: int, coefficients: Sequence[Coefficient]
) -> tuple:
    """R(d_a, d_b) applied to a frame-coefficient column (right-linear)."""
    term1 = conn.apply(a, conn.apply(b, coefficients))
    term2 = conn.apply(b, conn.apply(a, coefficients))
    out = [c_add(x, c_neg(y)) for x, y in zip(term1, term2)]
    for c in range(conn.lie_pair.dim):
        f = conn.lie_pair.f(a, b, c)
        if f.is_zero():
            continue
        fs = conn.presentation.scalar(f)
        col = conn.apply(c, coefficients)
        out = [c_add(o, c_neg(c_mul(fs, g))) for o, g in zip(out, col)]
    return tuple(out)


def metric_compatibility_zeros(conn: Connection, gram: Matrix) -> list:
    """The differences d_a h(e_b,e_c) - h(nabla_{a*}e_b,e_c) - h(e_b,nabla_a e_c).

    Exact-coefficient connections only; each entry must vanish for a
    hermitian connection.  Used to feed both the symbolic and the matrix
    verification paths with identical identities.
    """
    lp = conn.lie_pair
    n = conn.n_generators
    out = []
    for a in range(lp.dim):
        d = lp.derivations[a]
        a_star = lp.adjoint_index[a]
        for b in range(n):
            for c in range(n):
                diff = d(gram[b][c])
                col_b = conn.apply_to_generator(a_star, b)
                col_c = conn.apply_to_generator(a, c)
                for p in range(n):
                    diff = diff - col_b[p].adjoint() * gram[p][c]
                    diff = diff - gram[b][p] * col_c[p]
                out.append(diff)
    return out


def gamma_parameter_count(m: int) -> int:
    """Independent hermitian entries of a fully symmetric m-index table."""
    return math.comb(m + 2, 3)


def derived_gamma_table(
    generators: Sequence[ModuleVector],
    gamma_ambient: Sequence[Matrix],
) -> list:
    """Compress ambient gamma_{a,ij} onto a frame: (e_p^i)* gamma_{a,ij} e_b^j.

    The left contraction (e_p)* gamma_a is shared across the b index.
    """
    pres = generators[0].presentation
    m = len(generators)
    n = generators[0].dim
    star_rows = [
        tuple(c.adjoint() for c in generators[p].coefficients) for p in range(m)
    ]
    out = []
    for a in range(len(gamma_ambient)):
        table = []
        for p in range(m):
            stars = star_rows[p]
            row_contraction = []
            for j in range(n):
                acc = pres.zero()
                for i in range(n):
                    g = gamma_ambient[a][i][j]
                    if stars[i].is_zero() or g.is_zero():
                        continue
                    acc = acc + stars[i] * g
                row_contraction.append(acc)
            row = []
            for b in range(m):
                acc = pres.zero()
                for j in range(n):
                    if row_contraction[j].is_zero():
                        continue
                    acc = acc + row_contraction[j] * generators[b].coefficients[j]
                row.append(acc)
            table.append(tuple(row))
        out.append(tuple(table))
    return out


def levi_civita(
    lie_pair: LiePair,
    coordinates: Sequence[AlgebraElement],
    ambient_form: HermitianForm,
    pseudo_inverse: Matrix,
    gamma_ambient: Sequence[Matrix] | None = None,
    gamma_table: Sequence[Matrix] | None = None,
) -> Connection:
    """Metric and torsion-free connection of an embedded manifold.

    The frame is e_a = phi(d_a) with components d_a(X^i); the table is

        Gamma^c_{a b} = h^{cp} ( h0(e_p, d_a e_b) + i gamma_{a,p b} )

    where h^{cp} is a verified pseudo-inverse of the Gram matrix.  The
    gamma freedom may be supplied as ambient matrices gamma_{a,ij}
    (hermitian per derivation; the frame table is derived) or directly as
    a frame table (legitimate when the frame is a basis).  Torsion-freeness
    requires the derived table to satisfy gamma_{a,pb} = gamma_{b,pa};
    this is verified, as are metric compatibility and torsion after
    construction.
    """
    pres = lie_pair.presentation
    m = lie_pair.dim
    n = len(coordinates)
    for x in coordinates:
        if not x.is_hermitian():
            raise PresentationError("embedding coordinates must be hermitian")
    frame = tuple(
        ModuleVector(tuple(lie_pair.derivations[a](coordinates[i]) for i in range(n)))
        for a in range(m)
    )
    gens = GeneratorSet(frame, pseudo_inverse=pseudo_inverse)
    from .modules import check_pseudo_inverse

    reg = check_pseudo_inverse(gens, ambient_form)
    if not reg.passed:
        raise PresentationError("frame Gram matrix fails the pseudo-inverse check")

    if gamma_table is None:
        if gamma_ambient is None:
            gamma_ambient = [
                tuple(tuple(pres.zero() for _ in range(n)) for _ in range(n))
                for _ in range(m)
            ]
        from .modules import mat_star_transpose

        for a in range(m):
            if mat_star_transpose(gamma_ambient[a]) != gamma_ambient[a]:
                raise PresentationError(f"gamma_ambient[{a}] is not hermitian")
        gamma_table = derived_gamma_table(frame, gamma_ambient)
    for a in range(m):
        for p in range(m):
            for b in range(m):
                if gamma_table[a][p][b] != gamma_table[b][p][a]:
                    raise PresentationError(
                        "gamma table lacks the symmetry needed for torsion-freeness"
                    )
                if gamma_table[a][p][b].adjoint() != gamma_table[a][b][p]:
                    raise PresentationError("gamma table is not hermitian")

    second = {
        (a, b): ModuleVector(
            tuple(
                lie_pair.derivations[a](lie_pair.derivations[b](coordinates[i]))
                for i in range(n)
            )
        )
        for a in range(m)
        for b in range(m)
    }
    tables = []
    for a in range(m):
        table_rows = []
        for c in range(m):
            row = []
            for b in range(m):
                acc = pres.zero()
                for p in range(m):
                    inner = form_eval(ambient_form, frame[p], second[(a, b)])
                    inner = inner + gamma_table[a][p][b].scale(S_I)
                    acc = acc + pseudo_inverse[c][p] * inner
                row.append(acc)
            table_rows.append(tuple(row))
        tables.append(tuple(table_rows))
    conn = Connection(lie_pair, frame, tuple(tables))

    gram = gens.gram(ambient_form)
    compat = check_metric_compatibility(conn, gram, check_id="levi-civita-metric")
    if not compat.passed:
        raise PresentationError("constructed connection is not metric-compatible")
    for t in torsion(conn):
        if not all(c_is_zero(c) for c in t):
            raise PresentationError("constructed connection has torsion")
    return conn
