"""Numeric twin of the fuzzy-sphere suite, built purely from matrices.

This module re-derives the whole tangent-geometry suite inside a spin-j
representation using nothing but numpy operations: block matrices of
generator images, numeric commutator derivations
d_a(M) = [X_a, M]/(i hbar), and numpy matrix products.  It shares no
arithmetic with the symbolic kernel, so agreement of the two suites is a
genuine cross-validation rather than a re-evaluation of normal forms.

Block objects are nested lists of complex N x N arrays: a "bvec" is a list
of three blocks (an ambient module vector), a "bmat" a 3 x 3 grid.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .oracles import MatrixRep, relation_residual, spin_rep
from .presentations import epsilon
from .reporting import CheckResult


def _zeros(rep: MatrixRep) -> np.ndarray:
    return np.zeros((rep.dim, rep.dim), dtype=complex)


def _eye(rep: MatrixRep) -> np.ndarray:
    return np.eye(rep.dim, dtype=complex)


def _bmat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] @ b[k][j] for k in range(n)) for j in range(len(b[0]))]
        for i in range(n)
    ]


def _bmat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _bmat_star(a):
    n = len(a)
    return [[a[j][i].conj().T for j in range(n)] for i in range(n)]


def _bmax(a) -> float:
    return max(float(np.abs(x).max()) for row in a for x in row)


def _vmax(v) -> float:
    return max(float(np.abs(x).max()) for x in v)


def _vsub(u, v):
    return [x - y for x, y in zip(u, v)]


def _vmulr(v, m: np.ndarray):
    """Right module action: every ambient component is multiplied by m."""
    return [x @ m for x in v]


def _vadd(u, v):
    return [x + y for x, y in zip(u, v)]


class SpinGeometry:
    """All numeric data of the fuzzy suite at one spin value."""

    def __init__(self, j: Fraction):
        rep = spin_rep(j)
        self.rep = rep
        self.hbar = rep.hbar
        self.x = [rep.generator(g) for g in ("X", "Y", "Z")]
        self.eye = _eye(rep)
        zero = _zeros(rep)
        self.pi = [[self.x[i] @ self.x[j] for j in range(3)] for i in range(3)]
        self.p = [
            [
                (self.eye if i == j else zero) - self.pi[i][j]
                for j in range(3)
            ]
            for i in range(3)
        ]
        self.xi = [self.x[0], self.x[1], self.x[2]]
        self.e_tilde = [[self.p[k][i] for k in range(3)] for i in range(3)]
        self.e_cross = []
        for i in range(1, 4):
            acc = [zero.copy() for _ in range(3)]
            for jj in range(1, 4):
                for k in range(1, 4):
                    s = epsilon(i, jj, k)
                    if s:
                        acc = _vadd(
                            acc, _vmulr([s * b for b in self.e_tilde[jj - 1]],
                                        self.x[k - 1])
                        )
            self.e_cross.append(acc)
        self.metric = [
            [self.pair(self.e_cross[i], self.e_cross[j]) for j in range(3)]
            for i in range(3)
        ]
        one_plus = 1.0 + self.hbar * self.hbar
        self.metric_inverse = [
            [
                (one_plus * self.eye if i == j else zero) + self.pi[j][i]
                for j in range(3)
            ]
            for i in range(3)
        ]

    def derive(self, a: int, m: np.ndarray) -> np.ndarray:
        """Numeric rotation derivation [X_a, m]/(i hbar)."""
        return (self.x[a] @ m - m @ self.x[a]) / (1j * self.hbar)

    def pair(self, u, v) -> np.ndarray:
        """Euclidean pairing sum_k u_k* v_k of ambient block vectors."""
        return sum(uk.conj().T @ vk for uk, vk in zip(u, v))

    # -- connections -------------------------------------------------------

    def gamma_zero_table(self):
        """Christoffel blocks of the projected flat connection: d_a P."""
        return [
            [[self.derive(a, self.p[j][i]) for i in range(3)] for j in range(3)]
            for a in range(3)
        ]

    def gamma_epsilon_table(self):
        """Projected table for the rotation-covariant parameter choice."""
        free = [
            [
                [
                    -epsilon(a + 1, j + 1, i + 1) * self.eye
                    for i in range(3)
                ]
                for j in range(3)
            ]
            for a in range(3)
        ]
        out = []
        for a in range(3):
            gp = _bmat_mul(free[a], self.p)
            out.append(
                [
                    [self.derive(a, self.p[j][i]) + gp[j][i] for i in range(3)]
                    for j in range(3)
                ]
            )
        return out

    def apply(self, table, a: int, coeffs):
        """Covariant derivative on projected-frame coefficients."""
        out = []
        for jj in range(3):
            acc = self.derive(a, coeffs[jj])
            for b in range(3):
                acc = acc + table[a][jj][b] @ coeffs[b]
            out.append(acc)
        return out

    def ambient(self, coeffs):
        zero = _zeros(self.rep)
        out = [zero.copy() for _ in range(3)]
        for b in range(3):
            out = _vadd(out, _vmulr(self.e_tilde[b], coeffs[b]))
        return out

    def curvature(self, table, a: int, b: int, coeffs):
        term1 = self.apply(table, a, self.apply(table, b, coeffs))
        term2 = self.apply(table, b, self.apply(table, a, coeffs))
        out = _vsub(term1, term2)
        for c in range(3):
            s = epsilon(a + 1, b + 1, c + 1)
            if s:
                out = _vsub(out, [s * m for m in self.apply(table, c, coeffs)])
        return out

    def cross_coefficients(self, j: int):
        """Projected-frame coefficients of e_j: eps_jkl X_l."""
        zero = _zeros(self.rep)
        out = []
        for k in range(1, 4):
            entry = zero.copy()
            for l in range(1, 4):
                s = epsilon(j, k, l)
                if s:
                    entry = entry + s * self.x[l - 1]
            out.append(entry)
        return out


def spin_geometry_checks(
    j: Fraction,
    connection: str = "both",
    tolerance: float = 1e-10,
    relation_tolerance: float = 1e-12,
) -> list[CheckResult]:
    """Re-derive and re-check the full fuzzy suite numerically at spin j."""
    geo = SpinGeometry(j)
    rep = geo.rep
    h = geo.hbar
    checks = []

    def record(check_id: str, statement: str, residual: float,
               tol: float = tolerance) -> None:
        checks.append(
            CheckResult(
                check_id=f"spin-{j}-{check_id}",
                statement=statement,
                mode="numeric",
                passed=residual < tol,
                residual=residual,
            )
        )

    record(
        "defining-relations",
        "matrix images satisfy the algebra relations",
        relation_residual(rep),
        relation_tolerance,
    )

    # projections
    residual = max(
        _bmax(_bmat_sub(_bmat_mul(geo.pi, geo.pi), geo.pi)),
        _bmax(_bmat_sub(_bmat_mul(geo.p, geo.p), geo.p)),
        _bmax(_bmat_sub(_bmat_star(geo.pi), geo.pi)),
        _bmax(_bmat_sub(_bmat_star(geo.p), geo.p)),
        float(np.abs(sum(geo.p[i][i] for i in range(3)) - 2 * geo.eye).max()),
        float(np.abs(geo.pair(geo.xi, geo.xi) - geo.eye).max()),
    )
    record("projections", "Pi and P are orthogonal projections, tr P = 2",
           residual)

    # frame relations
    zero = _zeros(rep)
    closed = {
        1: [zero, geo.x[2], -geo.x[1]],
        2: [-geo.x[2], zero, geo.x[0]],
        3: [geo.x[1], -geo.x[0], zero],
    }
    residual = 0.0
    for i in (1, 2, 3):
        expected = _vsub(
            closed[i], [1j * h * (xk @ geo.x[i - 1]) for xk in geo.xi]
        )
        residual = max(residual, _vmax(_vsub(geo.e_cross[i - 1], expected)))
    for i in (1, 2, 3):
        acc = [1j * h * b for b in geo.e_cross[i - 1]]
        for jj in (1, 2, 3):
            for k in (1, 2, 3):
                s = epsilon(i, jj, k)
                if s:
                    acc = _vsub(
                        acc, _vmulr([s * b for b in geo.e_cross[jj - 1]],
                                    geo.x[k - 1])
                    )
        residual = max(residual, _vmax(_vsub(geo.e_tilde[i - 1], acc)))
    contraction = [zero.copy() for _ in range(3)]
    for k in range(3):
        contraction = _vadd(contraction, _vmulr(geo.e_tilde[k], geo.x[k]))
    residual = max(residual, _vmax(contraction))
    record("frames", "frame conversion relations", residual)

    # metric and pseudo-inverse
    residual = 0.0
    for i in range(3):
        for jj in range(3):
            expected = geo.p[jj][i] - h * h * geo.pi[i][jj]
            residual = max(residual,
                           float(np.abs(geo.metric[i][jj] - expected).max()))
    residual = max(
        residual,
        _bmax(_bmat_sub(_bmat_star(geo.metric_inverse), geo.metric_inverse)),
    )
    prod = _bmat_mul(geo.metric_inverse, geo.metric)
    for k in range(3):
        acc = [zero.copy() for _ in range(3)]
        for i in range(3):
            acc = _vadd(acc, _vmulr(geo.e_cross[i], prod[i][k]))
        residual = max(residual, _vmax(_vsub(acc, geo.e_cross[k])))
    record("metric", "rotational metric and its pseudo-inverse", residual)

    # projection-derivative lemma
    residual = 0.0
    for i in range(3):
        for jj in range(3):
            acc = [zero.copy() for _ in range(3)]
            for k in range(3):
                acc = _vadd(acc, _vmulr(geo.e_tilde[k],
                                        geo.derive(i, geo.p[k][jj])))
            expected = _vmulr([-b for b in geo.e_cross[i]], geo.x[jj])
            residual = max(residual, _vmax(_vsub(acc, expected)))
    record("projection-derivative", "e~_k d_i P_kj = -e_i X_j", residual)

    if connection in ("zero", "both"):
        table = geo.gamma_zero_table()
        residual = 0.0
        for i in range(3):
            for jj in range(3):
                got = geo.ambient([table[i][k][jj] for k in range(3)])
                expected = _vmulr([-b for b in geo.e_cross[i]], geo.x[jj])
                residual = max(residual, _vmax(_vsub(got, expected)))
        # metric compatibility on the projected frame
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    lhs = geo.derive(a, geo.p[b][c])
                    col_b = [table[a][k][b] for k in range(3)]
                    col_c = [table[a][k][c] for k in range(3)]
                    rhs = sum(
                        col_b[k].conj().T @ geo.p[k][c] for k in range(3)
                    ) + sum(geo.p[b][k] @ col_c[k] for k in range(3))
                    residual = max(residual, float(np.abs(lhs - rhs).max()))
        record("nabla-zero", "projected flat connection table and "
               "compatibility", residual)

        residual = 0.0
        for i in range(3):
            for jj in range(3):
                for k in range(3):
                    got = geo.ambient(
                        geo.curvature(table, i, jj,
                                      [geo.eye if m == k else zero
                                       for m in range(3)])
                    )
                    expected = [zero.copy() for _ in range(3)]
                    for l in range(1, 4):
                        s = epsilon(i + 1, k + 1, l)
                        if s:
                            expected = _vsub(
                                expected,
                                _vmulr([s * b for b in geo.e_cross[jj]],
                                       geo.x[l - 1]),
                            )
                        s = epsilon(jj + 1, k + 1, l)
                        if s:
                            expected = _vadd(
                                expected,
                                _vmulr([s * b for b in geo.e_cross[i]],
                                       geo.x[l - 1]),
                            )
                    corr = _vsub(
                        _vmulr(geo.e_cross[i], geo.x[jj] @ geo.x[k]),
                        _vmulr(geo.e_cross[jj], geo.x[i] @ geo.x[k]),
                    )
                    expected = _vadd(expected, [1j * h * m for m in corr])
                    residual = max(residual, _vmax(_vsub(got, expected)))
        record("curvature-zero", "curvature of the flat projection matches "
               "its closed form", residual)

        residual = 0.0
        for i in range(3):
            for jj in range(3):
                for k in range(3):
                    got = geo.ambient(
                        geo.curvature(table, i, jj, geo.cross_coefficients(k + 1))
                    )
                    expected = _vsub(
                        _vmulr(geo.e_cross[i], geo.metric[jj][k]),
                        _vmulr(geo.e_cross[jj], geo.metric[i][k]),
                    )
                    residual = max(residual, _vmax(_vsub(got, expected)))
                    for m in range(3):
                        comp = geo.pair(geo.e_cross[m], got)
                        closed_val = (
                            geo.metric[m][i] @ geo.metric[jj][k]
                            - geo.metric[m][jj] @ geo.metric[i][k]
                        )
                        residual = max(
                            residual, float(np.abs(comp - closed_val).max())
                        )
        record("curvature-zero-rotational",
               "rotational curvature and contracted components", residual)

    if connection in ("epsilon", "both"):
        table = geo.gamma_epsilon_table()
        residual = 0.0
        for i in range(3):
            for jj in range(3):
                got = geo.ambient([table[i][k][jj] for k in range(3)])
                expected = [zero.copy() for _ in range(3)]
                for k in range(3):
                    s = epsilon(i + 1, jj + 1, k + 1)
                    if s:
                        expected = _vadd(expected,
                                         [s * b for b in geo.e_tilde[k]])
                residual = max(residual, _vmax(_vsub(got, expected)))
        record("nabla-epsilon", "rotation-covariant connection table", residual)

        residual = 0.0
        for i in range(3):
            for jj in range(3):
                for k in range(3):
                    got = geo.ambient(
                        geo.curvature(table, i, jj,
                                      [geo.eye if m == k else zero
                                       for m in range(3)])
                    )
                    residual = max(residual, _vmax(got))
                    got = geo.ambient(
                        geo.curvature(table, i, jj, geo.cross_coefficients(k + 1))
                    )
                    residual = max(residual, _vmax(got))
        record("curvature-epsilon-flat",
               "the rotation-covariant connection is numerically flat",
               residual)

    return checks
