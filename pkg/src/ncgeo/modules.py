"""Free right modules A^n, hermitian forms, projections and regularity.

Vectors are coefficient columns over a presentation; a hermitian form is a
matrix h_ij acting as h(m, m') = (m^i)* h_ij m'^j; a module map is a matrix
acting on coefficient columns.  Regularity of a generated module is
certified by a pseudo-inverse of the Gram matrix: elements h^{ab} with
(h^{ab})* = h^{ba} and e_a h^{ab} h_{bc} = e_c.  The doubled-module
construction embeds any such module isometrically as the image of an
orthogonal projection on A^n + (A^n)*, where the dual column of a covector
w is the column of starred components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraElement, Presentation, PresentationError
from .reporting import CheckResult

Matrix = tuple[tuple[AlgebraElement, ...], ...]


def _as_matrix(rows: Sequence[Sequence[AlgebraElement]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def identity_matrix(pres: Presentation, n: int) -> Matrix:
    one, zero = pres.one(), pres.zero()
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def zero_matrix(pres: Presentation, rows: int, cols: int) -> Matrix:
    z = pres.zero()
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(len(b))), start=a[i][0].presentation.zero())
            for j in range(len(b[0]))
        )
        for i in range(len(a))
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][j] + b[i][j] for j in range(len(a[0]))) for i in range(len(a))
    )


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][j] - b[i][j] for j in range(len(a[0]))) for i in range(len(a))
    )


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def mat_star_transpose(a: Matrix) -> Matrix:
    """Conjugate transpose with the algebra involution on entries."""
    return tuple(
        tuple(a[j][i].adjoint() for j in range(len(a))) for i in range(len(a[0]))
    )


def mat_apply(a: Matrix, column: tuple[AlgebraElement, ...]) -> tuple[AlgebraElement, ...]:
    zero = column[0].presentation.zero()
    return tuple(
        sum((a[i][k] * column[k] for k in range(len(column))), start=zero)
        for i in range(len(a))
    )


@dataclass(frozen=True)
class ModuleVector:
    """Element of A^n as a coefficient column (normal-form entries)."""

    coefficients: tuple[AlgebraElement, ...]

    @property
    def presentation(self) -> Presentation:
        return self.coefficients[0].presentation

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        return ModuleVector(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return ModuleVector(
            tuple(a - b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(tuple(-a for a in self.coefficients))

    def right_mul(self, a: AlgebraElement) -> "ModuleVector":
        """Right module action m -> m * a."""
        return ModuleVector(tuple(c * a for c in self.coefficients))

    def __mul__(self, a) -> "ModuleVector":
        if isinstance(a, AlgebraElement):
            return self.right_mul(a)
        return ModuleVector(tuple(c * a for c in self.coefficients))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __repr__(self) -> str:
        return "(" + ", ".join(c.canonical_text() for c in self.coefficients) + ")"


def basis_vector(pres: Presentation, n: int, i: int) -> ModuleVector:
    return ModuleVector(
        tuple(pres.one() if k == i else pres.zero() for k in range(n))
    )


def vector(entries: Sequence[AlgebraElement]) -> ModuleVector:
    return ModuleVector(tuple(entries))


@dataclass(frozen=True)
class DualVector:
    """Element of (A^n)* as a coefficient row: w(m) = w_i m^i.

    The right action is (w . a)(m) = a* w(m), i.e. rows are multiplied by
    a* from the left entrywise; ``dual_column`` is the right-linear
    identification with A^n used by the doubled-module construction.
    """

    components: tuple[AlgebraElement, ...]

    @property
    def presentation(self) -> Presentation:
        return self.components[0].presentation

    def __call__(self, m: ModuleVector) -> AlgebraElement:
        zero = self.presentation.zero()
        return sum(
            (w * c for w, c in zip(self.components, m.coefficients)), start=zero
        )

    def right_mul(self, a: AlgebraElement) -> "DualVector":
        astar = a.adjoint()
        return DualVector(tuple(astar * w for w in self.components))

    def dual_column(self) -> ModuleVector:
        return ModuleVector(tuple(w.adjoint() for w in self.components))

    @staticmethod
    def from_dual_column(column: ModuleVector) -> "DualVector":
        return DualVector(tuple(c.adjoint() for c in column.coefficients))

    def __repr__(self) -> str:
        return "<" + ", ".join(c.canonical_text() for c in self.components) + ">"


@dataclass(frozen=True)
class HermitianForm:
    """Algebra-valued sesquilinear form given by its matrix h_ij."""

    matrix: Matrix

    @property
    def presentation(self) -> Presentation:
        return self.matrix[0][0].presentation

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @staticmethod
    def standard(pres: Presentation, n: int) -> "HermitianForm":
        """The euclidean form h0(m, m') = sum_i (m^i)* m'^i."""
        return HermitianForm(identity_matrix(pres, n))

    def __call__(self, m1: ModuleVector, m2: ModuleVector) -> AlgebraElement:
        return form_eval(self, m1, m2)

    def is_hermitian(self) -> bool:
        return self.matrix == mat_star_transpose(self.matrix)

    def dual_map(self, m: ModuleVector) -> DualVector:
        """The musical map m -> h(m, .) as a row ((m^i)* h_ij)_j."""
        pres = self.presentation
        stars = tuple(c.adjoint() for c in m.coefficients)
        return DualVector(
            tuple(
                sum(
                    (stars[i] * self.matrix[i][j] for i in range(self.dim)),
                    start=pres.zero(),
                )
                for j in range(self.dim)
            )
        )


@dataclass(frozen=True)
class ModuleMap:
    """Right-module endomorphism of A^n acting on coefficient columns."""

    matrix: Matrix

    @property
    def presentation(self) -> Presentation:
        return self.matrix[0][0].presentation

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @staticmethod
    def identity(pres: Presentation, n: int) -> "ModuleMap":
        return ModuleMap(identity_matrix(pres, n))

    def __call__(self, m: ModuleVector) -> ModuleVector:
        return ModuleVector(mat_apply(self.matrix, m.coefficients))

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(mat_mul(self.matrix, other.matrix))

    def transpose_on_duals(self, w: DualVector) -> DualVector:
        """The transpose map (p^t w)(m) = w(p(m)), as a row."""
        pres = self.presentation
        return DualVector(
            tuple(
                sum(
                    (w.components[i] * self.matrix[i][j] for i in range(self.dim)),
                    start=pres.zero(),
                )
                for j in range(self.dim)
            )
        )

    def column(self, j: int) -> ModuleVector:
        return ModuleVector(tuple(self.matrix[i][j] for i in range(self.dim)))


@dataclass(frozen=True)
class GeneratorSet:
    """A finite family of module generators with an optional pseudo-inverse."""

    vectors: tuple[ModuleVector, ...]
    pseudo_inverse: Matrix | None = None

    @property
    def presentation(self) -> Presentation:
        return self.vectors[0].presentation

    def __len__(self) -> int:
        return len(self.vectors)

    def gram(self, form: HermitianForm) -> Matrix:
        return tuple(
            tuple(form_eval(form, ea, eb) for eb in self.vectors)
            for ea in self.vectors
        )


# -- operations -----------------------------------------------------------


def form_eval(h: HermitianForm, m1: ModuleVector, m2: ModuleVector) -> AlgebraElement:
    """h(m1, m2) = (m1^i)* h_ij m2^j."""
    if m1.dim != h.dim or m2.dim != h.dim:
        raise PresentationError("dimension mismatch in form evaluation")
    pres = h.presentation
    total = pres.zero()
    for i in range(h.dim):
        s = m1.coefficients[i].adjoint()
        if s.is_zero():
            continue
        for j in range(h.dim):
            hij = h.matrix[i][j]
            if hij.is_zero():
                continue
            total = total + s * hij * m2.coefficients[j]
    return total


def hat_h(h: HermitianForm, m: ModuleVector) -> DualVector:
    """The dual vector h(m, .); antilinear in m."""
    return h.dual_map(m)


def is_orthogonal_projection(p: ModuleMap, h: HermitianForm) -> CheckResult:
    """Exact verification of p*p = p and h-orthogonality of p.

    Orthogonality h(p m, m') = h(m, p m') is the matrix identity
    (star-transpose of P) . h = h . P.
    """
    idem = mat_sub(mat_mul(p.matrix, p.matrix), p.matrix)
    orth = mat_sub(mat_mul(mat_star_transpose(p.matrix), h.matrix),
                   mat_mul(h.matrix, p.matrix))
    witness = []
    for label, residual in (("p^2-p", idem), ("p~h-hp", orth)):
        for i, row in enumerate(residual):
            for j, entry in enumerate(row):
                if not entry.is_zero():
                    witness.append(
                        {"identity": label, "entry": [i, j],
                         "value": entry.canonical_text()}
                    )
    return CheckResult(
        check_id="orthogonal-projection",
        statement="p is idempotent and orthogonal for h",
        mode="exact",
        passed=not witness,
        witness=witness or None,
    )


def check_pseudo_inverse(
    generators: GeneratorSet, h: HermitianForm
) -> CheckResult:
    """Certify regularity: (h^{ab})* = h^{ba} and e_a h^{ab} h_{bc} = e_c.

    The Gram matrix h_{ab} is computed from the ambient form restricted to
    the generators.  When additionally h^{ab} h_{bc} = delta^a_c, the
    generators form a basis and the result carries ``basis=True``.
    """
    if generators.pseudo_inverse is None:
        raise PresentationError("generator set carries no pseudo-inverse candidate")
    pres = generators.presentation
    hinv = generators.pseudo_inverse
    gram = generators.gram(h)
    n = len(generators)
    witness = []
    herm = mat_sub(mat_star_transpose(hinv), hinv)
    for i, row in enumerate(herm):
        for j, entry in enumerate(row):
            if not entry.is_zero():
                witness.append({"identity": "pseudo-inverse-hermiticity",
                                "entry": [i, j], "value": entry.canonical_text()})
    prod = mat_mul(hinv, gram)  # prod[a][c] = h^{ab} h_{bc}
    for c in range(n):
        expected = generators.vectors[c]
        got = ModuleVector(
            tuple(
                sum(
                    (generators.vectors[a].coefficients[i] * prod[a][c]
                     for a in range(n)),
                    start=pres.zero(),
                )
                for i in range(generators.vectors[0].dim)
            )
        )
        diff = got - expected
        if not diff.is_zero():
            witness.append({"identity": "e_a h^{ab} h_{bc} = e_c", "entry": [c],
                            "value": repr(diff)})
    is_basis = all(
        (prod[a][c] - (pres.one() if a == c else pres.zero())).is_zero()
        for a in range(n)
        for c in range(n)
    )
    return CheckResult(
        check_id="pseudo-inverse-regularity",
        statement="generator Gram matrix admits the supplied pseudo-inverse",
        mode="exact",
        passed=not witness,
        witness=witness or None,
        extra={"basis": is_basis},
    )


def projection_from_generators(
    generators: GeneratorSet, ambient: HermitianForm
) -> ModuleMap:
    """The orthogonal projection p(U) = e_a h^{ab} h0(e_b, U).

    Requires a verified pseudo-inverse; the returned map is validated to be
    idempotent, ambient-orthogonal and to fix every generator.
    """
    reg = check_pseudo_inverse(generators, ambient)
    if not reg.passed:
        raise PresentationError("pseudo-inverse check failed; module not regular")
    pres = generators.presentation
    n_amb = generators.vectors[0].dim
    hinv = generators.pseudo_inverse
    m = len(generators)
    # dual rows h0(e_b, .)_j = (e_b^k)* h0_kj
    rows = [ambient.dual_map(e).components for e in generators.vectors]
    matrix = []
    for i in range(n_amb):
        row = []
        for j in range(n_amb):
            acc = pres.zero()
            for a in range(m):
                for b in range(m):
                    acc = acc + generators.vectors[a].coefficients[i] * hinv[a][b] * rows[b][j]
            row.append(acc)
        matrix.append(tuple(row))
    p = ModuleMap(tuple(matrix))
    check = is_orthogonal_projection(p, ambient)
    if not check.passed:
        raise PresentationError("constructed projection fails orthogonality")
    for e in generators.vectors:
        if not (p(e) - e).is_zero():
            raise PresentationError("constructed projection does not fix a generator")
    return p


@dataclass(frozen=True)
class DoubledModule:
    """Result of embedding a projective hermitian module in A^n + (A^n)*."""

    form: HermitianForm          # the pairing b on the doubled module
    projection: ModuleMap        # the orthogonal projection p-hat
    half_form: HermitianForm     # b' = b/2, the form making U -> (U, h(U)) isometric
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def embed_regular_module(
    p: ModuleMap, h: HermitianForm, h_inverse: Matrix | None = None
) -> DoubledModule:
    """Embed (p(A^n), h) as the image of an orthogonal projection on A^2n.

    The doubled module carries b((U,w),(V,e)) = e(U)* + w(V); in dual-column
    coordinates its matrix is the off-diagonal block identity.  The embedded
    projection is

        p-hat = 1/2 [[P, Hinv Pst], [H P, Pst]]

    with H = (h_ij), Pst the star-transpose of P, and Hinv a two-sided
    matrix inverse of H (required; the identity form is its own inverse).
    The isometry statement is verified for the map U -> (U, h(U, .)) against
    the rescaled form b' = b/2, which avoids square roots of scalars.
    """
    pres = p.presentation
    n = p.dim
    if h_inverse is None:
        if h.matrix == identity_matrix(pres, n):
            h_inverse = h.matrix
        else:
            raise PresentationError(
                "a two-sided matrix inverse of the hermitian form is required"
            )
    checks = []
    ident = identity_matrix(pres, n)
    inv_ok = (
        mat_mul(h_inverse, h.matrix) == ident and mat_mul(h.matrix, h_inverse) == ident
    )
    checks.append(
        CheckResult(
            check_id="doubled-form-inverse",
            statement="supplied matrix is a two-sided inverse of h",
            mode="exact",
            passed=inv_ok,
        )
    )
    if not inv_ok:
        raise PresentationError("hermitian form matrix inverse check failed")

    orth = is_orthogonal_projection(p, h)
    checks.append(orth)
    if not orth.passed:
        raise PresentationError("p is not an orthogonal projection for h")

    P = p.matrix
    H = h.matrix
    Pst = mat_star_transpose(P)
    half_s = Fraction(1, 2)

    top = [list(mat_scale(P, half_s)[i]) + list(mat_scale(mat_mul(h_inverse, Pst), half_s)[i]) for i in range(n)]
    bot = [list(mat_scale(mat_mul(H, P), half_s)[i]) + list(mat_scale(Pst, half_s)[i]) for i in range(n)]
    p_hat = ModuleMap(tuple(tuple(row) for row in top + bot))

    zero = zero_matrix(pres, n, n)
    b_top = [list(zero[i]) + list(ident[i]) for i in range(n)]
    b_bot = [list(ident[i]) + list(zero[i]) for i in range(n)]
    b = HermitianForm(tuple(tuple(row) for row in b_top + b_bot))
    b_half = HermitianForm(mat_scale(b.matrix, half_s))

    checks.append(
        CheckResult(
            check_id="doubled-projection-idempotent",
            statement="p-hat squared equals p-hat",
            mode="exact",
            passed=mat_mul(p_hat.matrix, p_hat.matrix) == p_hat.matrix,
        )
    )
    b_orth = is_orthogonal_projection(p_hat, b)
    checks.append(
        CheckResult(
            check_id="doubled-projection-orthogonal",
            statement="p-hat is orthogonal for the doubled pairing b",
            mode="exact",
            passed=b_orth.passed,
            witness=b_orth.witness,
        )
    )

    # isometry of F(U) = (U, h(U, .)) for b' = b/2: F-matrix is [[I], [H]]
    F = tuple(tuple(ident[i]) for i in range(n)) + tuple(tuple(H[i]) for i in range(n))
    lhs = mat_mul(mat_mul(mat_star_transpose(F), b_half.matrix), F)
    checks.append(
        CheckResult(
            check_id="doubled-isometry-pairing",
            statement="b'(F(U), F(V)) = h(U, V) as a matrix identity",
            mode="exact",
            passed=lhs == H,
        )
    )
    # F maps the image of p into the image of p-hat ...
    FP = mat_mul(F, P)
    checks.append(
        CheckResult(
            check_id="doubled-isometry-range",
            statement="p-hat fixes F(p(A^n))",
            mode="exact",
            passed=mat_mul(p_hat.matrix, FP) == FP,
        )
    )
    # ... and onto it: F(p V + Hinv Pst-column) = 2 p-hat columns
    right = tuple(
        tuple(list(P[i]) + list(mat_mul(h_inverse, Pst)[i])) for i in range(n)
    )
    checks.append(
        CheckResult(
            check_id="doubled-isometry-onto",
            statement="F composed with [P | Hinv Pst] covers 2 p-hat",
            mode="exact",
            passed=mat_mul(F, right) == mat_scale(p_hat.matrix, 2),
        )
    )
    return DoubledModule(form=b, projection=p_hat, half_form=b_half,
                         checks=tuple(checks))
