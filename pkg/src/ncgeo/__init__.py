"""ncgeo: exact symbolic noncommutative geometry with numeric oracles.

The package implements finitely presented *-algebras with confluent
normal-form rewriting over the exact field Q(i)(hbar), hermitian modules
with pseudo-inverse regularity certificates, hermitian and Levi-Civita
connections, the complete fuzzy-sphere instance (tangent geometry and the
monopole bundle), and minimal surfaces over the Weyl algebra generated
from Weierstrass data.  Spin and truncated Fock matrix representations
plus a faithful polynomial action cross-validate the symbolic results.
"""

from .algebra import (
    AlgebraElement,
    Derivation,
    Presentation,
    PresentationError,
    apply_derivation,
    equals,
    involution,
    multiply,
    normal_form,
    random_element,
)
from .connections import (
    Connection,
    LiePair,
    apply_connection,
    check_metric_compatibility,
    curvature,
    curvature_applied,
    free_hermitian_connection,
    gamma_parameter_count,
    levi_civita,
    project_connection,
    torsion,
)
from .fuzzy import (
    FuzzyGeometry,
    MonopoleBundle,
    RotationFrame,
    build_fuzzy,
    build_monopole,
    identity_suite,
    rotation_frame_instance,
    rotation_frame_levi_civita,
    verify_symbolic,
)
from .spin_twin import spin_geometry_checks
from .localization import (
    DEFAULT_REGISTRY,
    InvertibleRegistry,
    InversionError,
    RInv,
    RLeaf,
    RProd,
    RSum,
    RationalExpr,
    adjoint_expr,
    derive_expr,
    equals_expr,
    make_inverse,
    simplify,
)
from .minimal import (
    MinimalSurface,
    WeierstrassData,
    integrate,
    levi_civita_connection,
    weierstrass_from_polynomial,
)
from .modules import (
    DualVector,
    GeneratorSet,
    HermitianForm,
    ModuleMap,
    ModuleVector,
    check_pseudo_inverse,
    embed_regular_module,
    form_eval,
    hat_h,
    is_orthogonal_projection,
    projection_from_generators,
)
from .oracles import (
    MatrixRep,
    PolyRep,
    check_identity_numeric,
    evaluate,
    fock_rep,
    relation_residual,
    spin_rep,
)
from .parsing import ParseError, parse_expression, print_expression
from .presentations import (
    epsilon,
    fuzzy_sphere,
    to_lambda_chart,
    to_uv_chart,
    weyl_lambda,
    weyl_uv,
)
from .reporting import CheckResult, Report, VerdictReport
from .scalars import GaussRat, Scalar

__version__ = "0.1.0"
