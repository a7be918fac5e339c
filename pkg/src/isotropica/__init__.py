"""isotropica: exact-arithmetic toolkit for tuples of alternating bilinear
forms, common isotropic subspace search, class-2 nilpotent algebras, and
point-count verification of the dimension formulas and growth bounds that
govern them. All computation is exact (small prime fields and rationals)."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    EmptyWedgeError,
    FormulaViolationError,
    IsotropicaError,
    NotDecomposableError,
)
from .exactfield import (
    GF,
    QQ,
    FieldSpec,
    Matrix,
    kernel_basis,
    rank_of_stack,
    rref,
)
from .grassmann import (
    Flag,
    PlueckerPoint,
    Subspace,
    coordinate_flag,
    coordinate_subspace,
    enumerate_grassmannian,
    gaussian_binomial,
    grassmann_relations_residual,
    meets_at_least,
    pluecker_of,
    pluecker_point,
    schubert_dimension_check,
    schubert_membership,
    special_schubert_dimension,
    subspace_from_rows,
    subspace_of_pluecker,
)
from .forms import (
    FormTuple,
    IncidenceCount,
    count_incidence_points,
    evaluate,
    form_tuple,
    is_isotropic,
    random_form_tuple,
    skew_symmetrize,
    vanishing_space_dim,
)
from .algebras import (
    AbelianReport,
    Class2Algebra,
    center_dim,
    heisenberg,
    lie_shadow,
    make_associative,
    make_lie,
    max_abelian,
)
from .search import (
    HuntResult,
    SearchOutcome,
    exhaustive_isotropic,
    existence_threshold_holds,
    greedy_isotropic,
    hunt_isotropic_free_tuple,
    randomized_isotropic,
    witness_rate_table,
)
from .bounds import (
    BoundRow,
    QuadraticWitnessParams,
    bound_table,
    heisenberg_lower_bound,
    max_algebra_dim,
    quadratic_lower_bound,
    quadratic_witness_params,
    sandwich_check,
    upper_bound,
)
