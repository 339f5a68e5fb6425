"""Smith normal form with unimodular multipliers via massager perturbation."""

from .adjoint import (
    OuterProductAdjoint,
    frac_inverse,
    frac_solve,
    outer_product_adjoint,
)
from .arith import length, quo_star, rem_star, smod
from .errors import (
    FAIL,
    NOT_INTEGRAL,
    NOT_TRIVIAL,
    DimensionError,
    IntegrityError,
    InvalidModulusError,
    LasVegasFailure,
    ParseError,
    RetriesExhausted,
    SingularMatrixError,
)
from .kernel import (
    IntMat,
    SmithForm,
    colmod,
    det_exact,
    hermite_lower,
    matmul,
    matvec,
    rowmod,
    smith_classical,
    smith_form,
)
from .lifting import (
    HighOrderResidue,
    LiftingContext,
    choose_lifting_modulus,
    high_order_residue,
    integrality_certify,
    inverse_mod_X,
    lifting_context,
    solve_mod,
    xadic_mul,
)
from .linearize import (
    Linearization,
    column_expansion,
    linearize_columns,
    linearize_permutation,
    linearize_rows,
    principal_submatrix,
    reconstruct,
    recover_massager,
)
from .massager import (
    MassagerPair,
    denominator_of,
    in_row_lattice,
    is_left_equivalent,
    massager_col_op,
    smith_massager,
    verify_massager,
)
from .multipliers import (
    MultiplierTriple,
    PerturbParams,
    TrivialHermite,
    check_sizes,
    compute_U,
    extract_unimodular,
    lambda_bound,
    perturb,
    smith_form_multipliers,
    trivial_lower_hermite,
    unbalanced_matmul,
    unbalanced_matvec,
)

__version__ = "0.1.0"
