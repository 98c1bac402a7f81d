"""Riemann-Lie algebras and Riemann-Poisson Lie bialgebras from structure constants."""
from ._errors import (
    InputError,
    NumericalInconsistencyError,
    PreconditionError,
    RiemannLieError,
)
from .catalog import Instance, named, random_bivector, random_flat, random_lie_algebra, random_metric
from .lie_core import (
    LieAlgebra,
    ad_matrix,
    bracket,
    center,
    derived_algebra,
    jacobi_defect,
    killing_form,
    semidirect_flat,
    subspace_flags,
)
from .metric_geometry import (
    Connection,
    ScalarProduct,
    FlatnessReport,
    adjoint_ad,
    classify,
    curvature_defect,
    d_operator,
    derived_perp,
    levi_civita,
    milnor_decomposition,
    orthogonal_subalgebra,
    parallel_dtheta_defect,
    riemann_lie_defect,
)
from .poisson_yb import (
    Bivector,
    SymplecticSubspace,
    bialgebra_report,
    coadjoint,
    delta_omega_defect,
    dual_bracket,
    dual_levi_civita,
    dual_connection_check,
    yang_baxter_report,
    image_abelian_check,
    r_to_subspace_form,
    rpl_compatibility_defect,
    schouten_defect,
    subspace_form_to_r,
)
from .subspace import DEFAULT_TOL, Subspace

__version__ = "0.1.0"
