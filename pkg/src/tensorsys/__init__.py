"""Multiplicity-free braided tensor systems: validation, fusion-path
operators, and algebra-relation certification."""

from .errors import (
    IncompleteGaugeError,
    MultiplicityError,
    OrderingError,
    PreconditionError,
    SingularBlockError,
    StructuralError,
    TensorSystemError,
    UnsupportedError,
)
from .system import (
    TOL_RELATION,
    TOL_TABLE,
    AxiomCheck,
    BraidedTensorSystem,
    FusionRules,
    GaugeTransform,
    OneDimProfile,
    TensorSystem,
    ValidationReport,
    apply_gauge,
    complete_fbar,
    direct_product,
    extended_fusion,
    gauge_invariant_diagonal,
    one_dim_profile,
    random_gauge,
    validate_braiding,
    validate_system,
)
from .paths import (
    ChainSpec,
    PathBasis,
    SparseOperator,
    braid_operator,
    enumerate_basis,
    identity_operator,
    operator_residual,
    projector,
    projector_family_check,
)
from .relations import (
    BMWCertificate,
    RelationReport,
    TLCertificate,
    best_fit_constant,
    bmw_mixed_relations,
    build_bmw,
    build_tl_chain,
    check_homogeneity,
    check_skein,
    hexagon_variant_scalars,
    onedim_tl_constant,
    principal_sqrt,
    tl_condition,
    variant_agreement_residual,
    verify_projector_identity,
)
from .io import load_system, save_system, system_from_dict, system_to_dict

__version__ = "0.1.0"
