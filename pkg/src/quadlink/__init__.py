"""Exact degree-0 Spin^c invariants of closed oriented 3-manifolds from surgery presentations."""

from quadlink.exact import (
    CyclotomicSum,
    QmodZ,
    cyclo_abs_squared,
    cyclo_equals,
    cyclo_from_angles,
    cyclotomic_polynomial,
    qmodz_reduce,
)
from quadlink.zlinalg import (
    IntMatrix,
    SmithDecomposition,
    determinant,
    intmatrix,
    kernel_basis,
    smith_normal_form,
    solve_integer,
    solve_mod2,
)
from quadlink.lattice import (
    DiscriminantData,
    chern_coordinates,
    discriminant,
    is_characteristic,
    linking_pairing,
    phi_eval,
    radical_slope,
    wu_classes,
)
from quadlink.quadfun import (
    DEFAULT_ORDER_CAP,
    FiniteAbelianGroup,
    Fingerprint,
    GroupIso,
    OrderCapExceeded,
    QuadraticFunction,
    defect_of,
    gauss_sum,
    invariant_fingerprint,
    is_isomorphic,
)
from quadlink.presentation import (
    DecoratedPresentation,
    Destabilize,
    HandleSlide,
    PresentationError,
    ReverseOrientation,
    SlamDunk,
    Stabilize,
    YMove,
    apply_move,
    chern_equal,
    enumerate_moves,
    presentation,
    random_walk,
    spin_structures,
)
from quadlink.classify import (
    DEFAULT_SEARCH_BUDGET,
    EquivalenceVerdict,
    EvenOrderError,
    InvariantReport,
    canonical_chern_vectors,
    invariants_report,
    lens_diffeo_count,
    lens_yc_count,
    yc_classes,
    yc_equivalent,
    yc_equivalent_by_pairing,
)
from quadlink import spaces

__version__ = "0.1.0"

__all__ = [
    "CyclotomicSum",
    "QmodZ",
    "cyclo_abs_squared",
    "cyclo_equals",
    "cyclo_from_angles",
    "cyclotomic_polynomial",
    "qmodz_reduce",
    "IntMatrix",
    "SmithDecomposition",
    "determinant",
    "intmatrix",
    "kernel_basis",
    "smith_normal_form",
    "solve_integer",
    "solve_mod2",
    "DiscriminantData",
    "chern_coordinates",
    "discriminant",
    "is_characteristic",
    "linking_pairing",
    "phi_eval",
    "radical_slope",
    "wu_classes",
    "DEFAULT_ORDER_CAP",
    "FiniteAbelianGroup",
    "Fingerprint",
    "GroupIso",
    "OrderCapExceeded",
    "QuadraticFunction",
    "defect_of",
    "gauss_sum",
    "invariant_fingerprint",
    "is_isomorphic",
    "DecoratedPresentation",
    "Destabilize",
    "HandleSlide",
    "PresentationError",
    "ReverseOrientation",
    "SlamDunk",
    "Stabilize",
    "YMove",
    "apply_move",
    "chern_equal",
    "enumerate_moves",
    "presentation",
    "random_walk",
    "spin_structures",
    "DEFAULT_SEARCH_BUDGET",
    "EquivalenceVerdict",
    "EvenOrderError",
    "InvariantReport",
    "canonical_chern_vectors",
    "invariants_report",
    "lens_diffeo_count",
    "lens_yc_count",
    "yc_classes",
    "yc_equivalent",
    "yc_equivalent_by_pairing",
    "spaces",
    "__version__",
]
