"""Exact GIT stability for pointed plane conics and the combinatorics around it."""

from .geometry import (
    ConicForm,
    DoubleLine,
    Nodal,
    NonSingular,
    P1Point,
    PointedConic,
    ProjPoint,
    as_fraction,
    classify_conic,
    parametrize_conic,
    veronese,
)
from .hilbert_mumford import (
    MuProfile,
    OnePSFrame,
    coordinate_weight,
    monomial_weight_order_check,
    mu_of_frame,
    oracle_classify,
    oracle_search,
)
from .moduli import (
    ChainCurve,
    FCurvePartition,
    MarkedTree,
    NodalImage,
    NonSingularImage,
    conic_image,
    fcurve_contracted,
    fcurve_hassett_contracted,
    image_is_git_stable,
    is_hassett_stable,
    reduce,
    semistable_reduction_pipeline,
)
from .polytope import (
    NormalizedLinearization,
    Regime,
    WallHit,
    chamber_signature,
    delta3_vertex_count,
    hypersimplex_vertices,
    is_effective,
    normalize,
    same_chamber,
    segment_crossings,
    walls_at,
)
from .stability import (
    boggi2_linearization,
    classify_sl2,
    classify_theorem1,
    is_I_stable,
    theorem1_report,
)
from .weights import Linearization, Verdict, perturb

__version__ = "0.1.0"
