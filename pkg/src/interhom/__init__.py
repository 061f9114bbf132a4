"""Interaction homology of simplicial complexes with coverings."""

from .chain import (
    ChainComplex,
    ChainComplexError,
    ContainmentError,
    boundary_of_tuple,
    build_chain_complex,
    build_relative_complex,
)
from .complex import (
    InteractionSpace,
    MalformedSimplexError,
    SimplicialComplex,
    ValidationReport,
    enumerate_interacting_tuples,
    make_complex,
    tuple_interacts,
    validate_interaction_space,
    validate_space,
)
from .homology import (
    ExactnessReport,
    HomologySummary,
    betti,
    cohomology_betti,
    integer_homology,
    interaction_euler,
    les_check,
    relative_betti,
    wu_characteristic,
)
from .linalg import GF, QQ, ZZ, CoefficientRing, SparseMatrix, UnsupportedRingError
from .maps import InteractionMap, InvalidMapError, induced_chain_map, induced_homology_map, validate_map
from .pointcloud import LabeledPointCloud, ScaleSweep, betti_curve, build_covering, vietoris_rips

__version__ = "0.1.0"
