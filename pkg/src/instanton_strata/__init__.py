"""Exact stratification data for bubble-tree compactified instanton moduli spaces."""

from .bubble_trees import BubbleTree, TreeLimits, enumerate_trees, leq
from .bubble_trees import validate as validate_tree
from .cyclotomic import CyclotomicElement, cos_sum, cot_sum, root_of_unity
from .equivariant_s4 import S4Action, S4Triple, exists_invariant, find_chain, single_level_admissible
from .errors import (
    DegeneratePair,
    InvalidAlpha,
    NotRealizable,
    PreconditionFailed,
    ResourceLimitExceeded,
    ValidationError,
)
from .index import (
    ManifoldData,
    dim_invariant_moduli,
    dim_manifold_moduli,
    dim_s4_invariant,
    dim_s4_invariant_balanced,
    invariant_index,
)
from .signatures import (
    BundleType,
    Group,
    GluingGroup,
    OrbifoldSignature,
    enumerate_bundle_types,
    gluing_parameter_group,
)
from .strata import (
    EXCLUDED,
    FreeBubble,
    OBubbleTree,
    SingularBubble,
    enumerate_o_trees,
    gluing_consistency_check,
    stratum_dimension,
    total_charge,
    validate_o_tree,
)

from . import cp2

__version__ = "0.1.0"

__all__ = [
    "BubbleTree", "TreeLimits", "enumerate_trees", "leq", "validate_tree",
    "CyclotomicElement", "cos_sum", "cot_sum", "root_of_unity",
    "S4Action", "S4Triple", "exists_invariant", "find_chain", "single_level_admissible",
    "DegeneratePair", "InvalidAlpha", "NotRealizable", "PreconditionFailed",
    "ResourceLimitExceeded", "ValidationError",
    "ManifoldData", "dim_invariant_moduli", "dim_manifold_moduli", "dim_s4_invariant",
    "dim_s4_invariant_balanced", "invariant_index",
    "BundleType", "Group", "GluingGroup", "OrbifoldSignature", "enumerate_bundle_types",
    "gluing_parameter_group",
    "EXCLUDED", "FreeBubble", "OBubbleTree", "SingularBubble", "enumerate_o_trees",
    "gluing_consistency_check", "stratum_dimension", "total_charge", "validate_o_tree",
    "cp2",
]
