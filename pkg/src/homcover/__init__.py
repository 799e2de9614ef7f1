"""Finite-group engine for generating sequences, automorphism orbits,
and explicit homogeneous covers."""

from .cover import (
    CoverResult,
    TowerMap,
    build_cover,
    coordinate_projection,
    find_tower_splitting,
    tower_map,
)
from .errors import (
    ClosureCapExceeded,
    CoverTooLarge,
    EnumerationCapExceeded,
    FreeActionViolated,
    HomcoverError,
    InvalidPQ,
    InvalidSpec,
    LatticeCapExceeded,
    NotADivisor,
    NotAGroup,
    NotNormal,
    NotSimple,
    OrderCapExceeded,
    PreconditionViolated,
)
from .genseq import (
    SubgroupLattice,
    count_generating_sequences,
    eulerian_count,
    generating_sequences,
    is_generating,
    is_irredundant,
    rank,
    subgroup_lattice,
)
from .groups import (
    CayleyGroup,
    FiniteGroup,
    StructureFlags,
    Subgroup,
    TupleGroup,
    center,
    closure,
    direct_power_subgroup,
    is_normal,
    is_simple,
    normal_closure,
    product_group,
    quotient_group,
    structure_predicates,
    sylow_subgroup,
)
from .homs import (
    Homomorphism,
    extend_hom,
    find_isomorphism,
    find_surjection,
    identity_automorphism,
    lift_generating_sequence,
)
from .orbits import (
    OrbitDecomposition,
    aut_order,
    decompose_orbits,
    enumerate_automorphisms,
    is_homogeneous,
    orbit_count,
    sequences_equivalent,
)
from .specs import GroupSpec, build_group, format_spec, parse_spec

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
