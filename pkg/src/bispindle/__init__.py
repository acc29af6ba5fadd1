"""Certifying library for spindle and bispindle subdivisions in digraphs.

Every top-level routine returns either a proper coloring within its stated
bound or an explicit subdivision witness, and every certificate can be
re-checked by an independent verifier.
"""

from .digraph import (
    Digraph,
    DiPath,
    DiCycle,
    concat,
    strong_components,
    is_strong,
    is_acyclic,
    induced_subdigraph,
    contract,
    blocks,
    blocks_of_cycle,
    shortest_directed_cycle,
    find_directed_ear,
    max_chi_strong_block,
)
from .coloring import (
    Coloring,
    is_proper,
    is_rainbow,
    degeneracy_coloring,
    brooks_coloring,
    exact_chromatic,
    product_coloring,
    lift_contraction_coloring,
)
from .extremal import (
    SequenceWitnessMin,
    SequenceWitnessMax,
    gallai_roy_dipath,
    bondy_certifier,
    repeated_minimum_indices,
    window_with_max_last,
)
from .spindles import (
    BispindlePattern,
    SubdivisionWitness,
    Detection,
    verify_witness,
    witness_violations,
    find_subdivision,
    vertex_disjoint_paths,
    camion_hamiltonian_cycle,
    tournament_b_k11,
    extract_b211,
)
from .nice import (
    NiceCollection,
    Component,
    validate_nice,
    extract_from_connecting_path,
    color_component,
    extend_or_extract,
    certify_b_k11,
)
from .suitable import (
    Bounds,
    DistanceProfile,
    SuitableCollection,
    Interface,
    LevelDecomposition,
    validate_suitable,
    classify_triple_overlap,
    build_interface,
    check_acyclic_interface,
    rainbow_extend,
    color_union,
    level_decompose,
    color_component_suitable,
    expand_quotient_cycle,
    certify_b_k1k,
)
from .generators import (
    odd_dicycle,
    directed_cycle,
    bidirected_complete,
    transitive_tournament,
    rotative_tournament,
    random_strong_digraph,
    random_tournament,
    validate_dkb,
    find_dkb,
    spindle_free_construction,
    detect_3spindle,
    detect_22bispindle,
)
from .errors import BispindleError, PreconditionError, LimitExceeded, ExtractionFailed

__version__ = "0.1.0"
