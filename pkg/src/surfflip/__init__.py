"""Orientations with prescribed out-degrees on surface-embedded graphs.

Load a rotation-system embedding, enumerate the orientations with given
out-degrees, partition them into homology classes, compute flip distances
by face potentials, and certify the structure of forbidden-face flip
graphs (acyclicity, unique sinks and sources, distributive lattices).
"""

from __future__ import annotations

from .embedding import (
    DualGraph,
    Face,
    SurfaceGraph,
    dual_graph,
    edge_of,
    genus,
    load_embedding,
    trace_faces,
    twin,
)
from .errors import (
    DifferentOutDegrees,
    EdgeOnOneFace,
    EmptyEnumeration,
    MalformedInput,
    MismatchedGraph,
    NoAlphaOrientation,
    NonOrientableOrBadEmbedding,
    NotAcyclic,
    NotConnected,
    NotCounterclockwise,
    NotStronglyConnected,
    RotationInconsistent,
    SolveFailed,
    SurfflipError,
)
from .flipgraph import (
    ComponentReport,
    FlipGraph,
    bfs_distances,
    build_flip_graph,
    certify_distributive_lattice,
    component_reports,
    induced_subgraph,
    restrict,
    reverse_graph,
    scc_decomposition,
    strong_edge_connectivity,
    to_dot,
    verify_l_coloring,
    verify_u_coloring,
    weakly_connected_components,
)
from .homology import (
    ChainVector,
    HomologyBasis,
    HomologySignature,
    chain_vector,
    difference_chain,
    face_vectors,
    homologous,
    homology_classes,
    is_vertex_balanced,
    signature,
    tree_cotree_basis,
)
from .orientations import (
    FaceState,
    Orientation,
    OutDegreeSpec,
    ccw_faces,
    check_strongly_connected_alpha,
    difference,
    enumerate_alpha,
    face_state,
    flip,
    reverse,
    rigid_edges,
)
from .potential import (
    FlipCountVector,
    NotHomologous,
    PotentialVector,
    Unreachable,
    flip_count_vector,
    flip_distance,
    min_flip_sequence,
    reachable,
    z_potential,
)

__version__ = "0.1.0"

__all__ = [
    "ChainVector",
    "ComponentReport",
    "DifferentOutDegrees",
    "DualGraph",
    "EdgeOnOneFace",
    "EmptyEnumeration",
    "Face",
    "FaceState",
    "FlipCountVector",
    "FlipGraph",
    "HomologyBasis",
    "HomologySignature",
    "MalformedInput",
    "MismatchedGraph",
    "NoAlphaOrientation",
    "NonOrientableOrBadEmbedding",
    "NotAcyclic",
    "NotConnected",
    "NotCounterclockwise",
    "NotHomologous",
    "NotStronglyConnected",
    "Orientation",
    "OutDegreeSpec",
    "PotentialVector",
    "RotationInconsistent",
    "SolveFailed",
    "SurfaceGraph",
    "SurfflipError",
    "Unreachable",
    "bfs_distances",
    "build_flip_graph",
    "ccw_faces",
    "certify_distributive_lattice",
    "chain_vector",
    "check_strongly_connected_alpha",
    "component_reports",
    "difference",
    "difference_chain",
    "dual_graph",
    "edge_of",
    "enumerate_alpha",
    "face_state",
    "face_vectors",
    "flip",
    "flip_count_vector",
    "flip_distance",
    "genus",
    "homologous",
    "homology_classes",
    "induced_subgraph",
    "is_vertex_balanced",
    "load_embedding",
    "min_flip_sequence",
    "reachable",
    "restrict",
    "reverse",
    "reverse_graph",
    "rigid_edges",
    "scc_decomposition",
    "signature",
    "strong_edge_connectivity",
    "to_dot",
    "trace_faces",
    "tree_cotree_basis",
    "twin",
    "verify_l_coloring",
    "verify_u_coloring",
    "weakly_connected_components",
    "z_potential",
]
