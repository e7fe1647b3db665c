"""Handle slides on delta-matroids, symmetric GF(2) matrices and bouquets."""

from __future__ import annotations

from .classify import (
    ClassificationResult,
    check_conjecture_instance,
    normalize,
    reachable_signatures,
    recognize_canonical,
    slide_orbit,
)
from .core import (
    Parity,
    SetSystem,
    apply_sequence,
    build_canonical,
    delete,
    direct_sum,
    handle_slide,
    is_coloop,
    is_delta_matroid,
    is_isomorphic,
    is_loop,
    max_feasible_size,
    min_feasible_size,
    parity,
    relabel,
    twist,
)
from .errors import DeltaSlideError, ParseError
from .gf2 import (
    CanonicalSignature,
    SymMatrix,
    binary_representation,
    delta_matroid_of_matrix,
    det_gf2,
    eliminate_pairs,
    is_binary,
    matrix_handle_slide,
    normalize_blocks,
)
from .io_formats import (
    parse_bouquet,
    parse_matrix,
    parse_set_system,
    serialize_bouquet,
    serialize_matrix,
    serialize_set_system,
)
from .ribbon import (
    Bouquet,
    boundary_components,
    build_B,
    classify_bouquet,
    delta_matroid_of_bouquet,
    interlacement_matrix,
    ribbon_handle_slide,
    ribbon_slide_orbit,
)

__version__ = "0.1.0"
