"""CCS terms to higher-dimensional automata and their discrete path flows."""

__version__ = "0.1.0"

from .colimit import Arrow, Colimit, ColimitError, colimit  # noqa: E402
from .iso import Isomorphism, find_embedding, iso_check  # noqa: E402
from .labels import TAU, LabelSet, involution  # noqa: E402
from .precubical import (  # noqa: E402
    LabelledPrecubicalSet,
    PointedLPS,
    PrecubMorphism,
    boundary,
    coproduct_pointed,
    glue_pushout,
    pullback_labels,
    standard_cube,
    truncate,
    validate,
    vertex_of,
)
from .shells import Shell, cosk, enumerate_shells, is_non_twisted, shell_vertex_map  # noqa: E402
from .tensor import sync_grid, tensor_sigma  # noqa: E402
