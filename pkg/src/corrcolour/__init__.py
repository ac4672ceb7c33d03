"""Exact counting and verification tools for correspondence colouring of plane graphs."""

from .correspondence import (
    CorrespondenceAssignment,
    PartialColouring,
    from_lists,
    identity_assignment,
    is_valid_colouring,
    validate,
)
from .counting import CountResult, count_colourings, count_extensions
from .graph import Graph, SubgraphRef
from .plane import PlaneGraph

__all__ = [
    "CorrespondenceAssignment",
    "CountResult",
    "Graph",
    "PartialColouring",
    "PlaneGraph",
    "SubgraphRef",
    "count_colourings",
    "count_extensions",
    "from_lists",
    "identity_assignment",
    "is_valid_colouring",
    "validate",
]
