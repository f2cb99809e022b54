"""JSON wire models for bootstrap-percolation-workbench."""

from .schemas import (
    ConfigDocument,
    EdgeDocument,
    EstimateRow,
    FrameSpecDocument,
    HierarchyDocument,
    VertexDocument,
    read_document,
)

__all__ = [
    "ConfigDocument",
    "EdgeDocument",
    "EstimateRow",
    "FrameSpecDocument",
    "HierarchyDocument",
    "VertexDocument",
    "read_document",
]
