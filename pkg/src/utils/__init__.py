"""Result writers for bootstrap-percolation-workbench."""

from .output import (
    PROVENANCE_PREFIX,
    read_provenance,
    render_csv,
    render_json,
    write_csv,
    write_json,
    write_table,
)

__all__ = [
    "PROVENANCE_PREFIX",
    "read_provenance",
    "render_csv",
    "render_json",
    "write_csv",
    "write_json",
    "write_table",
]
