"""bootstrap-percolation-workbench - two-neighbour bootstrap percolation toolkit."""

__version__ = "0.1.0"
__author__ = "bootstrap-percolation-workbench Team"
__description__ = (
    "Simulation, hierarchy verification and numerical bounds for "
    "two-neighbour bootstrap percolation on finite square grids"
)
