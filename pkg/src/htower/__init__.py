"""Exact computational toolkit for Heisenberg parabolics, cascades of
strongly orthogonal highest roots, H-tower nilradicals and their
coadjoint-orbit dimensions, and the classical-group rank dictionary."""

from htower.rootsys import SimpleType, RootSystem, build_root_system, highest_root, coroot_grading

__all__ = ["SimpleType", "RootSystem", "build_root_system", "highest_root", "coroot_grading"]
__version__ = "0.1.0"
