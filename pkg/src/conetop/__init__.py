"""Cone and cone* topologies on finitely generated abelian groups."""

from .abelian import INFINITE, GroupElement, GroupSpec, SubgroupBasis, subgroup_generated
from .cone import CONE, CONE_STAR, ConeSpace, DescribedSet, Window
from .monoid import MonoidSpec
from .profile import PropertyName, PropertyProfile, evaluate

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "GroupElement",
    "GroupSpec",
    "SubgroupBasis",
    "subgroup_generated",
    "CONE",
    "CONE_STAR",
    "ConeSpace",
    "DescribedSet",
    "Window",
    "MonoidSpec",
    "PropertyName",
    "PropertyProfile",
    "evaluate",
]
