"""Finite p-groups from weighted power-conjugate presentations."""

from .pc import (
    Definition,
    PcPresentation,
    PresentationError,
    load_presentation,
    read_presentation,
    write_presentation,
)
from .families import FamilySpec, GenMap, build_family, family, family_catalog, theta

__all__ = [
    "Definition",
    "FamilySpec",
    "GenMap",
    "PcPresentation",
    "PresentationError",
    "build_family",
    "family",
    "family_catalog",
    "load_presentation",
    "read_presentation",
    "theta",
    "write_presentation",
]
