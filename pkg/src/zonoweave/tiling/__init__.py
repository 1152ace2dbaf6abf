"""Generalized tilings of zonogons."""

from .axioms import AxiomReport, check_axioms, verify
from .core import (
    BLACK,
    WHITE,
    GTiling,
    Tile,
    TilingGraph,
    UnverifiedTilingError,
    Zonogon,
)
from .structure import (
    LocalFanReport,
    PrincipalForest,
    Strip,
    check_strip,
    critical_vertices,
    edge_existence_checks,
    gradedness,
    local_fans,
    principal_forest,
    spectrum,
    strip_of,
)
from .surgery import (
    IllegalPathError,
    LegalPath,
    PathNotEmbeddedError,
    ReconstructionError,
    contract,
    contraction_path,
    contraction_spectrum,
    enumerate_gtilings,
    expand,
    is_legal,
    legal_paths,
    mirror,
    reverse,
    tiling_from_spectrum,
)

__all__ = [
    "AxiomReport", "check_axioms", "verify", "BLACK", "WHITE", "GTiling", "Tile",
    "TilingGraph", "UnverifiedTilingError", "Zonogon", "LocalFanReport",
    "PrincipalForest", "Strip", "check_strip", "critical_vertices",
    "edge_existence_checks", "gradedness", "local_fans", "principal_forest",
    "spectrum", "strip_of", "IllegalPathError", "LegalPath",
    "PathNotEmbeddedError", "ReconstructionError", "contract",
    "contraction_path", "contraction_spectrum", "enumerate_gtilings", "expand",
    "is_legal", "legal_paths", "mirror", "reverse", "tiling_from_spectrum",
]
