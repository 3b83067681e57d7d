"""Tame residues, indices and admissibility for symbol algebras over function fields."""

__version__ = "0.1.0"

from .brauer import BrauerClassGlobal, SymbolAlg, global_index, hasse_witness, local_invariant, parse_class
from .constructions import ConstructionSpec, DivisionCertificate, build_thm42, build_thm45, verify_certificate
from .errors import (
    HypothesisError,
    OrderConditionFailed,
    ParseError,
    RootsOfUnityMissing,
    StepFailed,
    ToolkitError,
)
from .finite_field import FFElem, FiniteField, ff_make, parse_field
from .ratfunc import Place, RatFunc
from .tower import TowerClass, parse_tower_class, tower_index

__all__ = [
    "BrauerClassGlobal",
    "ConstructionSpec",
    "DivisionCertificate",
    "FFElem",
    "FiniteField",
    "HypothesisError",
    "OrderConditionFailed",
    "ParseError",
    "Place",
    "RatFunc",
    "RootsOfUnityMissing",
    "StepFailed",
    "SymbolAlg",
    "ToolkitError",
    "TowerClass",
    "build_thm42",
    "build_thm45",
    "ff_make",
    "global_index",
    "hasse_witness",
    "local_invariant",
    "parse_class",
    "parse_field",
    "parse_tower_class",
    "tower_index",
    "verify_certificate",
]
