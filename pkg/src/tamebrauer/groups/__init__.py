from .abelian import AbelianGroup, AbelianSeries, abelian_invariants, abelian_obstruction_series, abelian_rank
from .cayley import CayleyGroup, Subgroup, is_metacyclic, normal_subgroups, subgroups, sylow
from .classify import FieldModel, Verdict, classify
from .series import NormalSeries, obstruction_series

__all__ = [
    "AbelianGroup",
    "AbelianSeries",
    "CayleyGroup",
    "FieldModel",
    "NormalSeries",
    "Subgroup",
    "Verdict",
    "abelian_invariants",
    "abelian_obstruction_series",
    "abelian_rank",
    "classify",
    "is_metacyclic",
    "normal_subgroups",
    "obstruction_series",
    "subgroups",
    "sylow",
]
