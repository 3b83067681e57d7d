"""Admissibility verdicts for finite groups over function fields of curves.

Necessity: over the function field of a curve over a local field (finite
residue field), an admissible group has, for every Sylow subgroup P, a
series P >= P1 >= P2 with P/P1 and P2 cyclic and P1/P2 metacyclic.

Sufficiency: over the same kind of field, if the base contains the |G|-th
roots of unity and every Sylow subgroup is a quotient of Z^4 (abelian of
rank at most 4), the group is admissible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from ..arith import prime_factors
from ..errors import HypothesisError
from .abelian import AbelianGroup, abelian_invariants
from .cayley import CayleyGroup, sylow
from .series import obstruction_series

RESIDUE_KINDS = ("finite", "local", "global", "other")


@dataclass(frozen=True)
class FieldModel:
    residue_char: int
    residue_kind: str = "finite"
    roots_of_unity_bound: int = 1
    two_dim_local: bool = True

    def __post_init__(self):
        if self.residue_kind not in RESIDUE_KINDS:
            raise HypothesisError(f"residue kind must be one of {', '.join(RESIDUE_KINDS)}")
        if self.residue_char < 0:
            raise HypothesisError("residue characteristic must be 0 or a prime")


@dataclass(frozen=True)
class SylowReport:
    prime: int
    order: int
    abelian: bool
    rank: int | None
    has_series: bool


@dataclass(frozen=True)
class Verdict:
    kind: str  # "NotAdmissible", "Admissible" or "Unknown"
    prime: int | None = None
    reasons: tuple = ()
    sylows: tuple = field(default=(), compare=False)

    def format(self):
        head = self.kind if self.prime is None else f"{self.kind}(l={self.prime})"
        return head + (": " + "; ".join(self.reasons) if self.reasons else "")


def sylow_reports(G):
    reports = []
    if isinstance(G, AbelianGroup):
        for p in G.primes():
            P = G.sylow(p)
            reports.append(SylowReport(p, P.order, True, len(P.invariant_factors), obstruction_series(P) is not None))
        return reports
    for p in prime_factors(G.order) if G.order > 1 else []:
        P = sylow(G, p).as_group()
        if P.is_abelian():
            A = abelian_invariants(P)
            reports.append(SylowReport(p, P.order, True, len(A.invariant_factors), obstruction_series(A) is not None))
        else:
            reports.append(SylowReport(p, P.order, False, None, obstruction_series(P) is not None))
    return reports


def classify(G, model: FieldModel) -> Verdict:
    order = G.order
    p = model.residue_char
    if p and gcd(order, p) != 1:
        return Verdict("Unknown", reasons=("coprimality: |G| is divisible by the residue characteristic",))
    reports = tuple(sylow_reports(G))
    necessity_applies = model.two_dim_local and model.residue_kind == "finite"
    failing = [r.prime for r in reports if not r.has_series]
    if failing and necessity_applies:
        ell = failing[0]
        return Verdict(
            "NotAdmissible",
            prime=ell,
            reasons=(f"no-series: the Sylow {ell}-subgroup has no series with cyclic ends and metacyclic middle",),
            sylows=reports,
        )
    reasons = []
    if not model.two_dim_local:
        reasons.append("not-two-dim-local: the field is not a function field of a curve over a complete discretely valued field")
    if model.residue_kind != "finite":
        reasons.append(f"residue-not-finite: residue field kind is {model.residue_kind}")
    if model.roots_of_unity_bound % order:
        reasons.append(f"roots-of-unity: mu_{order} is not contained in mu_{model.roots_of_unity_bound}")
    for r in reports:
        if not r.abelian:
            reasons.append(f"sylow-nonabelian: the Sylow {r.prime}-subgroup is not abelian")
        elif r.rank > 4:
            reasons.append(f"sylow-rank: the Sylow {r.prime}-subgroup has rank {r.rank} > 4")
    if failing:
        reasons.append("no-series: some Sylow subgroup has no series, but necessity needs a finite residue field")
    if reasons:
        return Verdict("Unknown", reasons=tuple(reasons), sylows=reports)
    ranks = ", ".join(f"rank {r.rank} at {r.prime}" for r in reports) or "trivial group"
    return Verdict(
        "Admissible",
        reasons=(f"sufficiency: Sylow subgroups are quotients of Z^4 ({ranks}); mu_{order} present; finite residue field",),
        sylows=reports,
    )
