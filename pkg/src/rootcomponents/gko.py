"""Goddard-Kent-Olive coset scalars on ``V(lam) (x) V(mu)``.

The coset Virasoro algebra has central charge

    c = dim g0 * (l/(l+h) + m/(m+h) - (l+m)/(l+m+h))

and ``L_0`` acts on the component ``V(nu)`` by

    1/2 * ((lam|lam+2rho)/(l+h) + (mu|mu+2rho)/(m+h) - (nu|nu+2rho)/(l+m+h)),

with ``h`` the dual Coxeter number.  Since ``(nu - k*delta | 2rho + nu - k*delta)``
drops by ``2k(l+m+h)``, shifting ``nu`` down by ``k*delta`` raises the scalar by
exactly ``k``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import CartanData, Root, RootClass, classify_root
from .weights import Weight, fmt_q, inv_form, is_wahl_triple

__all__ = [
    "PositivityViolation",
    "SeriesKind",
    "SeriesPrediction",
    "central_charge",
    "l0_scalar",
    "predict_series",
    "wahl_positivity",
]


class SeriesKind(enum.Enum):
    ALL_K = "AllK"  # m_k >= 1 for every k >= 0
    GAP_AT_ONE = "GapAtOne"  # m_1 = 0, m_k >= 1 for k = 0 and k >= 2
    ONE_DIMENSIONAL = "OneDimensional"  # c = 0 and L_0 = 0

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SeriesPrediction:
    kind: SeriesKind
    l0_scalar: Fraction
    central_charge: Fraction

    def holds_for(self, m: list[int]) -> bool:
        """Check the predicted inequalities against ``m[k] = m^{nu-k*delta}``."""
        if self.kind is SeriesKind.ALL_K:
            return all(x >= 1 for x in m)
        if self.kind is SeriesKind.GAP_AT_ONE:
            return all((x == 0) if k == 1 else (x >= 1) for k, x in enumerate(m))
        return all(x == (1 if k == 0 else 0) for k, x in enumerate(m))

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "l0_scalar": fmt_q(self.l0_scalar),
            "central_charge": fmt_q(self.central_charge),
        }


def central_charge(cd: CartanData, l: int, m: int) -> Fraction:
    if l < 1 or m < 1:
        raise ValueError("levels must be >= 1")
    h = cd.h_dual
    return cd.dim_g0 * (Fraction(l, l + h) + Fraction(m, m + h) - Fraction(l + m, l + m + h))


def _casimir(cd: CartanData, w: Weight) -> Fraction:
    rho = Weight.rho(cd)
    return inv_form(cd, w, w + 2 * rho)


def l0_scalar(cd: CartanData, lam: Weight, mu: Weight, nu: Weight) -> Fraction:
    l, m = lam.level, mu.level
    if l < 1 or m < 1:
        raise ValueError("lambda and mu must have level >= 1")
    if nu.level != l + m:
        raise ValueError(f"level mismatch: level(nu) = {nu.level} != {l + m}")
    h = cd.h_dual
    return Fraction(1, 2) * (
        _casimir(cd, lam) / (l + h) + _casimir(cd, mu) / (m + h) - _casimir(cd, nu) / (l + m + h)
    )


def predict_series(cd: CartanData, lam: Weight, mu: Weight, nu: Weight) -> SeriesPrediction:
    """Series shape of ``m^{nu-k*delta}`` for a delta-maximal component ``nu``."""
    s = l0_scalar(cd, lam, mu, nu)
    c = central_charge(cd, lam.level, mu.level)
    if s != 0:
        kind = SeriesKind.ALL_K
    elif c != 0:
        kind = SeriesKind.GAP_AT_ONE
    else:  # unreachable for positive levels; kept for completeness
        kind = SeriesKind.ONE_DIMENSIONAL
    return SeriesPrediction(kind, s, c)


class PositivityViolation(AssertionError):
    pass


def wahl_positivity(cd: CartanData, lam: Weight, mu: Weight, beta: Root) -> Fraction:
    """``L_0`` scalar on ``V(lam+mu-beta)`` for a Wahl triple with real ``beta``; must be > 0."""
    if classify_root(cd, beta) is not RootClass.REAL:
        raise ValueError("beta must be a real root")
    chk = is_wahl_triple(cd, lam, mu, beta)
    if not chk:
        raise ValueError(f"not a Wahl triple: {chk.reason}")
    s = l0_scalar(cd, lam, mu, (lam + mu).minus_root(cd, beta))
    if s <= 0:
        raise PositivityViolation(
            f"non-positive scalar {fmt_q(s)} for ({lam.to_str(cd)}, {mu.to_str(cd)}, {beta.to_str()})"
        )
    return s
