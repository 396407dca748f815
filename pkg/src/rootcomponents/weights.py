"""Exact weight arithmetic on the dual Cartan subalgebra.

A weight is ``finite + level*Lambda_0 + s*delta`` where ``finite`` holds the
coordinates on the finite fundamental weights.  All arithmetic is exact; there
is no tolerance anywhere.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .rootdata import CartanData, Root, RootClass, classify_root, positive_real_roots

__all__ = [
    "Weight",
    "WahlCheck",
    "apply_word",
    "dominant_weights",
    "enumerate_wahl_triples",
    "fmt_q",
    "inv_form",
    "is_s_regular",
    "is_wahl_triple",
    "pairing",
    "parse_weight",
    "parse_word",
    "reflect",
]


def fmt_q(q) -> str:
    """Lowest-terms ``p/q``; integers without ``/1``."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _q_json(q: Fraction):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else fmt_q(q)


@dataclass(frozen=True, order=True)
class Weight:
    finite: tuple[Fraction, ...]
    level: int
    s: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(Fraction(x) for x in self.finite))
        lv = Fraction(self.level)
        if lv.denominator != 1:
            raise ValueError("level must be an integer")
        object.__setattr__(self, "level", int(lv))
        object.__setattr__(self, "s", Fraction(self.s))

    # construction -------------------------------------------------------

    @classmethod
    def from_pairings(cls, cd: CartanData, n: Sequence, s=0) -> "Weight":
        """``sum n_i Lambda_i + s*delta``."""
        if len(n) != cd.rank + 1:
            raise ValueError(f"expected {cd.rank + 1} pairings")
        level = sum(Fraction(cd.comarks[i]) * Fraction(n[i]) for i in cd.indices)
        return cls(tuple(n[1:]), level, s)

    @classmethod
    def fundamental(cls, cd: CartanData, i: int) -> "Weight":
        return cls.from_pairings(cd, [int(j == i) for j in cd.indices])

    @classmethod
    def rho(cls, cd: CartanData) -> "Weight":
        return cls.from_pairings(cd, [1] * (cd.rank + 1))

    @classmethod
    def delta(cls, cd: CartanData, k=1) -> "Weight":
        return cls((0,) * cd.rank, 0, k)

    @classmethod
    def zero(cls, cd: CartanData) -> "Weight":
        return cls((0,) * cd.rank, 0, 0)

    @classmethod
    def from_root(cls, cd: CartanData, beta: Root) -> "Weight":
        c = beta.simple_coords(cd)
        fin = tuple(sum(c[j] * cd.A[i][j] for j in cd.indices) for i in range(1, cd.rank + 1))
        return cls(fin, 0, beta.k)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.finite, other.finite)),
            self.level + other.level,
            self.s + other.s,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a - b for a, b in zip(self.finite, other.finite)),
            self.level - other.level,
            self.s - other.s,
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.finite), -self.level, -self.s)

    def __rmul__(self, n) -> "Weight":
        return Weight(tuple(n * a for a in self.finite), n * self.level, n * self.s)

    def minus_root(self, cd: CartanData, beta: Root) -> "Weight":
        return self - Weight.from_root(cd, beta)

    def shift(self, k) -> "Weight":
        """``self + k*delta``."""
        return Weight(self.finite, self.level, self.s + k)

    # predicates ---------------------------------------------------------

    def pairings(self, cd: CartanData) -> tuple[Fraction, ...]:
        return tuple(pairing(cd, self, i) for i in cd.indices)

    def is_integral(self, cd: CartanData) -> bool:
        return all(p.denominator == 1 for p in self.pairings(cd))

    def is_dominant(self, cd: CartanData) -> bool:
        """Dominant integral (the delta coefficient is unconstrained)."""
        return all(p.denominator == 1 and p >= 0 for p in self.pairings(cd))

    def is_regular_dominant(self, cd: CartanData) -> bool:
        return all(p.denominator == 1 and p >= 1 for p in self.pairings(cd))

    # serialization ------------------------------------------------------

    def to_str(self, cd: CartanData) -> str:
        parts = []
        for i, p in enumerate(self.pairings(cd)):
            if p:
                parts.append(_term(p, f"L{i}"))
        if self.s:
            parts.append(_term(self.s, "d"))
        if not parts:
            return "0"
        s = "".join(p if p.startswith("-") else "+" + p for p in parts)
        return s[1:]

    def to_json(self) -> dict:
        return {"finite": [_q_json(x) for x in self.finite], "level": self.level, "s": fmt_q(self.s)}

    @classmethod
    def from_json(cls, obj: dict) -> "Weight":
        return cls(tuple(Fraction(x) for x in obj["finite"]), int(obj["level"]), Fraction(obj["s"]))


def _term(c: Fraction, sym: str) -> str:
    if c == 1:
        return sym
    if c == -1:
        return "-" + sym
    return f"{fmt_q(c)}*{sym}"


_TOKEN = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*?)?(L(\d+)|d)")


def parse_weight(cd: CartanData, text: str) -> Weight:
    """Parse ``"L0+2*L1-3d"`` or ``"1/2*d"`` into a Weight."""
    s = text.replace(" ", "")
    if s == "0":
        return Weight.zero(cd)
    if not s:
        raise ValueError("empty weight literal")
    n = [Fraction(0)] * (cd.rank + 1)
    dcoef = Fraction(0)
    pos = 0
    for m in _TOKEN.finditer(s):
        if m.start() != pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"malformed weight literal {text!r}")
        pos = m.end()
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            c = -c
        if m.group(3) == "d":
            dcoef += c
        else:
            i = int(m.group(4))
            if i > cd.rank:
                raise ValueError(f"L{i} out of range for {cd.label}")
            n[i] += c
    if pos != len(s):
        raise ValueError(f"malformed weight literal {text!r}")
    return Weight.from_pairings(cd, n, dcoef)


# ---------------------------------------------------------------------------
# form, pairings, Weyl group


def inv_form(cd: CartanData, lam: Weight, mu: Weight) -> Fraction:
    """Normalized invariant form: ``(Lambda_0|Lambda_0) = 0``, ``(Lambda_0|delta) = 1``."""
    g = cd.fund_gram
    fin = sum(
        (lam.finite[i] * g[i][j] * mu.finite[j] for i in range(cd.rank) for j in range(cd.rank)),
        Fraction(0),
    )
    return fin + lam.level * mu.s + mu.level * lam.s


def pairing(cd: CartanData, lam: Weight, i: int) -> Fraction:
    """``lam(alpha_i^vee)``."""
    if not 0 <= i <= cd.rank:
        raise IndexError(f"simple index {i} out of range 0..{cd.rank}")
    if i:
        return lam.finite[i - 1]
    return lam.level - sum(cd.comarks[j + 1] * lam.finite[j] for j in range(cd.rank))


def _simple_weight(cd: CartanData, i: int) -> Weight:
    return Weight.from_root(cd, Root.simple(cd, i))


def reflect(cd: CartanData, i: int, lam: Weight) -> Weight:
    p = pairing(cd, lam, i)
    if not p:
        return lam
    return lam - p * _simple_weight(cd, i)


def parse_word(text: str | Sequence[int]) -> tuple[int, ...]:
    """``"s3s2s1"``, ``"3,2,1"`` or ``"3 2 1"``; ``""``, ``"e"`` and ``"id"`` are the identity."""
    if not isinstance(text, str):
        return tuple(int(x) for x in text)
    t = text.strip()
    if t in ("", "e", "id", "1"):
        return ()
    if t.startswith("s"):
        parts = [p for p in t.split("s") if p]
    else:
        parts = [p for p in re.split(r"[,\s]+", t) if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed Weyl word {text!r}") from None


def apply_word(cd: CartanData, word: str | Sequence[int], lam: Weight) -> Weight:
    """Act by ``s_{w1} s_{w2} ... s_{wn}``; the rightmost letter acts first."""
    letters = parse_word(word)
    for i in letters:
        if not 0 <= i <= cd.rank:
            raise IndexError(f"Weyl letter {i} out of range 0..{cd.rank}")
    for i in reversed(letters):
        lam = reflect(cd, i, lam)
    return lam


# ---------------------------------------------------------------------------
# Wahl triples and S-regularity


class WahlCheck(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _root_or_zero(cd: CartanData, r: Root) -> bool:
    return r.is_zero() or classify_root(cd, r) is not RootClass.NOT_ROOT


def is_wahl_triple(cd: CartanData, lam: Weight, mu: Weight, beta: Root) -> WahlCheck:
    if not beta.is_positive(cd):
        return WahlCheck(False, "beta is not a positive root")
    if not (lam.is_dominant(cd) and mu.is_dominant(cd)):
        return WahlCheck(False, "lambda and mu must be dominant integral")
    if not (lam + mu).minus_root(cd, beta).is_dominant(cd):
        return WahlCheck(False, "P1: lambda+mu-beta is not dominant")
    for i in cd.indices:
        if pairing(cd, lam, i) == 0 or pairing(cd, mu, i) == 0:
            if _root_or_zero(cd, beta - Root.simple(cd, i)):
                return WahlCheck(False, f"P2: index {i} vanishes but beta-alpha_{i} is a root or zero")
    return WahlCheck(True, "ok")


def dominant_weights(cd: CartanData, max_level: int, coord_bound: int) -> list[Weight]:
    """Dominant weights with ``s = 0``, pairings ``<= coord_bound`` and level ``<= max_level``.

    Sorted lexicographically by the pairing vector.
    """
    out = []
    for n in itertools.product(range(coord_bound + 1), repeat=cd.rank + 1):
        lvl = sum(cd.comarks[i] * n[i] for i in cd.indices)
        if lvl <= max_level:
            out.append(Weight.from_pairings(cd, n))
    return out


def wahl_roots(cd: CartanData, max_k: int) -> list[Root]:
    """Positive roots up to delta-degree ``max_k``: real ones, then ``k*delta``."""
    roots = sorted(positive_real_roots(cd, max_k), key=lambda r: (r.k, sum(r.gamma), r.gamma))
    roots += [Root.delta(cd, k) for k in range(1, max_k + 1)]
    return roots


def enumerate_wahl_triples(
    cd: CartanData, max_level: int, max_k: int, coord_bound: int
) -> list[tuple[Weight, Weight, Root]]:
    if min(max_level, max_k, coord_bound) < 0:
        raise ValueError("bounds must be >= 0")
    weights = dominant_weights(cd, max_level, coord_bound)
    roots = wahl_roots(cd, max_k)
    return [
        (lam, mu, beta)
        for lam in weights
        for mu in weights
        for beta in roots
        if is_wahl_triple(cd, lam, mu, beta)
    ]


def is_s_regular(cd: CartanData, mu: Weight, S: Iterable[int]) -> bool:
    S = frozenset(S)
    if not mu.is_dominant(cd):
        return False
    return all((pairing(cd, mu, k) == 0) == (k in S) for k in cd.indices)

