"""Depth-truncated weight multiplicities of integrable highest-weight modules.

Weights of ``V(lam)`` are addressed by their offset ``c`` from the highest
weight, ``nu = lam - sum_i c_i alpha_i`` with ``c`` indexed ``0..l``.  The
delta-degree of ``nu`` is ``c_0``.  Multiplicities come from Freudenthal's
recursion with the affine root multiplicities (``l`` for ``k*delta``).  All
arithmetic is in integers after scaling the form by a common denominator.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .rootdata import CartanData
from .weights import Weight, fmt_q, inv_form, pairing

__all__ = [
    "MultTable",
    "UnsupportedWeightError",
    "clear_cache",
    "dominant_offsets_below",
    "dominant_weights_below",
    "freudenthal_mults",
    "offset_of",
    "positive_roots_window",
    "weight_at",
]


class UnsupportedWeightError(ValueError):
    pass


def _scale(cd: CartanData) -> int:
    # clears both the Gram matrix and the half-lengths d_i
    return math.lcm(*(x.denominator for row in cd.gram for x in row), *(Fraction(x).denominator for x in cd.d))


def _exact_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"scaling left a fraction {x}")
    return x.numerator


def _int_gram(cd: CartanData) -> list[list[int]]:
    n = _scale(cd)
    return [[_exact_int(x * n) for x in row] for row in cd.gram]


def offset_of(cd: CartanData, top: Weight, nu: Weight) -> tuple[int, ...] | None:
    """Coefficients ``c`` with ``top - nu = sum c_i alpha_i``, or None if not in the root lattice."""
    diff = top - nu
    if diff.level != 0:
        return None
    c0 = diff.s
    fin = [diff.finite[i] - c0 * cd.A[i + 1][0] for i in range(cd.rank)]
    # finite part expressed on simple roots: Lambda_i = sum_k fund_gram[i][k]/d_k alpha_k
    coords = [c0]
    for k in range(cd.rank):
        coords.append(sum((fin[i] * cd.fund_gram[i][k] for i in range(cd.rank)), Fraction(0)) / cd.d[k + 1])
    if any(Fraction(x).denominator != 1 for x in coords):
        return None
    return tuple(int(x) for x in coords)


def weight_at(cd: CartanData, top: Weight, c: Sequence[int]) -> Weight:
    """``top - sum c_i alpha_i``."""
    fin = tuple(
        top.finite[i] - sum(c[j] * cd.A[i + 1][j] for j in cd.indices) for i in range(cd.rank)
    )
    return Weight(fin, top.level, top.s - c[0])


def positive_roots_window(cd: CartanData, depth: int) -> list[tuple[tuple[int, ...], int]]:
    """Positive roots with delta-degree ``<= depth`` as (simple coords, multiplicity)."""
    out = []
    a = cd.marks
    for k in range(depth + 1):
        for g in cd.positive_roots:
            if k:
                neg = tuple(k * a[i + 1] - g[i] for i in range(cd.rank))
                out.append(((k,) + neg, 1))
            out.append(((k,) + tuple(g[i] + k * a[i + 1] for i in range(cd.rank)), 1))
        if k:
            out.append((tuple(k * x for x in a), cd.rank))
    return out


@dataclass(frozen=True)
class MultTable:
    """Multiplicities of ``V(highest)`` down to delta-degree ``depth``.

    ``by_offset`` maps offsets with positive multiplicity; anything absent
    within the window has multiplicity zero.  ``norm_bound`` is
    ``(highest|highest)``, an upper bound for ``(nu|nu)`` over all keys.
    """

    label: str
    highest: Weight
    depth: int
    by_offset: Mapping[tuple[int, ...], int] = field(repr=False)
    norm_bound: Fraction = Fraction(0)
    max_offset: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.by_offset)

    def mult_offset(self, c: Sequence[int]) -> int:
        return self.by_offset.get(tuple(c), 0)

    def mult(self, cd: CartanData, nu: Weight) -> int:
        c = offset_of(cd, self.highest, nu)
        if c is None or min(c) < 0:
            return 0
        if c[0] > self.depth:
            raise ValueError(f"weight {nu.to_str(cd)} lies below the table depth {self.depth}")
        return self.by_offset.get(c, 0)

    def items(self, cd: CartanData) -> Iterator[tuple[Weight, int]]:
        for c in sorted(self.by_offset, key=lambda c: (c[0], sum(c), c)):
            yield weight_at(cd, self.highest, c), self.by_offset[c]

    def entries(self, cd: CartanData) -> dict[Weight, int]:
        return dict(self.items(cd))

    def graded_dims(self) -> list[int]:
        """Total multiplicity at each delta-degree ``0..depth``."""
        dims = [0] * (self.depth + 1)
        for c, m in self.by_offset.items():
            dims[c[0]] += m
        return dims

    def truncate(self, depth: int) -> "MultTable":
        if depth > self.depth:
            raise ValueError("cannot extend a table by truncation")
        kept = {c: m for c, m in self.by_offset.items() if c[0] <= depth}
        return MultTable(self.label, self.highest, depth, kept, self.norm_bound, _max_offset(kept))

    def shifted(self, highest: Weight) -> "MultTable":
        """Same table for ``highest``, which must differ from ours by a multiple of delta."""
        if highest.finite != self.highest.finite or highest.level != self.highest.level:
            raise ValueError("shifted tables must share finite part and level")
        return MultTable(self.label, highest, self.depth, self.by_offset, self.norm_bound, self.max_offset)

    def to_tsv(self, cd: CartanData) -> str:
        head = [f"f{i}" for i in range(1, cd.rank + 1)] + ["level", "s", "multiplicity"]
        rows = ["\t".join(head)]
        for w, m in self.items(cd):
            rows.append("\t".join([fmt_q(x) for x in w.finite] + [str(w.level), fmt_q(w.s), str(m)]))
        return "\n".join(rows) + "\n"

    def to_json(self, cd: CartanData) -> dict:
        return {
            "type": self.label,
            "highest": self.highest.to_json(),
            "depth": self.depth,
            "norm_bound": fmt_q(self.norm_bound),
            "weights": [{"weight": w.to_json(), "mult": m} for w, m in self.items(cd)],
        }


def _max_offset(table: Mapping[tuple[int, ...], int]) -> tuple[int, ...]:
    if not table:
        return ()
    return tuple(max(c[i] for c in table) for i in range(len(next(iter(table)))))


_cache: dict[tuple, MultTable] = {}
_cache_lock = threading.Lock()


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def freudenthal_mults(
    cd: CartanData, lam: Weight, depth: int, *, shuffle_seed: int | None = None
) -> MultTable:
    """Weight multiplicities of ``V(lam)`` down to delta-degree ``depth``.

    ``shuffle_seed`` permutes the positive-root iteration order and bypasses
    the cache; it exists so that order independence can be tested.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if not lam.is_dominant(cd):
        raise UnsupportedWeightError(f"{lam.to_str(cd)} is not dominant integral")
    if lam.level == 0 and any(lam.finite):
        raise UnsupportedWeightError("level-0 weights other than multiples of delta are unsupported")

    key = (cd.label, lam.finite, lam.level)
    if shuffle_seed is None:
        with _cache_lock:
            hit = _cache.get(key)
        if hit is not None and hit.depth >= depth:
            t = hit if hit.depth == depth else hit.truncate(depth)
            return t.shifted(lam) if t.highest != lam else t

    table = _freudenthal(cd, lam, depth, shuffle_seed)
    if shuffle_seed is None:
        with _cache_lock:
            old = _cache.get(key)
            if old is None or old.depth < depth:
                _cache[key] = table
    return table


def _freudenthal(cd: CartanData, lam: Weight, depth: int, seed: int | None) -> MultTable:
    n = cd.rank + 1
    scale = _scale(cd)
    B = _int_gram(cd)
    lp = [int(pairing(cd, lam, i)) for i in range(n)]
    dd = [cd.d[i] * scale for i in range(n)]
    q = [_exact_int(lp[i] * dd[i]) for i in range(n)]  # scale*(lam|alpha_i)
    p = [_exact_int((lp[i] + 1) * dd[i]) for i in range(n)]  # scale*(lam+rho|alpha_i)
    norm_bound = inv_form(cd, lam, lam)

    zero = (0,) * n
    if lam.level == 0:
        return MultTable(cd.label, lam, depth, {zero: 1}, norm_bound, zero)

    roots = positive_roots_window(cd, depth)
    if seed is not None:
        random.Random(seed).shuffle(roots)
    prepared = []
    for r, m in roots:
        Br = [sum(B[k][j] * r[j] for j in range(n)) for k in range(n)]
        qr = sum(q[k] * r[k] for k in range(n))
        prepared.append((r, m, Br, qr))

    def quad(c):
        return sum(c[i] * B[i][j] * c[j] for i in range(n) for j in range(n) if c[i] and c[j])

    table: dict[tuple[int, ...], int] = {zero: 1}
    current = [zero]
    while current:
        layer = set()
        for c in current:
            for i in range(n):
                nc = c[:i] + (c[i] + 1,) + c[i + 1:]
                if nc[0] > depth or nc in layer:
                    continue
                cBc = quad(nc)
                if 2 * sum(q[k] * nc[k] for k in range(n)) - cBc < 0:
                    continue  # (nu|nu) > (lam|lam): never a weight
                layer.add(nc)
        current = []
        for c in sorted(layer):
            total = 0
            for r, m, Br, qr in prepared:
                x = tuple(c[k] - r[k] for k in range(n))
                while min(x) >= 0:
                    mx = table.get(x)
                    if mx:
                        total += m * mx * (qr - sum(x[k] * Br[k] for k in range(n) if x[k]))
                    x = tuple(x[k] - r[k] for k in range(n))
            if total == 0:
                continue
            denom = 2 * sum(p[k] * c[k] for k in range(n)) - quad(c)
            if denom <= 0:
                raise ArithmeticError(
                    f"Freudenthal denominator {denom} <= 0 at offset {c} of {lam.to_str(cd)}"
                )
            mult, rem = divmod(2 * total, denom)
            if rem or mult < 0:
                raise ArithmeticError(
                    f"non-integral or negative multiplicity {Fraction(2 * total, denom)} "
                    f"at offset {c} of {lam.to_str(cd)}"
                )
            if mult:
                table[c] = mult
                current.append(c)
    return MultTable(cd.label, lam, depth, table, norm_bound, _max_offset(table))


# ---------------------------------------------------------------------------
# dominant weights below a given weight


def dominant_offsets_below(cd: CartanData, top: Weight, depth: int) -> list[tuple[int, ...]]:
    """Offsets ``c`` (``c_0 <= depth``) with ``top - c.alpha`` dominant, sorted by (c_0, height)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    n = cd.rank
    top_fin_norm = float(sum(top.finite[i] * cd.fund_gram[i][j] * top.finite[j] for i in range(n) for j in range(n)))
    # theta in fundamental-weight coordinates (finite pairings)
    theta_fin = [sum(cd.theta[j] * cd.A[i + 1][j + 1] for j in range(n)) for i in range(n)]
    coweight_norm = [math.sqrt(float(cd.fund_gram[i][i])) / float(cd.d[i + 1]) for i in range(n)]
    out = []
    for c0 in range(depth + 1):
        radius = math.sqrt(max(0.0, top_fin_norm + 2 * top.level * c0))
        bounds = []
        for i in range(n):
            # (top_bar + c0*theta | omega_i^vee) = coefficient of alpha_i in top_bar + c0*theta
            shifted = [top.finite[j] + c0 * theta_fin[j] for j in range(n)]
            coef = sum(shifted[j] * cd.fund_gram[j][i] for j in range(n)) / cd.d[i + 1]
            bounds.append(math.floor(float(coef) + radius * coweight_norm[i]) + 1)
        out.extend(_scan_box(cd, top, c0, bounds))
    out.sort(key=lambda c: (c[0], sum(c), c))
    return out


def _scan_box(cd: CartanData, top: Weight, c0: int, bounds: list[int]) -> Iterator[tuple[int, ...]]:
    n = cd.rank
    A = cd.A
    base = [pairing(cd, top, i) - c0 * A[i][0] for i in range(n + 1)]

    # depth-first over c_1..c_n; a pairing can only be rescued by later coordinates
    # with negative Cartan entries, so the check happens at the leaves
    def rec(j, cs):
        if j == n + 1:
            c = (c0,) + tuple(cs)
            if all(base[i] - sum(A[i][k] * c[k] for k in range(1, n + 1)) >= 0 for i in range(n + 1)):
                yield c
            return
        for v in range(bounds[j - 1] + 1):
            cs.append(v)
            yield from rec(j + 1, cs)
            cs.pop()

    yield from rec(1, [])


def dominant_weights_below(cd: CartanData, top: Weight, depth: int) -> list[Weight]:
    """Dominant ``nu`` with ``top - nu`` in Q+ and delta-degree ``<= depth``."""
    return [weight_at(cd, top, c) for c in dominant_offsets_below(cd, top, depth)]
