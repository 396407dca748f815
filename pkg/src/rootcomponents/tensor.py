"""Tensor product multiplicities ``m_{lam,mu}^nu`` within a delta-depth window.

Two independent methods:

* ``racah``: ``m^nu = sum_w eps(w) mult_mu(w(nu+rho) - rho - lam)``, summing over
  the affine Weyl orbit of ``nu+rho`` by descent.
* ``char_oracle``: multiply the truncated characters and peel off irreducible
  characters from the top.

Descent pruning uses the norm bound ``(eta|eta) <= (mu|mu)`` for weights of
``V(mu)``.  Along a descent ``x -> s_i x`` the offset ``e`` of ``w x`` below
``x`` only grows, and ``(eta|eta) = const + 2(e.alpha | lam+rho)`` with
``lam+rho`` regular dominant, so once a node violates the bound every node
below it does too.  The surviving orbit is finite and determines exactly how
deep the ``V(mu)`` table must be.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .charmult import (
    MultTable,
    _int_gram,
    _scale,
    dominant_offsets_below,
    freudenthal_mults,
    offset_of,
    weight_at,
)
from ._parallel import chunks, pmap
from .rootdata import CartanData, build_cartan
from .weights import Weight, fmt_q

__all__ = [
    "DecompositionReport",
    "WindowError",
    "additivity_check",
    "graded_dimension_check",
    "racah_mult",
    "racah_mults",
    "tensor_mults",
    "tensor_mults_oracle",
]

RACAH = "racah"
ORACLE = "char_oracle"


class WindowError(RuntimeError):
    """The computation needs a deeper multiplicity table than allowed."""

    def __init__(self, msg: str, needed: int | None = None):
        super().__init__(msg)
        self.needed = needed


@dataclass(frozen=True)
class DecompositionReport:
    """Multiplicities of every dominant ``nu`` in the window, zeros included."""

    label: str
    lam: Weight
    mu: Weight
    depth: int
    method: str
    entries: Mapping[Weight, int] = field(repr=False)
    cross_check: Mapping | None = None

    def mult(self, nu: Weight) -> int:
        if nu in self.entries:
            return self.entries[nu]
        raise KeyError(f"{nu} is not a dominant weight in the window")

    def components(self) -> dict[Weight, int]:
        return {nu: m for nu, m in self.entries.items() if m}

    def same_entries(self, other: "DecompositionReport") -> bool:
        return dict(self.entries) == dict(other.entries)

    def to_json(self, cd: CartanData) -> dict:
        out = {
            "type": self.label,
            "lambda": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "depth": self.depth,
            "method": self.method,
            "components": [
                {"nu": nu.to_json(), "nu_str": nu.to_str(cd), "mult": m} for nu, m in self.entries.items()
            ],
        }
        if self.cross_check is not None:
            out["cross_check"] = dict(self.cross_check)
        return out

    def to_tsv(self, cd: CartanData) -> str:
        head = [f"f{i}" for i in range(1, cd.rank + 1)] + ["level", "s", "nu", "mult"]
        rows = ["\t".join(head)]
        for nu, m in self.entries.items():
            rows.append(
                "\t".join([fmt_q(x) for x in nu.finite] + [str(nu.level), fmt_q(nu.s), nu.to_str(cd), str(m)])
            )
        return "\n".join(rows) + "\n"


def _check_inputs(cd: CartanData, lam: Weight, mu: Weight, depth: int) -> None:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    for name, w in (("lambda", lam), ("mu", mu)):
        if not w.is_dominant(cd):
            raise ValueError(f"{name} = {w.to_str(cd)} is not dominant integral")
        if w.level < 1:
            raise ValueError(f"{name} must have level >= 1")


class _RacahContext:
    """Precomputed scaled data for sums against one ``V(mu)``."""

    def __init__(self, cd: CartanData, lam: Weight, mu: Weight):
        self.cd = cd
        self.lam = lam
        self.mu = mu
        self.top = lam + mu
        self.n = cd.rank + 1
        scale = _scale(cd)
        self.B = _int_gram(cd)
        mp = mu.pairings(cd)
        self.q = [int(mp[i] * cd.d[i] * scale) for i in range(self.n)]

    def norm_ok(self, z) -> bool:
        """``(mu - z.alpha | mu - z.alpha) <= (mu|mu)``."""
        n, B, q = self.n, self.B, self.q
        zBz = sum(z[i] * B[i][j] * z[j] for i in range(n) if z[i] for j in range(n) if z[j])
        return 2 * sum(q[i] * z[i] for i in range(n)) - zBz >= 0

    def orbit_terms(self, nu: Weight) -> list[tuple[tuple[int, ...], int]]:
        """(offset below ``mu``, sign) for every orbit point passing the norm bound."""
        cd, n = self.cd, self.n
        cnu = offset_of(cd, self.top, nu)
        if cnu is None or min(cnu) < 0:
            raise ValueError(f"{nu.to_str(cd)} is not below lambda+mu")
        x = [int(p) + 1 for p in nu.pairings(cd)]
        if min(x) < 1 or any(p.denominator != 1 for p in nu.pairings(cd)):
            raise ValueError(f"{nu.to_str(cd)}+rho is not regular dominant")
        A = cd.A
        zero = (0,) * n
        terms = []
        layer = {zero: tuple(x)}
        sign = 1
        while layer:
            nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
            for e, p in layer.items():
                z = tuple(cnu[k] + e[k] for k in range(n))
                if not self.norm_ok(z):
                    continue
                terms.append((z, sign))
                for i in range(n):
                    if p[i] > 0:
                        ne = e[:i] + (e[i] + p[i],) + e[i + 1:]
                        if ne not in nxt:
                            nxt[ne] = tuple(p[j] - p[i] * A[j][i] for j in range(n))
            layer = nxt
            sign = -sign
        return terms


def _racah_one(ctx: _RacahContext, table: MultTable, nu: Weight, terms) -> int:
    total = 0
    for z, sign in terms:
        if z[0] > table.depth:
            raise WindowError(
                f"V(mu) table depth {table.depth} < required {z[0]} for nu = {nu.to_str(ctx.cd)}", z[0]
            )
        total += sign * table.by_offset.get(z, 0)
    if total < 0:
        raise ArithmeticError(f"negative alternating sum {total} at nu = {nu.to_str(ctx.cd)}")
    return total


def racah_mults(
    cd: CartanData,
    lam: Weight,
    mu: Weight,
    targets: list[Weight],
    *,
    max_table_depth: int | None = None,
) -> list[int]:
    """``m_{lam,mu}^nu`` for each dominant ``nu`` in ``targets``, in order."""
    _check_inputs(cd, lam, mu, 0)
    ctx = _RacahContext(cd, lam, mu)
    all_terms = [ctx.orbit_terms(nu) for nu in targets]
    need = max((z[0] for terms in all_terms for z, _ in terms), default=0)
    if max_table_depth is not None and need > max_table_depth:
        raise WindowError(f"needs V(mu) multiplicities to depth {need} > {max_table_depth}", need)
    table = freudenthal_mults(cd, mu, need)
    return [_racah_one(ctx, table, nu, terms) for nu, terms in zip(targets, all_terms)]


def racah_mult(
    cd: CartanData, lam: Weight, mu: Weight, nu: Weight, *, max_table_depth: int | None = None
) -> int:
    """``m_{lam,mu}^nu`` for a single dominant ``nu``."""
    return racah_mults(cd, lam, mu, [nu], max_table_depth=max_table_depth)[0]


def _racah_chunk(label: str, lam: Weight, mu: Weight, targets: list[Weight], cap) -> list[int]:
    return racah_mults(build_cartan(label), lam, mu, targets, max_table_depth=cap)


def tensor_mults(
    cd: CartanData,
    lam: Weight,
    mu: Weight,
    depth: int,
    *,
    max_table_depth: int | None = None,
    parallelism: int = 1,
) -> DecompositionReport:
    """Racah-Speiser decomposition of ``V(lam) (x) V(mu)`` down to delta-depth ``depth``.

    ``max_table_depth`` caps how deep the ``V(mu)`` table may be computed; the
    required depth is derived from the pruned orbit and exceeding the cap raises
    :class:`WindowError` rather than truncating the sum.  Targets are split
    across ``parallelism`` processes; the result does not depend on it.
    """
    _check_inputs(cd, lam, mu, depth)
    top = lam + mu
    targets = [weight_at(cd, top, c) for c in dominant_offsets_below(cd, top, depth)]
    jobs = [(cd.label, lam, mu, part, max_table_depth) for part in chunks(targets, parallelism)]
    mults = [m for part in pmap(_racah_chunk, jobs, parallelism) for m in part]
    return DecompositionReport(cd.label, lam, mu, depth, RACAH, dict(zip(targets, mults)))


def tensor_mults_oracle(cd: CartanData, lam: Weight, mu: Weight, depth: int) -> DecompositionReport:
    """Character-product decomposition; independent of the Racah sum."""
    _check_inputs(cd, lam, mu, depth)
    n = cd.rank + 1
    ta = freudenthal_mults(cd, lam, depth)
    tb = freudenthal_mults(cd, mu, depth)
    prod: Counter = Counter()
    b_items = sorted(tb.by_offset.items())
    for a, ma in ta.by_offset.items():
        room = depth - a[0]
        for b, mb in b_items:
            if b[0] > room:
                continue
            prod[tuple(a[k] + b[k] for k in range(n))] += ma * mb

    top = lam + mu
    entries = {}
    # sorted by (c_0, height): a linear extension of the dominance order
    for c in dominant_offsets_below(cd, top, depth):
        m = prod.get(c, 0)
        nu = weight_at(cd, top, c)
        if m < 0:
            raise ArithmeticError(f"negative coefficient {m} at {nu.to_str(cd)}")
        entries[nu] = m
        if m:
            sub = freudenthal_mults(cd, nu, depth - c[0])
            for e, me in sub.by_offset.items():
                key = tuple(c[k] + e[k] for k in range(n))
                prod[key] -= m * me
    leftover = {k: v for k, v in prod.items() if v}
    if leftover:
        k = min(leftover)
        raise ArithmeticError(
            f"character not exhausted: {len(leftover)} weights remain, e.g. offset {k} -> {leftover[k]}"
        )
    return DecompositionReport(cd.label, lam, mu, depth, ORACLE, entries)


def graded_dimension_check(cd: CartanData, rep: DecompositionReport) -> bool:
    """Sum of ``m_nu`` times graded dims of ``V(nu)`` equals the product's graded dims."""
    D = rep.depth
    da = freudenthal_mults(cd, rep.lam, D).graded_dims()
    db = freudenthal_mults(cd, rep.mu, D).graded_dims()
    want = [sum(da[i] * db[k - i] for i in range(k + 1)) for k in range(D + 1)]
    got = [0] * (D + 1)
    top = rep.lam + rep.mu
    for nu, m in rep.entries.items():
        if not m:
            continue
        c0 = offset_of(cd, top, nu)[0]
        for j, dim in enumerate(freudenthal_mults(cd, nu, D - c0).graded_dims()):
            got[c0 + j] += m * dim
    return got == want


def additivity_check(
    cd: CartanData, lam: Weight, lam2: Weight, mu: Weight, mu2: Weight, nu: Weight, depth: int
) -> bool:
    """``m_{lam,mu}^nu <= m_{lam+lam2, mu+mu2}^{nu+lam2+mu2}``."""
    for w in (lam, lam2, mu, mu2, nu):
        if not w.is_dominant(cd):
            raise ValueError(f"{w.to_str(cd)} is not dominant")
    small = racah_mult(cd, lam, mu, nu)
    big_l, big_m = lam + lam2, mu + mu2
    big = racah_mult(cd, big_l, big_m, nu + lam2 + mu2)
    return small <= big

