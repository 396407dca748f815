"""Root data for the untwisted affine Kac-Moody algebras.

Roots are stored as ``Root(gamma, k)``: ``gamma`` is the finite part in the
simple-root basis of the underlying simple Lie algebra and ``k`` the
coefficient of the null root ``delta``.  The affine simple root ``alpha_0`` is
``delta - theta`` and therefore reads ``Root(-theta, 1)``.

Finite data follows Bourbaki's numbering.  ``B_2`` is relabelled ``C_2`` (with
``alpha_1`` short), and the bilinear form is normalized so that long roots have
squared length 2.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

import sympy

if TYPE_CHECKING:
    from .weights import Weight

__all__ = [
    "AffineType",
    "CartanData",
    "IndexSet",
    "InvalidTypeError",
    "Root",
    "RootClass",
    "RootError",
    "build_cartan",
    "classify_root",
    "exceptional_roots",
    "f_set",
    "lemma_root_scan",
    "parse_root",
    "parse_type",
    "positive_real_roots",
    "rho_beta",
]

IndexSet = frozenset

FAMILIES = "ABCDEFG"

# (h^vee, dim g) from the standard tables; cross-checked against the
# values recomputed from the Cartan matrix when a CartanData is built.
_TABULATED = {
    "A": lambda n: (n + 1, n * (n + 2)),
    "B": lambda n: (2 * n - 1, n * (2 * n + 1)),
    "C": lambda n: (n + 1, n * (2 * n + 1)),
    "D": lambda n: (2 * n - 2, n * (2 * n - 1)),
    "E": lambda n: {6: (12, 78), 7: (18, 133), 8: (30, 248)}[n],
    "F": lambda n: (9, 52),
    "G": lambda n: (4, 14),
}


class InvalidTypeError(ValueError):
    """Raised for labels that do not name an untwisted affine type."""


class RootError(ValueError):
    """Raised when an operation receives something that is not a positive root."""


@dataclass(frozen=True, order=True)
class AffineType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidTypeError(f"unknown family {self.family!r}")
        n = self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[self.family]
        if not ok:
            need = {
                "A": "rank >= 1",
                "B": "rank >= 2",
                "C": "rank >= 2",
                "D": "rank >= 4",
                "E": "rank in {6, 7, 8}",
                "F": "rank == 4",
                "G": "rank == 2",
            }[self.family]
            raise InvalidTypeError(
                f"invalid rank {n} for family {self.family}: requires {need}"
            )
        if self.family == "B" and n == 2:
            object.__setattr__(self, "family", "C")

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}~"

    def __str__(self) -> str:
        return self.label


_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*(~|\^\(1\)|\^1|\(1\))?\s*$")


def parse_type(label: str | AffineType) -> AffineType:
    """Parse ``"A1~"``, ``"G2^(1)"`` or a bare ``"F4"`` into an AffineType."""
    if isinstance(label, AffineType):
        return label
    m = _LABEL_RE.match(label)
    if not m:
        raise InvalidTypeError(
            f"cannot parse type label {label!r} (expected e.g. 'A1~' or 'C2^(1)')"
        )
    return AffineType(m.group(1).upper(), int(m.group(2)))


def _finite_diagram(t: AffineType) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths and Dynkin edges (0-based) of the finite diagram."""
    n, fam = t.rank, t.family
    one, two = Fraction(1), Fraction(2)
    chain = [(i, i + 1) for i in range(n - 1)]
    if fam == "A":
        return [two] * n, chain
    if fam == "B":
        return [two] * (n - 1) + [one], chain
    if fam == "C":
        return [one] * (n - 1) + [two], chain
    if fam == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return [two] * n, edges
    if fam == "E":
        # Bourbaki: 1-3-4-5-6(-7-8), with 2 attached to 4
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return [two] * n, edges
    if fam == "F":
        return [two, two, one, one], chain
    return [Fraction(2, 3), two], [(0, 1)]


def _closure(simple: Sequence[tuple[int, ...]], cartan: Sequence[Sequence[int]]):
    """All roots as the Weyl-group orbit of the simple roots."""
    n = len(simple)
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for i in range(n):
            p = sum(r[j] * cartan[i][j] for j in range(n))
            if p:
                s = list(r)
                s[i] -= p
                s = tuple(s)
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
    return frozenset(seen)


@dataclass(frozen=True)
class CartanData:
    type: AffineType
    rank: int
    A: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    d: tuple[Fraction, ...]
    theta: tuple[int, ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    h_dual: int
    dim_g0: int
    finite_gram: tuple[tuple[Fraction, ...], ...]
    fund_gram: tuple[tuple[Fraction, ...], ...]
    finite_roots: frozenset = field(repr=False)
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def label(self) -> str:
        return self.type.label

    @property
    def indices(self) -> range:
        return range(self.rank + 1)

    @property
    def simply_laced(self) -> bool:
        return self.type.family in "ADE"

    def is_finite_root(self, gamma: Iterable[int]) -> bool:
        return tuple(gamma) in self.finite_roots

    def finite_form(self, x: Sequence, y: Sequence) -> Fraction:
        """(x|y) for finite vectors in simple-root coordinates."""
        g = self.finite_gram
        return sum(
            (x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )


@lru_cache(maxsize=None)
def build_cartan(t: AffineType | str) -> CartanData:
    """Build the (immutable, cached) root datum of an untwisted affine type."""
    t = parse_type(t)
    n = t.rank
    lengths, edges = _finite_diagram(t)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = lengths[i]
    for i, j in edges:
        g[i][j] = g[j][i] = -max(lengths[i], lengths[j]) / 2
    cartan = [[int(2 * g[i][j] / g[i][i]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if 2 * g[i][j] / g[i][i] != cartan[i][j]:
                raise AssertionError(f"non-integral Cartan entry for {t}")

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = _closure(simple, cartan)
    positive = sorted((r for r in roots if all(c >= 0 for c in r)), key=lambda r: (sum(r), r))
    theta = positive[-1]
    if sum(1 for r in positive if sum(r) == sum(theta)) != 1:
        raise AssertionError(f"highest root of {t} is not unique")

    def form(x, y):
        return sum((x[i] * g[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))

    if form(theta, theta) != 2:
        raise AssertionError(f"(theta|theta) != 2 for {t}")

    # affine form on alpha_0..alpha_n with alpha_0 = delta - theta
    big = n + 1
    gram = [[Fraction(0)] * big for _ in range(big)]
    gram[0][0] = form(theta, theta)
    for i in range(n):
        gram[0][i + 1] = gram[i + 1][0] = -form(theta, simple[i])
        for j in range(n):
            gram[i + 1][j + 1] = g[i][j]
    A = tuple(tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(big)) for i in range(big))
    d = tuple(gram[i][i] / 2 for i in range(big))

    marks = (1,) + tuple(theta)
    # theta^vee = sum a_i^vee alpha_i^vee with a_i^vee = a_i (alpha_i|alpha_i)/2
    comarks = (1,) + tuple(int(theta[i] * d[i + 1]) for i in range(n))
    h_dual = 1 + sum(comarks[1:])
    dim_g0 = n + len(roots)
    tab_h, tab_dim = _TABULATED[t.family](n)
    if (h_dual, dim_g0) != (tab_h, tab_dim):
        raise AssertionError(
            f"{t}: computed (h^vee, dim) = {(h_dual, dim_g0)}, tables say {(tab_h, tab_dim)}"
        )

    ginv = sympy.Matrix(n, n, lambda i, j: sympy.Rational(g[i][j].numerator, g[i][j].denominator)).inv()
    fund = tuple(
        tuple(d[i + 1] * Fraction(int(ginv[i, j].p), int(ginv[i, j].q)) * d[j + 1] for j in range(n))
        for i in range(n)
    )

    return CartanData(
        type=t,
        rank=n,
        A=A,
        gram=tuple(tuple(r) for r in gram),
        d=d,
        theta=theta,
        marks=marks,
        comarks=comarks,
        h_dual=h_dual,
        dim_g0=dim_g0,
        finite_gram=tuple(tuple(r) for r in g),
        fund_gram=fund,
        finite_roots=roots,
        positive_roots=tuple(positive),
    )


# ---------------------------------------------------------------------------
# roots


class RootClass(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    NOT_ROOT = "not_root"


@dataclass(frozen=True, order=True)
class Root:
    """``gamma + k*delta`` (not necessarily a root; see :func:`classify_root`)."""

    gamma: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(int(x) for x in self.gamma))
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def simple(cls, cd: CartanData, i: int) -> "Root":
        if i == 0:
            return cls(tuple(-x for x in cd.theta), 1)
        return cls(tuple(int(j == i - 1) for j in range(cd.rank)), 0)

    @classmethod
    def delta(cls, cd: CartanData, k: int = 1) -> "Root":
        return cls((0,) * cd.rank, k)

    @classmethod
    def from_simple_coords(cls, cd: CartanData, c: Sequence[int]) -> "Root":
        """From coefficients on ``alpha_0 .. alpha_l``."""
        k = c[0]
        return cls(tuple(c[i + 1] - k * cd.theta[i] for i in range(cd.rank)), k)

    def simple_coords(self, cd: CartanData) -> tuple[int, ...]:
        return (self.k,) + tuple(self.gamma[i] + self.k * cd.theta[i] for i in range(cd.rank))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.gamma, other.gamma)), self.k + other.k)

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.gamma, other.gamma)), self.k - other.k)

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.gamma), -self.k)

    def __rmul__(self, n: int) -> "Root":
        return Root(tuple(n * a for a in self.gamma), n * self.k)

    def is_zero(self) -> bool:
        return self.k == 0 and not any(self.gamma)

    def multiplicity(self, cd: CartanData) -> int:
        cls = classify_root(cd, self)
        return {RootClass.REAL: 1, RootClass.IMAGINARY: cd.rank, RootClass.NOT_ROOT: 0}[cls]

    def is_positive(self, cd: CartanData) -> bool:
        """True iff this is a positive root."""
        cls = classify_root(cd, self)
        if cls is RootClass.NOT_ROOT:
            return False
        return self.k > 0 or (self.k == 0 and all(x >= 0 for x in self.gamma))

    def coroot_pairing(self, cd: CartanData, i: int) -> int:
        """``beta(alpha_i^vee)``."""
        c = self.simple_coords(cd)
        return sum(c[j] * cd.A[i][j] for j in cd.indices)

    def norm(self, cd: CartanData) -> Fraction:
        """``(beta|beta)``; delta is isotropic and orthogonal to the finite part."""
        return cd.finite_form(self.gamma, self.gamma)

    def to_str(self) -> str:
        parts = []
        for i, c in enumerate(self.gamma, start=1):
            if c:
                parts.append(_term(c, f"a{i}"))
        if self.k:
            parts.append(_term(self.k, "d"))
        if not parts:
            return "0"
        s = "".join(p if p.startswith("-") else "+" + p for p in parts)
        return s[1:] if s.startswith("+") else s

    def __str__(self) -> str:
        return self.to_str()


def _term(c: int, sym: str) -> str:
    if c == 1:
        return sym
    if c == -1:
        return "-" + sym
    return f"{c}*{sym}"


def _as_root(cd: CartanData, v) -> Root:
    if isinstance(v, Root):
        return v
    v = tuple(v)
    if len(v) != cd.rank + 1:
        raise ValueError(f"expected {cd.rank + 1} coordinates (alpha_1..alpha_l; delta)")
    return Root(v[:-1], v[-1])


def classify_root(cd: CartanData, v) -> RootClass:
    """Classify ``v`` given as a Root or as ``(gamma_1..gamma_l, k)``."""
    r = _as_root(cd, v)
    if not any(r.gamma):
        return RootClass.IMAGINARY if r.k != 0 else RootClass.NOT_ROOT
    return RootClass.REAL if r.gamma in cd.finite_roots else RootClass.NOT_ROOT


def _root_or_zero(cd: CartanData, r: Root) -> bool:
    return r.is_zero() or classify_root(cd, r) is not RootClass.NOT_ROOT


def _require_positive(cd: CartanData, beta: Root) -> None:
    if not beta.is_positive(cd):
        raise RootError(f"{beta} is not a positive root of {cd.label}")


def f_set(cd: CartanData, beta: Root) -> IndexSet:
    """Indices ``i`` for which ``beta - alpha_i`` is neither a root nor zero."""
    _require_positive(cd, beta)
    return frozenset(
        i for i in cd.indices if not _root_or_zero(cd, beta - Root.simple(cd, i))
    )


def rho_beta(cd: CartanData, beta: Root) -> "Weight":
    """Sum of the fundamental weights indexed by the complement of ``f_set``."""
    from .weights import Weight

    fs = f_set(cd, beta)
    return Weight.from_pairings(cd, [0 if i in fs else 1 for i in cd.indices])


def positive_real_roots(cd: CartanData, max_k: int) -> Iterator[Root]:
    """Positive real roots ``gamma + k*delta`` with ``0 <= k <= max_k``."""
    for k in range(max_k + 1):
        for gamma in cd.positive_roots:
            if k > 0:
                yield Root(tuple(-x for x in gamma), k)
            yield Root(gamma, k)


def exceptional_roots(cd: CartanData) -> list[tuple[tuple[int, ...], int]]:
    """Pairs ``(gamma, j)`` such that ``delta - gamma - 2 alpha_j`` is a positive root.

    ``gamma`` runs over the positive finite roots and ``j`` over ``1..l``.
    Output is sorted by the height of ``gamma`` and then lexicographically.
    """
    out = []
    for gamma in cd.positive_roots:
        beta = Root(tuple(-x for x in gamma), 1)
        for j in range(1, cd.rank + 1):
            if (beta - 2 * Root.simple(cd, j)).is_positive(cd):
                out.append((gamma, j))
    return out


def lemma_root_scan(cd: CartanData, k_max: int) -> list[dict]:
    """Search for counterexamples to the double-descent uniqueness property.

    For every positive real ``beta`` up to ``k_max`` and every ``i`` with
    ``beta - 2 alpha_i`` a root, report each ``j != i`` such that
    ``beta - 2 alpha_j`` or ``beta - 2 alpha_j - alpha_i`` is a root or zero.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    simple = [Root.simple(cd, i) for i in cd.indices]
    violations = []
    for beta in positive_real_roots(cd, k_max):
        for i in cd.indices:
            if classify_root(cd, beta - 2 * simple[i]) is RootClass.NOT_ROOT:
                continue
            for j in cd.indices:
                if j == i:
                    continue
                for probe in (beta - 2 * simple[j], beta - 2 * simple[j] - simple[i]):
                    if _root_or_zero(cd, probe):
                        violations.append({"beta": str(beta), "i": i, "j": j, "hit": str(probe)})
    return violations


_ROOT_TOKEN = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(a(\d+)|d)")


def parse_root(cd: CartanData, text: str) -> Root:
    """Parse a literal such as ``"a0+3*a1+a2"`` or ``"d-a1-a2"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty root literal")
    pos = 0
    total = Root((0,) * cd.rank, 0)
    for m in _ROOT_TOKEN.finditer(s):
        if m.start() != pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"malformed root literal {text!r}")
        pos = m.end()
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            coef = -coef
        if m.group(3) == "d":
            total = total + coef * Root.delta(cd)
        else:
            i = int(m.group(4))
            if not 0 <= i <= cd.rank:
                raise ValueError(f"simple root index {i} out of range for {cd.label}")
            total = total + coef * Root.simple(cd, i)
    if pos != len(s):
        raise ValueError(f"malformed root literal {text!r}")
    return total
