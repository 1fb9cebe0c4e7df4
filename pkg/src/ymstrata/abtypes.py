"""Atiyah-Bott types: enumeration, dominance order, the involution tau_0.

A type of rank n and degree k is stored as blocks (n_j, k_j) of strictly
decreasing slope k_j/n_j.  The n-tuple of slopes, used by the partial order,
is derived on demand.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import IncomparableInput, NegativeDimension, UnsupportedRank
from .index import codimension, nonorientable_summands


@dataclass(frozen=True)
class Surface:
    """A closed surface: orientable of genus ``index`` or the connected sum of
    ``index`` copies of RP^2."""

    orientable: bool
    index: int

    def __post_init__(self):
        if self.orientable and self.index < 0:
            raise ValueError("genus must be >= 0")
        if not self.orientable and self.index < 1:
            raise ValueError("a nonorientable surface needs at least one crosscap")

    @classmethod
    def of_genus(cls, g: int) -> "Surface":
        return cls(True, g)

    @classmethod
    def of_crosscaps(cls, m: int) -> "Surface":
        return cls(False, m)

    @classmethod
    def rp2(cls) -> "Surface":
        return cls(False, 1)

    @classmethod
    def klein(cls) -> "Surface":
        return cls(False, 2)

    @property
    def cover_genus(self) -> int:
        """Genus of the orientable double cover (the surface itself if orientable)."""
        return self.index if self.orientable else self.index - 1

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.index if self.orientable else 2 - self.index

    @property
    def ell_i(self) -> tuple:
        """(l, i) with m = 2l + i, i in {1, 2}."""
        if self.orientable:
            raise ValueError("(l, i) presentation is for nonorientable surfaces")
        i = 1 if self.index % 2 else 2
        return (self.index - i) // 2, i

    @property
    def is_klein_family(self) -> bool:
        return not self.orientable and self.euler_characteristic == 0

    def __str__(self) -> str:
        if self.orientable:
            return f"genus {self.index}"
        return {1: "RP^2", 2: "Klein bottle"}.get(self.index, f"{self.index} crosscaps")


@dataclass(frozen=True)
class Bundle:
    """Principal U(n) or SU(n) bundle.

    ``degree`` is the degree of a U(n) bundle on an orientable surface;
    ``parity`` (+1 or -1) is the mod 2 first Chern class of a U(n) bundle on a
    nonorientable surface.  SU(n) bundles are topologically trivial and carry
    neither.
    """

    group: str
    n: int
    degree: int = 0
    parity: int | None = None

    def __post_init__(self):
        if self.group not in ("U", "SU"):
            raise ValueError(f"unknown group {self.group!r}")
        if self.n < 1:
            raise ValueError("rank must be >= 1")
        if self.group == "SU" and (self.degree != 0 or self.parity is not None):
            raise ValueError("SU(n) bundles carry no degree or parity")
        if self.parity not in (None, 1, -1):
            raise ValueError("parity must be +1 or -1")

    @property
    def key(self) -> str:
        return f"{self.group}{self.n}"

    @property
    def effective_parity(self) -> int:
        return 1 if self.group == "SU" else (self.parity if self.parity is not None else 1)

    def __str__(self) -> str:
        s = f"{self.group}({self.n})"
        if self.parity is not None:
            s += "+" if self.parity == 1 else "-"
        return s


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ABType:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple((int(n), int(k)) for n, k in self.blocks)
        if not blocks:
            raise ValueError("a type needs at least one block")
        object.__setattr__(self, "blocks", blocks)
        for n, _ in blocks:
            if n < 1:
                raise ValueError("block ranks must be >= 1")
        slopes = self.slopes
        for a, b in zip(slopes, slopes[1:]):
            if not a > b:
                raise ValueError(f"slopes must strictly decrease, got {[_fmt(s) for s in slopes]}")

    @classmethod
    def semistable(cls, n: int, k: int = 0) -> "ABType":
        return cls(((n, k),))

    @classmethod
    def symmetric(cls, positive_blocks: Iterable, n0: int = 0) -> "ABType":
        pos = tuple(positive_blocks)
        if any(k <= 0 for _, k in pos):
            raise ValueError("positive blocks need k_j > 0")
        middle = ((n0, 0),) if n0 > 0 else ()
        neg = tuple((n, -k) for n, k in reversed(pos))
        return cls(pos + middle + neg)

    @classmethod
    def from_tuple(cls, values: Sequence) -> "ABType":
        """Group a weakly decreasing tuple of slopes into blocks."""
        qs = [Fraction(v) for v in values]
        blocks = []
        for slope, run in itertools.groupby(qs):
            size = len(list(run))
            deg = slope * size
            if deg.denominator != 1:
                raise ValueError(f"slope {slope} repeated {size} times has non-integral degree")
            blocks.append((size, int(deg)))
        return cls(tuple(blocks))

    @property
    def n(self) -> int:
        return sum(n for n, _ in self.blocks)

    @property
    def k(self) -> int:
        return sum(k for _, k in self.blocks)

    @property
    def slopes(self) -> tuple:
        return tuple(Fraction(k, n) for n, k in self.blocks)

    def as_tuple(self) -> tuple:
        return tuple(s for (n, _), s in zip(self.blocks, self.slopes) for _ in range(n))

    @property
    def is_semistable(self) -> bool:
        return len(self.blocks) == 1

    @property
    def is_symmetric(self) -> bool:
        return tau0(self) == self

    @property
    def positive_blocks(self) -> tuple:
        return tuple(b for b in self.blocks if b[1] > 0)

    @property
    def n0(self) -> int:
        return sum(n for n, k in self.blocks if k == 0)

    def __str__(self) -> str:
        return "(" + ",".join(_fmt(s) for s in self.as_tuple()) + ")"

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks], "n0": self.n0}

    @classmethod
    def from_json(cls, data: dict) -> "ABType":
        return cls(tuple(tuple(b) for b in data["blocks"]))


def tau0(mu: ABType) -> ABType:
    """(mu_1, ..., mu_n) -> (-mu_n, ..., -mu_1)."""
    return ABType(tuple((n, -k) for n, k in reversed(mu.blocks)))


def dominates(upper: Sequence, lower: Sequence) -> bool:
    """True iff every proper partial sum of ``upper`` is >= that of ``lower``."""
    if len(upper) != len(lower):
        raise IncomparableInput("tuples of different length")
    su = sl = 0
    for a, b in zip(upper[:-1], lower[:-1]):
        su += a
        sl += b
        if su < sl:
            return False
    return True


def po_leq(nu: ABType, mu: ABType) -> bool:
    """nu <= mu in the dominance order on I_{n,k}."""
    if nu.n != mu.n or nu.k != mu.k:
        raise IncomparableInput(f"{nu} and {mu} lie in different index sets")
    return dominates(mu.as_tuple(), nu.as_tuple())


def _lex_key(mu: ABType, surface: Surface):
    return mu.as_tuple()


def _codim_key(mu: ABType, surface: Surface):
    return codimension(mu, surface), mu.as_tuple()


ORDERINGS: dict = {"codim": _codim_key, "lex": _lex_key}


def refine_total_order(types: Iterable[ABType], surface: Surface,
                       ordering: str = "codim") -> list:
    """Linear extension of the dominance order.

    Among the currently minimal types the one with the smallest key goes next;
    ``"codim"`` keys by (codimension, tuple), ``"lex"`` by the tuple alone.
    When sorting by key alone already respects the partial order the result
    is just that sort.
    """
    key: Callable = ORDERINGS[ordering]
    items = list(dict.fromkeys(types))
    if not items:
        return []
    n, k = items[0].n, items[0].k
    if any(t.n != n or t.k != k for t in items):
        raise IncomparableInput("all types must share rank and degree")
    below = {t: [s for s in items if s != t and po_leq(s, t)] for t in items}
    waiting = {t: len(below[t]) for t in items}
    above = {t: [s for s in items if t in below[s]] for t in items}
    heap = [(key(t, surface), i, t) for i, t in enumerate(items) if waiting[t] == 0]
    heapq.heapify(heap)
    index = {t: i for i, t in enumerate(items)}
    out = []
    while heap:
        _, _, t = heapq.heappop(heap)
        out.append(t)
        for s in above[t]:
            waiting[s] -= 1
            if waiting[s] == 0:
                heapq.heappush(heap, (key(s, surface), index[s], s))
    return out


def _compositions(n: int):
    """Ordered tuples of positive integers summing to n."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _orientable_types(n: int, k: int, bound: int, g: int):
    # sum_{i<j} n_i n_j (s_i - s_j) <= bound/2 - (g-1) sum_{i<j} n_i n_j, and
    # s_1 >= k/n >= s_m, so every slope lies within W of k/n
    mean = Fraction(k, n)
    for ranks in _compositions(n):
        if len(ranks) == 1:
            yield ABType.semistable(n, k)
            continue
        pairs = sum(a * b for a, b in itertools.combinations(ranks, 2))
        slack = Fraction(bound, 2) - (g - 1) * pairs
        if slack <= 0:
            continue
        width = slack / (ranks[0] * ranks[-1])

        def extend(prefix, remaining_k):
            j = len(prefix)
            nj = ranks[j]
            if j == len(ranks) - 1:
                cand = prefix + [(nj, remaining_k)]
                try:
                    yield ABType(tuple(cand))
                except ValueError:
                    return
                return
            lo = math.ceil(nj * (mean - width))
            hi = math.floor(nj * (mean + width))
            for kj in range(lo, hi + 1):
                if prefix and Fraction(kj, nj) >= Fraction(prefix[-1][1], prefix[-1][0]):
                    continue
                yield from extend(prefix + [(nj, kj)], remaining_k - kj)

        yield from extend([], k)


def _symmetric_types(n: int, bound: int, g: int):
    yield ABType.semistable(n, 0)
    for half in range(1, n // 2 + 1):
        n0 = n - 2 * half
        for ranks in _compositions(half):
            r = len(ranks)
            # lambda is affine in (k_1..k_r) with positive coefficients; k_j >= 1
            def lam(ks):
                c, re = nonorientable_summands(list(zip(ranks, ks)), n0, g)
                return 2 * sum(v for _, v in c) + sum(v for _, v in re)
            base = lam([0] * r)
            coef = [lam([1 if i == j else 0 for i in range(r)]) - base for j in range(r)]
            floor_all = base + sum(coef)
            tops = [max(0, (bound - floor_all) // coef[j] + 1) for j in range(r)]
            for ks in itertools.product(*(range(1, t + 1) for t in tops)):
                try:
                    yield ABType.symmetric(tuple(zip(ranks, ks)), n0)
                except ValueError:
                    continue


def enumerate_types(n: int, k: int, codim_bound: int, surface: Surface,
                    ordering: str = "codim") -> list:
    """Types of rank n, degree k whose real codimension on ``surface`` is at
    most ``codim_bound``, semistable type first.

    On a nonorientable surface the strata are labelled by tau_0-fixed types,
    so k must be 0.  Types whose Riemann-Roch count comes out negative label
    empty strata and are skipped.
    """
    if n < 1 or codim_bound < 0:
        raise ValueError("need n >= 1 and codim_bound >= 0")
    if surface.orientable:
        candidates = _orientable_types(n, k, codim_bound, surface.cover_genus)
    else:
        if k != 0:
            raise ValueError("nonorientable strata are indexed by degree-0 symmetric types")
        candidates = _symmetric_types(n, codim_bound, surface.cover_genus)
    kept = []
    for mu in candidates:
        try:
            c = codimension(mu, surface)
        except NegativeDimension:
            continue
        if c <= codim_bound:
            kept.append(mu)
    return refine_total_order(kept, surface, ordering)


def _parity_of(mu: ABType, surface: Surface) -> int:
    """(-1)^(n' chi + k) for mu = (nu, tau_0(nu)) with nu of rank n' and degree k."""
    half = sum(n for n, _ in mu.positive_blocks)
    k = sum(k for _, k in mu.positive_blocks)
    return -1 if (half * surface.euler_characteristic + k) % 2 else 1


def _check_supported(bundle: Bundle, surface: Surface, allow_klein_high_rank: bool):
    if surface.orientable:
        raise ValueError("symmetric strata live on nonorientable surfaces")
    if surface.is_klein_family and bundle.n >= 4 and not allow_klein_high_rank:
        raise UnsupportedRank("Klein bottle strata are only supported for n <= 3")


def symmetric_strata(bundle: Bundle, surface: Surface, codim_bound: int,
                     allow_klein_high_rank: bool = False, ordering: str = "codim") -> list:
    """Lambda = {semistable} plus the strata of ``bundle`` with codimension
    <= ``codim_bound``.

    Types with a zero slope meet both U(n) bundles; the others are kept when
    their parity (-1)^(n' chi + k) matches the bundle (always + for SU(n)).
    """
    _check_supported(bundle, surface, allow_klein_high_rank)
    target = bundle.effective_parity
    out = []
    for mu in enumerate_types(bundle.n, 0, codim_bound, surface, ordering):
        if mu.is_semistable or mu.n0 > 0 or _parity_of(mu, surface) == target:
            out.append(mu)
    return out


@dataclass(frozen=True)
class StratumFamily:
    """One-parameter family r -> type, r >= 1 with r = a (mod m)."""

    name: str
    positive_rank: int
    n0: int
    residue: tuple

    def member(self, r: int) -> ABType:
        return ABType.symmetric(((self.positive_rank, r),), self.n0)

    def members(self, r_max: int) -> list:
        a, m = self.residue
        return [self.member(r) for r in range(1, r_max + 1) if (r - a) % m == 0]


def symmetric_family(bundle: Bundle, surface: Surface) -> StratumFamily | None:
    """Lambda' for rank 2 and 3 as a single one-parameter family.

    Returns None for rank 1, where there are no unstable strata.
    """
    _check_supported(bundle, surface, False)
    if bundle.n == 1:
        return None
    if bundle.n == 2:
        # (r,-r) is kept iff (-1)^(chi + r) equals the bundle parity
        shift = 0 if bundle.effective_parity == 1 else 1
        return StratumFamily("(r,-r)", 1, 0, ((surface.euler_characteristic + shift) % 2, 2))
    if bundle.n == 3:
        return StratumFamily("(r,0,-r)", 1, 1, (0, 1))
    raise UnsupportedRank(f"no closed one-parameter family for rank {bundle.n}")
