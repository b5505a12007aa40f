"""The weight domain for n hyperplanes in P^d.

A weight vector assigns each hyperplane a rational (or infinitesimal-aware)
weight in (0, 1].  The domain is cut into chambers by the walls x_I = k;
this module provides the two canonical weight vectors of interest (the
toric one with d+1 heavy entries, and its positive perturbation), exact
wall incidence and segment-crossing computations, and the chamber
predicates, all over Q(e).

Two wall ranges appear on purpose.  The chamber decomposition itself uses
walls with 2 <= |I| <= n-2 and 1 <= k <= d (`chamber_walls`); incidence
reports (`walls_containing`, `segment_walls`) scan every integer level
1 <= k <= |I| for subsets 2 <= |I| <= n-1, because the canonical weight
vectors sit exactly on integer levels just outside the strict range and
those incidences are the ones the closed-form statements describe.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .epsfield import EPS, EpsRat, EpsRatLike
from .errors import BadParameters, DimensionMismatch, SizeGuard

#: Subset enumeration refuses to run past this many coordinates.
MAX_WALL_COORDS = 20


@dataclass(frozen=True)
class Wall:
    """The hyperplane sum_{i in I} x_i = k in the weight domain."""

    I: frozenset[int]
    k: int

    def __post_init__(self):
        if len(self.I) < 2:
            raise BadParameters("wall index set needs at least two elements")
        if self.k < 1:
            raise BadParameters("wall level must be a positive integer")
        if any((not isinstance(i, int)) or i < 1 for i in self.I):
            raise BadParameters("wall indices are 1-based positive integers")

    def sort_key(self):
        return (self.k, tuple(sorted(self.I)))

    def __repr__(self) -> str:
        return "Wall({%s} = %d)" % (",".join(map(str, sorted(self.I))), self.k)


class WeightVector:
    """d, n and n weight entries in Q(e), each in (0, 1]."""

    __slots__ = ("d", "n", "entries")

    def __init__(self, d: int, n: int, entries: Iterable[EpsRatLike]):
        if d < 1 or n < d + 3:
            raise BadParameters("need d >= 1 and n >= d + 3, got d=%s n=%s" % (d, n))
        vals = tuple(EpsRat.coerce(x) for x in entries)
        if len(vals) != n:
            raise DimensionMismatch("expected %d entries, got %d" % (n, len(vals)))
        for i, x in enumerate(vals):
            if x.sign() <= 0 or (x - 1).sign() > 0:
                raise BadParameters("entry %d = %s is outside (0, 1]" % (i + 1, x))
        self.d = d
        self.n = n
        self.entries = vals

    def total(self) -> EpsRat:
        acc = self.entries[0]
        for x in self.entries[1:]:
            acc = acc + x
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WeightVector):
            return (self.d, self.n, self.entries) == (other.d, other.n, other.entries)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.d, self.n, self.entries))

    def __repr__(self) -> str:
        return "WeightVector(d=%d, n=%d, [%s])" % (
            self.d,
            self.n,
            ", ".join(str(x) for x in self.entries),
        )


@dataclass(frozen=True)
class SignVector:
    """Per-wall signs over the canonical chamber wall list for (d, n)."""

    d: int
    n: int
    signs: tuple[int, ...]

    @property
    def on_wall(self) -> bool:
        return 0 in self.signs


@dataclass(frozen=True)
class Crossing:
    """A transversal wall crossing on an open segment of weight vectors."""

    wall: Wall
    u0: EpsRat
    point: WeightVector


def t_weights(d: int, n: int, eps: EpsRatLike = EPS) -> WeightVector:
    """The weight vector (1, ..., 1, eps, ..., eps) with d+1 heavy entries."""
    eps = EpsRat.coerce(eps)
    if eps.sign() <= 0:
        raise BadParameters("eps must be positive")
    return WeightVector(d, n, (1,) * (d + 1) + (eps,) * (n - d - 1))


def nt_weights(d: int, n: int, eps: EpsRatLike = EPS) -> WeightVector:
    """The perturbed weight vector (1-eps, ..., 1-eps, (1+eps)/(n-d-1), ...).

    Its entry total exceeds d+1, so it defines a nonempty stability condition.
    """
    eps = EpsRat.coerce(eps)
    if eps.sign() <= 0:
        raise BadParameters("eps must be positive")
    light = (1 + eps) / (n - d - 1)
    wv = WeightVector(d, n, (1 - eps,) * (d + 1) + (light,) * (n - d - 1))
    if (wv.total() - (d + 1)).sign() <= 0:
        raise BadParameters("entry total must exceed d + 1; eps is too large")
    return wv


def wall_value(wall: Wall, b: WeightVector) -> EpsRat:
    """sum_{i in I} b_i - k, the signed distance function of the wall."""
    if any(i > b.n for i in wall.I):
        raise DimensionMismatch("wall indices exceed n = %d" % b.n)
    acc = EpsRat.from_rat(-wall.k)
    for i in wall.I:
        acc = acc + b.entries[i - 1]
    return acc


def _value_groups(*vectors: WeightVector) -> list[tuple[tuple[EpsRat, ...], list[int]]]:
    """Group coordinate indices by their tuple of entry values.

    Subset sums only depend on how many indices are taken from each group, so
    enumeration can run over multiplicity vectors instead of raw subsets.
    """
    groups: dict[tuple[EpsRat, ...], list[int]] = {}
    n = vectors[0].n
    for i in range(1, n + 1):
        key = tuple(v.entries[i - 1] for v in vectors)
        groups.setdefault(key, []).append(i)
    return list(groups.items())


def _expand_subsets(groups, multiplicities) -> Iterator[frozenset[int]]:
    pools = [
        combinations(indices, m)
        for (_, indices), m in zip(groups, multiplicities)
        if m > 0
    ]
    for pick in product(*pools):
        yield frozenset(i for chunk in pick for i in chunk)


def _integer_level(value: EpsRat) -> int | None:
    """The integer k with value == k, if there is one."""
    if not value.is_constant():
        return None
    c = value.constant_value()
    if c.denominator != 1:
        return None
    return int(c)


def walls_containing(b: WeightVector) -> list[Wall]:
    """All integer-level walls through b, for subsets 2 <= |I| <= n-1.

    Exhaustive over the value-multiset compression of b; guarded at n <= 20.
    """
    if b.n > MAX_WALL_COORDS:
        raise SizeGuard("wall enumeration capped at n <= %d" % MAX_WALL_COORDS)
    groups = _value_groups(b)
    counts = [len(indices) for _, indices in groups]
    found = []
    for mult in product(*(range(c + 1) for c in counts)):
        size = sum(mult)
        if not 2 <= size <= b.n - 1:
            continue
        value = EpsRat.from_rat(0)
        for (vals, _), m in zip(groups, mult):
            if m:
                value = value + vals[0] * m
        k = _integer_level(value)
        if k is None or k < 1:
            continue
        for subset in _expand_subsets(groups, mult):
            found.append(Wall(subset, k))
    found.sort(key=Wall.sort_key)
    return found


def segment_walls(b: WeightVector, b2: WeightVector) -> list[Crossing]:
    """Every wall crossed transversally by the open segment from b to b2.

    Each crossing reports the exact parameter u0 in (0, 1) and the crossing
    point (1-u0)*b + u0*b2; results are sorted by u0, ties broken by the
    canonical wall order.  Walls containing the whole segment are not
    crossings and are skipped.
    """
    if (b.d, b.n) != (b2.d, b2.n):
        raise DimensionMismatch("weight vectors live in different domains")
    if b == b2:
        raise BadParameters("segment endpoints coincide")
    if b.n > MAX_WALL_COORDS:
        raise SizeGuard("wall enumeration capped at n <= %d" % MAX_WALL_COORDS)
    groups = _value_groups(b, b2)
    counts = [len(indices) for _, indices in groups]
    crossings = []
    for mult in product(*(range(c + 1) for c in counts)):
        size = sum(mult)
        if not 2 <= size <= b.n - 1:
            continue
        start = EpsRat.from_rat(0)
        end = EpsRat.from_rat(0)
        for (vals, _), m in zip(groups, mult):
            if m:
                start = start + vals[0] * m
                end = end + vals[1] * m
        for k in range(1, size + 1):
            s0 = (start - k).sign()
            s1 = (end - k).sign()
            if s0 * s1 != -1:
                continue
            u0 = (k - start) / (end - start)
            point = WeightVector(
                b.d,
                b.n,
                tuple(
                    x * (1 - u0) + y * u0
                    for x, y in zip(b.entries, b2.entries)
                ),
            )
            for subset in _expand_subsets(groups, mult):
                crossings.append(Crossing(Wall(subset, k), u0, point))
    crossings.sort(key=lambda c: (c.u0, c.wall.sort_key()))
    return crossings


def _subsets_lex(n: int) -> Iterator[tuple[int, ...]]:
    """Nonempty subsets of {1..n} as sorted tuples, in lexicographic order."""
    stack = [(i,) for i in range(n, 0, -1)]
    while stack:
        cur = stack.pop()
        yield cur
        for i in range(n, cur[-1], -1):
            stack.append(cur + (i,))


def chamber_walls(d: int, n: int) -> Iterator[Wall]:
    """The canonical wall list of the chamber decomposition, in canonical
    order: level k ascending, index sets in lexicographic subset order."""
    for k in range(1, d + 1):
        for subset in _subsets_lex(n):
            if 2 <= len(subset) <= n - 2:
                yield Wall(frozenset(subset), k)


def sign_vector(b: WeightVector) -> SignVector:
    """Signs of b against every chamber wall; the chamber certificate."""
    if b.n > MAX_WALL_COORDS:
        raise SizeGuard("wall enumeration capped at n <= %d" % MAX_WALL_COORDS)
    return SignVector(
        b.d, b.n, tuple(wall_value(w, b).sign() for w in chamber_walls(b.d, b.n))
    )


def _check_same_domain(b: WeightVector, b2: WeightVector) -> None:
    if (b.d, b.n) != (b2.d, b2.n):
        raise DimensionMismatch("weight vectors live in different domains")
    if b.n > MAX_WALL_COORDS:
        raise SizeGuard("wall enumeration capped at n <= %d" % MAX_WALL_COORDS)


def same_chamber(b: WeightVector, b2: WeightVector) -> bool:
    """Whether b and b2 lie in one open chamber.

    Points on a wall belong to no chamber, so any zero sign makes this False.
    """
    _check_same_domain(b, b2)
    for w in chamber_walls(b.d, b.n):
        s0 = wall_value(w, b).sign()
        if s0 == 0 or s0 != wall_value(w, b2).sign():
            return False
    return True


def in_chamber_closure(b: WeightVector, b2: WeightVector) -> bool:
    """Whether b lies in the closure of the open chamber containing b2."""
    _check_same_domain(b, b2)
    for w in chamber_walls(b.d, b.n):
        s2 = wall_value(w, b2).sign()
        if s2 == 0:
            return False
        if wall_value(w, b).sign() not in (0, s2):
            return False
    return True


def leq(b: WeightVector, b2: WeightVector) -> bool:
    """Entrywise order in Q(e): b_i <= b2_i for every coordinate."""
    if (b.d, b.n) != (b2.d, b2.n):
        raise DimensionMismatch("weight vectors live in different domains")
    return all((x - y).sign() <= 0 for x, y in zip(b.entries, b2.entries))
