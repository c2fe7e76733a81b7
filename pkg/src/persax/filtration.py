"""Filtered sets over finite vertex sets and the constructions built on them.

A filtration assigns to every simplex (a set of vertices) an exact rational
value, or the sentinel ``INF`` for "never present".  Sublevel sets are
simplicial complexes nested along the value axis; everything downstream is
computed from these complexes.  Values are ``fractions.Fraction``, so sublevel
membership is exact and never subject to rounding.

Storage is sparse: only finitely-valued simplices are kept, and the stored
support must be downward closed (every face of a stored simplex is stored)
and monotone (faces never carry larger values than their cofaces).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Mapping


class FiltrationError(ValueError):
    """Base class for invalid filtrations, pairs, and maps."""


class UnknownVertex(FiltrationError):
    pass


class MissingFace(FiltrationError):
    pass


class MonotonicityViolation(FiltrationError):
    pass


class NotFiltrationPreserving(FiltrationError):
    pass


class SubNotMappedIntoSub(FiltrationError):
    pass


@total_ordering
class FiltValue:
    """An exact filtration value: a rational number or the INF sentinel.

    ``INF`` compares strictly greater than every finite value.  A simplex at
    INF belongs to no sublevel complex; intervals never reach it.
    """

    __slots__ = ("finite",)

    def __init__(self, finite: Fraction | None):
        if finite is not None and not isinstance(finite, Fraction):
            raise TypeError("finite part must be a Fraction or None")
        object.__setattr__(self, "finite", finite)

    def __setattr__(self, name, value):
        raise AttributeError("FiltValue is immutable")

    @property
    def is_finite(self) -> bool:
        return self.finite is not None

    def __eq__(self, other):
        return isinstance(other, FiltValue) and self.finite == other.finite

    def __lt__(self, other):
        if not isinstance(other, FiltValue):
            return NotImplemented
        if self.finite is None:
            return False
        if other.finite is None:
            return True
        return self.finite < other.finite

    def __hash__(self):
        return hash(("FiltValue", self.finite))

    def __str__(self):
        return "inf" if self.finite is None else str(self.finite)

    def __repr__(self):
        return f"FiltValue({self})"


INF = FiltValue(None)


def fin(value) -> FiltValue:
    """Coerce an int, Fraction, string ('3', '1/2', 'inf'), or FiltValue."""
    if isinstance(value, FiltValue):
        return value
    if isinstance(value, str):
        if value.strip() == "inf":
            return INF
        return FiltValue(Fraction(value))
    if isinstance(value, (int, Fraction)):
        return FiltValue(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as a filtration value")


Simplex = tuple[str, ...]


def simplex(vertices: Iterable[str]) -> Simplex:
    """Canonical simplex key: sorted tuple of distinct vertex tokens."""
    vs = tuple(sorted(vertices))
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise ValueError(f"repeated vertex in simplex {vs}")
    return vs


def dim(sigma: Simplex) -> int:
    return len(sigma) - 1


def facets(sigma: Simplex) -> list[Simplex]:
    """Codimension-1 faces, in the order of the omitted position."""
    return [sigma[:i] + sigma[i + 1 :] for i in range(len(sigma))]


def faces(sigma: Simplex) -> list[Simplex]:
    """All nonempty proper faces."""
    out = []
    for k in range(1, len(sigma)):
        out.extend(itertools.combinations(sigma, k))
    return out


class FilteredSet:
    """A finite vertex set with a monotone, downward-closed sparse filtration.

    Absent simplices are implicitly at INF.  Instances are immutable and
    hashable; all operations on them are pure functions.
    """

    __slots__ = ("vertices", "entries", "_lookup", "_hash")

    def __init__(self, vertices: Iterable[str], values: Mapping):
        verts = frozenset(vertices)
        table: dict[Simplex, FiltValue] = {}
        for key, raw in values.items():
            sk = simplex(key)
            val = fin(raw)
            if not set(sk) <= verts:
                raise UnknownVertex(f"simplex {sk} uses vertices outside {sorted(verts)}")
            if sk in table and table[sk] != val:
                raise FiltrationError(f"conflicting values for simplex {sk}")
            if val.is_finite:
                table[sk] = val
        for sk, val in table.items():
            if len(sk) == 1:
                continue
            for fc in facets(sk):
                fval = table.get(fc)
                if fval is None:
                    raise MissingFace(f"face {fc} of {sk} is absent from the support")
                if fval > val:
                    raise MonotonicityViolation(f"face {fc} at {fval} exceeds {sk} at {val}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "entries", tuple(sorted(table.items())))
        object.__setattr__(self, "_lookup", dict(table))
        object.__setattr__(self, "_hash", hash((verts, self.entries)))

    def __setattr__(self, name, value):
        raise AttributeError("FilteredSet is immutable")

    def value(self, sigma) -> FiltValue:
        """Filtration value of a simplex; INF when unsupported."""
        return self._lookup.get(simplex(sigma), INF)

    @property
    def support(self) -> tuple[Simplex, ...]:
        return tuple(sk for sk, _ in self.entries)

    @property
    def dimension(self) -> int:
        """Largest simplex dimension in the support; -1 when empty."""
        return max((len(sk) - 1 for sk, _ in self.entries), default=-1)

    def __eq__(self, other):
        return (
            isinstance(other, FilteredSet)
            and self.vertices == other.vertices
            and self.entries == other.entries
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FilteredSet({len(self.vertices)} vertices, {len(self.entries)} simplices)"


def validate(raw: Mapping, vertices: Iterable[str]) -> FilteredSet:
    """Build a FilteredSet, rejecting non-monotone or non-closed input.

    Faces required by downward closure must be listed explicitly; they are
    never filled in silently.
    """
    return FilteredSet(vertices, raw)


EMPTY_SET = FilteredSet((), {})


class RelativeFilteredPair:
    """A filtered set together with a filtered subset whose values dominate.

    The subset's sublevel complexes are then subcomplexes of the total's.
    The empty subset gives the absolute case.
    """

    __slots__ = ("total", "sub", "_hash")

    def __init__(self, total: FilteredSet, sub: FilteredSet):
        if not sub.vertices <= total.vertices:
            raise UnknownVertex("subset vertices must lie in the total vertex set")
        for sk, val in sub.entries:
            if val < total.value(sk):
                raise FiltrationError(
                    f"subset value {val} for {sk} is below the total value {total.value(sk)}"
                )
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "_hash", hash((total, sub)))

    def __setattr__(self, name, value):
        raise AttributeError("RelativeFilteredPair is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, RelativeFilteredPair)
            and self.total == other.total
            and self.sub == other.sub
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RelativeFilteredPair({self.total!r}, {self.sub!r})"


def absolute(x: FilteredSet) -> RelativeFilteredPair:
    """Wrap a filtered set as a pair with empty subset."""
    return RelativeFilteredPair(x, EMPTY_SET)


def pair_of(total: FilteredSet, sub: FilteredSet | None = None) -> RelativeFilteredPair:
    return RelativeFilteredPair(total, EMPTY_SET if sub is None else sub)


class Interval:
    """A closed interval [lo, hi] of filtration values with finite hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = fin(lo), fin(hi)
        if not hi.is_finite:
            raise ValueError("interval upper endpoint must be finite")
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash(("Interval", self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


@lru_cache(maxsize=None)
def complex_at(x: FilteredSet, eps: FiltValue) -> frozenset[Simplex]:
    """Sublevel complex at eps: all supported simplices with value <= eps."""
    return frozenset(sk for sk, val in x.entries if val <= eps)


def union(x: FilteredSet, y: FilteredSet) -> FilteredSet:
    """Union of filtered sets: pointwise minimum of the two filtrations.

    A simplex carried by only one side keeps that side's value; simplices
    spanning both sides but contained in neither support stay at INF.
    """
    values: dict[Simplex, FiltValue] = {}
    for fs in (x, y):
        for sk, val in fs.entries:
            prev = values.get(sk)
            if prev is None or val < prev:
                values[sk] = val
    return FilteredSet(x.vertices | y.vertices, values)


def intersection(x: FilteredSet, y: FilteredSet) -> FilteredSet:
    """Intersection of filtered sets: pointwise maximum on common simplices."""
    values = {}
    xmap = dict(x.entries)
    for sk, val in y.entries:
        xval = xmap.get(sk)
        if xval is not None:
            values[sk] = max(val, xval)
    return FilteredSet(x.vertices & y.vertices, values)


def skeleton(x: FilteredSet, q: int) -> FilteredSet:
    """Keep simplices of dimension <= q; push higher ones to INF.

    q = -1 empties the support while keeping the vertex set.
    """
    if q < -1:
        raise ValueError("skeleton degree must be >= -1")
    values = {sk: val for sk, val in x.entries if len(sk) - 1 <= q}
    return FilteredSet(x.vertices, values)


def _default_vertices(count: int) -> tuple[str, ...]:
    width = len(str(count - 1)) if count > 1 else 1
    return tuple(f"v{i:0{width}d}" for i in range(count))


def standard_simplex(q: int, alpha, vertices: Iterable[str] | None = None) -> FilteredSet:
    """The solid q-simplex: every nonempty subset of q+1 vertices at alpha."""
    alpha = fin(alpha)
    if q < 0:
        raise ValueError("simplex dimension must be >= 0")
    if not alpha.is_finite:
        raise ValueError("the birth value must be finite")
    verts = _default_vertices(q + 1) if vertices is None else tuple(vertices)
    if len(verts) != q + 1:
        raise ValueError(f"need exactly {q + 1} vertices")
    values = {}
    for k in range(1, q + 2):
        for sub in itertools.combinations(sorted(verts), k):
            values[sub] = alpha
    return FilteredSet(verts, values)


def standard_boundary(q: int, alpha, vertices: Iterable[str] | None = None) -> FilteredSet:
    """The q-simplex boundary: the top cell at INF, every proper face at alpha."""
    solid = standard_simplex(q, alpha, vertices)
    top = simplex(solid.vertices)
    values = {sk: val for sk, val in solid.entries if sk != top}
    return FilteredSet(solid.vertices, values)


def closed_star(q: int, alpha, center: str, vertices: Iterable[str] | None = None) -> FilteredSet:
    """Closed star of one vertex inside the q-simplex boundary.

    The top cell and the single facet opposite ``center`` sit at INF; every
    other face of the q-simplex sits at alpha.
    """
    solid = standard_simplex(q, alpha, vertices)
    if center not in solid.vertices:
        raise UnknownVertex(f"{center!r} is not a vertex of the simplex")
    top = simplex(solid.vertices)
    opposite = simplex(v for v in solid.vertices if v != center)
    values = {sk: val for sk, val in solid.entries if sk not in (top, opposite)}
    return FilteredSet(solid.vertices, values)


def point(alpha, name: str = "p") -> FilteredSet:
    """A single vertex born at alpha."""
    return standard_simplex(0, alpha, (name,))


class PreservingMap:
    """A vertex map between pairs that never delays a simplex.

    Images of supported simplices (duplicates collapsed) must carry values at
    most those of their sources, in the total sets and in the subsets alike;
    subset vertices must land in the codomain subset.
    """

    __slots__ = ("domain", "codomain", "vertex_map", "_items", "_hash")

    def __init__(
        self,
        domain: RelativeFilteredPair,
        codomain: RelativeFilteredPair,
        vertex_map: Mapping[str, str],
    ):
        vm = dict(vertex_map)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "vertex_map", vm)
        object.__setattr__(self, "_items", tuple(sorted(vm.items())))
        object.__setattr__(self, "_hash", hash((domain, codomain, self._items)))

    def __setattr__(self, name, value):
        raise AttributeError("PreservingMap is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, PreservingMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self._items == other._items
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PreservingMap({len(self._items)} vertices)"

    def apply(self, sigma) -> Simplex:
        """Image simplex, with duplicate image vertices collapsed."""
        return simplex(set(self.vertex_map[v] for v in sigma))

    def restrict_to_sub(self) -> "PreservingMap":
        """The induced map between the subsets, as absolute pairs."""
        vm = {v: self.vertex_map[v] for v in self.domain.sub.vertices}
        return validate_map(vm, absolute(self.domain.sub), absolute(self.codomain.sub))

    def as_absolute(self) -> "PreservingMap":
        """The same vertex map between the total sets, subsets dropped."""
        return validate_map(self.vertex_map, absolute(self.domain.total), absolute(self.codomain.total))


def validate_map(
    vertex_map: Mapping[str, str],
    domain: RelativeFilteredPair,
    codomain: RelativeFilteredPair,
) -> PreservingMap:
    """Check a vertex map and package it as a PreservingMap."""
    vm = dict(vertex_map)
    for v in domain.total.vertices:
        if v not in vm:
            raise UnknownVertex(f"vertex {v!r} has no image")
        if vm[v] not in codomain.total.vertices:
            raise UnknownVertex(f"image {vm[v]!r} is not a codomain vertex")
    for v in domain.sub.vertices:
        if vm[v] not in codomain.sub.vertices:
            raise SubNotMappedIntoSub(f"subset vertex {v!r} maps outside the codomain subset")
    for sk, val in domain.total.entries:
        image = simplex(set(vm[v] for v in sk))
        if codomain.total.value(image) > val:
            raise NotFiltrationPreserving(f"simplex {sk} at {val} maps to {image} born later")
    for sk, val in domain.sub.entries:
        image = simplex(set(vm[v] for v in sk))
        if codomain.sub.value(image) > val:
            raise NotFiltrationPreserving(
                f"subset simplex {sk} at {val} maps to {image} born later in the codomain subset"
            )
    return PreservingMap(domain, codomain, vm)


def identity_map(pair: RelativeFilteredPair) -> PreservingMap:
    return validate_map({v: v for v in pair.total.vertices}, pair, pair)


def inclusion(domain: RelativeFilteredPair, codomain: RelativeFilteredPair) -> PreservingMap:
    """The identity vertex map viewed as a map of pairs."""
    return validate_map({v: v for v in domain.total.vertices}, domain, codomain)


def compose(f: PreservingMap, g: PreservingMap) -> PreservingMap:
    """The composite f after g."""
    if g.codomain != f.domain:
        raise ValueError("maps are not composable")
    vm = {v: f.vertex_map[w] for v, w in g.vertex_map.items()}
    return validate_map(vm, g.domain, f.codomain)


def critical_values(obj) -> tuple[FiltValue, ...]:
    """Sorted distinct finite values of the support; pairs pool both parts."""
    if isinstance(obj, RelativeFilteredPair):
        vals = {v for _, v in obj.total.entries} | {v for _, v in obj.sub.entries}
    else:
        vals = {v for _, v in obj.entries}
    return tuple(sorted(vals))


def critical_intervals(obj) -> tuple[Interval, ...]:
    """All intervals with both endpoints at critical values."""
    vals = critical_values(obj)
    return tuple(Interval(a, b) for i, a in enumerate(vals) for b in vals[i:])


def _probe_levels(obj, interval: Interval) -> list[FiltValue]:
    """Levels where interval-dependent predicates must be evaluated.

    Sublevel complexes are constant between critical values, so the endpoints
    plus the critical values inside the interval cover every level.
    """
    levels = {interval.lo, interval.hi}
    levels.update(c for c in critical_values(obj) if interval.lo <= c <= interval.hi)
    return sorted(levels)


def is_star_shaped(x: FilteredSet, a: str, interval: Interval) -> bool:
    """True when every sublevel complex in the interval is empty or coned at a.

    A complex is coned at ``a`` when every simplex extends to one containing
    ``a`` -- equivalently, adjoining ``a`` to any simplex stays in the complex.
    """
    if a not in x.vertices:
        raise UnknownVertex(f"{a!r} is not a vertex")
    for level in _probe_levels(x, interval):
        complex_ = complex_at(x, level)
        for sk in complex_:
            if simplex(set(sk) | {a}) not in complex_:
                return False
    return True


def _primed_names(vertices: frozenset[str]) -> dict[str, str]:
    suffix = "'"
    while any(v + suffix in vertices for v in vertices):
        suffix += "'"
    return {v: v + suffix for v in vertices}


def cylinder(x: FilteredSet, order: Iterable[str] | None = None):
    """Double a filtered set into a prism, with the two ends and the collapse.

    Vertices are duplicated into a primed copy.  For each supported simplex,
    written in the given vertex order, the construction supports every mixed
    copy whose primed part precedes its unprimed part (sharing at most the
    pivot vertex), at the value of the collapsed simplex.

    Returns ``(cyl, h0, h1, k)``: the prism, the two end inclusions, and the
    collapse, all as maps of absolute pairs.  ``k`` is a left inverse of both
    ends at the vertex level.
    """
    order = tuple(sorted(x.vertices)) if order is None else tuple(order)
    if set(order) != x.vertices or len(order) != len(x.vertices):
        raise UnknownVertex("the order must list every vertex exactly once")
    position = {v: i for i, v in enumerate(order)}
    prime = _primed_names(x.vertices)

    values: dict[Simplex, FiltValue] = {}
    for sk, val in x.entries:
        ordered = sorted(sk, key=position.get)
        m = len(ordered)
        # copies with no doubled vertex: primed prefix + unprimed suffix
        for i in range(m + 1):
            key = simplex([prime[v] for v in ordered[:i]] + ordered[i:])
            values[key] = val
        # prisms: the pivot vertex appears in both copies
        for i in range(1, m + 1):
            key = simplex([prime[v] for v in ordered[:i]] + ordered[i - 1 :])
            values[key] = val

    cyl = FilteredSet(x.vertices | set(prime.values()), values)
    x_abs = absolute(x)
    cyl_abs = absolute(cyl)
    h0 = validate_map({v: v for v in x.vertices}, x_abs, cyl_abs)
    h1 = validate_map({v: prime[v] for v in x.vertices}, x_abs, cyl_abs)
    back = {v: v for v in x.vertices}
    back.update({prime[v]: v for v in x.vertices})
    k = validate_map(back, cyl_abs, x_abs)
    return cyl, h0, h1, k
