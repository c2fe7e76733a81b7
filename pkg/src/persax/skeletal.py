"""A second, independent construction of interval homology through skeleta.

Chain groups in degree q are the interval homology of the pair formed by the
q-skeleton and the (q-1)-skeleton, each merged with the subset; they come
with one generator per surviving q-simplex.  The boundary operator is the
composite of the connecting map with the quotient onto the next chain group.
Homology of this chain complex must agree with the direct construction, and
the agreement is witnessed by an explicit invertible matrix built from the
inclusion maps, not just by dimension counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .filtration import (
    Interval,
    RelativeFilteredPair,
    Simplex,
    UnknownVertex,
    absolute,
    closed_star,
    inclusion,
    simplex,
    skeleton,
    standard_boundary,
    standard_simplex,
    union,
    validate_map,
)
from .homology import (
    HomologyGroup,
    LinearMap,
    connecting,
    homology,
    induced_map,
)
from .linalg import GF2, Matrix, Subspace, hstack, image, kernel


class OracleMismatch(RuntimeError):
    """The two homology constructions disagree; something is broken."""


@lru_cache(maxsize=None)
def skeletal_pair(pair: RelativeFilteredPair, q: int) -> RelativeFilteredPair:
    """The pair (q-skeleton merged with subset, (q-1)-skeleton merged with subset)."""
    total = union(skeleton(pair.total, max(q, -1)), pair.sub)
    sub = union(skeleton(pair.total, max(q - 1, -1)), pair.sub)
    return RelativeFilteredPair(total, sub)


@dataclass(frozen=True)
class SkeletalChainGroup:
    """Degree-q chains with one generator per surviving q-simplex.

    A q-simplex generates when it is present by the lower endpoint and the
    subset has not absorbed it by the upper endpoint.  The underlying group
    is computed by the direct construction on the skeleton pair, and its
    canonical representatives must be exactly the generator unit vectors.
    """

    pair: RelativeFilteredPair
    degree: int
    interval: Interval
    field: object
    generators: tuple[Simplex, ...]
    group: HomologyGroup

    @property
    def dim(self) -> int:
        return len(self.generators)

    def index(self, sigma: Simplex) -> int | None:
        try:
            return self.generators.index(sigma)
        except ValueError:
            return None


@lru_cache(maxsize=None)
def skeletal_chain_group(pair: RelativeFilteredPair, q: int, interval: Interval,
                         field=GF2) -> SkeletalChainGroup:
    if q < 0 or q > len(pair.total.vertices):
        group = homology(pair, -1, interval, field)
        return SkeletalChainGroup(pair, q, interval, field, (), group)
    generators = tuple(
        sk
        for sk, val in pair.total.entries
        if len(sk) == q + 1 and val <= interval.lo and pair.sub.value(sk) > interval.hi
    )
    group = homology(skeletal_pair(pair, q), q, interval, field)
    expected = Matrix.from_columns(
        field,
        [
            tuple(field.one if bsk == gen else field.zero for bsk in group.space.basis)
            for gen in generators
        ],
        group.space.dim,
    )
    if group.reps != expected:
        raise OracleMismatch("chain group representatives are not the generator simplices")
    return SkeletalChainGroup(pair, q, interval, field, generators, group)


def generator(g, vertices: Sequence[str], pair: RelativeFilteredPair, interval: Interval,
              field=GF2) -> tuple:
    """The chain generated by a vertex sequence, in generator coordinates.

    Pushes the canonical class of an abstract ordered simplex through the map
    sending its i-th vertex to the i-th sequence entry.  Repeated vertices,
    unsupported images, and absorbed images all give zero.
    """
    for v in vertices:
        if v not in pair.total.vertices:
            raise UnknownVertex(f"{v!r} is not a vertex")
    q = len(vertices) - 1
    chains = skeletal_chain_group(pair, q, interval, field)
    alpha = pair.total.value(set(vertices))
    if not alpha.is_finite:
        return (field.zero,) * chains.dim
    model = standard_simplex(q, alpha)
    model_pair = RelativeFilteredPair(model, standard_boundary(q, alpha))
    ordered = tuple(sorted(model.vertices))
    f = validate_map(
        dict(zip(ordered, vertices)), model_pair, skeletal_pair(pair, q)
    )
    pushed = induced_map(f, q, interval, field)
    source = pushed.source
    if source.dim == 0:
        return (field.zero,) * chains.dim
    return pushed.matrix.apply((field.coerce(g),))


@lru_cache(maxsize=None)
def skeletal_boundary(pair: RelativeFilteredPair, q: int, interval: Interval,
                      field=GF2) -> Matrix:
    """Boundary matrix between chain groups, over generator coordinates.

    Built from the connecting map of the skeleton pair followed by the
    quotient onto the next skeleton pair, never from a face formula; the
    face formula is a theorem about this matrix, not its definition.
    """
    source = skeletal_chain_group(pair, q, interval, field)
    target = skeletal_chain_group(pair, q - 1, interval, field)
    if q < 1 or source.dim == 0:
        return Matrix.zero(field, target.dim, source.dim)
    alpha = connecting(skeletal_pair(pair, q), q, interval, field)
    lower_total = skeletal_pair(pair, q).sub
    quot = inclusion(absolute(lower_total), skeletal_pair(pair, q - 1))
    jmat = induced_map(quot, q - 1, interval, field)
    return jmat.matrix * alpha.matrix


@dataclass(frozen=True)
class SkeletalHomology:
    """Homology of the skeletal chain complex in one degree."""

    pair: RelativeFilteredPair
    degree: int
    interval: Interval
    field: object
    chain_group: SkeletalChainGroup
    cycles: Subspace
    boundaries: Subspace
    reps: Matrix  # generator-coordinate columns spanning the homology

    @property
    def dim(self) -> int:
        return self.reps.ncols

    def coords_of(self, chain_vector) -> tuple:
        sol = hstack(self.reps, self.boundaries.basis).solve(tuple(chain_vector))
        if sol is None:
            raise OracleMismatch("vector's class lies outside the skeletal homology")
        return tuple(sol[: self.dim])


@lru_cache(maxsize=None)
def skeletal_homology(pair: RelativeFilteredPair, q: int, interval: Interval,
                      field=GF2) -> SkeletalHomology:
    """Kernel of the boundary modulo its image, over generator coordinates."""
    chains = skeletal_chain_group(pair, q, interval, field)
    if q < 0:
        empty = Subspace.zero(field, 0)
        return SkeletalHomology(pair, q, interval, field, chains, empty, empty,
                                Matrix.zero(field, 0, 0))
    cycles = kernel(skeletal_boundary(pair, q, interval, field))
    bounds = image(skeletal_boundary(pair, q + 1, interval, field))
    if not cycles.contains_subspace(bounds):
        raise OracleMismatch("boundary image is not made of cycles")
    reps = cycles.complement_in(bounds)
    return SkeletalHomology(pair, q, interval, field, chains, cycles, bounds, reps)


def direct_to_skeletal(pair: RelativeFilteredPair, q: int, interval: Interval,
                       field=GF2) -> LinearMap:
    """The explicit isomorphism from the direct groups to the skeletal ones.

    Each direct class is lifted through the (surjective) inclusion of the
    q-skeleton pair, pushed into the chain group, where it must be a cycle,
    and read off in skeletal homology coordinates.  Any failure along the
    way, or a non-invertible result, is a broken oracle.
    """
    direct = homology(pair, q, interval, field)
    skel = skeletal_homology(pair, q, interval, field)
    if q < 0:
        return LinearMap(direct, skel, Matrix.zero(field, 0, 0), "iso")
    mid = RelativeFilteredPair(skeletal_pair(pair, q).total, pair.sub)
    to_direct = induced_map(inclusion(mid, pair), q, interval, field)
    to_chains = induced_map(inclusion(mid, skeletal_pair(pair, q)), q, interval, field)
    cols = []
    for j in range(direct.dim):
        unit = tuple(field.one if k == j else field.zero for k in range(direct.dim))
        lift = to_direct.matrix.solve(unit)
        if lift is None:
            raise OracleMismatch("skeleton inclusion fails to reach a direct class")
        z = to_chains.matrix.apply(lift)
        if not skel.cycles.contains(z):
            raise OracleMismatch("lifted class is not a skeletal cycle")
        cols.append(skel.coords_of(z))
    matrix = Matrix.from_columns(field, cols, skel.dim)
    if direct.dim != skel.dim or not matrix.is_invertible():
        raise OracleMismatch(
            f"direct/skeletal comparison failed in degree {q}: "
            f"{direct.dim} vs {skel.dim}"
        )
    return LinearMap(direct, skel, matrix, "iso")


def incidence_iso(q: int, alpha, interval: Interval, field=GF2,
                  vertices: Sequence[str] | None = None) -> LinearMap:
    """The canonical degree-lowering isomorphism between simplex pairs.

    Goes from the relative group of the solid q-simplex modulo its boundary
    to that of its last-q-vertices face, through the boundary sphere modulo
    the closed star of the first vertex.
    """
    if q < 1:
        raise ValueError("the incidence isomorphism needs degree >= 1")
    solid = standard_simplex(q, alpha, vertices)
    verts = tuple(sorted(solid.vertices))
    sphere = standard_boundary(q, alpha, verts)
    star = closed_star(q, alpha, verts[0], verts)
    face_verts = verts[1:]
    face = standard_simplex(q - 1, alpha, face_verts)
    face_sphere = standard_boundary(q - 1, alpha, face_verts)

    src = RelativeFilteredPair(solid, sphere)
    mid = RelativeFilteredPair(sphere, star)
    dst = RelativeFilteredPair(face, face_sphere)

    bnd = connecting(src, q, interval, field)
    into_mid = induced_map(inclusion(absolute(sphere), mid), q - 1, interval, field)
    from_face = induced_map(inclusion(dst, mid), q - 1, interval, field)
    matrix = from_face.matrix.inverse() * into_mid.matrix * bnd.matrix
    return LinearMap(bnd.source, from_face.source, matrix, "incidence")
