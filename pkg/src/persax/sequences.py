"""Homology sequences of pairs, triples, and covers, and their exactness.

Sequences are concrete: nodes are computed groups, arrows are matrices, and
exactness at each interior node is decided by double inclusion of echelon
bases (image inside kernel and kernel inside image), never by dimension
counting alone.  Failed checks carry re-checkable witness vectors.

Also here: contiguity of maps, contiguous equivalence, homological
triviality, deformation retracts, proper covers, and direct-sum splittings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .filtration import (
    FilteredSet,
    Interval,
    PreservingMap,
    RelativeFilteredPair,
    absolute,
    complex_at,
    compose,
    critical_values,
    identity_map,
    inclusion,
    intersection,
    pair_of,
    simplex,
    union,
    validate_map,
)
from .homology import (
    DirectSumGroup,
    HomologyGroup,
    LinearMap,
    ClassNotInTarget,
    connecting,
    homology,
    induced_map,
    reduced_homology,
    zero_group,
)
from .linalg import GF2, Matrix, hstack, image, kernel, vstack


class NotProperTriad(ValueError):
    pass


class NotARetraction(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class ExactSequence:
    """A finite chain of groups and arrows, truncated with a zero cap."""

    nodes: tuple
    arrows: tuple[LinearMap, ...]
    labels: tuple[str, ...]
    description: str

    def __post_init__(self):
        if len(self.arrows) != len(self.nodes) - 1 or len(self.labels) != len(self.arrows):
            raise ValueError("nodes, arrows, and labels do not line up")
        for node, arrow in zip(self.nodes, self.arrows):
            if arrow.matrix.ncols != node.dim:
                raise ValueError("arrow source dimension mismatch")
        for node, arrow in zip(self.nodes[1:], self.arrows):
            if arrow.matrix.nrows != node.dim:
                raise ValueError("arrow target dimension mismatch")

    def dims(self) -> tuple[int, ...]:
        return tuple(node.dim for node in self.nodes)

    def with_arrow(self, index: int, arrow: LinearMap) -> "ExactSequence":
        """Replace one arrow; used to build corrupted negative controls."""
        arrows = list(self.arrows)
        arrows[index] = arrow
        return ExactSequence(self.nodes, tuple(arrows), self.labels, self.description + " (edited)")


@dataclass(frozen=True)
class NodeCheck:
    index: int
    image_dim: int
    kernel_dim: int
    ok: bool
    witness: tuple | None = None  # (kind, vector) on failure


@dataclass(frozen=True)
class ExactnessReport:
    description: str
    checks: tuple[NodeCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[NodeCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def check_exact(seq: ExactSequence) -> ExactnessReport:
    """Verify image = kernel at every interior node, with witnesses."""
    checks = []
    for i in range(1, len(seq.nodes) - 1):
        incoming = seq.arrows[i - 1]
        outgoing = seq.arrows[i]
        im = image(incoming.matrix)
        ker = kernel(outgoing.matrix)
        witness = None
        ok = True
        if not ker.contains_subspace(im):
            composite = outgoing.matrix * incoming.matrix
            bad = next(j for j in range(composite.ncols) if any(a != composite.field.zero for a in composite.column(j)))
            unit = tuple(
                composite.field.one if k == bad else composite.field.zero
                for k in range(incoming.matrix.ncols)
            )
            witness = ("image_not_in_kernel", unit)
            ok = False
        elif not im.contains_subspace(ker):
            bad_vec = next(
                ker.basis.column(j) for j in range(ker.dim) if not im.contains(ker.basis.column(j))
            )
            witness = ("kernel_not_in_image", bad_vec)
            ok = False
        checks.append(NodeCheck(i, im.dim, ker.dim, ok, witness))
    return ExactnessReport(seq.description, tuple(checks))


def _default_degree(pair: RelativeFilteredPair) -> int:
    return max(pair.total.dimension + 1, 0)


def _zero_cap(last_group, interval: Interval, field) -> tuple:
    zero = zero_group(field, interval)
    arrow = LinearMap(last_group, zero, Matrix.zero(field, 0, last_group.dim), "0")
    return zero, arrow


def les_pair(pair: RelativeFilteredPair, interval: Interval, n_max: int | None = None, field=GF2) -> ExactSequence:
    """The long homology sequence of a pair, from n_max down to the zero cap."""
    if n_max is None:
        n_max = _default_degree(pair)
    a_abs = absolute(pair.sub)
    x_abs = absolute(pair.total)
    inc_i = inclusion(a_abs, x_abs)
    inc_j = inclusion(x_abs, pair)
    nodes, arrows, labels = [], [], []
    for n in range(n_max, -1, -1):
        nodes += [
            homology(a_abs, n, interval, field),
            homology(x_abs, n, interval, field),
            homology(pair, n, interval, field),
        ]
        arrows += [induced_map(inc_i, n, interval, field), induced_map(inc_j, n, interval, field)]
        labels += [f"i_{n}", f"j_{n}"]
        if n > 0:
            arrows.append(connecting(pair, n, interval, field))
            labels.append(f"d_{n}")
    zero, cap = _zero_cap(nodes[-1], interval, field)
    nodes.append(zero)
    arrows.append(cap)
    labels.append("0")
    return ExactSequence(tuple(nodes), tuple(arrows), tuple(labels),
                         f"pair sequence over {interval}")


def _require_filtered_subset(sub: FilteredSet, ambient: FilteredSet, what: str):
    if not sub.vertices <= ambient.vertices:
        raise ValueError(f"{what}: vertices escape the ambient set")
    for sk, val in sub.entries:
        if val < ambient.value(sk):
            raise ValueError(f"{what}: value for {sk} drops below the ambient value")


def les_triple(x: FilteredSet, a: FilteredSet, b: FilteredSet, interval: Interval,
               n_max: int | None = None, field=GF2) -> ExactSequence:
    """The homology sequence of nested filtered sets x >= a >= b."""
    _require_filtered_subset(a, x, "middle set")
    _require_filtered_subset(b, a, "inner set")
    xa = pair_of(x, a)
    xb = pair_of(x, b)
    ab = pair_of(a, b)
    if n_max is None:
        n_max = _default_degree(xa)
    inc_i = inclusion(ab, xb)
    inc_j = inclusion(xb, xa)
    inc_quot = inclusion(absolute(a), ab)
    nodes, arrows, labels = [], [], []
    for n in range(n_max, -1, -1):
        nodes += [
            homology(ab, n, interval, field),
            homology(xb, n, interval, field),
            homology(xa, n, interval, field),
        ]
        arrows += [induced_map(inc_i, n, interval, field), induced_map(inc_j, n, interval, field)]
        labels += [f"i_{n}", f"j_{n}"]
        if n > 0:
            bnd = induced_map(inc_quot, n - 1, interval, field).compose(
                connecting(xa, n, interval, field)
            )
            arrows.append(bnd)
            labels.append(f"d_{n}")
    zero, cap = _zero_cap(nodes[-1], interval, field)
    nodes.append(zero)
    arrows.append(cap)
    labels.append("0")
    return ExactSequence(tuple(nodes), tuple(arrows), tuple(labels),
                         f"triple sequence over {interval}")


def is_proper_triad(x: FilteredSet, x1: FilteredSet, x2: FilteredSet, interval: Interval,
                    field=GF2) -> bool:
    """True when both cross inclusions of the cover induce isomorphisms.

    Checked in every degree up to the ambient dimension plus one.
    """
    _require_filtered_subset(x1, x, "first cover set")
    _require_filtered_subset(x2, x, "second cover set")
    u = union(x1, x2)
    meet = intersection(x1, x2)
    k1 = inclusion(pair_of(x1, meet), pair_of(u, x2))
    k2 = inclusion(pair_of(x2, meet), pair_of(u, x1))
    for n in range(0, max(x.dimension, 0) + 2):
        for k in (k1, k2):
            if not induced_map(k, n, interval, field).is_isomorphism():
                return False
    return True


def mayer_vietoris(x1: FilteredSet, x2: FilteredSet, interval: Interval,
                   n_max: int | None = None, field=GF2) -> ExactSequence:
    """The Mayer-Vietoris sequence of two filtered sets.

    Nodes run intersection -> sum of the parts -> union, stitched by the
    boundary operator of the cover; the cover must pass is_proper_triad.
    """
    u = union(x1, x2)
    meet = intersection(x1, x2)
    if not is_proper_triad(u, x1, x2, interval, field):
        raise NotProperTriad("cover inclusions do not induce isomorphisms")
    if n_max is None:
        n_max = max(u.dimension, 0) + 1
    meet_abs = absolute(meet)
    inc1 = inclusion(meet_abs, absolute(x1))
    inc2 = inclusion(meet_abs, absolute(x2))
    j1 = inclusion(absolute(x1), absolute(u))
    j2 = inclusion(absolute(x2), absolute(u))
    l1 = inclusion(absolute(u), pair_of(u, x2))
    k1 = inclusion(pair_of(x1, meet), pair_of(u, x2))

    nodes, arrows, labels = [], [], []
    for n in range(n_max, -1, -1):
        h_meet = homology(meet_abs, n, interval, field)
        h1 = homology(absolute(x1), n, interval, field)
        h2 = homology(absolute(x2), n, interval, field)
        h_union = homology(absolute(u), n, interval, field)
        summed = DirectSumGroup((h1, h2))
        split = LinearMap(
            h_meet, summed,
            vstack(induced_map(inc1, n, interval, field).matrix,
                   -induced_map(inc2, n, interval, field).matrix),
            f"(i,-i)_{n}",
        )
        merge = LinearMap(
            summed, h_union,
            hstack(induced_map(j1, n, interval, field).matrix,
                   induced_map(j2, n, interval, field).matrix),
            f"(j+j)_{n}",
        )
        nodes += [h_meet, summed, h_union]
        arrows += [split, merge]
        labels += [f"(i,-i)_{n}", f"(j+j)_{n}"]
        if n > 0:
            k1n = induced_map(k1, n, interval, field)
            delta = (
                connecting(pair_of(x1, meet), n, interval, field)
                .compose(k1n.inverse())
                .compose(induced_map(l1, n, interval, field))
            )
            arrows.append(LinearMap(h_union, homology(meet_abs, n - 1, interval, field),
                                    delta.matrix, f"D_{n}"))
            labels.append(f"D_{n}")
    zero, cap = _zero_cap(nodes[-1], interval, field)
    nodes.append(zero)
    arrows.append(cap)
    labels.append("0")
    return ExactSequence(tuple(nodes), tuple(arrows), tuple(labels),
                         f"Mayer-Vietoris sequence over {interval}")


def triad_sequence(x: FilteredSet, x1: FilteredSet, x2: FilteredSet, interval: Interval,
                   n_max: int | None = None, field=GF2) -> ExactSequence:
    """The homology sequence of a proper cover inside an ambient set."""
    _require_filtered_subset(x1, x, "first cover set")
    _require_filtered_subset(x2, x, "second cover set")
    if not is_proper_triad(x, x1, x2, interval, field):
        raise NotProperTriad("cover inclusions do not induce isomorphisms")
    u = union(x1, x2)
    meet = intersection(x1, x2)
    side = pair_of(x1, meet)
    rel_x2 = pair_of(x, x2)
    rel_u = pair_of(x, u)
    if n_max is None:
        n_max = _default_degree(rel_u)
    inc_i = inclusion(side, rel_x2)
    inc_j = inclusion(rel_x2, rel_u)
    l2 = inclusion(absolute(u), pair_of(u, x2))
    k1 = inclusion(side, pair_of(u, x2))
    nodes, arrows, labels = [], [], []
    for q in range(n_max, -1, -1):
        nodes += [
            homology(side, q, interval, field),
            homology(rel_x2, q, interval, field),
            homology(rel_u, q, interval, field),
        ]
        arrows += [induced_map(inc_i, q, interval, field), induced_map(inc_j, q, interval, field)]
        labels += [f"i_{q}", f"j_{q}"]
        if q > 0:
            bnd = (
                induced_map(k1, q - 1, interval, field)
                .inverse()
                .compose(induced_map(l2, q - 1, interval, field))
                .compose(connecting(rel_u, q, interval, field))
            )
            arrows.append(bnd)
            labels.append(f"d_{q}")
    zero, cap = _zero_cap(nodes[-1], interval, field)
    nodes.append(zero)
    arrows.append(cap)
    labels.append("0")
    return ExactSequence(tuple(nodes), tuple(arrows), tuple(labels),
                         f"triad sequence over {interval}")


def _restrict_to_subgroup(lmap: LinearMap, subgroup: HomologyGroup, side: str) -> LinearMap:
    """Re-express a map through a subgroup of its source or target."""
    parent = lmap.source if side == "source" else lmap.target
    coords = [parent.coords_of(subgroup.reps.column(j)) for j in range(subgroup.dim)]
    embed = Matrix.from_columns(parent.field, coords, parent.dim)
    if side == "source":
        return LinearMap(subgroup, lmap.target, lmap.matrix * embed, lmap.label + "~")
    solved = embed.solve_matrix(lmap.matrix)
    if solved is None:
        raise ClassNotInTarget("map does not land in the subgroup")
    return LinearMap(lmap.source, subgroup, solved, lmap.label + "~")


def reduced_les_pair(pair: RelativeFilteredPair, interval: Interval,
                     n_max: int | None = None, field=GF2) -> ExactSequence:
    """The pair sequence with the degree-0 tail replaced by reduced groups.

    Meaningful when the subset is present at the lower endpoint; away from
    the tail the nodes agree with the unreduced sequence.
    """
    if n_max is None:
        n_max = _default_degree(pair)
    n_max = max(n_max, 1)
    base = les_pair(pair, interval, n_max, field)
    red_a = reduced_homology(pair.sub, 0, interval, field)
    red_x = reduced_homology(pair.total, 0, interval, field)
    h_xa0 = homology(pair, 0, interval, field)
    tail_d = _restrict_to_subgroup(connecting(pair, 1, interval, field), red_a, "target")
    tail_i = _restrict_to_subgroup(
        _restrict_to_subgroup(
            induced_map(inclusion(absolute(pair.sub), absolute(pair.total)), 0, interval, field),
            red_a, "source"),
        red_x, "target")
    tail_j = _restrict_to_subgroup(
        induced_map(inclusion(absolute(pair.total), pair), 0, interval, field),
        red_x, "source")
    nodes = list(base.nodes[:-4])
    arrows = list(base.arrows[:-4])
    labels = list(base.labels[:-4])
    arrows.append(tail_d)
    labels.append("d~_1")
    nodes += [red_a, red_x, h_xa0]
    arrows += [tail_i, tail_j]
    labels += ["i~_0", "j~_0"]
    zero, cap = _zero_cap(h_xa0, interval, field)
    nodes.append(zero)
    arrows.append(cap)
    labels.append("0")
    return ExactSequence(tuple(nodes), tuple(arrows), tuple(labels),
                         f"reduced pair sequence over {interval}")


def are_contiguous(f: PreservingMap, g: PreservingMap, interval: Interval | None = None) -> bool:
    """Whether the two maps' images always share a common coface.

    At each probed level, the union of both images of every simplex must be
    present in the codomain complex, and land in the codomain subset whenever
    the simplex lies in the domain subset.  Unqualified contiguity (interval
    None) probes every critical value of both pairs.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("contiguity needs a shared domain and codomain")
    levels = set(critical_values(f.domain)) | set(critical_values(f.codomain))
    if interval is not None:
        levels = {c for c in levels if interval.lo <= c <= interval.hi}
        levels.update((interval.lo, interval.hi))
    for level in sorted(levels):
        dom_total = complex_at(f.domain.total, level)
        dom_sub = complex_at(f.domain.sub, level)
        cod_total = complex_at(f.codomain.total, level)
        cod_sub = complex_at(f.codomain.sub, level)
        for sk in dom_total:
            joint = simplex({f.vertex_map[v] for v in sk} | {g.vertex_map[v] for v in sk})
            if joint not in cod_total:
                return False
            if sk in dom_sub and joint not in cod_sub:
                return False
    return True


def are_contiguously_equivalent(f: PreservingMap, g: PreservingMap) -> bool:
    """Whether the two maps invert each other up to contiguity."""
    if f.domain != g.codomain or f.codomain != g.domain:
        raise ValueError("maps must point in opposite directions between the same pairs")
    return are_contiguous(compose(g, f), identity_map(f.domain)) and are_contiguous(
        compose(f, g), identity_map(g.domain)
    )


def is_homologically_trivial(obj, interval: Interval, n_max: int | None = None, field=GF2) -> bool:
    """All reduced groups vanish (sets); all relative groups vanish (pairs)."""
    if isinstance(obj, RelativeFilteredPair) and obj.sub.vertices:
        if n_max is None:
            n_max = _default_degree(obj)
        return all(homology(obj, q, interval, field).dim == 0 for q in range(n_max + 1))
    x = obj.total if isinstance(obj, RelativeFilteredPair) else obj
    if n_max is None:
        n_max = max(x.dimension, 0) + 1
    return all(reduced_homology(x, q, interval, field).dim == 0 for q in range(n_max + 1))


def deformation_retract_check(pair: RelativeFilteredPair, subpair: RelativeFilteredPair,
                              retraction) -> bool:
    """Whether the retraction deforms the pair onto the subpair.

    The retraction must fix the subpair pointwise; the check is contiguity of
    inclusion-after-retraction with the identity, at every critical value.
    """
    _require_filtered_subset(subpair.total, pair.total, "subpair total")
    _require_filtered_subset(subpair.sub, pair.sub, "subpair subset")
    if isinstance(retraction, PreservingMap):
        if retraction.domain != pair or retraction.codomain != subpair:
            raise NotARetraction("retraction endpoints do not match the pairs")
        r = retraction
    else:
        r = validate_map(retraction, pair, subpair)
    for v in subpair.total.vertices:
        if r.vertex_map[v] != v:
            raise NotARetraction(f"vertex {v!r} moves under the retraction")
    return are_contiguous(compose(inclusion(subpair, pair), r), identity_map(pair))


@dataclass(frozen=True)
class DirectSumVerdict:
    ok: bool
    total_dim: int
    part_dims: tuple[int, ...]
    joint_rank: int


def direct_sum_check(parts: Sequence[FilteredSet], a: FilteredSet, q: int,
                     interval: Interval, field=GF2) -> DirectSumVerdict:
    """Check the parts' relative groups sum injectively onto the whole.

    Requires every pairwise intersection of parts to sit inside the common
    subset; the whole set is the union of the parts with the subset.
    """
    parts = list(parts)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            meet = intersection(parts[i], parts[j])
            if not meet.vertices <= a.vertices:
                raise HypothesisViolated("parts overlap outside the subset")
            for sk, val in meet.entries:
                if val < a.value(sk):
                    raise HypothesisViolated("overlap enters before the subset")
    whole = a
    for part in parts:
        whole = union(whole, part)
    target_pair = pair_of(whole, a)
    target = homology(target_pair, q, interval, field)
    mats = []
    dims = []
    for part in parts:
        sub_i = intersection(part, a)
        ki = inclusion(pair_of(part, sub_i), target_pair)
        m = induced_map(ki, q, interval, field).matrix
        mats.append(m)
        dims.append(m.ncols)
    joint = Matrix.zero(field, target.dim, 0)
    for m in mats:
        joint = hstack(joint, m)
    rank = joint.rank()
    ok = target.dim == sum(dims) and rank == target.dim
    return DirectSumVerdict(ok, target.dim, tuple(dims), rank)
