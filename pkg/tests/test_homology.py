"""Interval homology groups, induced and connecting maps, grids, barcodes."""

import random

import pytest

from persax import (
    GF2,
    GF3,
    Interval,
    Matrix,
    VertexNotPresent,
    absolute,
    bars_alive,
    betti_grid,
    coefficient_group,
    compose,
    connecting,
    critical_intervals,
    fin,
    h0_decomposition,
    homology,
    identity_map,
    image,
    induced_map,
    inclusion,
    is_star_shaped,
    pair_barcode,
    pair_of,
    point,
    point_class,
    reduced_homology,
    standard_boundary,
    standard_simplex,
    validate,
    validate_map,
)
from persax.fuzz import random_pair

from .oracles import brute_pair_dim

TRIANGLE_RIM = validate(
    {("a",): 0, ("b",): 0, ("c",): 0, ("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1},
    {"a", "b", "c"},
)


class TestHomologyExamples:
    def test_point_dimensions(self):
        pt = point(1)
        assert homology(pt, 0, Interval(1, 3)).dim == 1
        assert homology(pt, 0, Interval(0, 3)).dim == 0
        assert homology(pt, 1, Interval(1, 3)).dim == 0

    def test_pair_with_itself_vanishes(self):
        pair = pair_of(TRIANGLE_RIM, TRIANGLE_RIM)
        for n in range(3):
            for iv in critical_intervals(pair):
                assert homology(pair, n, iv).dim == 0

    def test_triangle_rim_frozen_values(self):
        # frozen from the exhaustive GF(2) oracle
        assert homology(TRIANGLE_RIM, 1, Interval(1, 2)).dim == 1
        assert homology(TRIANGLE_RIM, 1, Interval(0, 1)).dim == 0
        assert homology(TRIANGLE_RIM, 0, Interval(0, 1)).dim == 1
        assert homology(TRIANGLE_RIM, 0, Interval(0, 0)).dim == 3

    def test_negative_degree_is_zero_without_computation(self):
        assert homology(TRIANGLE_RIM, -3, Interval(0, 1)).dim == 0

    def test_representatives_are_persisted_cycles(self):
        group = homology(TRIANGLE_RIM, 1, Interval(1, 2), GF3)
        from persax import boundary_matrix

        d = boundary_matrix(group.pair, 1, fin(2), GF3)
        for j in range(group.dim):
            rep = group.reps.column(j)
            assert all(v == 0 for v in d.apply(rep))
            assert group.cycles.contains(rep)


def test_dims_match_brute_force_oracle_on_fuzzed_pairs():
    master = random.Random(2024)
    checked = 0
    for _ in range(12):
        rng = random.Random(master.getrandbits(64))
        pair = random_pair(rng)
        for iv in critical_intervals(pair):
            for n in range(0, pair.total.dimension + 2):
                want = brute_pair_dim(pair, n, iv)
                assert homology(pair, n, iv).dim == want
                checked += 1
    assert checked > 100


class TestInducedMaps:
    def test_identity_induces_identity(self):
        pair = pair_of(TRIANGLE_RIM)
        for n in (0, 1):
            assert induced_map(identity_map(pair), n, Interval(1, 2)).is_identity()

    def test_vertex_into_star_shaped_set_is_iso_in_degree_zero(self):
        solid = standard_simplex(2, 0)
        iv = Interval(0, 1)
        assert is_star_shaped(solid, "v0", iv)
        vertex = validate({("v0",): 0}, {"v0"})
        inc = inclusion(absolute(vertex), absolute(solid))
        for n in range(3):
            lm = induced_map(inc, n, iv)
            assert lm.is_isomorphism()

    def test_functoriality_on_concrete_composable_maps(self):
        x = TRIANGLE_RIM
        rot = validate_map({"a": "b", "b": "c", "c": "a"}, absolute(x), absolute(x))
        swap = validate_map({"a": "b", "b": "a", "c": "c"}, absolute(x), absolute(x))
        for fld in (GF2, GF3):
            for n in (0, 1):
                lhs = induced_map(compose(rot, swap), n, Interval(1, 2), fld)
                rhs = induced_map(rot, n, Interval(1, 2), fld).compose(
                    induced_map(swap, n, Interval(1, 2), fld))
                assert lhs.matrix == rhs.matrix

    def test_map_well_defined_under_regauged_representatives(self):
        # replacing reps by boundary-shifted invertible combinations must
        # change matrices by exactly the change of basis
        from persax.homology import HomologyGroup

        pair = pair_of(TRIANGLE_RIM)
        iv = Interval(0, 1)
        group = homology(pair, 0, iv, GF3)
        assert group.dim == 1
        shifted = group.reps + Matrix.from_columns(
            GF3, [group.boundaries.basis.column(0)], group.space.dim)
        regauged = HomologyGroup(pair, 0, iv, GF3, group.space, group.cycles,
                                 group.boundaries, shifted.scale(2))
        f = identity_map(pair)
        from persax.linalg import chain_map_matrix

        push = chain_map_matrix(f, 0, iv.hi, GF3)
        cols = [regauged.coords_of(push.apply(group.reps.column(j)))
                for j in range(group.dim)]
        # [rep] = 2^{-1} * [regauged rep]  =>  coords double back
        assert cols[0] == (2,)


class TestConnecting:
    def test_edge_pair_boundary_hits_vertex_difference(self):
        pair = pair_of(standard_simplex(1, 0, ("a", "b")),
                       standard_boundary(1, 0, ("a", "b")))
        for fld, want in ((GF2, (1, 1)), (GF3, (2, 1))):
            d = connecting(pair, 1, Interval(0, 1), fld)
            assert d.source.dim == 1
            assert d.matrix.column(0) == want  # [b] - [a] over reps (a, b)

    def test_star_shaped_subset_kills_the_connecting_map(self):
        x = standard_simplex(2, 0)
        a = validate({("v0",): 0, ("v1",): 0, ("v0", "v1"): 0}, {"v0", "v1"})
        pair = pair_of(x, a)
        iv = Interval(0, 1)
        assert is_star_shaped(a, "v0", iv)
        for n in (1, 2):
            assert connecting(pair, n, iv).matrix.is_zero()

    def test_empty_subset_gives_map_into_zero_group(self):
        d = connecting(pair_of(TRIANGLE_RIM), 1, Interval(1, 1))
        assert d.target.dim == 0
        assert d.matrix.shape == (0, 1)


class TestReduced:
    def test_point_has_no_reduced_homology(self):
        assert reduced_homology(point(0), 0, Interval(0, 2)).dim == 0

    def test_two_points_have_one_reduced_class(self):
        two = standard_boundary(1, 0, ("a", "b"))
        assert reduced_homology(two, 0, Interval(0, 1)).dim == 1
        assert homology(two, 0, Interval(0, 1)).dim == 2

    def test_equals_unreduced_in_positive_degrees(self):
        for n in (1, 2):
            for iv in critical_intervals(TRIANGLE_RIM):
                assert (reduced_homology(TRIANGLE_RIM, n, iv).dim
                        == homology(TRIANGLE_RIM, n, iv).dim)

    def test_empty_set_yields_zero_group(self):
        from persax import skeleton

        empty = skeleton(point(0), -1)
        assert reduced_homology(empty, 0, Interval(0, 1)).dim == 0


class TestPointClasses:
    def test_generator_of_the_point_group(self):
        cg = coefficient_group(Interval(1, 2), 1)
        assert cg.dim == 1
        assert coefficient_group(Interval(0, 2), 1).dim == 0
        # the class of the point itself is the group's basis vector
        assert point_class(1, "p", point(1), Interval(1, 2)) == (1,)

    def test_zero_scalar_gives_zero_class(self):
        assert point_class(0, "a", TRIANGLE_RIM, Interval(0, 1)) == (0,)

    def test_late_vertex_rejected(self):
        x = validate({("a",): 0, ("b",): 2}, {"a", "b"})
        with pytest.raises(VertexNotPresent):
            point_class(1, "b", x, Interval(0, 1))

    def test_components_give_independent_classes(self):
        two = standard_boundary(1, 0, ("a", "b"))
        iv = Interval(0, 1)
        pa = point_class(1, "a", two, iv)
        pb = point_class(1, "b", two, iv)
        joint = Matrix.from_columns(GF2, [pa, pb], 2)
        assert image(joint).dim == 2

    def test_h0_splits_off_the_vertex_line(self):
        three = validate({("a",): 0, ("b",): 0, ("c",): 0}, {"a", "b", "c"})
        assert h0_decomposition(three, "a", Interval(0, 1)) == (2, 1)
        assert h0_decomposition(point(0), "p", Interval(0, 1)) == (0, 1)
        one_component = standard_simplex(2, 0)
        assert h0_decomposition(one_component, "v1", Interval(0, 1)) == (0, 1)


class TestBettiGrid:
    def test_triangle_rim_degree_one_grid(self):
        grid = betti_grid(TRIANGLE_RIM, 1)
        assert grid.values == (fin(0), fin(1))
        assert grid.value(0, 0) == 0
        assert grid.value(0, 1) == 0
        assert grid.value(1, 1) == 1

    def test_beyond_top_dimension_all_zero(self):
        grid = betti_grid(TRIANGLE_RIM, 4)
        assert all(v == 0 for row in grid.entries for v in row if v is not None)

    def test_diagonal_matches_classical_betti_numbers(self):
        # brute-force classical homology of each sublevel complex
        from .oracles import brute_interval_dim, values_of

        vals = values_of(TRIANGLE_RIM)
        for n in (0, 1):
            grid = betti_grid(TRIANGLE_RIM, n)
            for i, eps in enumerate(grid.values):
                want = brute_interval_dim(vals, {}, n, eps.finite, eps.finite)
                assert grid.value(i, i) == want

    def test_entries_bounded_by_endpoint_diagonals(self):
        master = random.Random(11)
        for _ in range(8):
            pair = random_pair(random.Random(master.getrandbits(64)))
            for n in range(0, pair.total.dimension + 2):
                grid = betti_grid(pair, n)
                k = len(grid.values)
                for i in range(k):
                    for j in range(i, k):
                        assert grid.value(i, j) <= min(grid.value(i, i), grid.value(j, j))

    def test_entries_match_barcode_counts(self):
        master = random.Random(13)
        for _ in range(8):
            pair = random_pair(random.Random(master.getrandbits(64)))
            bars = pair_barcode(pair)
            for n in range(0, pair.total.dimension + 2):
                grid = betti_grid(pair, n)
                for i, lo in enumerate(grid.values):
                    for j in range(i, len(grid.values)):
                        iv = Interval(lo, grid.values[j])
                        assert grid.value(i, j) == bars_alive(bars, n, iv)


def test_direct_and_barcode_paths_agree_on_larger_instances():
    # seven-vertex pools with deeper simplices stress both pipelines
    master = random.Random(307)
    pool = ("a", "b", "c", "d", "e", "f", "g")
    cells = 0
    from persax.fuzz import random_filtration, random_subset_of

    for _ in range(12):
        rng = random.Random(master.getrandbits(64))
        x = random_filtration(rng, pool=pool, max_simplices=20, max_span=5)
        pair = pair_of(x, random_subset_of(rng, x))
        bars = pair_barcode(pair)
        for iv in critical_intervals(pair):
            for n in range(0, pair.total.dimension + 2):
                assert homology(pair, n, iv).dim == bars_alive(bars, n, iv)
                cells += 1
    assert cells > 150


def test_h0_decomposition_across_the_corpus():
    master = random.Random(311)
    checked = 0
    for _ in range(10):
        rng = random.Random(master.getrandbits(64))
        x = random_pair(rng).total
        for iv in critical_intervals(x):
            alive = [v for v, in (sk for sk, val in x.entries
                                  if len(sk) == 1 and val <= iv.lo)]
            if not alive:
                continue
            vertex = alive[0]
            reduced_dim, line = h0_decomposition(x, vertex, iv)
            assert line == 1
            assert reduced_dim == homology(x, 0, iv).dim - 1
            checked += 1
    assert checked > 10


def test_growing_the_interval_never_grows_the_group():
    master = random.Random(17)
    for _ in range(8):
        pair = random_pair(random.Random(master.getrandbits(64)))
        vals = critical_intervals(pair)
        for small in vals:
            for big in vals:
                if big.lo <= small.lo and small.hi <= big.hi:
                    for n in range(0, pair.total.dimension + 2):
                        assert (homology(pair, n, big).dim
                                <= homology(pair, n, small).dim)


def test_reduced_dimension_drops_by_presence_of_the_complex():
    from persax import complex_at

    master = random.Random(19)
    for _ in range(8):
        rng = random.Random(master.getrandbits(64))
        x = random_pair(rng).total
        for iv in critical_intervals(x):
            occupied = 1 if complex_at(x, iv.lo) else 0
            assert (reduced_homology(x, 0, iv).dim
                    == homology(x, 0, iv).dim - occupied)


class TestBarcode:
    def test_triangle_rim_bars(self):
        from persax import INF, Bar, barcode

        bars = barcode(TRIANGLE_RIM)
        assert Bar(1, fin(1), INF) in bars
        deg0 = [b for b in bars if b.degree == 0]
        assert len([b for b in deg0 if b.death == INF]) == 1
        assert len(deg0) == 3

    def test_pair_barcode_handles_growing_subset(self):
        x = validate({("a",): 0, ("b",): 0}, {"a", "b"})
        a = validate({("a",): 1, ("b",): 1}, {"a", "b"})
        pair = pair_of(x, a)
        bars = pair_barcode(pair)
        for iv in critical_intervals(pair):
            for n in (0, 1):
                assert bars_alive(bars, n, iv) == homology(pair, n, iv).dim

    def test_empty_support_has_no_bars(self):
        from persax import skeleton, barcode

        assert barcode(skeleton(point(0), -1)) == ()
