import itertools

import pytest

from quivergrass.bimodule import (
    build_canonical_bimodule,
    dim_vector_e,
    dim_vector_f,
    quotient_representation,
    sub_representation,
)
from quivergrass.errors import InfeasibleDimensions
from quivergrass.fixedpoints import (
    closed_subsets,
    decompose_fixed_point,
    enumerate_fixed_points,
    euler_characteristic,
    fixed_point_type,
    fixed_points_of_module,
    sub_quotient_representations,
    submodule_point,
)
from quivergrass.homology import hom_ext_dims

from conftest import brute_fixed_point_count


class TestClosedSubsets:
    def test_chain(self, corpus):
        _, _, pq = corpus["a2"]
        sup = sorted(pq.vertices_through("1"))
        subsets = closed_subsets(pq.graph, sup)
        assert len(subsets) == 3

    def test_all_closed_under_arrows(self, corpus):
        for _, _, pq in corpus.values():
            for vertex in pq.quiver.vertices:
                sup = pq.vertices_through(vertex)
                for members in closed_subsets(pq.graph, sorted(sup)):
                    for a in pq.arrows:
                        if a.source in members and a.target in sup:
                            assert a.target in members


class TestCounts:
    def test_corpus_counts(self, corpus):
        # a3alt is a product of two projective lines, so 4 coordinate points
        expected = {"a2": 2, "a3": 5, "a3alt": 4, "d4": 13}
        for name, (quiver, dims, pq) in corpus.items():
            assert len(enumerate_fixed_points(pq, dims)) == expected[name]
            assert euler_characteristic(pq, dims) == expected[name]

    def test_gr24(self, gr24):
        _, dims, pq = gr24
        assert euler_characteristic(pq, dims) == 6

    def test_single_vertex(self):
        from conftest import load_fixture
        from quivergrass.quiver import PathQuiver

        quiver, dims = load_fixture("single5")
        pq = PathQuiver(quiver)
        fps = enumerate_fixed_points(pq, dims)
        assert len(fps) == 1
        assert fps[0].dims == (0,)

    def test_matches_brute_filter(self, corpus, gr24):
        for quiver, dims, pq in list(corpus.values()) + [gr24]:
            module = build_canonical_bimodule(pq, dims)
            target = dim_vector_e(pq, dims)
            assert len(fixed_points_of_module(module, target)) == brute_fixed_point_count(
                module, target
            )

    def test_k2_counts(self, k2):
        # fixed points exist without tree mode; only the quadratic form needs it
        _, dims, pq = k2
        module = build_canonical_bimodule(pq, dims)
        target = dim_vector_e(pq, dims)
        fps = fixed_points_of_module(module, target)
        # matches P(1) of the frozen counting polynomial 1 + 5q + 6q^2 + q^3
        assert len(fps) == brute_fixed_point_count(module, target) == 13

    def test_infeasible_targets(self, corpus):
        _, dims, pq = corpus["a2"]
        module = build_canonical_bimodule(pq, dims)
        assert fixed_points_of_module(module, (0, 0, 5)) == ()
        assert fixed_points_of_module(module, (1, 1, 2)) != ()
        with pytest.raises(InfeasibleDimensions):
            fixed_points_of_module(module, (0, 0))
        with pytest.raises(InfeasibleDimensions):
            fixed_points_of_module(module, (0, 0, -1))


class TestSearchOrder:
    def test_results_independent_of_order(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        target = dim_vector_e(pq, dims)
        reference = fixed_points_of_module(module, target)
        for order in itertools.permutations(range(3)):
            assert fixed_points_of_module(module, target, search_order=order) == reference

    def test_rejects_non_permutation(self, corpus):
        _, dims, pq = corpus["a2"]
        module = build_canonical_bimodule(pq, dims)
        with pytest.raises(AssertionError):
            fixed_points_of_module(module, (0, 0, 1), search_order=[0, 0])


class TestStructure:
    def test_a3_fixed_points_by_hand(self, corpus):
        # the five solutions of the per-vertex counting constraints, found by
        # enumerating closed subsets per label on paper
        _, dims, pq = corpus["a3"]
        idx = {name: i for i, name in enumerate(pq.names)}
        a, b, ba = idx["a"], idx["b"], idx["ba"]
        expected = {
            (frozenset({a, ba}), frozenset({b, ba}), frozenset()),
            (frozenset({a, ba}), frozenset(), frozenset({b, ba})),
            (frozenset({ba}), frozenset({a, b, ba}), frozenset()),
            (frozenset(), frozenset({a, ba}), frozenset({b, ba})),
            (frozenset(), frozenset({a, b, ba}), frozenset({ba})),
        }
        fps = enumerate_fixed_points(pq, dims)
        assert {fp.ideals for fp in fps} == expected

    def test_repr(self, corpus):
        _, dims, pq = corpus["a3"]
        fps = enumerate_fixed_points(pq, dims)
        reprs = {repr(fp) for fp in fps}
        assert "FixedPoint(2.1:{a,b,ba}; 3.1:{ba})" in reprs

    def test_vertex_labels(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        idx = {name: i for i, name in enumerate(pq.names)}
        fps = enumerate_fixed_points(pq, dims)
        fp = next(
            f
            for f in fps
            if f.ideals[0] == frozenset({idx["a"], idx["ba"]}) and f.ideals[2] == frozenset()
        )
        labels = fp.vertex_labels()
        assert labels[idx["ba"]] == (0, 1)
        assert labels[idx["e_1"]] == ()

    def test_decompose_and_type(self, corpus):
        _, dims, pq = corpus["a3"]
        idx = {name: i for i, name in enumerate(pq.names)}
        fps = {fp.ideals: fp for fp in enumerate_fixed_points(pq, dims)}
        two_pieces = fps[
            (
                frozenset({idx["a"], idx["ba"]}),
                frozenset({idx["b"], idx["ba"]}),
                frozenset(),
            )
        ]
        assert len(decompose_fixed_point(two_pieces)) == 2
        assert fixed_point_type(two_pieces) == (("a", "ba"), ("b", "ba"))

        nested = fps[
            (
                frozenset(),
                frozenset({idx["a"], idx["b"], idx["ba"]}),
                frozenset({idx["ba"]}),
            )
        ]
        assert fixed_point_type(nested) == (("a", "b", "ba"), ("ba",))

    def test_type_is_isomorphism_invariant_shape(self, corpus):
        # components partition each ideal and are arrow-connected
        for _, dims, pq in corpus.values():
            for fp in enumerate_fixed_points(pq, dims):
                per_label: dict[int, set[int]] = {}
                for r, comp in decompose_fixed_point(fp):
                    assert not per_label.get(r, set()) & comp
                    per_label.setdefault(r, set()).update(comp)
                for r, members in enumerate(fp.ideals):
                    assert per_label.get(r, set()) == set(members)


class TestPointsAndReps:
    def test_submodule_points_validate(self, corpus, gr24):
        for quiver, dims, pq in list(corpus.values()) + [gr24]:
            target = dim_vector_e(pq, dims)
            for fp in enumerate_fixed_points(pq, dims):
                point = submodule_point(fp)
                point.validate(expected_dims=target)
                assert point.dims == fp.dims

    def test_sub_quotient_dims(self, corpus):
        for _, dims, pq in corpus.values():
            fvec = dim_vector_f(pq, dims)
            for fp in enumerate_fixed_points(pq, dims):
                N, Q = sub_quotient_representations(fp)
                N.validate()
                Q.validate()
                assert N.dims == fp.dims
                assert Q.dims == tuple(
                    m - n for m, n in zip(fp.module.dims, fp.dims)
                )
                assert Q.dims == fvec

    def test_two_constructions_agree(self, corpus):
        # label-basis reps and echelon-basis reps are isomorphic; their
        # homological numbers against each other must match
        _, dims, pq = corpus["a3"]
        for fp in enumerate_fixed_points(pq, dims):
            N1, Q1 = sub_quotient_representations(fp)
            point = submodule_point(fp)
            N2 = sub_representation(point)
            Q2 = quotient_representation(point)
            assert hom_ext_dims(N1, Q1) == hom_ext_dims(N2, Q2)
            assert hom_ext_dims(N1, N1) == hom_ext_dims(N2, N2)
