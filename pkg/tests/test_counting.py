import itertools

import pytest

from quivergrass.bimodule import build_canonical_bimodule, dim_vector_e
from quivergrass.cells import poincare_polynomial
from quivergrass.counting import (
    CountSample,
    count_and_interpolate,
    count_grassmannian_points,
    count_module_points,
    count_repvariety_points,
    enumeration_bound,
    first_primes,
    grassmannian_count_polynomial,
    grassmannian_degree_bound,
    interpolate_counts,
    repvariety_degree_bound,
)
from quivergrass.errors import EnumerationTooLarge, NotPolynomialCount
from quivergrass.polynomials import IntPolynomial

from conftest import brute_count_points


class TestCounts:
    def test_small_values(self, corpus):
        _, dims, pq = corpus["a2"]
        assert count_grassmannian_points(pq, dims, 2) == 3
        assert count_grassmannian_points(pq, dims, 5) == 6
        _, dims, pq = corpus["a3"]
        assert count_grassmannian_points(pq, dims, 2) == 11

    def test_gr24_values(self, gr24):
        _, dims, pq = gr24
        assert count_grassmannian_points(pq, dims, 2) == 35
        assert count_grassmannian_points(pq, dims, 3) == 130

    def test_k2_values(self, k2):
        _, dims, pq = k2
        assert count_grassmannian_points(pq, dims, 2) == 43
        assert count_grassmannian_points(pq, dims, 3) == 97

    def test_matches_exhaustive_filter(self, corpus, gr24, k2):
        cases = [corpus["a2"], corpus["a3"], corpus["a3alt"], corpus["d4"], gr24, k2]
        for _, dims, pq in cases:
            module = build_canonical_bimodule(pq, dims)
            target = dim_vector_e(pq, dims)
            assert count_module_points(module, target, 2) == brute_count_points(
                module, target, 2
            )

    def test_matches_exhaustive_filter_q3(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        target = dim_vector_e(pq, dims)
        assert count_module_points(module, target, 3) == brute_count_points(
            module, target, 3
        )

    def test_order_invariance(self, corpus, k2):
        for _, dims, pq in (corpus["a3"], corpus["d4"], k2):
            module = build_canonical_bimodule(pq, dims)
            target = dim_vector_e(pq, dims)
            graph = module.graph
            # alternative topological order: repeatedly take the largest ready vertex
            indeg = [0] * len(graph.vertices)
            for a in graph.arrows:
                indeg[a.target] += 1
            ready = sorted(i for i, d in enumerate(indeg) if d == 0)
            alt = []
            while ready:
                v = ready.pop()
                alt.append(v)
                for a in graph.out_arrows[v]:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
                        ready.sort()
            assert alt != list(graph.topological)
            reference = count_module_points(module, target, 2)
            assert count_module_points(module, target, 2, order=alt) == reference

    def test_empty_target(self):
        from conftest import load_fixture
        from quivergrass.quiver import PathQuiver

        quiver, dims = load_fixture("single5")
        pq = PathQuiver(quiver)
        assert count_grassmannian_points(pq, dims, 7) == 1

    def test_infeasible_target(self, corpus):
        _, dims, pq = corpus["a2"]
        module = build_canonical_bimodule(pq, dims)
        assert count_module_points(module, (1, 1, 0), 2) == 0

    def test_cap(self, gr24):
        _, dims, pq = gr24
        module = build_canonical_bimodule(pq, dims)
        target = dim_vector_e(pq, dims)
        assert enumeration_bound(module, target, 2) == 35
        with pytest.raises(EnumerationTooLarge):
            count_module_points(module, target, 2, cap=34)
        with pytest.raises(EnumerationTooLarge):
            count_grassmannian_points(pq, dims, 2, cap=10)


class TestInterpolation:
    def test_line(self):
        samples = [CountSample(2, 3), CountSample(3, 4), CountSample(5, 6)]
        result = interpolate_counts(samples, 1)
        assert result.ok
        assert result.polynomial == IntPolynomial((1, 1))

    def test_sorting(self):
        samples = [CountSample(5, 6), CountSample(2, 3), CountSample(3, 4)]
        result = interpolate_counts(samples, 1)
        assert [s.q for s in result.samples] == [2, 3, 5]
        assert result.ok

    def test_check_sample_disagrees(self):
        samples = [CountSample(2, 3), CountSample(3, 4), CountSample(5, 7)]
        result = interpolate_counts(samples, 1)
        assert not result.ok
        assert result.polynomial is None
        assert "disagrees" in result.reason

    def test_non_integral(self):
        samples = [
            CountSample(2, 0),
            CountSample(3, 1),
            CountSample(5, 1),
            CountSample(7, 1),
        ]
        result = interpolate_counts(samples, 3)
        assert not result.ok
        assert "non-integral" in result.reason

    def test_too_few_samples(self):
        result = interpolate_counts([CountSample(2, 3)], 5)
        assert not result.ok
        assert "two sample" in result.reason

    def test_degree_bound_truncation(self):
        # four samples and a generous bound: use three nodes, verify on one
        samples = [CountSample(q, q * q) for q in (2, 3, 5, 7)]
        result = interpolate_counts(samples, 4)
        assert result.ok
        assert result.polynomial == IntPolynomial((0, 0, 1))

    def test_first_primes(self):
        assert first_primes(6) == (2, 3, 5, 7, 11, 13)
        assert first_primes(0) == ()

    def test_strict_variant_raises(self, corpus):
        _, dims, pq = corpus["a2"]
        with pytest.raises(NotPolynomialCount):
            grassmannian_count_polynomial(pq, dims, primes=[2])


class TestCountPolynomials:
    def test_corpus_polynomials(self, corpus, gr24, k2):
        # degree bounds run up to 7 here, so six primes are needed before the
        # interpolation policy trusts a fit
        primes = first_primes(6)
        _, dims, pq = corpus["a2"]
        assert grassmannian_count_polynomial(pq, dims, primes) == IntPolynomial((1, 1))
        _, dims, pq = corpus["a3"]
        assert grassmannian_count_polynomial(pq, dims, primes) == IntPolynomial((1, 3, 1))
        _, dims, pq = gr24
        assert grassmannian_count_polynomial(pq, dims, primes) == IntPolynomial(
            (1, 1, 2, 1, 1)
        )
        _, dims, pq = k2
        assert grassmannian_count_polynomial(pq, dims, primes) == IntPolynomial(
            (1, 5, 6, 1)
        )

    def test_counting_agrees_with_cells(self, corpus, gr24):
        # where the paving exists, counting must reproduce it
        primes = first_primes(6)
        cases = [corpus["a2"], corpus["a3"], corpus["a3alt"], gr24]
        for _, dims, pq in cases:
            assert grassmannian_count_polynomial(pq, dims, primes) == poincare_polynomial(
                pq, dims
            )

    def test_d4_subregular_agrees(self, corpus):
        _, _, pq = corpus["d4"]
        dims = {"1": 1, "2": 2, "3": 1, "4": 0}
        poly = grassmannian_count_polynomial(pq, dims, first_primes(6))
        assert poly == IntPolynomial((1, 3, 5, 3, 1))
        assert poly == poincare_polynomial(pq, dims)

    def test_d4_all_ones_not_palindromic(self, corpus):
        # the count is a polynomial but fails the duality a smooth projective
        # variety with isolated fixed points would force
        _, dims, pq = corpus["d4"]
        poly = grassmannian_count_polynomial(pq, dims, first_primes(5))
        assert poly == IntPolynomial((1, 5, 6, 1))
        assert not poly.is_palindromic()
        assert poly(1) == 13

    def test_count_and_interpolate_result(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        target = dim_vector_e(pq, dims)
        result = count_and_interpolate(module, target, first_primes(4))
        assert result.ok
        assert result.polynomial == IntPolynomial((1, 3, 1))
        assert [s.q for s in result.samples] == [2, 3, 5, 7]
        assert grassmannian_degree_bound(module, target) == 4


class TestRepVariety:
    def test_zero_vector(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        g = (0,) * len(pq.paths)
        assert count_repvariety_points(module, g, 2) == 1

    def test_square_free_is_affine(self, corpus):
        _, dims, pq = corpus["a2"]
        module = build_canonical_bimodule(pq, dims)
        assert count_repvariety_points(module, (1, 1, 1), 3) == 9
        assert count_repvariety_points(module, (2, 1, 1), 2) == 2 ** (2 + 1)
        assert repvariety_degree_bound(module, (1, 1, 1)) == 2

    def test_single_square(self, corpus):
        # one commuting square of scalars: pairs with equal products; at q = 2
        # that is 3*3 zero-product pairs plus 1*1 unit pair
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        g = tuple(1 if name in {"e_2", "a", "b", "ba"} else 0 for name in pq.names)
        assert count_repvariety_points(module, g, 2) == 10

    def test_full_a3(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        g = (1,) * len(pq.paths)
        assert count_repvariety_points(module, g, 2) == 40
        assert repvariety_degree_bound(module, g) == 6

    def test_matches_raw_enumeration(self, corpus):
        # oracle: enumerate every scalar assignment to all six arrows and
        # check the square relation directly
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        g = (1,) * len(pq.paths)
        sq = pq.squares[0]
        count = 0
        for vals in itertools.product(range(2), repeat=len(pq.arrows)):
            if (vals[sq.a2] * vals[sq.a1]) % 2 == (vals[sq.b2] * vals[sq.b1]) % 2:
                count += 1
        assert count == count_repvariety_points(module, g, 2) == 40

    def test_inactive_square(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        g = tuple(1 if name in {"e_2", "ba"} else 0 for name in pq.names)
        assert count_repvariety_points(module, g, 5) == 1

    def test_cap(self, corpus):
        _, dims, pq = corpus["a3"]
        module = build_canonical_bimodule(pq, dims)
        g = (2,) * len(pq.paths)
        with pytest.raises(EnumerationTooLarge):
            count_repvariety_points(module, g, 2, cap=1000)
