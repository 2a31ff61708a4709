"""Point counts over finite fields and polynomial interpolation.

Submodules are enumerated by a depth-first walk through the vertices in
topological order: at each vertex the subspace must contain the images of
the subspaces already chosen at its in-neighbours, so candidates are
enumerated in the quotient by that forced span.  A product of Gaussian
binomials bounds the work before any enumeration starts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .bimodule import CoordinateModule, build_canonical_bimodule, dim_vector_e
from .errors import EnumerationTooLarge, NotPolynomialCount
from .exactalg import PrimeField, Subspace, enumerate_subspaces, gaussian_binomial
from .polynomials import IntPolynomial, poly_from_fractions
from .quiver import PathQuiver

DEFAULT_CAP = 10**8


@dataclass(frozen=True)
class CountSample:
    q: int
    count: int


@dataclass
class InterpolationResult:
    samples: tuple[CountSample, ...]
    polynomial: Optional[IntPolynomial]
    ok: bool
    reason: str = ""


def enumeration_bound(module: CoordinateModule, target: Sequence[int], q: int) -> int:
    """Upper bound on the number of candidate subspaces visited at prime q."""
    bound = 1
    for v, k in enumerate(target):
        bound *= gaussian_binomial(len(module.basis[v]), k, q)
    return bound


def count_module_points(
    module: CoordinateModule,
    target: Sequence[int],
    q: int,
    cap: int = DEFAULT_CAP,
    order: Optional[Sequence[int]] = None,
) -> int:
    """Number of submodules of the given dimension vector over F_q.

    ``order`` may be any topological order of the vertices; the count does
    not depend on the choice.
    """
    target = tuple(target)
    bound = enumeration_bound(module, target, q)
    if bound > cap:
        raise EnumerationTooLarge(
            f"at most {bound} candidates at q = {q}, above the cap {cap}"
        )
    field = PrimeField(q)
    graph = module.graph
    if order is None:
        order = graph.topological
    else:
        order = tuple(order)
        assert sorted(order) == list(range(len(graph.vertices)))
    in_arrows = {v: [] for v in range(len(graph.vertices))}
    for a in graph.arrows:
        in_arrows[a.target].append(a)
    mdims = module.dims
    total = 0
    chosen: dict[int, Subspace] = {}

    def walk(k: int) -> None:
        nonlocal total
        if k == len(order):
            total += 1
            return
        v = order[k]
        vectors = []
        for a in in_arrows[v]:
            for row in chosen[a.source].rows:
                vectors.append(module.push_vector(a.index, list(row)))
        forced = Subspace.from_vectors(field, mdims[v], vectors)
        if forced.dim > target[v]:
            return
        for space in enumerate_subspaces(field, mdims[v], target[v], containing=forced):
            chosen[v] = space
            walk(k + 1)
        chosen.pop(v, None)

    walk(0)
    return total


def count_grassmannian_points(
    pq: PathQuiver, dims: Mapping[str, int], q: int, cap: int = DEFAULT_CAP
) -> int:
    module = build_canonical_bimodule(pq, dims)
    return count_module_points(module, dim_vector_e(pq, dims), q, cap)


def grassmannian_degree_bound(module: CoordinateModule, target: Sequence[int]) -> int:
    """Dimension of the ambient product of Grassmannians."""
    return sum(k * (len(module.basis[v]) - k) for v, k in enumerate(target))


def count_repvariety_points(
    module: CoordinateModule, gdims: Sequence[int], q: int, cap: int = DEFAULT_CAP
) -> int:
    """Points of the variety of bound representations of the coordinate
    module's graph with the given dimension vector over F_q.

    Arrows not entering any square contribute a free factor q^(g_u * g_v);
    the remaining arrows are enumerated and the squares checked directly.
    """
    gdims = tuple(gdims)
    graph = module.graph
    active = []
    for sq in graph.squares:
        mid_a = gdims[graph.arrows[sq.a1].target]
        mid_b = gdims[graph.arrows[sq.b1].target]
        if gdims[sq.start] and gdims[sq.end] and (mid_a or mid_b):
            active.append(sq)
    in_squares = set()
    for sq in active:
        in_squares.update((sq.a1, sq.a2, sq.b1, sq.b2))
    free = 1
    constrained = []
    for a in graph.arrows:
        cells = gdims[a.source] * gdims[a.target]
        if a.index in in_squares:
            constrained.append(a)
        else:
            free *= q**cells
    work = 1
    for a in constrained:
        work *= q ** (gdims[a.source] * gdims[a.target])
    if work > cap:
        raise EnumerationTooLarge(
            f"{work} constrained arrow tuples at q = {q}, above the cap {cap}"
        )

    def matrices(rows: int, cols: int):
        cells = rows * cols
        for code in range(q**cells):
            entries = []
            c = code
            for _ in range(cells):
                entries.append(c % q)
                c //= q
            yield [[entries[r * cols + c2] for c2 in range(cols)] for r in range(rows)]

    def compose(m2, m1, rows, mid, cols):
        # m1 then m2, with explicit shapes so zero dimensions stay honest
        out = [[0] * cols for _ in range(rows)]
        for i in range(rows):
            for j in range(cols):
                s = 0
                for t in range(mid):
                    s += m2[i][t] * m1[t][j]
                out[i][j] = s % q
        return out

    placed: dict[int, int] = {a.index: i for i, a in enumerate(constrained)}
    count = 0
    assign: dict[int, list[list[int]]] = {}

    def squares_ok(k: int) -> bool:
        for sq in active:
            if max(placed[i] for i in (sq.a1, sq.a2, sq.b1, sq.b2)) != k:
                continue
            r0, r3 = gdims[sq.start], gdims[sq.end]
            mid_a = gdims[graph.arrows[sq.a1].target]
            mid_b = gdims[graph.arrows[sq.b1].target]
            left = compose(assign[sq.a2], assign[sq.a1], r3, mid_a, r0)
            right = compose(assign[sq.b2], assign[sq.b1], r3, mid_b, r0)
            if left != right:
                return False
        return True

    def walk(k: int) -> None:
        nonlocal count
        if k == len(constrained):
            count += 1
            return
        a = constrained[k]
        for mat in matrices(gdims[a.target], gdims[a.source]):
            assign[a.index] = mat
            if squares_ok(k):
                walk(k + 1)
        assign.pop(a.index, None)

    walk(0)
    return free * count


def repvariety_degree_bound(module: CoordinateModule, gdims: Sequence[int]) -> int:
    return sum(gdims[a.source] * gdims[a.target] for a in module.graph.arrows)


def first_primes(n: int) -> tuple[int, ...]:
    """The first n primes, by trial division."""
    out: list[int] = []
    c = 2
    while len(out) < n:
        if all(c % p for p in out if p * p <= c):
            out.append(c)
        c += 1
    return tuple(out)


def interpolate_counts(samples: Sequence[CountSample], degree_bound: int) -> InterpolationResult:
    """Lagrange interpolation through the first degree_bound + 1 samples,
    verified against every remaining sample and for integer coefficients."""
    samples = tuple(sorted(samples, key=lambda s: s.q))
    if len(samples) < 2:
        return InterpolationResult(samples, None, False, "need at least two sample points")
    effective = min(degree_bound, len(samples) - 2)
    nodes = samples[: effective + 1]
    rest = samples[effective + 1 :]
    coeffs = [Fraction(0)] * (effective + 1)
    for i, si in enumerate(nodes):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, sj in enumerate(nodes):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                new[t] -= c * sj.q
                new[t + 1] += c
            basis = new
            denom *= si.q - sj.q
        scale = Fraction(si.count) / denom
        for t, c in enumerate(basis):
            coeffs[t] += c * scale
    if any(c.denominator != 1 for c in coeffs):
        return InterpolationResult(samples, None, False, "non-integral coefficients")
    poly = poly_from_fractions(coeffs)
    for s in rest:
        if poly(s.q) != s.count:
            return InterpolationResult(
                samples,
                None,
                False,
                f"check sample q = {s.q} disagrees: {poly(s.q)} != {s.count}",
            )
    return InterpolationResult(samples, poly, True)


def count_and_interpolate(
    module: CoordinateModule,
    target: Sequence[int],
    primes: Sequence[int],
    cap: int = DEFAULT_CAP,
) -> InterpolationResult:
    samples = [
        CountSample(q, count_module_points(module, target, q, cap)) for q in primes
    ]
    return interpolate_counts(samples, grassmannian_degree_bound(module, target))


def grassmannian_count_polynomial(
    pq: PathQuiver,
    dims: Mapping[str, int],
    primes: Sequence[int],
    cap: int = DEFAULT_CAP,
) -> IntPolynomial:
    """Strict variant: raises when the samples do not match a polynomial."""
    module = build_canonical_bimodule(pq, dims)
    result = count_and_interpolate(module, dim_vector_e(pq, dims), primes, cap)
    if not result.ok or result.polynomial is None:
        raise NotPolynomialCount(result.reason or "interpolation failed")
    return result.polynomial
