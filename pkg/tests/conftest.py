"""Shared fixtures and independent oracles.

The oracles here deliberately reimplement things the package already does,
in the most naive way available (subset filters, exhaustive span
enumeration, symbolic solving), so that frozen values in the tests are
backed by a second derivation rather than by the code under test.
"""

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from quivergrass.bimodule import (
    BasisLabel,
    CoordinateModule,
    build_canonical_bimodule,
    dim_vector_e,
)
from quivergrass.quiver import PathQuiver, Quiver, parse_quiver

REPO = Path(__file__).resolve().parent.parent
QUIVER_DIR = REPO / "quivers"

TREE_CORPUS = ("a2", "a3", "a3alt", "d4")
ALL_FIXTURES = TREE_CORPUS + ("gr24", "k2", "single5")


def load_fixture(name: str):
    quiver, dims = parse_quiver((QUIVER_DIR / f"{name}.quiver").read_text())
    return quiver, dims


@pytest.fixture(scope="session")
def corpus():
    """name -> (quiver, dims, path quiver) for the tree-mode corpus."""
    out = {}
    for name in TREE_CORPUS:
        quiver, dims = load_fixture(name)
        out[name] = (quiver, dims, PathQuiver(quiver))
    return out


@pytest.fixture(scope="session")
def k2():
    quiver, dims = load_fixture("k2")
    pq = PathQuiver(quiver)
    pq.tree_mode = False
    return quiver, dims, pq


@pytest.fixture(scope="session")
def gr24():
    quiver, dims = load_fixture("gr24")
    return quiver, dims, PathQuiver(quiver)


# ---------------------------------------------------------------------------
# the alternating A5 comparison model for the D4 star
#
# Restricting the D4 sub-bimodule Grassmannian to its five supported path
# vertices gives the chain  n1 -> n2 <- n3 -> n4 <- n5  with spaces
# V2+V3, V1+V2+V3, V1+V2, V1+V2+V4, V2+V4 (inclusions of summands) and
# target (d2, d1+d2, d1, d1+d2, d2).  Built here from that description
# directly, independently of the path-quiver route.

A5_SUMMANDS = {"n1": "23", "n2": "123", "n3": "12", "n4": "124", "n5": "24"}


def a5_comparison_model(d):
    quiver = Quiver(
        ["n1", "n2", "n3", "n4", "n5"],
        [("p", "n1", "n2"), ("q", "n3", "n2"), ("r", "n3", "n4"), ("s", "n5", "n4")],
    )
    labels = [BasisLabel(v, i) for v in "1234" for i in range(1, d[v] + 1)]
    basis = [
        tuple(BasisLabel(v, i) for v in A5_SUMMANDS[n] for i in range(1, d[v] + 1))
        for n in quiver.vertices
    ]
    module = CoordinateModule(quiver.bound_graph(), labels, basis)
    target = (d["2"], d["1"] + d["2"], d["1"], d["1"] + d["2"], d["2"])
    return module, target


# ---------------------------------------------------------------------------
# independent oracles


def brute_up_sets(pairs, support):
    """All subsets of ``support`` closed under the relation pairs, by filter."""
    sup = sorted(support)
    inside = set(sup)
    out = []
    for bits in itertools.product([0, 1], repeat=len(sup)):
        chosen = {v for v, b in zip(sup, bits) if b}
        if all(t in chosen for u, t in pairs if u in chosen and t in inside):
            out.append(frozenset(chosen))
    return out


def brute_fixed_point_count(module: CoordinateModule, target) -> int:
    """Filter the full product of per-label closed subsets by column sums."""
    arrows = [(a.source, a.target) for a in module.graph.arrows]
    per_label = [brute_up_sets(arrows, sup) for sup in module.supports]
    target = tuple(target)
    nv = len(module.basis)
    count = 0
    for combo in itertools.product(*per_label):
        sums = [0] * nv
        ok = True
        for s in combo:
            for v in s:
                sums[v] += 1
        for v in range(nv):
            if sums[v] != target[v]:
                ok = False
                break
        if ok:
            count += 1
    return count


def all_spans(q: int, n: int, k: int):
    """Every k-dimensional subspace of F_q^n as a frozenset of vectors.

    Exhaustive: spans of all k-tuples of vectors, deduplicated.  Only for
    tiny n.
    """

    def addv(u, v):
        return tuple((a + b) % q for a, b in zip(u, v))

    def scale(c, u):
        return tuple((c * a) % q for a in u)

    vectors = list(itertools.product(range(q), repeat=n))
    seen = set()
    for gens in itertools.combinations(vectors, k):
        span = {tuple([0] * n)}
        for g in gens:
            new = set()
            for c in range(q):
                cg = scale(c, g)
                for u in span:
                    new.add(addv(u, cg))
            span = new
        if len(span) == q**k:
            seen.add(frozenset(span))
    return seen


def brute_count_points(module: CoordinateModule, target, q: int) -> int:
    """Count subspace tuples stable under all arrows, fully exhaustively."""
    spans = {}
    for v, t in enumerate(target):
        n = len(module.basis[v])
        spans[v] = list(all_spans(q, n, t))
    count = 0
    for combo in itertools.product(*[spans[v] for v in range(len(target))]):
        ok = True
        for ai, a in enumerate(module.graph.arrows):
            tgt = combo[a.target]
            for vec in combo[a.source]:
                image = tuple(module.push_vector(ai, list(vec)))
                if image not in tgt:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def sympy_hom_dim(X, Y) -> int:
    """dim Hom of bound representations, via a symbolic linear solve."""
    import sympy

    syms = []
    blocks = []
    for v in range(len(X.dims)):
        b = [
            [sympy.Symbol(f"t{v}_{i}_{j}") for j in range(X.dims[v])]
            for i in range(Y.dims[v])
        ]
        blocks.append(sympy.Matrix(b) if X.dims[v] and Y.dims[v] else None)
        for row in b:
            syms.extend(row)
    eqs = []
    for ai, a in enumerate(X.graph.arrows):
        xm = sympy.Matrix(X.dims[a.target], X.dims[a.source], lambda i, j: X.mats[ai].rows[i][j])
        ym = sympy.Matrix(Y.dims[a.target], Y.dims[a.source], lambda i, j: Y.mats[ai].rows[i][j])
        ts, tt = blocks[a.source], blocks[a.target]
        lhs = tt * xm if tt is not None and X.dims[a.source] else None
        rhs = ym * ts if ts is not None and Y.dims[a.target] else None
        if lhs is None and rhs is None:
            continue
        if lhs is None:
            lhs = sympy.zeros(rhs.rows, rhs.cols)
        if rhs is None:
            rhs = sympy.zeros(lhs.rows, lhs.cols)
        for entry in (lhs - rhs):
            eqs.append(entry)
    if not syms:
        return 0
    if not eqs:
        return len(syms)
    mat = sympy.Matrix([[sympy.diff(e, s) for s in syms] for e in eqs])
    return len(syms) - mat.rank()


def random_rep_maps(quiver: Quiver, dims, rng: random.Random, span=3):
    """Random rational matrices for every arrow of the quiver."""
    maps = {}
    for arr in quiver.arrows:
        rows, cols = dims[arr.target], dims[arr.source]
        maps[arr.name] = [
            [Fraction(rng.randint(-span, span), rng.choice([1, 1, 2])) for _ in range(cols)]
            for _ in range(rows)
        ]
    return maps


def representation_pool(pq: PathQuiver, dims, rng: random.Random, embeds=3):
    """Assorted bound representations on pq's graph: the module, fixed-point
    subs and quotients, and embedded-representation subs and quotients."""
    from quivergrass.bimodule import (
        embed_representation,
        module_representation,
        quotient_representation,
        sub_representation,
    )
    from quivergrass.fixedpoints import enumerate_fixed_points, sub_quotient_representations

    module = build_canonical_bimodule(pq, dims)
    pool = [module_representation(module)]
    points = enumerate_fixed_points(pq, dims)
    for fp in points[:3]:
        sub, quo = sub_quotient_representations(fp)
        pool.append(sub)
        pool.append(quo)
    for _ in range(embeds):
        point = embed_representation(pq, dims, random_rep_maps(pq.quiver, dims, rng))
        pool.append(sub_representation(point))
        pool.append(quotient_representation(point))
    return pool
