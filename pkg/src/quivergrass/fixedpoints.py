"""Torus fixed points of sub-bimodule Grassmannians.

With one scaling-torus weight per basis label, the fixed submodules are
exactly the coordinate ones.  A fixed point therefore assigns to each label r
an arrow-closed subset C_r of supp(r) (the vertices carrying r), subject to
the cardinality constraint #{r : v in C_r} = target(v) at every vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .bimodule import (
    BoundRepresentation,
    CoordinateModule,
    SubmodulePoint,
    build_canonical_bimodule,
    dim_vector_e,
)
from .errors import InfeasibleDimensions
from .exactalg import QQ, Matrix, Subspace
from .quiver import BoundGraph, PathQuiver


def closed_subsets(graph: BoundGraph, support: Sequence[int]) -> tuple[frozenset[int], ...]:
    """All subsets of ``support`` closed under arrows of ``graph``.

    Every arrow leaving a support vertex must stay inside the support (true
    for label supports, where membership propagates along arrows).
    """
    sup = tuple(sorted(support))
    idx = {v: i for i, v in enumerate(sup)}
    k = len(sup)
    succ = [0] * k
    for a in graph.arrows:
        if a.source in idx:
            assert a.target in idx, "label support must be arrow-closed"
            succ[idx[a.source]] |= 1 << idx[a.target]
    out = []
    for mask in range(1 << k):
        closed = True
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            if succ[i] & ~mask:
                closed = False
                break
        if closed:
            out.append(frozenset(sup[i] for i in range(k) if mask >> i & 1))
    return tuple(out)


@dataclass(frozen=True)
class FixedPoint:
    """Per-label arrow-closed vertex sets; the coordinate submodule they span."""

    module: CoordinateModule
    ideals: tuple[frozenset[int], ...]

    def vertex_labels(self) -> tuple[tuple[int, ...], ...]:
        """At each vertex, the indices of labels present, in basis order."""
        li = self.module.label_index
        out = []
        for v, labs in enumerate(self.module.basis):
            out.append(tuple(li[lab] for lab in labs if v in self.ideals[li[lab]]))
        return tuple(out)

    @property
    def dims(self) -> tuple[int, ...]:
        counts = [0] * len(self.module.basis)
        for members in self.ideals:
            for v in members:
                counts[v] += 1
        return tuple(counts)

    def sort_key(self):
        return tuple(tuple(sorted(m)) for m in self.ideals)

    def __repr__(self):
        parts = []
        for r, members in enumerate(self.ideals):
            if members:
                names = ",".join(self.module.graph.vertices[v] for v in sorted(members))
                parts.append(f"{self.module.labels[r]}:{{{names}}}")
        return "FixedPoint(" + "; ".join(parts) + ")"


def fixed_points_of_module(
    module: CoordinateModule,
    target: Sequence[int],
    search_order: Optional[Sequence[int]] = None,
) -> tuple[FixedPoint, ...]:
    """All fixed points with the given per-vertex dimensions.

    Backtracks over labels (most-supported first unless ``search_order`` is
    given), pruning on running per-vertex counts; the result is sorted
    canonically and does not depend on the search order.
    """
    nv = len(module.graph.vertices)
    nlab = len(module.labels)
    target = tuple(target)
    if len(target) != nv:
        raise InfeasibleDimensions("target dimension vector has wrong length")
    if any(t < 0 for t in target):
        raise InfeasibleDimensions("negative target dimension")

    if search_order is None:
        order = sorted(range(nlab), key=lambda r: (-len(module.supports[r]), r))
    else:
        order = list(search_order)
        assert sorted(order) == list(range(nlab))

    choice_cache: dict[frozenset[int], tuple[frozenset[int], ...]] = {}
    choices = []
    for r in order:
        sup = module.supports[r]
        if sup not in choice_cache:
            choice_cache[sup] = closed_subsets(module.graph, sup)
        choices.append(choice_cache[sup])

    # suffix[k][v] = how many labels at positions >= k could still cover v
    suffix = [[0] * nv for _ in range(len(order) + 1)]
    for k in range(len(order) - 1, -1, -1):
        row = list(suffix[k + 1])
        for v in module.supports[order[k]]:
            row[v] += 1
        suffix[k] = row

    counts = [0] * nv
    assignment: list[frozenset[int]] = [frozenset()] * nlab
    results: list[tuple[frozenset[int], ...]] = []

    def feasible(k: int) -> bool:
        row = suffix[k]
        for v in range(nv):
            c = counts[v]
            if c > target[v] or c + row[v] < target[v]:
                return False
        return True

    def dfs(k: int) -> None:
        if not feasible(k):
            return
        if k == len(order):
            results.append(tuple(assignment))
            return
        r = order[k]
        for members in choices[k]:
            assignment[r] = members
            for v in members:
                counts[v] += 1
            dfs(k + 1)
            for v in members:
                counts[v] -= 1
        assignment[r] = frozenset()

    dfs(0)
    points = [FixedPoint(module, ids) for ids in results]
    points.sort(key=FixedPoint.sort_key)
    return tuple(points)


def enumerate_fixed_points(
    pq: PathQuiver,
    dims: Mapping[str, int],
    search_order: Optional[Sequence[int]] = None,
) -> tuple[FixedPoint, ...]:
    module = build_canonical_bimodule(pq, dims)
    return fixed_points_of_module(module, dim_vector_e(pq, dims), search_order)


def euler_characteristic(pq: PathQuiver, dims: Mapping[str, int]) -> int:
    return len(enumerate_fixed_points(pq, dims))


def submodule_point(fp: FixedPoint, field=QQ) -> SubmodulePoint:
    """The fixed point as an explicit coordinate SubmodulePoint."""
    module = fp.module
    spaces = []
    for v, labs in enumerate(module.basis):
        ambient = len(labs)
        vectors = []
        for pos, lab in enumerate(labs):
            if v in fp.ideals[module.label_index[lab]]:
                vec = [field.zero] * ambient
                vec[pos] = field.one
                vectors.append(vec)
        spaces.append(Subspace.from_vectors(field, ambient, vectors))
    point = SubmodulePoint(module, field, spaces)
    point.validate()
    return point


def sub_quotient_representations(
    fp: FixedPoint, field=QQ
) -> tuple[BoundRepresentation, BoundRepresentation]:
    """The fixed submodule N and the quotient M/N, in their label bases."""
    module = fp.module
    li = module.label_index
    sub_basis = []
    quo_basis = []
    for v, labs in enumerate(module.basis):
        sub_basis.append([lab for lab in labs if v in fp.ideals[li[lab]]])
        quo_basis.append([lab for lab in labs if v not in fp.ideals[li[lab]]])

    def rep(basis_lists):
        pos = [{lab: i for i, lab in enumerate(labs)} for labs in basis_lists]
        dims = [len(labs) for labs in basis_lists]
        mats = []
        for a in module.graph.arrows:
            m = Matrix.zeros(field, dims[a.target], dims[a.source])
            tpos = pos[a.target]
            for j, lab in enumerate(basis_lists[a.source]):
                i = tpos.get(lab)
                if i is not None:
                    m.rows[i][j] = field.one
            mats.append(m)
        return BoundRepresentation(module.graph, field, dims, mats)

    return rep(sub_basis), rep(quo_basis)


def decompose_fixed_point(fp: FixedPoint) -> tuple[tuple[int, frozenset[int]], ...]:
    """Indecomposable summands as (label index, component vertex set) pairs.

    Each label contributes one summand per weakly connected component of its
    vertex set under the arrows joining members.
    """
    graph = fp.module.graph
    out = []
    for r, members in enumerate(fp.ideals):
        if not members:
            continue
        parent = {v: v for v in members}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in graph.arrows:
            if a.source in parent and a.target in parent:
                ra, rb = find(a.source), find(a.target)
                if ra != rb:
                    parent[ra] = rb
        comps: dict[int, set[int]] = {}
        for v in members:
            comps.setdefault(find(v), set()).add(v)
        for comp in comps.values():
            out.append((r, frozenset(comp)))
    out.sort(key=lambda item: (item[0], tuple(sorted(item[1]))))
    return tuple(out)


def fixed_point_type(fp: FixedPoint) -> tuple[tuple[str, ...], ...]:
    """The multiset of component shapes, as sorted vertex-name tuples."""
    names = fp.module.graph.vertices
    shapes = [
        tuple(names[v] for v in sorted(comp)) for _, comp in decompose_fixed_point(fp)
    ]
    shapes.sort()
    return tuple(shapes)
