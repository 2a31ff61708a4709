"""The canonical bimodule attached to dimension data on an acyclic quiver,
and representations/points living over its path quiver.

For each quiver vertex p there are d_p basis labels, globally distinct.  The
canonical module places, at a path vertex omega, one coordinate per label of
each quiver vertex omega passes through (ordered along the path, source
first); every extension arrow acts as the evident 0/1 inclusion that keeps
labels fixed.  ``CoordinateModule`` captures exactly that structure and is
also used for hand-built comparison models that share it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import InfeasibleDimensions, NotASubrepresentation, ParallelPathsUnsupported
from .exactalg import QQ, Matrix, Subspace
from .quiver import BoundGraph, PathQuiver


@dataclass(frozen=True, order=True)
class BasisLabel:
    vertex: str
    index: int

    def __str__(self):
        return f"{self.vertex}.{self.index}"


class CoordinateModule:
    """A DAG of coordinate spaces whose arrows act by label identity.

    ``basis[v]`` lists the labels carried by vertex v; every arrow u -> v
    requires set(basis[u]) <= set(basis[v]) and sends the coordinate of a
    label to the coordinate of the same label.
    """

    def __init__(
        self,
        graph: BoundGraph,
        labels: Sequence[BasisLabel],
        basis: Sequence[Sequence[BasisLabel]],
    ):
        self.graph = graph
        self.labels = tuple(labels)
        self.basis = tuple(tuple(b) for b in basis)
        assert len(self.basis) == len(graph.vertices)
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.label_index) != len(self.labels):
            raise InfeasibleDimensions("duplicate global labels")
        self.positions: list[dict[BasisLabel, int]] = []
        for v, labs in enumerate(self.basis):
            pos = {lab: i for i, lab in enumerate(labs)}
            if len(pos) != len(labs):
                raise InfeasibleDimensions(f"duplicate label at vertex {graph.vertices[v]}")
            for lab in labs:
                if lab not in self.label_index:
                    raise InfeasibleDimensions(f"unknown label {lab}")
            self.positions.append(pos)
        for a in graph.arrows:
            src_set = set(self.basis[a.source])
            if not src_set <= set(self.basis[a.target]):
                raise InfeasibleDimensions(
                    f"arrow {a.name!r} does not include labels of its source"
                )
        # per label: which vertices carry it
        self.supports: list[frozenset[int]] = [
            frozenset(v for v in range(len(self.basis)) if lab in self.positions[v])
            for lab in self.labels
        ]
        # per arrow: coordinate i at source goes to coordinate map[i] at target
        self.arrow_maps: list[list[int]] = [
            [self.positions[a.target][lab] for lab in self.basis[a.source]]
            for a in graph.arrows
        ]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)

    def push_vector(self, arrow_index: int, vec: Sequence) -> list:
        """Image of a source-coordinates vector under an arrow, as target coordinates."""
        a = self.graph.arrows[arrow_index]
        amap = self.arrow_maps[arrow_index]
        zero = vec[0] * 0 if vec else 0
        result = [zero] * len(self.basis[a.target])
        for i, x in enumerate(vec):
            result[amap[i]] = x
        return result

    def __repr__(self):
        return f"CoordinateModule({len(self.graph.vertices)} vertices, {len(self.labels)} labels)"


def _check_dims(pq: PathQuiver, dims: Mapping[str, int]) -> dict[str, int]:
    full = {}
    for v in pq.quiver.vertices:
        d = dims.get(v, 0)
        if d < 0:
            raise InfeasibleDimensions(f"negative dimension at vertex {v!r}")
        full[v] = d
    return full


def build_canonical_bimodule(pq: PathQuiver, dims: Mapping[str, int]) -> CoordinateModule:
    """Canonical module of the dimension data: one coordinate per (visited
    vertex, label) at each path vertex, inclusions along extension arrows."""
    d = _check_dims(pq, dims)
    labels = [
        BasisLabel(v, i) for v in pq.quiver.vertices for i in range(1, d[v] + 1)
    ]
    basis = [
        tuple(BasisLabel(p, i) for p in path.vertices for i in range(1, d[p] + 1))
        for path in pq.paths
    ]
    return CoordinateModule(pq.graph, labels, basis)


def dim_vector_m(pq: PathQuiver, dims: Mapping[str, int]) -> tuple[int, ...]:
    d = _check_dims(pq, dims)
    return tuple(sum(d[p] for p in path.vertices) for path in pq.paths)


def dim_vector_f(pq: PathQuiver, dims: Mapping[str, int]) -> tuple[int, ...]:
    d = _check_dims(pq, dims)
    return tuple(d[path.target] for path in pq.paths)


def dim_vector_e(pq: PathQuiver, dims: Mapping[str, int]) -> tuple[int, ...]:
    d = _check_dims(pq, dims)
    return tuple(sum(d[p] for p in path.vertices[:-1]) for path in pq.paths)


def dim_vector_n(pq: PathQuiver, dims: Mapping[str, int]) -> tuple[int, ...]:
    """Dimensions of the arrow-indexed sibling module (tree mode only).

    At a path vertex this counts one copy of V_{s(alpha)} per factorization of
    the path across an arrow occurrence alpha.  Pointwise it satisfies
    m - n = f, which is asserted.
    """
    if not pq.tree_mode:
        raise ParallelPathsUnsupported("the arrow-indexed module needs tree mode")
    d = _check_dims(pq, dims)
    out = []
    for path in pq.paths:
        total = 0
        for k in range(path.length):
            total += d[path.vertices[k]]
        out.append(total)
    n = tuple(out)
    m = dim_vector_m(pq, dims)
    f = dim_vector_f(pq, dims)
    assert all(mm - nn == ff for mm, nn, ff in zip(m, n, f))
    return n


class BoundRepresentation:
    """Spaces and matrices over a bound graph; relation squares must commute."""

    def __init__(
        self,
        graph: BoundGraph,
        field,
        dims: Sequence[int],
        mats: Sequence[Matrix],
        check: bool = True,
    ):
        self.graph = graph
        self.field = field
        self.dims = tuple(dims)
        self.mats = tuple(mats)
        if check:
            self.validate()

    def validate(self) -> None:
        assert len(self.dims) == len(self.graph.vertices)
        assert len(self.mats) == len(self.graph.arrows)
        for a, m in zip(self.graph.arrows, self.mats):
            if (m.nrows, m.ncols) != (self.dims[a.target], self.dims[a.source]):
                raise InfeasibleDimensions(
                    f"matrix for arrow {a.name!r} has shape {m.nrows}x{m.ncols}, "
                    f"expected {self.dims[a.target]}x{self.dims[a.source]}"
                )
        for sq in self.graph.squares:
            left = self.mats[sq.a2].mul(self.mats[sq.a1])
            right = self.mats[sq.b2].mul(self.mats[sq.b1])
            if left != right:
                raise NotASubrepresentation(
                    "relation square fails to commute "
                    f"({self.graph.arrows[sq.a1].name}; {self.graph.arrows[sq.a2].name})"
                )

    def __repr__(self):
        return f"BoundRepresentation(dims={self.dims})"


def module_representation(module: CoordinateModule, field=QQ) -> BoundRepresentation:
    """The module itself as a representation: 0/1 label-inclusion matrices."""
    dims = module.dims
    mats = []
    for ai, a in enumerate(module.graph.arrows):
        m = Matrix.zeros(field, dims[a.target], dims[a.source])
        for i, j in enumerate(module.arrow_maps[ai]):
            m.rows[j][i] = field.one
        mats.append(m)
    return BoundRepresentation(module.graph, field, dims, mats, check=False)


class SubmodulePoint:
    """A point of the sub-bimodule Grassmannian: one subspace per vertex,
    closed under every arrow."""

    def __init__(self, module: CoordinateModule, field, spaces: Sequence[Subspace]):
        self.module = module
        self.field = field
        self.spaces = tuple(spaces)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)

    def validate(self, expected_dims: Optional[Sequence[int]] = None) -> None:
        mdims = self.module.dims
        for v, s in enumerate(self.spaces):
            if s.ambient != mdims[v]:
                raise InfeasibleDimensions(
                    f"subspace at {self.module.graph.vertices[v]} lives in ambient "
                    f"{s.ambient}, expected {mdims[v]}"
                )
        for ai, a in enumerate(self.module.graph.arrows):
            tgt = self.spaces[a.target]
            for row in self.spaces[a.source].rows:
                if not tgt.contains(self.module.push_vector(ai, row)):
                    raise NotASubrepresentation(
                        f"not closed under arrow {a.name!r} "
                        f"({self.module.graph.vertices[a.source]} -> "
                        f"{self.module.graph.vertices[a.target]})"
                    )
        if expected_dims is not None and self.dims != tuple(expected_dims):
            raise InfeasibleDimensions(
                f"dimension vector {self.dims} differs from expected {tuple(expected_dims)}"
            )

    def __eq__(self, other):
        return isinstance(other, SubmodulePoint) and self.spaces == other.spaces

    def __repr__(self):
        return f"SubmodulePoint(dims={self.dims})"


def embed_representation(
    pq: PathQuiver,
    dims: Mapping[str, int],
    maps: Mapping[str, Sequence[Sequence]],
    field=QQ,
) -> SubmodulePoint:
    """Graph embedding of a quiver representation into the canonical module.

    ``maps[alpha]`` is the d_{t(alpha)} x d_{s(alpha)} matrix of the arrow.
    At each path vertex the point is the span, over the arrows the path
    traverses, of the graphs {x + V_alpha(x)}; its dimension vector is e.
    """
    d = _check_dims(pq, dims)
    module = build_canonical_bimodule(pq, dims)
    mats: dict[str, Matrix] = {}
    for arr in pq.quiver.arrows:
        raw = maps.get(arr.name)
        rows_expected, cols_expected = d[arr.target], d[arr.source]
        if raw is None:
            m = Matrix.zeros(field, rows_expected, cols_expected)
        else:
            m = Matrix(field, [list(r) for r in raw], cols_expected)
            if (m.nrows, m.ncols) != (rows_expected, cols_expected):
                raise InfeasibleDimensions(
                    f"map for arrow {arr.name!r} has shape {m.nrows}x{m.ncols}, "
                    f"expected {rows_expected}x{cols_expected}"
                )
        mats[arr.name] = m

    arrow_by_name = {arr.name: arr for arr in pq.quiver.arrows}
    spaces = []
    for vi, path in enumerate(pq.paths):
        ambient = len(module.basis[vi])
        pos = module.positions[vi]
        vectors = []
        for k, alpha in enumerate(path.arrows):
            arr = arrow_by_name[alpha]
            src, tgt = path.vertices[k], path.vertices[k + 1]
            vmat = mats[alpha]
            for col in range(d[src]):
                vec = [field.zero] * ambient
                vec[pos[BasisLabel(src, col + 1)]] = field.one
                for row in range(d[tgt]):
                    vec[pos[BasisLabel(tgt, row + 1)]] = vmat.rows[row][col]
                vectors.append(vec)
        spaces.append(Subspace.from_vectors(field, ambient, vectors))

    point = SubmodulePoint(module, field, spaces)
    evec = dim_vector_e(pq, dims)
    point.validate(expected_dims=evec)
    return point


def sub_representation(point: SubmodulePoint) -> BoundRepresentation:
    """The point itself as a representation, in its echelon bases."""
    point.validate()
    field = point.field
    dims = point.dims
    mats = []
    for ai, a in enumerate(point.module.graph.arrows):
        src_space = point.spaces[a.source]
        tgt_space = point.spaces[a.target]
        cols = []
        for row in src_space.rows:
            w = point.module.push_vector(ai, row)
            coeffs = [w[p] for p in tgt_space.pivots]
            cols.append(coeffs)
        m = Matrix.zeros(field, tgt_space.dim, src_space.dim)
        for j, col in enumerate(cols):
            for i, c in enumerate(col):
                m.rows[i][j] = c
        mats.append(m)
    return BoundRepresentation(point.module.graph, field, dims, mats)


def quotient_representation(point: SubmodulePoint) -> BoundRepresentation:
    """Ambient-modulo-point, in the coordinate classes of non-pivot positions."""
    point.validate()
    field = point.field
    module = point.module
    quot_pos = [s.free_positions() for s in point.spaces]
    dims = [len(fp) for fp in quot_pos]
    mats = []
    for ai, a in enumerate(module.graph.arrows):
        src_free = quot_pos[a.source]
        tgt_free = quot_pos[a.target]
        tgt_space = point.spaces[a.target]
        m = Matrix.zeros(field, len(tgt_free), len(src_free))
        ambient_src = len(module.basis[a.source])
        for j, c in enumerate(src_free):
            vec = [field.zero] * ambient_src
            vec[c] = field.one
            w = tgt_space.reduce(module.push_vector(ai, vec))
            for i, pos in enumerate(tgt_free):
                m.rows[i][j] = w[pos]
        mats.append(m)
    return BoundRepresentation(module.graph, field, dims, mats)
