"""Acyclic quivers, their path quivers, and upper ideals of the subpath order.

A quiver is a finite directed graph.  Only acyclic quivers are accepted.  The
path quiver has one vertex per path (lazy paths included) and one arrow per
one-step extension of a path, either at its source (prepend an arrow) or at
its target (append).  Prepend-then-append and append-then-prepend agree as
paths; each such pair of legs is recorded as a relation square.

Everything downstream indexes path-quiver vertices by their position in
``enumerate_paths`` order: length first, then the arrow-id sequence, then the
source vertex's declaration order (which only matters for lazy paths).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    DanglingEndpoint,
    DuplicateIdentifier,
    ParseError,
    SupportNotArrowClosed,
)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """A finite acyclic quiver with ordered, globally unique identifiers."""

    def __init__(self, vertices: Sequence[str], arrows: Iterable[tuple[str, str, str]]):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows)

        seen: set[str] = set()
        for name in self.vertices:
            if name in seen:
                raise DuplicateIdentifier(f"vertex {name!r} declared twice")
            seen.add(name)
        for arr in self.arrows:
            if arr.name in seen:
                raise DuplicateIdentifier(f"identifier {arr.name!r} declared twice")
            seen.add(arr.name)

        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        for arr in self.arrows:
            for endpoint in (arr.source, arr.target):
                if endpoint not in self.vertex_index:
                    raise DanglingEndpoint(
                        f"arrow {arr.name!r} references unknown vertex {endpoint!r}"
                    )

        self.arrows_from: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        self.arrows_into: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for arr in self.arrows:
            self.arrows_from[arr.source].append(arr)
            self.arrows_into[arr.target].append(arr)
        for v in self.vertices:
            self.arrows_from[v].sort(key=lambda a: a.name)
            self.arrows_into[v].sort(key=lambda a: a.name)

        self.topological = self._toposort()

    def _toposort(self) -> tuple[str, ...]:
        indeg = {v: 0 for v in self.vertices}
        for arr in self.arrows:
            indeg[arr.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order: list[str] = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for arr in self.arrows_from[v]:
                indeg[arr.target] -= 1
                if indeg[arr.target] == 0:
                    ready.append(arr.target)
        if len(order) != len(self.vertices):
            stuck = sorted(v for v, d in indeg.items() if d > 0)
            raise CycleDetected(f"directed cycle through {', '.join(stuck)}")
        return tuple(order)

    def bound_graph(self) -> "BoundGraph":
        """The quiver as a relation-free bound graph (for Hom/Ext of its reps)."""
        arrows = [
            GraphArrow(i, self.vertex_index[a.source], self.vertex_index[a.target], a.name)
            for i, a in enumerate(self.arrows)
        ]
        return BoundGraph(self.vertices, arrows)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def parse_quiver(text: str) -> tuple[Quiver, dict[str, int]]:
    """Parse the line-based text format.

    Directives: ``vertex <id>``, ``arrow <id> <src> <tgt>``,
    ``dim <vertex> <n>``.  ``#`` starts a comment.  Identifiers are nonempty
    alphanumeric tokens, globally unique.  Vertices without a dim line get 0.
    """
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    dims: dict[str, int] = {}
    declared: set[str] = set()

    def check_id(tok: str, lineno: int) -> str:
        if not tok.isalnum():
            raise ParseError(f"line {lineno}: identifier {tok!r} is not alphanumeric")
        return tok

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind == "vertex":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: expected 'vertex <id>'")
            name = check_id(toks[1], lineno)
            if name in declared:
                raise DuplicateIdentifier(f"line {lineno}: identifier {name!r} reused")
            declared.add(name)
            vertices.append(name)
        elif kind == "arrow":
            if len(toks) != 4:
                raise ParseError(f"line {lineno}: expected 'arrow <id> <src> <tgt>'")
            name = check_id(toks[1], lineno)
            if name in declared:
                raise DuplicateIdentifier(f"line {lineno}: identifier {name!r} reused")
            declared.add(name)
            arrows.append((name, check_id(toks[2], lineno), check_id(toks[3], lineno)))
        elif kind == "dim":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: expected 'dim <vertex> <n>'")
            v = toks[1]
            if v not in vertices:
                raise DanglingEndpoint(f"line {lineno}: dim for unknown vertex {v!r}")
            if v in dims:
                raise DuplicateIdentifier(f"line {lineno}: dim for {v!r} given twice")
            try:
                n = int(toks[2])
            except ValueError:
                raise ParseError(f"line {lineno}: dimension {toks[2]!r} is not an integer")
            if n < 0:
                raise ParseError(f"line {lineno}: dimension must be nonnegative")
            dims[v] = n
        else:
            raise ParseError(f"line {lineno}: unknown directive {kind!r}")

    quiver = Quiver(vertices, arrows)
    for v in vertices:
        dims.setdefault(v, 0)
    return quiver, dims


def validate_quiver(text: str) -> Quiver:
    return parse_quiver(text)[0]


@dataclass(frozen=True)
class Path:
    """A path, stored source-to-target; lazy paths have no arrows."""

    vertices: tuple[str, ...]
    arrows: tuple[str, ...]

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_lazy(self) -> bool:
        return not self.arrows

    def name(self, joiner: str = "") -> str:
        if self.is_lazy:
            return f"e_{self.source}"
        # composition order: the last arrow traversed is written first
        return joiner.join(reversed(self.arrows))

    def __repr__(self):
        return f"Path({self.name()})"


def enumerate_paths(quiver: Quiver) -> tuple[Path, ...]:
    """All paths, ordered by (length, arrow-id sequence, source declaration)."""
    found = [Path((v,), ()) for v in quiver.vertices]
    frontier = list(found)
    while frontier:
        nxt = []
        for p in frontier:
            for arr in quiver.arrows_from[p.target]:
                nxt.append(Path(p.vertices + (arr.target,), p.arrows + (arr.name,)))
        found.extend(nxt)
        frontier = nxt
    found.sort(key=lambda p: (p.length, p.arrows, quiver.vertex_index[p.source]))
    return tuple(found)


def count_paths_between(quiver: Quiver) -> dict[tuple[str, str], int]:
    """Number of paths u -> v (lazy included) for every vertex pair, by DP."""
    counts = {(u, v): 0 for u in quiver.vertices for v in quiver.vertices}
    for u in reversed(quiver.topological):
        counts[(u, u)] = 1
        for arr in quiver.arrows_from[u]:
            for v in quiver.vertices:
                counts[(u, v)] += counts[(arr.target, v)]
    return counts


def has_parallel_paths(quiver: Quiver) -> bool:
    return any(n >= 2 for n in count_paths_between(quiver).values())


@dataclass(frozen=True)
class GraphArrow:
    index: int
    source: int
    target: int
    name: str
    kind: str = ""  # "pre"/"post" on path quivers, "" on generic graphs
    base: str = ""  # underlying quiver arrow for path-quiver arrows


@dataclass(frozen=True)
class GraphSquare:
    """Two parallel legs a1;a2 and b1;b2 from ``start`` to ``end``."""

    start: int
    end: int
    a1: int
    a2: int
    b1: int
    b2: int
    alpha: str = ""
    beta: str = ""


class BoundGraph:
    """A finite DAG with named vertices and a list of commutativity squares.

    This is the shape every module downstream works against: the path quiver
    provides one, and so do hand-built comparison models.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        arrows: Sequence[GraphArrow],
        squares: Sequence[GraphSquare] = (),
    ):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.squares = tuple(squares)
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateIdentifier("graph vertex names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise DanglingEndpoint(f"arrow {a.name!r} endpoint out of range")
        self.out_arrows: list[list[GraphArrow]] = [[] for _ in self.vertices]
        self.in_arrows: list[list[GraphArrow]] = [[] for _ in self.vertices]
        for a in self.arrows:
            self.out_arrows[a.source].append(a)
            self.in_arrows[a.target].append(a)
        for sq in self.squares:
            a1, a2 = self.arrows[sq.a1], self.arrows[sq.a2]
            b1, b2 = self.arrows[sq.b1], self.arrows[sq.b2]
            ok = (
                a1.source == b1.source == sq.start
                and a2.target == b2.target == sq.end
                and a1.target == a2.source
                and b1.target == b2.source
            )
            if not ok:
                raise DanglingEndpoint("square legs do not close up")
        self.topological = self._toposort()

    def _toposort(self) -> tuple[int, ...]:
        indeg = [0] * len(self.vertices)
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [i for i, d in enumerate(indeg) if d == 0]
        order: list[int] = []
        while ready:
            i = ready.pop(0)
            order.append(i)
            for a in self.out_arrows[i]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        if len(order) != len(self.vertices):
            raise CycleDetected("bound graph has a directed cycle")
        return tuple(order)

    @property
    def reach_masks(self) -> list[int]:
        """reach_masks[i] has bit j set iff j is reachable from i (j >= i in the order)."""
        cached = getattr(self, "_reach", None)
        if cached is None:
            cached = [0] * len(self.vertices)
            for i in reversed(self.topological):
                m = 1 << i
                for a in self.out_arrows[i]:
                    m |= cached[a.target]
                cached[i] = m
            self._reach = cached
        return cached

    def leq(self, i: int, j: int) -> bool:
        return bool(self.reach_masks[i] >> j & 1)


class PathQuiver:
    """The quiver of paths of an acyclic quiver, with its relation squares."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self.paths = enumerate_paths(quiver)
        self.tree_mode = not has_parallel_paths(quiver)
        self.path_index = {(p.vertices, p.arrows): i for i, p in enumerate(self.paths)}

        names = [p.name() for p in self.paths]
        if len(set(names)) != len(names):
            names = [p.name("*") for p in self.paths]
        self.names = tuple(names)

        arrows: list[GraphArrow] = []
        ext_index: dict[tuple[str, str, int], int] = {}

        def add(kind: str, base: Arrow, src: int, tgt_path: Path) -> None:
            tgt = self.path_index[(tgt_path.vertices, tgt_path.arrows)]
            idx = len(arrows)
            arrows.append(
                GraphArrow(idx, src, tgt, f"{kind}:{base.name}:{src}", kind, base.name)
            )
            ext_index[(kind, base.name, src)] = idx

        for i, p in enumerate(self.paths):
            for alpha in quiver.arrows_into[p.source]:
                add("pre", alpha, i, Path((alpha.source,) + p.vertices, (alpha.name,) + p.arrows))
            for beta in quiver.arrows_from[p.target]:
                add("post", beta, i, Path(p.vertices + (beta.target,), p.arrows + (beta.name,)))

        squares: list[GraphSquare] = []
        for i, p in enumerate(self.paths):
            for alpha in quiver.arrows_into[p.source]:
                for beta in quiver.arrows_from[p.target]:
                    a1 = ext_index[("pre", alpha.name, i)]
                    mid_a = arrows[a1].target
                    a2 = ext_index[("post", beta.name, mid_a)]
                    b1 = ext_index[("post", beta.name, i)]
                    mid_b = arrows[b1].target
                    b2 = ext_index[("pre", alpha.name, mid_b)]
                    assert arrows[a2].target == arrows[b2].target
                    squares.append(
                        GraphSquare(i, arrows[a2].target, a1, a2, b1, b2, alpha.name, beta.name)
                    )

        self.graph = BoundGraph(self.names, arrows, squares)

    @property
    def arrows(self) -> tuple[GraphArrow, ...]:
        return self.graph.arrows

    @property
    def squares(self) -> tuple[GraphSquare, ...]:
        return self.graph.squares

    def __len__(self):
        return len(self.paths)

    def leq(self, i: int, j: int) -> bool:
        """Subpath order: i <= j iff path j extends path i."""
        return self.graph.leq(i, j)

    def pair_projection(self) -> tuple[tuple[str, str], ...]:
        """(target, source) per path vertex; injective exactly in tree mode."""
        return tuple((p.target, p.source) for p in self.paths)

    def vertices_through(self, vertex: str) -> frozenset[int]:
        """Indices of all paths passing through the given quiver vertex."""
        return frozenset(i for i, p in enumerate(self.paths) if vertex in p.vertices)

    def __repr__(self):
        return f"PathQuiver({len(self.paths)} paths, {len(self.arrows)} arrows, {len(self.squares)} squares)"


def build_path_quiver(quiver: Quiver) -> PathQuiver:
    return PathQuiver(quiver)


@dataclass(frozen=True)
class UpperIdeal:
    """An up-closed subset of path vertices inside a declared ambient support."""

    ambient: tuple[int, ...]
    members: frozenset[int]

    @property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __len__(self):
        return len(self.members)


def _closedness_masks(pq: PathQuiver, support: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    amb = tuple(sorted(support))
    pos = {v: k for k, v in enumerate(amb)}
    succ = [0] * len(amb)
    for k, v in enumerate(amb):
        for a in pq.graph.out_arrows[v]:
            if a.target not in pos:
                raise SupportNotArrowClosed(
                    f"support drops vertex {pq.names[a.target]} above {pq.names[v]}"
                )
            succ[k] |= 1 << pos[a.target]
    return amb, succ


def upper_ideals(pq: PathQuiver, support: Iterable[int]) -> list[UpperIdeal]:
    """All up-closed subsets of ``support``, in ascending bitmask order.

    Includes the empty set and the full support.  The support itself must be
    arrow-closed (true for every basis-label support).
    """
    amb, succ = _closedness_masks(pq, list(support))
    n = len(amb)
    out: list[UpperIdeal] = []
    for mask in range(1 << n):
        need = 0
        m = mask
        while m:
            low = m & -m
            need |= succ[low.bit_length() - 1]
            m ^= low
        if need & ~mask:
            continue
        out.append(UpperIdeal(amb, frozenset(amb[k] for k in range(n) if mask >> k & 1)))
    return out


def is_upper_ideal(pq: PathQuiver, ambient: Iterable[int], members: Iterable[int]) -> bool:
    amb = set(ambient)
    mem = set(members)
    if not mem <= amb:
        return False
    return all(
        a.target in mem for v in mem for a in pq.graph.out_arrows[v] if a.target in amb
    )


def decompose_ideal(pq: PathQuiver, ideal: UpperIdeal) -> tuple[UpperIdeal, ...]:
    """Connected components of the ideal under undirected extension-arrow adjacency.

    Each component is itself an upper ideal in the same ambient; the result is
    sorted by (size, member tuple) so equal multisets compare equal.
    """
    members = sorted(ideal.members)
    parent = {v: v for v in members}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for v in members:
        for a in pq.graph.out_arrows[v]:
            if a.target in parent:
                ra, rb = find(v), find(a.target)
                if ra != rb:
                    parent[ra] = rb
    comps: dict[int, list[int]] = {}
    for v in members:
        comps.setdefault(find(v), []).append(v)
    parts = [UpperIdeal(ideal.ambient, frozenset(c)) for c in comps.values()]
    parts.sort(key=lambda u: (len(u), u.sorted_members))
    return tuple(parts)
