"""Hom and Ext groups of bound-graph representations.

For representations X, Y over the same bound graph the three-term complex

    C0 = sum_v Hom(X_v, Y_v)
    C1 = sum_{arrows a: u -> v} Hom(X_u, Y_v)
    C2 = sum_{squares s: start -> end} Hom(X_start, Y_end)

with d0(phi)_a = Y_a phi_u - phi_v X_a and, on a square with legs a1;a2 and
b1;b2,

    d1(psi)_s = Y_{a2} psi_{a1} + psi_{a2} X_{a1}
              - Y_{b2} psi_{b1} - psi_{b2} X_{b1}

computes Hom = ker d0 and the first two Ext groups.  d1 d0 = 0 because both
representations satisfy the square relations.
"""

from __future__ import annotations

from typing import Sequence

from .bimodule import BoundRepresentation
from .errors import ParallelPathsUnsupported
from .exactalg import Matrix, rank
from .quiver import BoundGraph, PathQuiver


def _offsets(sizes: Sequence[int]) -> list[int]:
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    return offs


def hom_complex(X: BoundRepresentation, Y: BoundRepresentation):
    """The two differentials, flattened: returns ((c0, c1, c2), d0, d1) where
    d0 is a c1 x c0 matrix and d1 is c2 x c1.  Hom(X_u, Y_v) blocks are
    flattened row-major."""
    graph = X.graph
    assert graph is Y.graph or (
        graph.vertices == Y.graph.vertices
        and graph.arrows == Y.graph.arrows
        and graph.squares == Y.graph.squares
    )
    field = X.field
    xd, yd = X.dims, Y.dims

    c0_sizes = [xd[v] * yd[v] for v in range(len(graph.vertices))]
    c1_sizes = [xd[a.source] * yd[a.target] for a in graph.arrows]
    c2_sizes = [xd[sq.start] * yd[sq.end] for sq in graph.squares]
    off0, off1, off2 = _offsets(c0_sizes), _offsets(c1_sizes), _offsets(c2_sizes)
    c0, c1, c2 = off0[-1], off1[-1], off2[-1]

    d0 = Matrix.zeros(field, c1, c0)
    for ai, a in enumerate(graph.arrows):
        u, v = a.source, a.target
        ya = Y.mats[ai].rows
        xa = X.mats[ai].rows
        for r in range(yd[v]):
            for c in range(xd[u]):
                row = off1[ai] + r * xd[u] + c
                for k in range(yd[u]):
                    col = off0[u] + k * xd[u] + c
                    d0.rows[row][col] = field.add(d0.rows[row][col], ya[r][k])
                for k in range(xd[v]):
                    col = off0[v] + r * xd[v] + k
                    d0.rows[row][col] = field.sub(d0.rows[row][col], xa[k][c])

    d1 = Matrix.zeros(field, c2, c1)
    for si, sq in enumerate(graph.squares):
        start, end = sq.start, sq.end
        legs = ((sq.a1, sq.a2, field.one), (sq.b1, sq.b2, field.neg(field.one)))
        for first, second, sign in legs:
            mid = graph.arrows[first].target
            ysecond = Y.mats[second].rows
            xfirst = X.mats[first].rows
            for r in range(yd[end]):
                for c in range(xd[start]):
                    row = off2[si] + r * xd[start] + c
                    # second composed after psi_first
                    for k in range(yd[mid]):
                        col = off1[first] + k * xd[start] + c
                        d1.rows[row][col] = field.add(
                            d1.rows[row][col], field.mul(sign, ysecond[r][k])
                        )
                    # psi_second composed after first
                    for k in range(xd[mid]):
                        col = off1[second] + r * xd[mid] + k
                        d1.rows[row][col] = field.add(
                            d1.rows[row][col], field.mul(sign, xfirst[k][c])
                        )
    return (c0, c1, c2), d0, d1


def hom_ext_dims(X: BoundRepresentation, Y: BoundRepresentation) -> tuple[int, int, int]:
    """(dim Hom, dim Ext^1, dim Ext^2) of the complex."""
    (c0, c1, c2), d0, d1 = hom_complex(X, Y)
    r0 = rank(d0)
    r1 = rank(d1)
    return c0 - r0, c1 - r1 - r0, c2 - r1


def hom_dim(X: BoundRepresentation, Y: BoundRepresentation) -> int:
    (c0, _c1, _c2), d0, _d1 = hom_complex(X, Y)
    return c0 - rank(d0)


def graph_euler_form(graph: BoundGraph, x: Sequence[int], y: Sequence[int]) -> int:
    """The bilinear form <x,y> = sum_v x_v y_v - sum_a x_u y_v + sum_s x_s y_e.

    Equals hom - ext1 + ext2 of any two representations with these dimension
    vectors, by rank-nullity applied to the complex.
    """
    total = sum(a * b for a, b in zip(x, y))
    for a in graph.arrows:
        total -= x[a.source] * y[a.target]
    for sq in graph.squares:
        total += x[sq.start] * y[sq.end]
    return total


def euler_form(pq: PathQuiver, x: Sequence[int], y: Sequence[int]) -> int:
    """Euler form of the path quiver with its square relations (tree mode)."""
    if not pq.tree_mode:
        raise ParallelPathsUnsupported(
            "the quadratic Euler form requires a quiver without parallel paths"
        )
    return graph_euler_form(pq.graph, x, y)
