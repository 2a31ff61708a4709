"""Bialynicki-Birula cells, Poincare polynomials, and the smoothness
certificate.

The tangent space at a fixed point N is Hom(N, M/N).  In the coordinate
bases its commutation equations couple only entries sharing the same label
pair (r, s) with r inside N and s outside, so the tangent space splits into
(r, s)-blocks; the torus acts on a block with weight w_s - w_r, and the cell
dimension is the total dimension of the positive-weight part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .bimodule import CoordinateModule, build_canonical_bimodule, dim_vector_e, module_representation
from .errors import ParallelPathsUnsupported, PavingInconsistent, SmoothnessNotCertified
from .exactalg import QQ, Matrix, rank
from .fixedpoints import FixedPoint, fixed_points_of_module, sub_quotient_representations
from .homology import graph_euler_form, hom_ext_dims
from .polynomials import IntPolynomial
from .quiver import PathQuiver

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Cocharacter:
    """Distinct integer weights, one per global basis label."""

    weights: tuple[int, ...]

    def __post_init__(self):
        assert len(set(self.weights)) == len(self.weights)


def generic_cocharacter(labels: Sequence, seed: int = 0) -> Cocharacter:
    """Seeded permutation of 1..n as weights; seed 0 keeps label order."""
    n = len(labels)
    w = list(range(1, n + 1))
    if seed:
        state = seed & _MASK64
        for i in range(n - 1, 0, -1):
            state = (state * _LCG_MULT + _LCG_INC) & _MASK64
            j = (state >> 16) % (i + 1)
            w[i], w[j] = w[j], w[i]
    return Cocharacter(tuple(w))


@dataclass(frozen=True)
class TangentBlock:
    r: int
    s: int
    dim: int
    weight: int


@dataclass
class TangentProfile:
    point: FixedPoint
    blocks: tuple[TangentBlock, ...]

    @property
    def d_plus(self) -> int:
        return sum(b.dim for b in self.blocks if b.weight > 0)

    @property
    def d_minus(self) -> int:
        return sum(b.dim for b in self.blocks if b.weight < 0)

    @property
    def total(self) -> int:
        return sum(b.dim for b in self.blocks)


def _block_constraints(module: CoordinateModule, fp: FixedPoint, r: int, s: int):
    """Variable vertices, equality edges, and zero-forced vertices of the
    (r, s) tangent block."""
    c_r, c_s = fp.ideals[r], fp.ideals[s]
    sup_s = module.supports[s]
    variables = [v for v in sorted(c_r) if v in sup_s and v not in c_s]
    var_set = set(variables)
    equalities = []
    zeros = []
    for a in module.graph.arrows:
        u, v = a.source, a.target
        if u in c_r and v in var_set:
            if u in var_set:
                equalities.append((u, v))
            elif u not in sup_s:
                zeros.append(v)
            # remaining case (s present at u but inside N there) cannot
            # occur: membership of s would propagate to v
    return variables, equalities, zeros


def tangent_block_dim(module: CoordinateModule, fp: FixedPoint, r: int, s: int) -> int:
    """Dimension of the (r, s) block, by exact linear algebra."""
    variables, equalities, zeros = _block_constraints(module, fp, r, s)
    if not variables:
        return 0
    index = {v: i for i, v in enumerate(variables)}
    rows = []
    for u, v in equalities:
        row = [QQ.zero] * len(variables)
        row[index[u]] = QQ.one
        row[index[v]] = QQ.sub(row[index[v]], QQ.one)
        rows.append(row)
    for v in zeros:
        row = [QQ.zero] * len(variables)
        row[index[v]] = QQ.one
        rows.append(row)
    if not rows:
        return len(variables)
    return len(variables) - rank(Matrix(QQ, rows, len(variables)))


def tangent_block_dim_components(module: CoordinateModule, fp: FixedPoint, r: int, s: int) -> int:
    """Same block dimension by counting equality components without a
    zero-forced member (combinatorial shortcut, kept as a cross-check)."""
    variables, equalities, zeros = _block_constraints(module, fp, r, s)
    parent = {v: v for v in variables}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in equalities:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    dead = {find(v) for v in zeros}
    roots = {find(v) for v in variables}
    return len(roots - dead)


def tangent_profile(fp: FixedPoint, cochar: Cocharacter) -> TangentProfile:
    module = fp.module
    nlab = len(module.labels)
    assert len(cochar.weights) == nlab
    blocks = []
    for r in range(nlab):
        if not fp.ideals[r]:
            continue
        for s in range(nlab):
            if s == r:
                continue
            d = tangent_block_dim(module, fp, r, s)
            if d:
                blocks.append(TangentBlock(r, s, d, cochar.weights[s] - cochar.weights[r]))
    return TangentProfile(fp, tuple(blocks))


@dataclass
class SmoothnessReport:
    ok: bool
    tangent_dim: int
    fixed_point_count: int
    support_count: int
    ext_mm: tuple[int, int, int]
    violations: tuple[str, ...]

    @property
    def points_ok(self) -> bool:
        """Tangent conditions hold at every fixed point.

        This is what the cell paving needs; ``ok`` additionally demands the
        rigidity Ext^1(M, M) = 0 of the ambient module, which is automatic
        for canonical modules (they are projective bimodules) but can fail
        for a hand-built coordinate module even when the variety is smooth.
        """
        return not self.violations

    def all_violations(self) -> tuple[str, ...]:
        out = list(self.violations)
        if self.ext_mm[1]:
            out.append(f"Ext^1(M, M) = {self.ext_mm[1]} != 0")
        return tuple(out)

    def __str__(self):
        if self.ok:
            return (
                f"smooth: certified at {self.support_count} support vertices, "
                f"tangent dim {self.tangent_dim} at all {self.fixed_point_count} fixed points"
            )
        return "smooth: NOT certified; " + "; ".join(self.all_violations())


def check_smooth_module(module: CoordinateModule, target: Sequence[int]) -> SmoothnessReport:
    """Ext-vanishing certificate over an arbitrary coordinate module."""
    target = tuple(target)
    mdims = module.dims
    quot = tuple(m - t for m, t in zip(mdims, target))
    expected = graph_euler_form(module.graph, target, quot)
    points = fixed_points_of_module(module, target)
    violations = []
    for fp in points:
        sub, quo = sub_quotient_representations(fp)
        hom, ext1, ext2 = hom_ext_dims(sub, quo)
        if (hom, ext1, ext2) != (expected, 0, 0):
            violations.append(
                f"{fp!r}: (hom, ext1, ext2) = ({hom}, {ext1}, {ext2}), "
                f"expected ({expected}, 0, 0)"
            )
    mrep = module_representation(module)
    ext_mm = hom_ext_dims(mrep, mrep)
    support = sum(1 for d in mdims if d > 0)
    return SmoothnessReport(
        ok=not violations and ext_mm[1] == 0,
        tangent_dim=expected,
        fixed_point_count=len(points),
        support_count=support,
        ext_mm=ext_mm,
        violations=tuple(violations),
    )


def check_smooth(pq: PathQuiver, dims: Mapping[str, int]) -> SmoothnessReport:
    if not pq.tree_mode:
        raise ParallelPathsUnsupported(
            "smoothness certificate requires a quiver without parallel paths"
        )
    module = build_canonical_bimodule(pq, dims)
    return check_smooth_module(module, dim_vector_e(pq, dims))


def module_poincare_polynomial(
    module: CoordinateModule, target: Sequence[int], seed: int = 0
) -> IntPolynomial:
    """BB cell generating polynomial, validated against the certificate,
    palindromicity, and the fixed-point count."""
    report = check_smooth_module(module, target)
    if not report.points_ok:
        raise SmoothnessNotCertified("; ".join(report.violations))
    cochar = generic_cocharacter(module.labels, seed)
    points = fixed_points_of_module(module, target)
    degree = report.tangent_dim
    coeffs = [0] * (degree + 1)
    for fp in points:
        prof = tangent_profile(fp, cochar)
        if prof.total != degree:
            raise PavingInconsistent(
                f"tangent dimension {prof.total} != {degree} at {fp!r}"
            )
        coeffs[prof.d_plus] += 1
    poly = IntPolynomial(coeffs)
    if poly.coeffs != tuple(coeffs):
        raise PavingInconsistent("top-dimensional cell missing")
    if not poly.is_palindromic():
        raise PavingInconsistent(f"cell polynomial {poly.pretty()} is not palindromic")
    if poly(1) != report.fixed_point_count:
        raise PavingInconsistent("cell count does not match the fixed-point count")
    return poly


def poincare_polynomial(pq: PathQuiver, dims: Mapping[str, int], seed: int = 0) -> IntPolynomial:
    if not pq.tree_mode:
        raise ParallelPathsUnsupported(
            "cell decomposition requires a quiver without parallel paths"
        )
    module = build_canonical_bimodule(pq, dims)
    return module_poincare_polynomial(module, dim_vector_e(pq, dims), seed)
