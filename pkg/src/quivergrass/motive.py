"""Motives of framed moduli spaces via a stratification recursion.

For a vector g of quotient dimensions over the path quiver write [M_g] for
the motive of the variety of submodules N of the canonical bimodule M with
dim M/N = g.  Stratifying the framed representation variety by the
subrepresentation generated by the framing vectors gives, in the
Grothendieck ring with L and the L^k - 1 inverted,

    L^fr(g) [R_g] / [G_g]
        = sum over h <= g of  [M_h] [R_{g-h}] / [G_{g-h}] L^{-<g-h, h>}

where fr(g) = sum_v d_v g(e_v) counts framing coordinates, [R_g] is the
motive of the bound representation variety, [G_g] the base-change group,
and <,> the Euler form of the bound graph.  Solving inductively in graded
lexicographic order determines every [M_g].  The top entry g = f is the
Grassmannian itself and must come out polynomial; intermediate entries may
fail to be polynomial only when something upstream is wrong, so those are
kept as diagnostics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Optional, Sequence

from .bimodule import CoordinateModule, build_canonical_bimodule, dim_vector_f
from .cells import poincare_polynomial
from .counting import (
    DEFAULT_CAP,
    CountSample,
    count_and_interpolate,
    count_repvariety_points,
    first_primes,
    grassmannian_degree_bound,
    interpolate_counts,
    repvariety_degree_bound,
)
from .errors import (
    EnumerationTooLarge,
    MissingRepVarietyMotive,
    NotPolynomialCount,
    ParallelPathsUnsupported,
    SmoothnessNotCertified,
)
from .homology import graph_euler_form
from .polynomials import IntPolynomial, poly_div_exact, poly_gcd
from .quiver import PathQuiver

MotivePolynomial = IntPolynomial

_ONE = IntPolynomial((1,))
_ZERO = IntPolynomial(())


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial.constant(x)
    raise TypeError(f"cannot treat {x!r} as a polynomial in L")


class MotiveFraction:
    """A quotient of integer polynomials in L, kept in lowest terms.

    Normal form: no common polynomial factor, numerator and denominator
    contents coprime, denominator with positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _coerce(num)
        den = _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = _ZERO, _ONE
        else:
            g = poly_gcd(num, den)
            num = poly_div_exact(num, g)
            den = poly_div_exact(den, g)
            c = gcd(num.content(), den.content())
            if c > 1:
                num = IntPolynomial(x // c for x in num.coeffs)
                den = IntPolynomial(x // c for x in den.coeffs)
            if den.leading() < 0:
                num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("MotiveFraction is immutable")

    @classmethod
    def wrap(cls, x) -> "MotiveFraction":
        return x if isinstance(x, cls) else cls(x)

    @classmethod
    def L_power(cls, k: int) -> "MotiveFraction":
        if k >= 0:
            return cls(IntPolynomial.monomial(1, k))
        return cls(_ONE, IntPolynomial.monomial(1, -k))

    @property
    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def as_polynomial(self) -> IntPolynomial:
        if not self.is_polynomial:
            raise ValueError(f"{self.pretty()} is not a polynomial")
        return self.num

    def evaluate(self, x) -> Fraction:
        return Fraction(self.num(x), self.den(x))

    def __add__(self, other):
        o = MotiveFraction.wrap(other)
        return MotiveFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return MotiveFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-MotiveFraction.wrap(other))

    def __rsub__(self, other):
        return MotiveFraction.wrap(other) + (-self)

    def __mul__(self, other):
        o = MotiveFraction.wrap(other)
        return MotiveFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = MotiveFraction.wrap(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero motive")
        return MotiveFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return MotiveFraction.wrap(other) / self

    def __eq__(self, other):
        if not isinstance(other, MotiveFraction):
            try:
                other = MotiveFraction.wrap(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def pretty(self, var: str = "L") -> str:
        if self.is_polynomial:
            return self.num.pretty(var)
        return f"({self.num.pretty(var)}) / ({self.den.pretty(var)})"

    def __repr__(self):
        return f"MotiveFraction({self.pretty()})"


def gl_motive(n: int) -> IntPolynomial:
    """Motive of GL_n: the product of L^n - L^i over i < n."""
    out = _ONE
    for i in range(n):
        out = out * (IntPolynomial.monomial(1, n) - IntPolynomial.monomial(1, i))
    return out


def group_motive(gdims: Sequence[int]) -> IntPolynomial:
    out = _ONE
    for g in gdims:
        out = out * gl_motive(g)
    return out


def framing_exponent(pq: PathQuiver, dims: Mapping[str, int], g: Sequence[int]) -> int:
    """Number of framing coordinates landing in the g-stratum: the framing
    vectors sit at the lazy paths, d_v of them at e_v."""
    total = 0
    for v in pq.quiver.vertices:
        lazy = pq.path_index[((v,), ())]
        total += dims.get(v, 0) * g[lazy]
    return total


def vectors_upto(bound: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """All vectors 0 <= g <= bound, graded lexicographically."""
    vecs = [tuple(v) for v in itertools.product(*[range(b + 1) for b in bound])]
    vecs.sort(key=lambda g: (sum(g), g))
    return tuple(vecs)


def repvariety_motive(
    module: CoordinateModule, g: Sequence[int], cap: int = DEFAULT_CAP
) -> IntPolynomial:
    """[R_g] by counting over enough primes and interpolating."""
    g = tuple(g)
    bound = repvariety_degree_bound(module, g)
    samples = [
        CountSample(q, count_repvariety_points(module, g, q, cap))
        for q in first_primes(bound + 2)
    ]
    result = interpolate_counts(samples, bound)
    if not result.ok or result.polynomial is None:
        raise MissingRepVarietyMotive(
            f"representation variety count at {g} is not polynomial: {result.reason}"
        )
    return result.polynomial


@dataclass
class RecursionTable:
    """Solved motives [M_g] for every g up to the full quotient vector f."""

    pq: PathQuiver
    dims: dict[str, int]
    f: tuple[int, ...]
    entries: dict[tuple[int, ...], MotiveFraction]
    rep_motives: dict[tuple[int, ...], IntPolynomial]
    diagnostics: tuple[str, ...]

    @property
    def top(self) -> MotiveFraction:
        return self.entries[self.f]

    def top_polynomial(self) -> IntPolynomial:
        if not self.top.is_polynomial:
            raise NotPolynomialCount(
                f"top motive is not polynomial: {self.top.pretty()}"
            )
        return self.top.num


def recursion_solve(
    pq: PathQuiver,
    dims: Mapping[str, int],
    cap: int = DEFAULT_CAP,
    rep_motives: Optional[Mapping[tuple[int, ...], IntPolynomial]] = None,
) -> RecursionTable:
    """Solve the stratification recursion for all [M_g], g <= f.

    With ``rep_motives`` given, every needed [R_g] must be present in it;
    otherwise each is computed by point counting.  The top entry must be a
    polynomial; intermediate non-polynomial entries are recorded as
    diagnostics only.
    """
    if not pq.tree_mode:
        raise ParallelPathsUnsupported(
            "the framed recursion requires a quiver without parallel paths"
        )
    module = build_canonical_bimodule(pq, dims)
    f = dim_vector_f(pq, dims)
    vecs = vectors_upto(f)

    reps: dict[tuple[int, ...], IntPolynomial] = {}
    for g in vecs:
        if rep_motives is not None:
            if g not in rep_motives:
                raise MissingRepVarietyMotive(f"no representation variety motive for {g}")
            reps[g] = rep_motives[g]
        else:
            reps[g] = repvariety_motive(module, g, cap)

    graph = pq.graph
    entries: dict[tuple[int, ...], MotiveFraction] = {}
    diagnostics: list[str] = []
    for g in vecs:
        value = MotiveFraction.L_power(framing_exponent(pq, dims, g)) * MotiveFraction(
            reps[g], group_motive(g)
        )
        for h in vectors_upto(g):
            if h == g:
                continue
            gmh = tuple(a - b for a, b in zip(g, h))
            shift = MotiveFraction.L_power(-graph_euler_form(graph, gmh, h))
            value = value - entries[h] * MotiveFraction(reps[gmh], group_motive(gmh)) * shift
        entries[g] = value
        if not value.is_polynomial:
            diagnostics.append(f"[M_{g}] is not polynomial: {value.pretty()}")
    table = RecursionTable(pq, dict(dims), f, entries, reps, tuple(diagnostics))
    table.top_polynomial()
    return table


def recursion_residual(table: RecursionTable, g: Sequence[int]) -> MotiveFraction:
    """Left minus right side of the recursion at g, using the solved table;
    exact zero when the table is consistent."""
    g = tuple(g)
    lhs = MotiveFraction.L_power(
        framing_exponent(table.pq, table.dims, g)
    ) * MotiveFraction(table.rep_motives[g], group_motive(g))
    rhs = MotiveFraction(0)
    graph = table.pq.graph
    for h in vectors_upto(g):
        gmh = tuple(a - b for a, b in zip(g, h))
        shift = MotiveFraction.L_power(-graph_euler_form(graph, gmh, h))
        rhs = rhs + table.entries[h] * MotiveFraction(
            table.rep_motives[gmh], group_motive(gmh)
        ) * shift
    return lhs - rhs


def consistency_check(
    pq: PathQuiver,
    dims: Mapping[str, int],
    table: Optional[RecursionTable] = None,
    cap: int = DEFAULT_CAP,
) -> tuple[str, ...]:
    """Cross-checks of a solved table; returns failure descriptions.

    Checks: the top entry matches the cell polynomial; each polynomial entry
    matches an interpolated submodule count; coefficients are nonnegative.
    """
    if table is None:
        table = recursion_solve(pq, dims, cap)
    report: list[str] = []
    module = build_canonical_bimodule(pq, dims)
    m = module.dims

    try:
        cells = poincare_polynomial(pq, dims)
        if not table.top.is_polynomial or table.top.num != cells:
            report.append(
                f"top motive {table.top.pretty()} does not match the "
                f"cell polynomial {cells.pretty('L')}"
            )
    except SmoothnessNotCertified as exc:
        report.append(f"cell comparison skipped: {exc}")

    for g, value in table.entries.items():
        if not value.is_polynomial:
            continue
        if any(c < 0 for c in value.num.coeffs):
            report.append(f"negative coefficient in [M_{g}] = {value.pretty()}")
        target = tuple(mv - gv for mv, gv in zip(m, g))
        bound = grassmannian_degree_bound(module, target)
        try:
            result = count_and_interpolate(module, target, first_primes(bound + 2), cap)
        except EnumerationTooLarge as exc:
            report.append(f"count comparison skipped at {g}: {exc}")
            continue
        if not result.ok or result.polynomial != value.num:
            got = result.polynomial.pretty("L") if result.polynomial else result.reason
            report.append(
                f"[M_{g}] = {value.pretty()} disagrees with the interpolated "
                f"submodule count {got}"
            )
    return tuple(report)
