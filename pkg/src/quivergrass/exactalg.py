"""Exact linear algebra over the rationals and over prime fields.

Everything is dense and exact: rationals are stdlib Fractions, prime-field
elements are ints in [0, p).  Subspaces are kept in reduced row-echelon form,
which is a canonical representative, so subspace equality is tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence


class RationalField:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverting 0")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class Matrix:
    """A dense matrix over QQ or a PrimeField.  Rows are plain lists."""

    def __init__(self, field, rows: Sequence[Sequence], ncols: Optional[int] = None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
            assert all(len(r) == self.ncols for r in self.rows)
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_int_rows(cls, field, rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
        return cls(field, [[field.from_int(x) for x in r] for r in rows], ncols)

    def copy(self) -> "Matrix":
        return Matrix(self.field, [r[:] for r in self.rows], self.ncols)

    def mul(self, other: "Matrix") -> "Matrix":
        assert self.ncols == other.nrows
        f = self.field
        out = Matrix.zeros(f, self.nrows, other.ncols)
        for i in range(self.nrows):
            row = self.rows[i]
            orow = out.rows[i]
            for k in range(self.ncols):
                a = row[k]
                if a == f.zero:
                    continue
                brow = other.rows[k]
                for j in range(other.ncols):
                    orow[j] = f.add(orow[j], f.mul(a, brow[j]))
        return out

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector."""
        assert len(vec) == self.ncols
        f = self.field
        out = []
        for row in self.rows:
            acc = f.zero
            for a, x in zip(row, vec):
                if a != f.zero and x != f.zero:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return out

    def sub(self, other: "Matrix") -> "Matrix":
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        f = self.field
        return Matrix(
            f,
            [[f.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self.rows for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"


def rref(field, rows: Iterable[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c] != field.zero:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = field.inv(work[r][c])
        if inv != field.one:
            work[r] = [field.mul(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != field.zero:
                factor = work[i][c]
                work[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m.field, m.rows)[0])


def right_kernel(m: Matrix) -> "Matrix":
    """Rows of the result span { x : m @ x = 0 }."""
    rows, pivots = rref(m.field, m.rows)
    f = m.field
    n = m.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [f.zero] * n
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(rows[r][fc])
        basis.append(v)
    return Matrix(f, basis, n)


class Subspace:
    """A subspace of field^ambient, canonically represented by an RREF row basis."""

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field, ambient: int, rows: Sequence[Sequence], pivots: Sequence[int]):
        self.field = field
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows, pivots = rref(field, [list(v) for v in vectors])
        return cls(field, ambient, rows, pivots)

    @classmethod
    def zero(cls, field, ambient: int) -> "Subspace":
        return cls(field, ambient, [], [])

    @classmethod
    def full(cls, field, ambient: int) -> "Subspace":
        eye = Matrix.identity(field, ambient)
        return cls(field, ambient, eye.rows, range(ambient))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence) -> list:
        """Residual of vec after subtracting its projection onto the basis."""
        f = self.field
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            coeff = v[pc]
            if coeff != f.zero:
                v = [f.sub(x, f.mul(coeff, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        z = self.field.zero
        return all(x == z for x in self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        assert self.ambient == other.ambient
        return Subspace.from_vectors(self.field, self.ambient, list(self.rows) + list(other.rows))

    def free_positions(self) -> list[int]:
        """Ambient coordinates not used as pivots; they parameterize the quotient."""
        pv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in pv]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient})"


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dim subspaces of F_q^n; exact integer."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(
    field: PrimeField,
    ambient: int,
    k: int,
    containing: Optional[Subspace] = None,
) -> Iterator[Subspace]:
    """All k-dim subspaces of field^ambient containing the given one.

    Works in the quotient: a k-dim superspace of an s-dim space corresponds to
    a (k-s)-dim subspace of the (ambient-s)-dim quotient, enumerated as echelon
    matrices (pivot columns lexicographic, free entries in odometer order).
    """
    base = containing if containing is not None else Subspace.zero(field, ambient)
    s = base.dim
    j = k - s
    if j < 0 or k > ambient:
        return
    free_cols = base.free_positions()
    m = len(free_cols)
    if j > m:
        return
    if j == 0:
        yield base
        return
    q = field.p
    for pivs in combinations(range(m), j):
        piv_set = set(pivs)
        slots = [
            (r, c) for r in range(j) for c in range(pivs[r] + 1, m) if c not in piv_set
        ]
        for values in product(range(q), repeat=len(slots)):
            qrows = [[field.zero] * m for _ in range(j)]
            for r in range(j):
                qrows[r][pivs[r]] = field.one
            for (r, c), val in zip(slots, values):
                qrows[r][c] = val
            lifted = []
            for qr in qrows:
                v = [field.zero] * ambient
                for t, col in enumerate(free_cols):
                    v[col] = qr[t]
                lifted.append(v)
            yield Subspace.from_vectors(field, ambient, list(base.rows) + lifted)
