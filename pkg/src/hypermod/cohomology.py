"""Degreewise cohomology of a free CDGA over the rationals.

Bases of each degree are enumerated monomially, differentials are
expanded by the graded Leibniz rule into sparse rational matrices, and
ranks are taken by fraction-free (Bareiss) elimination over the
integers after clearing denominators.  The Betti number in degree D is

    b_D = dim ker(d_D) - rank(d_{D-1})
        = #basis(D) - rank(d_D) - rank(d_{D-1}),

so computing b_D touches cochains in degrees D-1, D, D+1 only.
Everything is deterministic: bases are listed degree-lexicographically
in the canonical generator order and pivots are chosen first-nonzero.

A configurable cutoff bounds the number of monomials per degree; when
it would be exceeded, ResourceCutoff is raised rather than silently
truncating.  The limit defaults to 5,000,000 and can be overridden by
the HYPERMOD_MAX_MONOMIALS environment variable or per call.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .grca import AlgebraError, Element, FreeGCA, Q

DEFAULT_MAX_MONOMIALS = 5_000_000
MAX_MONOMIALS_ENV = "HYPERMOD_MAX_MONOMIALS"


class ResourceCutoff(RuntimeError):
    """A degreewise basis would exceed the configured monomial budget."""

    def __init__(self, degree: int, count: int, limit: int):
        self.degree = degree
        self.count = count
        self.limit = limit
        super().__init__(
            f"degree {degree} needs {count} monomials, over the limit {limit}")


def monomial_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(MAX_MONOMIALS_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(
                f"{MAX_MONOMIALS_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_MONOMIALS


def monomial_counts(algebra: FreeGCA, max_degree: int) -> list[int]:
    """Number of monomials in each degree 0..max_degree, by generating
    function: odd generators contribute (1 + t^d), even ones 1/(1 - t^d)."""
    counts = [0] * (max_degree + 1)
    counts[0] = 1
    for g in algebra.generators:
        d = g.degree
        if d == 0:
            raise AlgebraError(
                f"generator {g.name!r} has degree 0; degreewise bases would be infinite")
        if d > max_degree:
            continue
        if g.parity:
            for i in range(max_degree, d - 1, -1):
                counts[i] += counts[i - d]
        else:
            for i in range(d, max_degree + 1):
                counts[i] += counts[i - d]
    return counts


@dataclass(frozen=True)
class DegreeBasis:
    """Ordered monomial basis of one degree of a free algebra."""
    degree: int
    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    def index(self):
        return {m: i for i, m in enumerate(self.monomials)}


def enumerate_basis(cdga, degree: int, max_monomials: int | None = None) -> DegreeBasis:
    """All canonical monomials of the given degree, degree-lexicographic
    in the canonical generator order."""
    algebra: FreeGCA = cdga.algebra
    if degree < 0:
        return DegreeBasis(degree, ())
    limit = monomial_budget(max_monomials)
    count = monomial_counts(algebra, degree)[degree]
    if count > limit:
        raise ResourceCutoff(degree, count, limit)
    gens = algebra.ordered_generators
    out: list = []
    stack: list = []

    def walk(pos: int, remaining: int):
        if remaining == 0:
            out.append(tuple(stack))
            return
        if pos == len(gens):
            return
        g = gens[pos]
        cap = 1 if g.parity else remaining // g.degree
        walk(pos + 1, remaining)
        for e in range(1, cap + 1):
            if e * g.degree > remaining:
                break
            stack.append((g.index, e))
            walk(pos + 1, remaining - e * g.degree)
            stack.pop()

    walk(0, degree)
    # exponent vectors ascending: zero exponent branches come first at
    # every position, matching lexicographic order on the vectors
    return DegreeBasis(degree, tuple(out))


class SparseMatrix:
    """Sparse column-major matrix over Q."""

    def __init__(self, nrows: int, ncols: int, columns: list[dict]):
        if len(columns) != ncols:
            raise ValueError("column count mismatch")
        self.nrows = nrows
        self.ncols = ncols
        self.columns = columns

    def entry(self, r: int, c: int) -> Q:
        return self.columns[c].get(r, Q(0))

    @property
    def is_zero(self) -> bool:
        return all(not col for col in self.columns)

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """self applied after other."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in composition")
        cols = []
        for col in other.columns:
            acc: dict = {}
            for k, c in col.items():
                for r, v in self.columns[k].items():
                    s = acc.get(r, Q(0)) + c * v
                    if s:
                        acc[r] = s
                    elif r in acc:
                        del acc[r]
            cols.append(acc)
        return SparseMatrix(self.nrows, other.ncols, cols)

    def rank(self) -> int:
        rows = []
        for col in self.columns:
            if not col:
                continue
            scale = lcm(*(c.denominator for c in col.values())) if col else 1
            rows.append({r: int(c * scale) for r, c in col.items()})
        return _bareiss_rank(rows)


def _bareiss_rank(rows: list[dict]) -> int:
    """Rank of integer sparse rows by one-step fraction-free elimination.

    Each update is (a*p - b*q) / prev with exact division guaranteed by
    Sylvester's identity; pivots are the first nonzero entry in the
    leftmost occupied column, scanning rows in order.
    """
    rows = [dict(r) for r in rows if r]
    prev = 1
    rank = 0
    while rows:
        pivot_col = min(min(r) for r in rows)
        pivot_at = next(i for i, r in enumerate(rows) if pivot_col in r)
        pivot = rows.pop(pivot_at)
        p = pivot[pivot_col]
        updated = []
        for r in rows:
            rc = r.pop(pivot_col, 0)
            if rc:
                keys = set(r) | (set(pivot) - {pivot_col})
                nr = {}
                for j in keys:
                    val = r.get(j, 0) * p - rc * pivot.get(j, 0)
                    if val:
                        nr[j] = _exact_div(val, prev)
            else:
                nr = {j: _exact_div(v * p, prev) for j, v in r.items()}
            if nr:
                updated.append(nr)
        rows = updated
        prev = p
        rank += 1
    return rank


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("fraction-free elimination lost exactness")
    return q


def rational_matrix_rank(rows) -> int:
    """Rank of a dense list-of-lists rational matrix, through the same
    fraction-free core used for differentials."""
    sparse = []
    for row in rows:
        entries = {j: Q(x) for j, x in enumerate(row) if x}
        if entries:
            scale = lcm(*(c.denominator for c in entries.values()))
            sparse.append({j: int(c * scale) for j, c in entries.items()})
    return _bareiss_rank(sparse)


def element_differential(cdga, a: Element) -> Element:
    """Extend the generator differentials by the graded Leibniz rule
    d(xy) = d(x) y + (-1)^{|x|} x d(y)."""
    algebra: FreeGCA = cdga.algebra
    out = algebra.zero()
    for mono, coeff in a.items():
        out = out + coeff * monomial_differential(cdga, mono)
    return out


def monomial_differential(cdga, mono) -> Element:
    algebra: FreeGCA = cdga.algebra
    gens = algebra.generators
    out = algebra.zero()
    prefix_degree = 0
    for i, (g, e) in enumerate(mono):
        dg = cdga.differential[g]
        if not dg.is_zero:
            head = mono[:i] + (((g, e - 1),) if e > 1 else ())
            tail = mono[i + 1:]
            term = Element(algebra, {head: Q(e)}) * dg
            if tail:
                term = term * Element(algebra, {tail: Q(1)})
            if prefix_degree % 2:
                term = -term
            out = out + term
        prefix_degree += e * gens[g].degree
    return out


def differential_matrix(cdga, degree: int, max_monomials: int | None = None,
                        source: DegreeBasis | None = None,
                        target: DegreeBasis | None = None) -> SparseMatrix:
    """Matrix of d from the degree-D basis to the degree-(D+1) basis."""
    if source is None:
        source = enumerate_basis(cdga, degree, max_monomials)
    if target is None:
        target = enumerate_basis(cdga, degree + 1, max_monomials)
    index = target.index()
    columns = []
    for mono in source.monomials:
        image = monomial_differential(cdga, mono)
        col = {}
        for m, c in image.items():
            try:
                col[index[m]] = c
            except KeyError:
                raise AlgebraError(
                    "differential image leaves the expected degree") from None
        columns.append(col)
    return SparseMatrix(len(target), len(source), columns)


@dataclass(frozen=True)
class BettiTable:
    max_degree: int
    betti: tuple[int, ...]

    def __post_init__(self):
        if len(self.betti) != self.max_degree + 1:
            raise ValueError("need one Betti number per degree 0..max_degree")


def betti_table(cdga, max_degree: int, max_monomials: int | None = None) -> BettiTable:
    """Betti numbers b_0..b_max_degree of the CDGA."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    limit = monomial_budget(max_monomials)
    counts = monomial_counts(cdga.algebra, max_degree + 1)
    for d, count in enumerate(counts):
        if count > limit:
            raise ResourceCutoff(d, count, limit)
    basis = enumerate_basis(cdga, 0, limit)
    upper = enumerate_basis(cdga, 1, limit)
    prev_rank = 0
    betti = []
    for d in range(max_degree + 1):
        mat = differential_matrix(cdga, d, limit, source=basis, target=upper)
        r = mat.rank()
        betti.append(len(basis) - r - prev_rank)
        prev_rank = r
        if d < max_degree:
            basis = upper
            upper = enumerate_basis(cdga, d + 2, limit)
    return BettiTable(max_degree, tuple(betti))
