"""Independent reference implementations used only by the test suite.

Everything here is deliberately naive and shares no code with the
package: dense Gaussian elimination over Fraction instead of sparse
fraction-free elimination, brute-force monomial enumeration instead of
recursive generation, and a numeric Chern-root product instead of the
Newton-identity pipeline.  Expected values frozen into the tests were
computed with these.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

Q = Fraction


def dense_rank(rows):
    """Rank of a dense rational matrix by textbook row reduction."""
    m = [[Q(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def dense_nullity(rows):
    if not rows:
        return 0
    return len(rows[0]) - dense_rank(rows)


def brute_monomials(degrees, total):
    """All exponent vectors of the given total degree, for generators of
    the given degrees; odd-degree exponents capped at 1.  Returned as
    sorted tuples of exponents."""
    caps = [1 if d % 2 else (total // d if d else 0) for d in degrees]
    out = []
    for exps in itertools.product(*(range(c + 1) for c in caps)):
        if sum(e * d for e, d in zip(exps, degrees)) == total:
            out.append(exps)
    return sorted(out)


def todd_series_from_roots(roots, order):
    """Degreewise Todd values for a bundle with the given numeric Chern
    roots: coefficients of t^0..t^order in prod_i Q(r_i t) with
    Q(x) = x / (1 - e^{-x})."""
    # Q(x) = 1 / D(x), D(x) = sum_{j>=0} (-1)^j x^j / (j+1)!
    fact = [1]
    for j in range(1, order + 2):
        fact.append(fact[-1] * j)
    d = [Q((-1) ** j, fact[j + 1]) for j in range(order + 1)]
    q = [Q(0)] * (order + 1)
    q[0] = Q(1)
    for k in range(1, order + 1):
        q[k] = -sum(d[j] * q[k - j] for j in range(1, k + 1))
    total = [Q(0)] * (order + 1)
    total[0] = Q(1)
    for r in roots:
        scaled = [q[k] * Q(r) ** k for k in range(order + 1)]
        total = [
            sum(total[i] * scaled[k - i] for i in range(k + 1))
            for k in range(order + 1)
        ]
    return total


def elementary_symmetric(roots, order):
    """e_0..e_order of the given numbers."""
    es = [Q(1)] + [Q(0)] * order
    for r in roots:
        for k in range(order, 0, -1):
            es[k] += Q(r) * es[k - 1]
    return es


def torus_section_model_matrices(k):
    """Dense differential matrices of the genus-1 section model in
    degrees 0..2, written out by hand from d(y1) = 2k z - 2 a'b',
    d(y2) = 2 z a', d(y2') = 2 z b', d(y3) = z^2 and the Leibniz rule
    (so d(a'y1) = -2k z a', d(b'y1) = -2k z b').

    Bases: degree 1 [a', b', y1];
           degree 2 [z, a'b', y2, y2', a'y1, b'y1];
           degree 3 [za', zb', zy1, y3, a'y2, a'y2', b'y2, b'y2',
                     y1y2, y1y2', a'b'y1].
    Returned as (d0, d1, d2), each a list of columns."""
    k = Q(k)
    d0 = [[Q(0)] * 3]
    d1 = [
        [Q(0)] * 6,                                  # d(a') = 0
        [Q(0)] * 6,                                  # d(b') = 0
        [2 * k, Q(-2), Q(0), Q(0), Q(0), Q(0)],      # d(y1)
    ]
    zero3 = [Q(0)] * 11
    d2 = [
        list(zero3),                                 # d(z) = 0
        list(zero3),                                 # d(a'b') = 0
        [Q(2)] + [Q(0)] * 10,                        # d(y2) = 2 za'
        [Q(0), Q(2)] + [Q(0)] * 9,                   # d(y2') = 2 zb'
        [-2 * k] + [Q(0)] * 10,                      # d(a'y1) = -2k za'
        [Q(0), -2 * k] + [Q(0)] * 9,                 # d(b'y1) = -2k zb'
    ]
    return d0, d1, d2


def torus_section_betti_from_dense(k):
    """Betti numbers b_0..b_2 of the genus-1 model, entirely through the
    dense elimination above."""
    d0, d1, d2 = torus_section_model_matrices(k)
    r0 = dense_rank(d0)
    r1 = dense_rank(d1)
    r2 = dense_rank(d2)
    return (1 - r0, 3 - r1 - r0, 6 - r2 - r1)


def dense_kernel_basis(rows):
    """Basis of the right kernel of a dense rational matrix: full row
    reduction, then one vector per free column."""
    if not rows or not rows[0]:
        return []
    ncols = len(rows[0])
    m = [[Q(x) for x in row] for row in rows]
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    basis = []
    for c in range(ncols):
        if c in pivots:
            continue
        vec = [Q(0)] * ncols
        vec[c] = Q(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][c]
        basis.append(vec)
    return basis
