"""Euler characteristics of line bundles by exact characteristic-class
integration: chi(X, L) = integral of ch(L) td(X) over X.

Todd polynomials are generated per dimension, not tabulated: the series
x/(1 - e^{-x}) is logged, re-expressed in power sums of the Chern
roots, converted to elementary symmetric functions (the Chern classes)
through Newton's identities, and exponentiated, truncating at the
relevant weight throughout.  Hand-expanded low-degree tables then serve
as test oracles instead of as the implementation.

``hilbert_polynomial`` expands chi(X, L(m)) = integral of
ch(c1) e^{m h} td(X) as an exact polynomial in the twist variable m.
Integrality of its values is a theorem for genuine varieties, so it is
checked on demand rather than assumed; a failure flags inconsistent
input data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from types import MappingProxyType

from .grca import AlgebraError, Element, Q, integrate, power
from .variety import VarietyData


@dataclass(frozen=True)
class UnivariatePolynomial:
    """Exact rational polynomial in one formal variable, coefficients
    ascending by degree with trailing zeros trimmed."""
    coefficients: tuple[Q, ...]

    def __post_init__(self):
        coeffs = tuple(Q(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, m) -> Q:
        acc = Q(0)
        for c in reversed(self.coefficients):
            acc = acc * m + c
        return Q(acc)

    def is_integer_valued(self) -> bool:
        """Whether all values at integers are integers; checking at
        degree+1 consecutive integer points certifies this."""
        return all(self(m).denominator == 1 for m in range(self.degree + 2))


# ---------------------------------------------------------------------------
# universal Todd polynomials in the Chern classes

# polynomials in c_1..c_n are dicts: exponent tuple (a_1..a_n) -> Q,
# graded by weight sum i * a_i


def _weight(exps: tuple[int, ...]) -> int:
    return sum((i + 1) * a for i, a in enumerate(exps))


def _poly_mul(p1: dict, p2: dict, n: int) -> dict:
    out: dict = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if _weight(e) > n:
                continue
            s = out.get(e, Q(0)) + c1 * c2
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _poly_add(p1: dict, p2: dict) -> dict:
    out = dict(p1)
    for e, c in p2.items():
        s = out.get(e, Q(0)) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _poly_scale(p: dict, c: Q) -> dict:
    return {e: c * v for e, v in p.items()} if c else {}


def _series_log(s: list[Q]) -> list[Q]:
    """Coefficients of log S for a series S with S[0] = 1, same length."""
    t = [Q(0)] * len(s)
    for k in range(1, len(s)):
        acc = k * s[k]
        for j in range(1, k):
            acc -= j * t[j] * s[k - j]
        t[k] = acc / k
    return t


_todd_cache: dict[int, tuple] = {}


def todd_polynomials(n: int):
    """td_0..td_n as immutable mappings from Chern-class exponent
    tuples (a_1..a_n) to rational coefficients; td_k has weight k."""
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if n in _todd_cache:
        return _todd_cache[n]
    # log of x / (1 - e^{-x}) = -log D with D(x) = sum (-x)^j / (j+1)!
    d_series = [Q((-1) ** j, factorial(j + 1)) for j in range(n + 1)]
    ell = [-c for c in _series_log(d_series)]

    def e_poly(i: int) -> dict:
        exps = [0] * n
        exps[i - 1] = 1
        return {tuple(exps): Q(1)}

    unit_exps = (0,) * n
    # power sums p_k in the elementary symmetric e_i by Newton's identities
    p: list[dict] = [{unit_exps: Q(n)}]
    for k in range(1, n + 1):
        acc = _poly_scale(e_poly(k), Q((-1) ** (k - 1) * k))
        for i in range(1, k):
            term = _poly_mul(e_poly(i), p[k - i], n)
            acc = _poly_add(acc, _poly_scale(term, Q((-1) ** (i - 1))))
        p.append(acc)

    log_td: dict = {}
    for k in range(1, n + 1):
        log_td = _poly_add(log_td, _poly_scale(p[k], ell[k]))

    td: dict = {unit_exps: Q(1)}
    pw: dict = {unit_exps: Q(1)}
    for m in range(1, n + 1):
        pw = _poly_mul(pw, log_td, n)
        td = _poly_add(td, _poly_scale(pw, Q(1, factorial(m))))

    parts = []
    for k in range(n + 1):
        part = {e: c for e, c in td.items() if _weight(e) == k}
        parts.append(MappingProxyType(part))
    _todd_cache[n] = tuple(parts)
    return _todd_cache[n]


def todd_class(tangent_chern) -> Element:
    """The Todd class of a bundle with the given Chern classes c_1..c_n,
    as an inhomogeneous ring element."""
    chern = list(tangent_chern)
    if not chern:
        raise AlgebraError("need at least c_1 to locate the ring")
    n = len(chern)
    algebra = chern[0].algebra
    out = algebra.zero()
    for part in todd_polynomials(n):
        for exps, coeff in part.items():
            term = None
            for i, a in enumerate(exps):
                if a == 0:
                    continue
                factor = power(chern[i], a)
                term = factor if term is None else term * factor
            if term is None:
                term = Element(algebra, {algebra.unit_key(): Q(1)})
            out = out + coeff * term
    return out


def chern_character(c1: Element) -> Element:
    """ch of a line bundle with first Chern class c1: the exponential
    sum of c1^m / m!, truncated by the ring's top degree."""
    algebra = c1.algebra
    if not c1.is_zero and c1.degree() != 2:
        raise AlgebraError("first Chern class must be homogeneous of degree 2")
    out = Element(algebra, {algebra.unit_key(): Q(1)})
    top = getattr(algebra, "top_degree", 0)
    for m in range(1, top // 2 + 1):
        out = out + Q(1, factorial(m)) * power(c1, m)
    return out


def hilbert_polynomial(v: VarietyData, c1L: Element,
                       h: Element | None = None) -> UnivariatePolynomial:
    """chi(X, L(m)) as an exact polynomial in m, where c1(L) = c1L and
    twisting is by the polarization h (defaulting to the variety's)."""
    if h is None:
        h = v.polarization
    if h is None:
        raise AlgebraError("no polarization to twist by")
    if not h.is_zero and h.degree() != 2:
        raise AlgebraError("polarization must be homogeneous of degree 2")
    td = todd_class(v.tangent_chern)
    ch = chern_character(c1L)
    coeffs = []
    for j in range(v.n + 1):
        val = integrate(ch * power(h, j) * td)
        coeffs.append(val / factorial(j))
    return UnivariatePolynomial(tuple(coeffs))


def classes_with_hilbert_polynomial(v: VarietyData,
                                    polynomial: UnivariatePolynomial,
                                    candidates,
                                    h: Element | None = None) -> list[Element]:
    """The candidate first Chern classes whose Hilbert polynomial
    matches the given one exactly."""
    return [c for c in candidates
            if hilbert_polynomial(v, c, h) == polynomial]
