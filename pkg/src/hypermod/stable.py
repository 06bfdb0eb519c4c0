"""Poincare series bookkeeping for the stable cohomology of smooth
hypersurface moduli, and the degreewise cross-check of the section-space
model against it.

The stable ring for ample-enough classes is free graded-commutative on
one generator of degree q + 1 per basis element of H^q(X), q = 1..2n;
the hypersurface-moduli variant multiplies in b_{2n-1} extra degree-1
generators.  Only the ranks are modeled here; ``compare_stable`` lines
the resulting coefficients up against the CDGA Betti numbers in the
degree range certified by a jet-ampleness bound.

The comparison refuses inputs with H^1 != 0.  For those the section
space fibers over the Picard torus while the stable ring describes a
single fiber, and the two are matched degreewise only in the simply
connected case; gating keeps the reported verdict meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import betti_table
from .grca import AlgebraError
from .haefliger import build_section_cdga
from .ranges import main_range
from .variety import VarietyData, validate

# Slope of the linear lower bound known for the stable range of the
# moduli side; recorded for reference, never used in certification.
STABLE_RANGE_LEADING_COEFF_LOWER = Fraction(13, 30)


@dataclass(frozen=True)
class PoincareSeries:
    """Truncated generating function of ranks: coefficients[D] is the
    rank in degree D, for D = 0..max_degree."""
    max_degree: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if len(self.coefficients) != self.max_degree + 1:
            raise ValueError("need one coefficient per degree 0..max_degree")
        if self.coefficients[0] != 1:
            raise ValueError("degree-0 coefficient must be 1")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("coefficients must be non-negative")

    def truncated(self, max_degree: int) -> "PoincareSeries":
        if max_degree > self.max_degree:
            raise ValueError("cannot extend a truncated series")
        return PoincareSeries(max_degree, self.coefficients[:max_degree + 1])


def free_gca_series(generators, max_degree: int) -> PoincareSeries:
    """Poincare series of the free graded-commutative algebra with the
    given (degree, multiplicity) generators: the truncated product of
    (1 + t^d) per odd generator and 1 / (1 - t^d) per even one."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    for degree, multiplicity in generators:
        if degree < 1:
            raise ValueError("generator degrees must be >= 1")
        if multiplicity < 0:
            raise ValueError("multiplicities must be >= 0")
        for _ in range(multiplicity):
            if degree % 2:
                for i in range(max_degree, degree - 1, -1):
                    coeffs[i] += coeffs[i - degree]
            else:
                for i in range(degree, max_degree + 1):
                    coeffs[i] += coeffs[i - degree]
    return PoincareSeries(max_degree, tuple(coeffs))


def series_mul(s1: PoincareSeries, s2: PoincareSeries) -> PoincareSeries:
    """Product truncated to the shorter of the two series."""
    n = min(s1.max_degree, s2.max_degree)
    coeffs = [
        sum(s1.coefficients[i] * s2.coefficients[d - i] for i in range(d + 1))
        for d in range(n + 1)
    ]
    return PoincareSeries(n, tuple(coeffs))


def _checked(v: VarietyData) -> VarietyData:
    errors = validate(v)
    if errors:
        raise AlgebraError("invalid variety data: " + "; ".join(errors))
    return v


def stable_moduli_series(v: VarietyData, max_degree: int) -> PoincareSeries:
    """Ranks of the stable cohomology ring for the variety: free on one
    generator of degree q + 1 per basis element of H^q, q = 1..2n."""
    _checked(v)
    generators = [(q + 1, v.ring.betti(q)) for q in range(1, 2 * v.n + 1)]
    return free_gca_series(generators, max_degree)


def grw_series(v: VarietyData, max_degree: int) -> PoincareSeries:
    """The hypersurface-moduli series: the stable series times the free
    series on b_{2n-1} generators of degree 1."""
    _checked(v)
    extra = free_gca_series([(1, v.ring.betti(2 * v.n - 1))], max_degree)
    return series_mul(stable_moduli_series(v, max_degree), extra)


@dataclass(frozen=True)
class StableComparison:
    """Degreewise comparison rows (degree, model Betti, stable rank,
    equal) for all degrees the jet bound certifies."""
    jet_bound: int
    max_valid_degree: int
    rows: tuple[tuple[int, int, int, bool], ...]

    @property
    def all_equal(self) -> bool:
        return all(equal for _, _, _, equal in self.rows)


def compare_stable(v: VarietyData, jet_bound: int,
                   max_monomials: int | None = None) -> StableComparison:
    """Compare CDGA Betti numbers with the stable series in every degree
    up to main_range(jet_bound); degrees beyond that are uncertified and
    omitted.  Refuses varieties with H^1 != 0."""
    _checked(v)
    if v.ring.betti(1) != 0:
        raise ValueError(
            "H^1 != 0: the stable comparison is stated only for simply "
            "connected inputs")
    upto = max(-1, main_range(jet_bound))
    if upto < 0:
        return StableComparison(jet_bound, upto, ())
    cdga = build_section_cdga(v)
    table = betti_table(cdga, upto, max_monomials)
    series = stable_moduli_series(v, upto)
    rows = tuple(
        (d, table.betti[d], series.coefficients[d],
         table.betti[d] == series.coefficients[d])
        for d in range(upto + 1))
    return StableComparison(jet_bound, upto, rows)
