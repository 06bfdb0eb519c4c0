"""Jet-ampleness bounds and the certified homology degree ranges.

A divisor class that is d-jet ample makes the section-space model
compute the homology of the corresponding moduli in all degrees
strictly below (d - 3) / 2; ``main_range`` turns that strict bound into
the closed formula floor((d - 4) / 2).

No general algorithm decides the exact largest d, so everything here
returns certified lower bounds tagged by their source.  The one
exception is the curve case, where d = deg - 2g is exact; reports keep
an ``exact`` flag so callers can tell a sharp value from a bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .grca import AlgebraError, Element

SOURCES = ("curve_RR", "toric", "tensor_additivity", "user_supplied",
           "surface_fujita")


def d_curve(g: int, deg: int) -> int:
    """Jet-ampleness order of a degree-deg line bundle on a genus-g
    curve: deg - 2g, clamped below at -1.  Exact, not just a bound."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    return max(-1, deg - 2 * g)


def d_toric(intersections: list[int]) -> int:
    """Jet-ampleness order on a smooth toric variety from the list of
    intersection numbers with all torus-invariant curves: their minimum,
    clamped below at -1."""
    if not intersections:
        raise ValueError("need at least one intersection number")
    return max(-1, min(intersections))


def d_tensor(a: int, b: int) -> int:
    """An a-jet ample bundle tensored with a b-jet ample one is
    (a+b)-jet ample."""
    if a < 0 or b < 0:
        raise ValueError("jet-ampleness orders must be >= 0")
    return a + b


def d_power(dL: int, k: int) -> int:
    """The k-th tensor power of a dL-jet ample bundle is (k*dL)-jet
    ample; equals d_tensor folded k-1 times."""
    if dL < 0:
        raise ValueError("jet-ampleness orders must be >= 0")
    if k < 1:
        raise ValueError("power must be >= 1")
    return k * dL


def length_bound(n: int, d: int) -> int:
    """Largest length of the point clusters d-jet ampleness controls in
    dimension n: sum_{j=0}^{d} binom(n+j-1, j)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if d < 0:
        raise ValueError("jet order must be >= 0")
    return sum(comb(n + j - 1, j) for j in range(d + 1))


def surface_fujita_class(kX: Element, A: Element, L: Element, d: int) -> Element:
    """On a surface, kX + 4*A + (d-1)*L is d-jet ample whenever A is
    ample and L is very ample; both are user assertions, so pair the
    result with a report carrying source "surface_fujita"."""
    algebra = kX.algebra
    if getattr(algebra, "top_degree", None) != 4:
        raise AlgebraError("surface class arithmetic needs a dimension-2 ring")
    if d < 1:
        raise ValueError("jet order must be >= 1")
    return kX + 4 * A + (d - 1) * L


def main_range(d: int) -> int:
    """Largest integer strictly below (d - 3) / 2, as floor((d - 4) / 2).
    Degrees up to this value are certified; -1 or less means none."""
    return (d - 4) // 2


def stability_range(dL: int, k: int) -> int:
    """Certified range for the k-th power of a dL-jet ample class."""
    return main_range(d_power(dL, k))


def curve_range(g: int, deg: int) -> int:
    """Certified range on a genus-g curve for a degree-deg class."""
    return main_range(d_curve(g, deg))


SURFACE_FUJITA_ASSUMPTIONS = ("A ample", "L very ample")


@dataclass(frozen=True)
class RangeReport:
    """A jet-ampleness bound with its provenance and the degree range
    it certifies.  ``max_valid_degree`` is clamped at -1, the encoding
    of an empty range; ``exact`` distinguishes the sharp curve value
    from mere lower bounds."""
    jet_bound: int
    source: str
    max_valid_degree: int
    exact: bool
    assumptions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.jet_bound < -1:
            raise ValueError("jet bound must be >= -1")
        if self.source not in SOURCES:
            raise ValueError(f"unknown bound source {self.source!r}")

    @classmethod
    def from_bound(cls, d: int, source: str,
                   assumptions: tuple[str, ...] = ()) -> "RangeReport":
        return cls(jet_bound=d, source=source,
                   max_valid_degree=max(-1, main_range(d)),
                   exact=source == "curve_RR",
                   assumptions=tuple(assumptions))

    def describe(self) -> str:
        kind = "exact" if self.exact else "bound"
        return (f"d = {self.jet_bound} ({self.source}, {kind}), "
                f"max homology degree {self.max_valid_degree}")


def curve_report(g: int, deg: int) -> RangeReport:
    return RangeReport.from_bound(d_curve(g, deg), "curve_RR")


def toric_report(intersections: list[int]) -> RangeReport:
    return RangeReport.from_bound(
        d_toric(intersections), "toric",
        ("intersection numbers cover all torus-invariant curves",))
