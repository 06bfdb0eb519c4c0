"""Finite CDGA model for the space of sections of the projectivized
first-jet bundle of O_X that avoid the zero section, in the homotopy
class prescribed by the divisor class alpha.

The model is a free graded-commutative algebra on

* one generator z of degree 2 (the hyperplane class of the fiber),
* one generator x_j' of degree 1 per degree-1 basis class x_j of X,
* one generator w_{i,k} of degree i - 1 for each i = 2..2n+2 and each
  basis element b_{i,k} of H^{2n+2-i}(X), named "w{i}_{label}".

z and the x_j' are closed; the differential of w_{i,k} is the cap of
the dual basis element b'_{i,k} against the obstruction class

    Psi = sum_{i=0}^{n+1} (-1)^i (1 (x) 1 (x) c_i)
          * (z (x) 1 (x) 1 + 1 (x) 1 (x) alpha + sum_j 1 (x) x_j' (x) x_j)^{n+1-i}

living in L(z) (x) L(x') (x) H*(X), where the c_i are the jet-bundle
Chern classes and the cap acts on the rightmost tensor factor by
b' cap (w (x) y) = b'(y) w.  One published display of the genus-1 case
writes the middle sum with one factor transposed; the symmetric reading
used here is the one that makes Psi well defined for every input, and
the genus-1 differentials below reproduce the published ones verbatim.

Dual bases are the naive Kronecker duals of the chosen ring basis.  A
different (sign-adjusted) duality convention rescales generators and
changes no ranks, so Betti numbers are independent of that choice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import element_differential
from .grca import (AlgebraError, Element, FreeGCA, Q, TensorAlgebra, cap_dual,
                   power, pure_tensor, render_element)
from .variety import VarietyData, jet_chern, validate


@dataclass(frozen=True)
class CDGAPresentation:
    """A free CDGA with the differential given on generators.

    ``differential`` maps each generator index to an element of the
    algebra; images of the section-space model lie in the subalgebra
    generated by z and the x_j'.
    """
    algebra: FreeGCA
    differential: dict[int, Element]

    @property
    def generators(self) -> list[tuple[str, int, int]]:
        return [(g.name, g.degree, g.parity) for g in self.algebra.generators]

    def d(self, name: str) -> Element:
        return self.differential[self.algebra.generator(name).index]


def _jet_tower_class(v: VarietyData, tensor: TensorAlgebra) -> Element:
    lz, lx, ring = tensor.factors
    z = lz.gen("z")
    e = pure_tensor(tensor, [z, lx.unit(), ring.unit()])
    e = e + pure_tensor(tensor, [lz.unit(), lx.unit(), v.alpha])
    for label in v.h1_basis:
        e = e + pure_tensor(
            tensor,
            [lz.unit(), lx.gen(label + "'"), ring.basis_element(label)])
    return e


def compute_psi_chi(v: VarietyData) -> Element:
    """The obstruction class in L(z) (x) L(x') (x) H*(X); homogeneous of
    total degree 2n + 2."""
    ring = v.ring
    lz = FreeGCA([("z", 2)])
    lx = FreeGCA([(label + "'", 1) for label in v.h1_basis])
    tensor = TensorAlgebra([lz, lx, ring])
    jets = jet_chern(v)
    e = _jet_tower_class(v, tensor)
    out = tensor.zero()
    for i in range(v.n + 2):
        term = pure_tensor(tensor, [lz.unit(), lx.unit(), jets[i]]) \
            * power(e, v.n + 1 - i)
        out = out + (-term if i % 2 else term)
    return out


def compute_k1(v: VarietyData) -> Element:
    """First obstruction in H*(X) (x) L(z):
    sum_{i=0}^{n+1} (-1)^i c_i (x) z^{n+1-i}."""
    ring = v.ring
    lz = FreeGCA([("z", 2)])
    tensor = TensorAlgebra([ring, lz])
    jets = jet_chern(v)
    z = lz.gen("z")
    out = tensor.zero()
    for i in range(v.n + 2):
        term = pure_tensor(tensor, [jets[i], power(z, v.n + 1 - i)])
        out = out + (-term if i % 2 else term)
    return out


def build_section_cdga(v: VarietyData) -> CDGAPresentation:
    """The section-space model for the variety data; raises on invalid
    input and asserts homogeneity and d of d = 0 on the way out."""
    errors = validate(v)
    if errors:
        raise AlgebraError("invalid variety data: " + "; ".join(errors))
    ring = v.ring
    psi = compute_psi_chi(v)

    w_names: list[tuple[str, int, str, int]] = []
    for i in range(2, 2 * v.n + 3):
        for label in ring.basis_of_degree(2 * v.n + 2 - i):
            w_names.append((f"w{i}_{label}", i - 1, label, i))
    primes = [label + "'" for label in v.h1_basis]
    algebra = FreeGCA(
        [("z", 2)] + [(p, 1) for p in primes]
        + [(name, degree) for name, degree, _, _ in w_names])

    def embed(capped: Element) -> Element:
        out = algebra.zero()
        for (mono_z, mono_x), coeff in capped.items():
            factors = []
            for g, e in mono_x:
                factors.extend([1 + g] * e)
            for g, e in mono_z:
                factors.extend([0] * e)
            sign, mono = algebra.normalize(factors)
            if sign == 0:
                continue
            out = out + Element(algebra, {mono: Q(sign) * coeff})
        return out

    differential: dict[int, Element] = {}
    for g in algebra.generators:
        differential[g.index] = algebra.zero()
    for name, degree, label, i in w_names:
        image = embed(cap_dual(label, psi))
        if not image.is_zero and image.degree() != i:
            raise AlgebraError(
                f"d({name}) is not homogeneous of degree {i}")
        differential[algebra.generator(name).index] = image

    cdga = CDGAPresentation(algebra, differential)
    for g in algebra.generators:
        if not element_differential(cdga, cdga.differential[g.index]).is_zero:
            raise AlgebraError(f"d(d({g.name})) is nonzero")
    return cdga


def torus_generator_names(cdga: CDGAPresentation) -> dict[str, str]:
    """Short display names for the genus-1 model: y1, y2, y2', y3 for
    w2_u, w3_a, w3_b, w4_1.  Empty for any other generator shape."""
    names = [g.name for g in cdga.algebra.generators]
    expected = ["z", "a'", "b'", "w2_u", "w3_a", "w3_b", "w4_1"]
    if names != expected:
        return {}
    return {"w2_u": "y1", "w3_a": "y2", "w3_b": "y2'", "w4_1": "y3"}


def render_cdga(cdga: CDGAPresentation, names: dict[str, str] | None = None) -> str:
    """Readable summary: generator lines, then differential lines."""
    names = names or {}
    lines = []
    for g in cdga.algebra.generators:
        lines.append(f"generator {names.get(g.name, g.name)}  degree {g.degree}")
    for g in cdga.algebra.generators:
        image = cdga.differential[g.index]
        lines.append(
            f"d({names.get(g.name, g.name)}) = {render_element(image, names)}")
    return "\n".join(lines)
