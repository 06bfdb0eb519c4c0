"""Graded-commutative algebra over exact rationals.

Three kinds of algebras share one element type:

* ``FreeGCA``, a free graded-commutative algebra on named generators.
  Monomials are kept in a canonical sorted form; reordering factors
  follows the Koszul convention, where swapping adjacent factors of
  degrees p and q multiplies by (-1)^{pq}, and any odd-degree generator
  squares to zero.
* ``RingPresentation``, a finite-dimensional graded ring given by a
  basis and a total structure-constant table.  This models the rational
  cohomology ring of a closed manifold, together with a point class
  against which elements are integrated.
* ``TensorAlgebra``, an ordered tensor product of such algebras with the
  graded sign rule, e.g. for three factors
  (a (x) b (x) c) * (a' (x) b' (x) c')
      = (-1)^{|b||a'| + |c|(|a'| + |b'|)} aa' (x) bb' (x) cc'.

All coefficients are ``fractions.Fraction``; nothing here touches
floating point.  Elements are immutable once built and every operation
is pure.

Generators are totally ordered by (degree ascending, insertion index
ascending); canonical monomials list their factors in that order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


class AlgebraError(ValueError):
    """Structural misuse: unknown generator or label, mismatched ambient
    algebras, or a ring without the data an operation needs."""


class Generator:
    """A named generator with a cohomological degree."""

    __slots__ = ("index", "name", "degree")

    def __init__(self, index: int, name: str, degree: int):
        if degree < 0:
            raise AlgebraError(f"generator {name!r} has negative degree {degree}")
        self.index = index
        self.name = name
        self.degree = degree

    @property
    def parity(self) -> int:
        return self.degree % 2

    def __repr__(self):
        return f"Generator({self.index}, {self.name!r}, deg={self.degree})"


def _as_q(c) -> Q:
    if isinstance(c, Q):
        return c
    if isinstance(c, int):
        return Q(c)
    raise AlgebraError(f"coefficient {c!r} is not an exact rational")


class Element:
    """A finite rational linear combination of basis keys of one algebra.

    The key format depends on the algebra: exponent-block tuples for a
    free algebra, basis labels for a presented ring, key tuples for a
    tensor product.  Zero coefficients are stripped on construction.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: _as_q(c) for k, c in terms.items() if c}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Common degree of all terms, or None if mixed or zero."""
        degs = {self.algebra.key_degree(k) for k in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def coefficient(self, key) -> Q:
        return self.terms.get(key, Q(0))

    def items(self):
        return self.terms.items()

    def _check_same(self, other: "Element"):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraError("mismatched algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Q(0)) + c
        return Element(self.algebra, terms)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element(self.algebra, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            c = _as_q(other)
            return Element(self.algebra, {k: v * c for k, v in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same(other)
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for k, c in self.algebra.mul_key_pairs(k1, k2):
                    acc = terms.get(k, Q(0)) + c1 * c2 * c
                    if acc:
                        terms[k] = acc
                    elif k in terms:
                        del terms[k]
        return Element(self.algebra, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Q)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Q)):
            return self * (Q(1) / _as_q(other))
        return NotImplemented

    def __pow__(self, m):
        return power(self, m)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.algebra is other.algebra or self.algebra == other.algebra) \
            and self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return f"<{render_element(self)}>"


class FreeGCA:
    """Free graded-commutative algebra on an ordered list of generators.

    Monomial keys are tuples of (generator index, exponent) blocks,
    sorted by the canonical generator order.  The empty tuple is the
    unit monomial.
    """

    def __init__(self, generators: Sequence[tuple[str, int]]):
        self.generators = [Generator(i, n, d) for i, (n, d) in enumerate(generators)]
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate generator names")
        self._by_name = {g.name: g for g in self.generators}
        order = sorted(self.generators, key=lambda g: (g.degree, g.index))
        self._position = {g.index: p for p, g in enumerate(order)}
        self.ordered_generators = order

    def __eq__(self, other):
        if not isinstance(other, FreeGCA):
            return NotImplemented
        return [(g.name, g.degree) for g in self.generators] \
            == [(g.name, g.degree) for g in other.generators]

    __hash__ = None

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> Element:
        g = self.generator(name)
        return Element(self, {((g.index, 1),): Q(1)})

    def unit_key(self):
        return ()

    def unit(self) -> Element:
        return Element(self, {(): Q(1)})

    def zero(self) -> Element:
        return Element(self, {})

    def element(self, terms: dict) -> Element:
        return Element(self, terms)

    def monomial(self, factors: Iterable[int]) -> Element:
        sign, mono = self.normalize(factors)
        if sign == 0:
            return self.zero()
        return Element(self, {mono: Q(sign)})

    def key_degree(self, mono) -> int:
        return sum(self.generators[g].degree * e for g, e in mono)

    def position(self, gen_index: int) -> int:
        return self._position[gen_index]

    def normalize(self, factors: Iterable[int]):
        """Sort a factor list into canonical order.

        Returns (sign, monomial).  Each adjacent swap of factors with
        degrees p and q contributes (-1)^{pq}; a repeated odd generator
        gives (0, None).
        """
        fs = list(factors)
        for idx in fs:
            if not (isinstance(idx, int) and 0 <= idx < len(self.generators)):
                raise AlgebraError(f"unknown generator id {idx!r}")
        sign = 1
        pos = self._position
        degs = [self.generators[i].degree for i in range(len(self.generators))]
        for i in range(1, len(fs)):
            j = i
            while j > 0 and pos[fs[j - 1]] > pos[fs[j]]:
                if degs[fs[j - 1]] % 2 and degs[fs[j]] % 2:
                    sign = -sign
                fs[j - 1], fs[j] = fs[j], fs[j - 1]
                j -= 1
        blocks: list[list[int]] = []
        for idx in fs:
            if blocks and blocks[-1][0] == idx:
                if degs[idx] % 2:
                    return 0, None
                blocks[-1][1] += 1
            else:
                blocks.append([idx, 1])
        return sign, tuple((g, e) for g, e in blocks)

    def mul_monomials(self, m1, m2):
        """Merge two canonical monomials; returns (sign, monomial) with
        sign 0 when an odd generator would repeat."""
        pos = self._position
        gens = self.generators
        out = []
        sign = 1
        i = j = 0
        odd_left = sum(1 for g, _ in m1 if gens[g].parity)
        while i < len(m1) and j < len(m2):
            g1, e1 = m1[i]
            g2, e2 = m2[j]
            if g1 == g2:
                if gens[g1].parity:
                    return 0, None
                out.append((g1, e1 + e2))
                i += 1
                j += 1
            elif pos[g1] < pos[g2]:
                if gens[g1].parity:
                    odd_left -= 1
                out.append((g1, e1))
                i += 1
            else:
                if gens[g2].parity and odd_left % 2:
                    sign = -sign
                out.append((g2, e2))
                j += 1
        out.extend(m1[i:])
        out.extend(m2[j:])
        return sign, tuple(out)

    def mul_key_pairs(self, m1, m2):
        sign, mono = self.mul_monomials(m1, m2)
        if sign == 0:
            return []
        return [(mono, Q(sign))]

    def format_key(self, mono, names: dict | None = None) -> str:
        if not mono:
            return "1"
        parts = []
        for g, e in mono:
            name = self.generators[g].name
            if names:
                name = names.get(name, name)
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def sort_key(self, mono):
        vec = [0] * len(self.generators)
        for g, e in mono:
            vec[self._position[g]] = e
        return (self.key_degree(mono), tuple(vec))


class RingPresentation:
    """A graded ring with a finite basis and total structure constants.

    ``basis`` lists (label, degree) pairs; ``products`` maps each ordered
    label pair to a dict of result coefficients.  ``point_class`` is the
    label integration reads off.  Construction does not verify the ring
    laws; ``ring_validation_errors`` does.
    """

    def __init__(self, basis: Sequence[tuple[str, int]],
                 products: dict,
                 top_degree: int,
                 point_class: str | None = None):
        self.basis = [(str(l), int(d)) for l, d in basis]
        labels = [l for l, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate basis labels")
        self.labels = labels
        self.degrees = dict(self.basis)
        self.products = {
            (a, b): {l: _as_q(c) for l, c in result.items() if c}
            for (a, b), result in products.items()
        }
        self.top_degree = int(top_degree)
        self.point_class = point_class
        self._order = {l: i for i, l in enumerate(labels)}

    def __eq__(self, other):
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return (self.basis == other.basis and self.products == other.products
                and self.top_degree == other.top_degree
                and self.point_class == other.point_class)

    __hash__ = None

    def unit_key(self):
        for l, d in self.basis:
            if d == 0:
                return l
        raise AlgebraError("ring has no degree-0 basis element")

    def unit(self) -> Element:
        return Element(self, {self.unit_key(): Q(1)})

    def zero(self) -> Element:
        return Element(self, {})

    def element(self, terms: dict) -> Element:
        for l in terms:
            if l not in self.degrees:
                raise AlgebraError(f"label {l!r} not in basis")
        return Element(self, terms)

    def basis_element(self, label: str) -> Element:
        if label not in self.degrees:
            raise AlgebraError(f"label {label!r} not in basis")
        return Element(self, {label: Q(1)})

    def key_degree(self, label) -> int:
        return self.degrees[label]

    def basis_of_degree(self, q: int) -> list[str]:
        return [l for l, d in self.basis if d == q]

    def betti(self, q: int) -> int:
        return len(self.basis_of_degree(q))

    def mul_key_pairs(self, l1, l2):
        try:
            result = self.products[(l1, l2)]
        except KeyError:
            raise AlgebraError(f"product table incomplete: ({l1}, {l2})") from None
        return list(result.items())

    def format_key(self, label, names: dict | None = None) -> str:
        if names:
            return names.get(label, label)
        return label

    def sort_key(self, label):
        return (self.degrees[label], self._order[label])


class TensorAlgebra:
    """Ordered tensor product of algebras with the graded sign rule."""

    def __init__(self, factors: Sequence):
        if not factors:
            raise AlgebraError("tensor product needs at least one factor")
        self.factors = list(factors)

    def __eq__(self, other):
        if not isinstance(other, TensorAlgebra):
            return NotImplemented
        if len(self.factors) != len(other.factors):
            return False
        return all(a == b for a, b in zip(self.factors, other.factors))

    __hash__ = None

    def unit_key(self):
        return tuple(f.unit_key() for f in self.factors)

    def unit(self) -> Element:
        return Element(self, {self.unit_key(): Q(1)})

    def zero(self) -> Element:
        return Element(self, {})

    def element(self, terms: dict) -> Element:
        return Element(self, terms)

    def key_degree(self, key) -> int:
        return sum(f.key_degree(k) for f, k in zip(self.factors, key))

    def mul_key_pairs(self, k1, k2):
        degs1 = [f.key_degree(k) for f, k in zip(self.factors, k1)]
        degs2 = [f.key_degree(k) for f, k in zip(self.factors, k2)]
        sign_exp = 0
        for i in range(len(self.factors)):
            for j in range(i + 1, len(self.factors)):
                sign_exp += degs2[i] * degs1[j]
        sign = Q(-1) if sign_exp % 2 else Q(1)
        out = [((), sign)]
        for i, f in enumerate(self.factors):
            pairs = f.mul_key_pairs(k1[i], k2[i])
            out = [(key + (k,), c * ci) for key, c in out for k, ci in pairs]
        return out

    def format_key(self, key, names: dict | None = None) -> str:
        return " (x) ".join(f.format_key(k, names) for f, k in zip(self.factors, key))

    def sort_key(self, key):
        return (self.key_degree(key),
                tuple(f.sort_key(k) for f, k in zip(self.factors, key)))


def pure_tensor(algebra: TensorAlgebra, parts: Sequence[Element]) -> Element:
    """Tensor of one element per factor.  Bilinear, no Koszul sign; the
    signs of the tensor product live in multiplication only."""
    if len(parts) != len(algebra.factors):
        raise AlgebraError("one element per tensor factor required")
    for p, f in zip(parts, algebra.factors):
        if p.algebra is not f and p.algebra != f:
            raise AlgebraError("mismatched algebras")
    terms = {(): Q(1)}
    for p in parts:
        terms = {
            key + (k,): c * ck
            for key, c in terms.items()
            for k, ck in p.terms.items()
        }
    return Element(algebra, terms)


def normalize_monomial(algebra: FreeGCA, factors: Iterable[int]):
    """Public face of monomial normalization; see FreeGCA.normalize."""
    return algebra.normalize(factors)


def mul(a: Element, b: Element) -> Element:
    return a * b


def power(a: Element, m: int) -> Element:
    """m-th power of a.  For m >= 2 every term of a must have even
    degree so the result is independent of expansion order."""
    if not isinstance(m, int) or m < 0:
        raise AlgebraError(f"exponent must be a nonnegative integer, got {m!r}")
    if m == 0:
        return a.algebra.unit()
    if m == 1:
        return a
    for k in a.terms:
        if a.algebra.key_degree(k) % 2:
            raise AlgebraError("power of an odd-degree term is ambiguous for m >= 2")
    out = a
    for _ in range(m - 1):
        out = out * a
    return out


def cap_dual(label: str, v: Element, target=None) -> Element:
    """Contract against the dual of one basis element of the rightmost
    tensor factor, which must be a presented ring.

    With b' the Kronecker dual of basis label b, this realizes
    b' cap (w (x) y) = b'(y) w: keep the terms whose rightmost factor is
    exactly b and drop that factor.  The result lives in the tensor
    algebra on the remaining factors (the lone factor itself if only one
    remains).
    """
    alg = v.algebra
    if not isinstance(alg, TensorAlgebra):
        raise AlgebraError("cap_dual needs a tensor-algebra element")
    ring = alg.factors[-1]
    if not isinstance(ring, RingPresentation):
        raise AlgebraError("rightmost tensor factor must be a presented ring")
    if label not in ring.degrees:
        raise AlgebraError(f"label {label!r} not in basis")
    if target is None:
        rest = alg.factors[:-1]
        target = rest[0] if len(rest) == 1 else TensorAlgebra(rest)
    single = not isinstance(target, TensorAlgebra)
    terms: dict = {}
    for key, c in v.terms.items():
        if key[-1] != label:
            continue
        k = key[0] if single and len(key) == 2 else key[:-1]
        terms[k] = terms.get(k, Q(0)) + c
    return Element(target, terms)


def integrate(a: Element) -> Q:
    """Pairing against the fundamental class: the coefficient of the
    ring's point class."""
    ring = a.algebra
    if not isinstance(ring, RingPresentation):
        raise AlgebraError("integrate needs an element of a presented ring")
    if ring.point_class is None:
        raise AlgebraError("ring has no point class declared")
    return a.terms.get(ring.point_class, Q(0))


def ring_validation_errors(ring: RingPresentation) -> list[str]:
    """Check the ring laws a cohomology ring presentation must satisfy.

    Returns human-readable violation strings, empty when the
    presentation is a unital graded-commutative associative ring with
    products vanishing above the top degree and a point class in the top
    degree.
    """
    errors: list[str] = []
    degree_zero = [l for l, d in ring.basis if d == 0]
    if degree_zero != ["1"]:
        errors.append(f'degree 0: expected exactly the basis label "1", found {degree_zero}')
    for l, d in ring.basis:
        if d < 0 or d > ring.top_degree:
            errors.append(f"degree: basis label {l!r} has degree {d} outside [0, {ring.top_degree}]")
    if ring.point_class is None:
        errors.append("point class: none declared")
    elif ring.point_class not in ring.degrees:
        errors.append(f"point class: {ring.point_class!r} not in basis")
    elif ring.degrees[ring.point_class] != ring.top_degree:
        errors.append(
            f"point class: {ring.point_class!r} has degree "
            f"{ring.degrees[ring.point_class]}, expected {ring.top_degree}")

    labels = ring.labels
    for a in labels:
        for b in labels:
            if (a, b) not in ring.products:
                errors.append(f"product table incomplete: ({a}, {b})")
    if errors:
        return errors

    for (a, b), result in ring.products.items():
        target = ring.degrees[a] + ring.degrees[b]
        for l, c in result.items():
            if l not in ring.degrees:
                errors.append(f"degree: product {a}*{b} hits unknown label {l!r}")
            elif ring.degrees[l] != target:
                errors.append(
                    f"degree: product {a}*{b} has a component {l!r} of degree "
                    f"{ring.degrees[l]}, expected {target}")
        if target > ring.top_degree and result:
            errors.append(f"degree: product {a}*{b} nonzero above top degree")
    if errors:
        return errors

    if not degree_zero:
        return errors
    one = degree_zero[0]
    for b in labels:
        if ring.products[(one, b)] != ({b: Q(1)} if b != one else {one: Q(1)}):
            errors.append(f"unit law: 1*{b} != {b}")
        if ring.products[(b, one)] != ({b: Q(1)} if b != one else {one: Q(1)}):
            errors.append(f"unit law: {b}*1 != {b}")

    for a in labels:
        for b in labels:
            sign = -1 if (ring.degrees[a] % 2 and ring.degrees[b] % 2) else 1
            ab = ring.products[(a, b)]
            ba = ring.products[(b, a)]
            if ab != {l: sign * c for l, c in ba.items()}:
                errors.append(f"graded commutativity: ({a}, {b})")

    if not errors:
        for a in labels:
            ea = ring.basis_element(a)
            for b in labels:
                eb = ring.basis_element(b)
                ab = ea * eb
                for c in labels:
                    ec = ring.basis_element(c)
                    if (ab * ec) != (ea * (eb * ec)):
                        errors.append(f"associativity: ({a}, {b}, {c})")
    return errors


def render_element(a: Element, names: dict | None = None, zero: str = "0") -> str:
    """Deterministic human-readable form: terms sorted by (degree,
    exponent pattern), coefficients printed as reduced fractions."""
    if a.is_zero:
        return zero
    alg = a.algebra
    parts = []
    for key in sorted(a.terms, key=alg.sort_key):
        c = a.terms[key]
        mono = alg.format_key(key, names)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)} {mono}"
        parts.append((c < 0, body))
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(("-" + body) if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)
