"""Input data for a smooth complex projective variety X of dimension n:
its rational cohomology ring as a finite presentation, the Chern classes
of the tangent bundle, a degree-2 divisor class alpha, and an optional
polarization.

Whether a degree-2 class is algebraic or ample is not decidable from a
ring presentation, so ampleness travels as a user assertion
(``ampleness_asserted``) and reports carry the assumption explicitly.

The first jet bundle of the trivial line bundle splits smoothly as
Omega^1_X + O_X, so its Chern classes are c_i(J) = (-1)^i c_i(TX) with
c_{n+1} = 0; ``jet_chern`` packages exactly that.

Builtins cover projective spaces, smooth curves of any genus, tori of
any dimension (exterior algebras on degree-1 classes), and Kunneth
products of any two of these.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from math import comb, gcd

from .cohomology import rational_matrix_rank
from .grca import (AlgebraError, Element, Q, RingPresentation, integrate,
                   ring_validation_errors)


@dataclass(frozen=True)
class VarietyData:
    name: str
    n: int
    ring: RingPresentation
    h1_basis: tuple[str, ...]
    tangent_chern: tuple[Element, ...]
    alpha: Element
    polarization: Element | None = None
    ampleness_asserted: bool = False


@dataclass(frozen=True)
class JetChernData:
    """Chern classes c_0..c_{n+1} of the first jet bundle of O_X."""
    classes: tuple[Element, ...]

    def __getitem__(self, i: int) -> Element:
        return self.classes[i]

    def __len__(self):
        return len(self.classes)


def with_alpha(v: VarietyData, alpha: Element) -> VarietyData:
    return replace(v, alpha=alpha)


def _homogeneity_error(name: str, a: Element, degree: int) -> str | None:
    if a.is_zero:
        return None
    if a.degree() != degree:
        return f"{name}: not homogeneous of degree {degree}"
    return None


def validate(v: VarietyData, check_pairing: bool = True) -> list[str]:
    """All structural violations of the variety data; empty means valid.

    Ring-law failures short-circuit the deeper checks because the later
    ones assume a ring.  The Poincare pairing check verifies that the
    cup-product pairing into the top degree is nondegenerate in every
    degree; it can be disabled when the input is trusted.
    """
    errors = list(ring_validation_errors(v.ring))
    if v.n < 1:
        errors.append(f"dimension: n = {v.n} must be >= 1")
    if v.ring.top_degree != 2 * v.n:
        errors.append(
            f"dimension: top degree {v.ring.top_degree} != 2n = {2 * v.n}")
    if errors:
        return errors

    ring = v.ring
    for label, what in ((v.alpha, "alpha"),) + (
            ((v.polarization, "polarization"),) if v.polarization is not None else ()):
        a = label
        if a.algebra is not ring and a.algebra != ring:
            errors.append(f"{what}: element of a different ring")
        else:
            e = _homogeneity_error(what, a, 2)
            if e:
                errors.append(e)

    if len(v.tangent_chern) != v.n:
        errors.append(
            f"tangent_chern: expected n = {v.n} classes, got {len(v.tangent_chern)}")
    for i, c in enumerate(v.tangent_chern, start=1):
        if c.algebra is not ring and c.algebra != ring:
            errors.append(f"tangent_chern: c_{i} lives in a different ring")
            continue
        e = _homogeneity_error(f"tangent_chern: c_{i}", c, 2 * i)
        if e:
            errors.append(e)

    degree_one = ring.basis_of_degree(1)
    if list(v.h1_basis) != degree_one:
        errors.append(
            f"h1_basis: must list the degree-1 basis labels {degree_one} in order, "
            f"got {list(v.h1_basis)}")

    if check_pairing and not errors:
        for q in range(0, v.n + 1):
            left = ring.basis_of_degree(q)
            right = ring.basis_of_degree(2 * v.n - q)
            if len(left) != len(right):
                errors.append(
                    f"poincare pairing: b_{q} = {len(left)} != b_{2 * v.n - q} = {len(right)}")
                continue
            if not left:
                continue
            rows = [
                [integrate(ring.basis_element(a) * ring.basis_element(b)) for b in right]
                for a in left
            ]
            if rational_matrix_rank(rows) != len(left):
                errors.append(f"poincare pairing: degenerate in degree {q}")
    return errors


def jet_chern(v: VarietyData) -> JetChernData:
    """c_i(J^1 O_X) = (-1)^i c_i(TX), padded with c_0 = 1 and c_{n+1} = 0."""
    ring = v.ring
    classes = [ring.unit()]
    for i, c in enumerate(v.tangent_chern, start=1):
        classes.append(c if i % 2 == 0 else -c)
    classes.append(ring.zero())
    return JetChernData(tuple(classes))


# ---------------------------------------------------------------------------
# builtins


def _with_unit_rows(labels: list[str], products: dict) -> dict:
    for l in labels:
        products[("1", l)] = {l: Q(1)}
        products[(l, "1")] = {l: Q(1)}
    products[("1", "1")] = {"1": Q(1)}
    return products


def projective_space(n: int) -> VarietyData:
    """P^n with basis 1, h, h2, ..., hn and c(TX) = (1 + h)^{n+1}."""
    if n < 1:
        raise ValueError("projective space needs n >= 1")
    labels = ["1"] + [("h" if i == 1 else f"h{i}") for i in range(1, n + 1)]
    basis = [(l, 2 * i) for i, l in enumerate(labels)]
    products: dict = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            result = {labels[i + j]: Q(1)} if i + j <= n else {}
            products[(labels[i], labels[j])] = result
    _with_unit_rows(labels, products)
    ring = RingPresentation(basis, products, top_degree=2 * n, point_class=labels[n])
    h = ring.basis_element("h")
    chern = tuple(comb(n + 1, i) * ring.basis_element(labels[i]) for i in range(1, n + 1))
    return VarietyData(
        name=f"p{n}", n=n, ring=ring, h1_basis=(), tangent_chern=chern,
        alpha=ring.zero(), polarization=h, ampleness_asserted=True)


def curve(g: int) -> VarietyData:
    """A smooth curve of genus g: H^1 has a symplectic basis a_i, b_i
    with a_i b_i = u, and c_1(TX) = (2 - 2g) u."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    if g == 0:
        a_labels: list[str] = []
        b_labels: list[str] = []
    elif g == 1:
        a_labels, b_labels = ["a"], ["b"]
    else:
        a_labels = [f"a{i}" for i in range(1, g + 1)]
        b_labels = [f"b{i}" for i in range(1, g + 1)]
    ones = a_labels + b_labels
    labels = ["1"] + ones + ["u"]
    basis = [("1", 0)] + [(l, 1) for l in ones] + [("u", 2)]
    products: dict = {}
    for x in ones + ["u"]:
        products[(x, "u")] = {}
        products[("u", x)] = {}
    for i, x in enumerate(ones):
        for j, y in enumerate(ones):
            products[(x, y)] = {}
    for i in range(g):
        products[(a_labels[i], b_labels[i])] = {"u": Q(1)}
        products[(b_labels[i], a_labels[i])] = {"u": Q(-1)}
    _with_unit_rows(labels, products)
    ring = RingPresentation(basis, products, top_degree=2, point_class="u")
    u = ring.basis_element("u")
    return VarietyData(
        name=f"curve{g}", n=1, ring=ring, h1_basis=tuple(ones),
        tangent_chern=((2 - 2 * g) * u,), alpha=ring.zero(),
        polarization=u, ampleness_asserted=True)


def torus() -> VarietyData:
    return replace(curve(1), name="torus")


def abelian(g: int) -> VarietyData:
    """A g-dimensional complex torus: the exterior algebra on 2g
    degree-1 classes, trivial tangent Chern classes."""
    if g < 1:
        raise ValueError("abelian variety needs g >= 1")
    m = 2 * g
    subsets = []
    for mask in range(1 << m):
        subsets.append(tuple(i for i in range(m) if mask >> i & 1))
    subsets.sort(key=lambda s: (len(s), s))

    def label(s):
        return "1" if not s else "".join(f"e{i + 1}" for i in s)

    basis = [(label(s), len(s)) for s in subsets]
    products: dict = {}
    for s in subsets:
        for t in subsets:
            if set(s) & set(t):
                products[(label(s), label(t))] = {}
                continue
            inversions = sum(1 for x in s for y in t if x > y)
            merged = tuple(sorted(s + t))
            sign = Q(-1) if inversions % 2 else Q(1)
            products[(label(s), label(t))] = {label(merged): sign}
    ring = RingPresentation(basis, products, top_degree=m,
                            point_class=label(tuple(range(m))))
    theta = ring.zero()
    for i in range(g):
        theta = theta + ring.basis_element(label((2 * i, 2 * i + 1)))
    zero = ring.zero()
    return VarietyData(
        name=f"abelian{g}", n=g, ring=ring,
        h1_basis=tuple(label((i,)) for i in range(m)),
        tangent_chern=tuple(zero for _ in range(g)),
        alpha=ring.zero(), polarization=theta, ampleness_asserted=True)


def _pair_label(l1: str, l2: str) -> str:
    return "1" if (l1 == "1" and l2 == "1") else f"{l1}*{l2}"


def product(v1: VarietyData, v2: VarietyData) -> VarietyData:
    """Kunneth product: basis label pairs with the graded sign rule,
    Whitney-sum tangent Chern classes, product point class."""
    r1, r2 = v1.ring, v2.ring
    n = v1.n + v2.n
    # stable sort by degree, preserving the factor pair order inside each degree
    basis = sorted(
        ((_pair_label(l1, l2), d1 + d2)
         for l1, d1 in r1.basis for l2, d2 in r2.basis),
        key=lambda t: t[1])
    pairs = [(l1, l2) for l1, _ in r1.basis for l2, _ in r2.basis]
    products: dict = {}
    for (a1, a2) in pairs:
        for (b1, b2) in pairs:
            sign = Q(-1) if (r2.degrees[a2] % 2 and r1.degrees[b1] % 2) else Q(1)
            left = r1.products[(a1, b1)]
            right = r2.products[(a2, b2)]
            result: dict = {}
            for l1, c1 in left.items():
                for l2, c2 in right.items():
                    result[_pair_label(l1, l2)] = sign * c1 * c2
            products[(_pair_label(a1, a2), _pair_label(b1, b2))] = result
    ring = RingPresentation(
        basis, products, top_degree=2 * n,
        point_class=_pair_label(r1.point_class, r2.point_class))

    def embed1(a: Element) -> Element:
        return ring.element({_pair_label(l, "1"): c for l, c in a.items()})

    def embed2(a: Element) -> Element:
        return ring.element({_pair_label("1", l): c for l, c in a.items()})

    t1 = ring.unit()
    for c in v1.tangent_chern:
        t1 = t1 + embed1(c)
    t2 = ring.unit()
    for c in v2.tangent_chern:
        t2 = t2 + embed2(c)
    total = t1 * t2
    chern = []
    for i in range(1, n + 1):
        part = {k: c for k, c in total.items() if ring.key_degree(k) == 2 * i}
        chern.append(ring.element(part))
    h1 = tuple(l for l, d in basis if d == 1)
    alpha = embed1(v1.alpha) + embed2(v2.alpha)
    pol = None
    if v1.polarization is not None and v2.polarization is not None:
        pol = embed1(v1.polarization) + embed2(v2.polarization)
    return VarietyData(
        name=f"{v1.name}x{v2.name}", n=n, ring=ring, h1_basis=h1,
        tangent_chern=tuple(chern), alpha=alpha, polarization=pol,
        ampleness_asserted=v1.ampleness_asserted and v2.ampleness_asserted)


def builtin(name: str, *params) -> VarietyData:
    table = {
        "projective_space": projective_space,
        "curve": curve,
        "torus": torus,
        "abelian": abelian,
        "product": product,
    }
    try:
        make = table[name]
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}") from None
    return make(*params)


_BUILTIN_SPEC = re.compile(r"^(p|curve|abelian)(\d+)$")


def builtin_from_spec(spec: str) -> VarietyData:
    """CLI builtin names: torus, pN, curveG, abelianG, or
    product:A,B with A and B non-product names."""
    if spec == "torus":
        return torus()
    if spec.startswith("product:"):
        rest = spec[len("product:"):]
        parts = rest.split(",")
        if len(parts) != 2:
            raise ValueError(f"product builtin needs two factors, got {spec!r}")
        return product(builtin_from_spec(parts[0]), builtin_from_spec(parts[1]))
    m = _BUILTIN_SPEC.match(spec)
    if not m:
        raise ValueError(f"unknown builtin {spec!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == "p":
        return projective_space(num)
    if kind == "curve":
        return curve(num)
    return abelian(num)


# ---------------------------------------------------------------------------
# variety description files


class VarietyFileError(ValueError):
    """A variety description file failed to parse: JSON syntax, a
    malformed coefficient, or a schema deviation."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


_COEFF = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def _parse_coeff(s, where: str) -> Q:
    if not isinstance(s, str):
        raise VarietyFileError("syntax", f"{where}: coefficient must be a string, got {s!r}")
    m = _COEFF.match(s)
    if not m:
        raise VarietyFileError("syntax", f"{where}: malformed coefficient {s!r}")
    p = int(m.group(1))
    if m.group(2) is None:
        return Q(p)
    q = int(m.group(2))
    if q == 0:
        raise VarietyFileError("syntax", f"{where}: zero denominator in {s!r}")
    if gcd(abs(p), q) != 1:
        raise VarietyFileError("syntax", f"{where}: coefficient {s!r} is not reduced")
    return Q(p, q)


def _element(ring: RingPresentation, entries, where: str) -> Element:
    if not isinstance(entries, list):
        raise VarietyFileError("schema", f"{where}: expected an array of terms")
    terms: dict = {}
    for i, entry in enumerate(entries):
        spot = f"{where}[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"basis", "coeff"}:
            raise VarietyFileError("schema", f"{spot}: expected {{basis, coeff}}")
        label = entry["basis"]
        if label not in ring.degrees:
            raise VarietyFileError("schema", f"{spot}: unknown basis label {label!r}")
        terms[label] = terms.get(label, Q(0)) + _parse_coeff(entry["coeff"], spot)
    return ring.element(terms)


def _complete_products(labels, degrees, given: dict, top_degree: int) -> dict:
    """Fill the pairs a file may omit: unit rows, mirrors through graded
    commutativity, and products past the top degree.  Explicit entries
    are never touched, so validation still cross-checks them."""
    products = dict(given)
    for a in labels:
        for b in labels:
            if (a, b) in products:
                continue
            if a == "1":
                products[(a, b)] = {b: Q(1)}
            elif b == "1":
                products[(a, b)] = {a: Q(1)}
            elif degrees[a] + degrees[b] > top_degree:
                products[(a, b)] = {}
            elif (b, a) in given:
                sign = Q(-1) if (degrees[a] % 2 and degrees[b] % 2) else Q(1)
                products[(a, b)] = {l: sign * c for l, c in given[(b, a)].items()}
    return products


def variety_from_json(text: str) -> VarietyData:
    """Parse a variety description.  Raises VarietyFileError on syntax
    or schema problems; ring-law violations are left to ``validate``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise VarietyFileError(
            "syntax", f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise VarietyFileError("schema", "top level must be an object")
    required = {"name", "dim", "basis", "products", "point_class",
                "h1_basis", "tangent_chern", "alpha", "ample_asserted"}
    missing = sorted(required - set(doc))
    if missing:
        raise VarietyFileError("schema", f"missing fields: {', '.join(missing)}")
    extra = sorted(set(doc) - required - {"polarization"})
    if extra:
        raise VarietyFileError("schema", f"unknown fields: {', '.join(extra)}")
    name = doc["name"]
    n = doc["dim"]
    if not isinstance(name, str) or not isinstance(n, int):
        raise VarietyFileError("schema", "name must be a string and dim an integer")

    if not isinstance(doc["basis"], list):
        raise VarietyFileError("schema", "basis must be an array")
    basis = []
    for i, b in enumerate(doc["basis"]):
        if not isinstance(b, dict) or set(b) != {"label", "degree"} \
                or not isinstance(b["label"], str) or not isinstance(b["degree"], int):
            raise VarietyFileError("schema", f"basis[{i}]: expected {{label, degree}}")
        basis.append((b["label"], b["degree"]))
    labels = [l for l, _ in basis]
    if len(set(labels)) != len(labels):
        raise VarietyFileError("schema", "duplicate basis labels")
    degrees = dict(basis)

    if not isinstance(doc["products"], list):
        raise VarietyFileError("schema", "products must be an array")
    given: dict = {}
    for i, p in enumerate(doc["products"]):
        spot = f"products[{i}]"
        if not isinstance(p, dict) or set(p) != {"left", "right", "result"}:
            raise VarietyFileError("schema", f"{spot}: expected {{left, right, result}}")
        a, b = p["left"], p["right"]
        for side in (a, b):
            if side not in degrees:
                raise VarietyFileError("schema", f"{spot}: unknown label {side!r}")
        if (a, b) in given:
            raise VarietyFileError("schema", f"{spot}: duplicate pair ({a}, {b})")
        if not isinstance(p["result"], list):
            raise VarietyFileError("schema", f"{spot}: result must be an array")
        result: dict = {}
        for j, entry in enumerate(p["result"]):
            at = f"{spot}.result[{j}]"
            if not isinstance(entry, dict) or set(entry) != {"basis", "coeff"}:
                raise VarietyFileError("schema", f"{at}: expected {{basis, coeff}}")
            if entry["basis"] not in degrees:
                raise VarietyFileError("schema", f"{at}: unknown label {entry['basis']!r}")
            result[entry["basis"]] = result.get(entry["basis"], Q(0)) \
                + _parse_coeff(entry["coeff"], at)
        given[(a, b)] = {l: c for l, c in result.items() if c}

    top_degree = 2 * n if isinstance(n, int) else 0
    products = _complete_products(labels, degrees, given, top_degree)
    ring = RingPresentation(basis, products, top_degree=top_degree,
                            point_class=doc["point_class"]
                            if isinstance(doc["point_class"], str) else None)

    if not isinstance(doc["h1_basis"], list) \
            or not all(isinstance(l, str) for l in doc["h1_basis"]):
        raise VarietyFileError("schema", "h1_basis must be an array of labels")
    if not isinstance(doc["tangent_chern"], list):
        raise VarietyFileError("schema", "tangent_chern must be an array")
    chern = tuple(
        _element(ring, entries, f"tangent_chern[{i}]")
        for i, entries in enumerate(doc["tangent_chern"]))
    alpha = _element(ring, doc["alpha"], "alpha")
    pol = None
    if "polarization" in doc:
        pol = _element(ring, doc["polarization"], "polarization")
    if not isinstance(doc["ample_asserted"], bool):
        raise VarietyFileError("schema", "ample_asserted must be a boolean")
    return VarietyData(
        name=name, n=n, ring=ring, h1_basis=tuple(doc["h1_basis"]),
        tangent_chern=chern, alpha=alpha, polarization=pol,
        ampleness_asserted=doc["ample_asserted"])
