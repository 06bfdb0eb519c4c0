"""Shared helpers for the test suite."""

from __future__ import annotations

import random

from hypermod.grca import Element, FreeGCA, Q
from hypermod.haefliger import CDGAPresentation, build_section_cdga
from hypermod.variety import (VarietyData, abelian, curve, product,
                              projective_space, torus, with_alpha)


def scaled_alpha(v: VarietyData, k) -> VarietyData:
    """alpha = k times the first degree-2 basis class."""
    label = v.ring.basis_of_degree(2)[0]
    return with_alpha(v, k * v.ring.basis_element(label))


def torus_model(k) -> CDGAPresentation:
    return build_section_cdga(scaled_alpha(torus(), k))


def random_alpha(v: VarietyData, rng: random.Random) -> VarietyData:
    terms = {
        label: Q(rng.randrange(-4, 5), rng.choice((1, 1, 2, 3)))
        for label in v.ring.basis_of_degree(2)
    }
    return with_alpha(v, v.ring.element(terms))


def builtin_collection() -> list[VarietyData]:
    return [
        projective_space(1),
        projective_space(2),
        projective_space(3),
        curve(0),
        torus(),
        curve(2),
        abelian(1),
        abelian(2),
        product(projective_space(1), projective_space(1)),
        product(projective_space(1), torus()),
    ]


def shuffled_cdga(cdga: CDGAPresentation, rng: random.Random) -> CDGAPresentation:
    """The same CDGA with its generator insertion order permuted."""
    gens = list(cdga.algebra.generators)
    perm = list(range(len(gens)))
    rng.shuffle(perm)
    new_alg = FreeGCA([(gens[old].name, gens[old].degree) for old in perm])
    old_to_new = {gens[old].index: new for new, old in enumerate(perm)}

    def convert(elem: Element) -> Element:
        out = new_alg.zero()
        for mono, c in elem.items():
            factors = []
            for g, e in mono:
                factors.extend([old_to_new[g]] * e)
            sign, m2 = new_alg.normalize(factors)
            out = out + Element(new_alg, {m2: c * sign})
        return out

    differential = {
        old_to_new[g.index]: convert(cdga.differential[g.index]) for g in gens
    }
    return CDGAPresentation(new_alg, differential)
