"""Character groups, representation rings and equivariant cycles."""

import random

import pytest

from lambdaforge.algebra import rat
from lambdaforge.cdga import OddCoset
from lambdaforge.contexts import (
    get_group,
    get_model,
    sample_equiv_class,
    sample_equiv_cycle,
    sample_odd_coset,
    sample_perturbation,
)
from lambdaforge.equivariant import (
    CharacterGroup,
    EquivClass,
    EquivCycle,
    EquivTriple,
    RepRing,
    RepRingElement,
    ch_equivariant,
    equiv_adams,
    equiv_chern_simons,
    equiv_curvature,
    equiv_cycle_mul,
    equiv_lambda,
    equiv_map_I,
    equiv_map_a,
    equiv_ring,
    perturbed_equiv_triple,
)
from lambdaforge.errors import MismatchError

G3 = CharacterGroup(1, (3,))
Z2 = CharacterGroup(0, (2,))


def test_character_arithmetic():
    assert G3.reduce((2, 5)) == (2, 2)
    assert G3.add((1, 2), (0, 2)) == (1, 1)
    assert G3.scale(3, (1, 1)) == (3, 0)
    assert Z2.scale(2, (1,)) == (0,)
    with pytest.raises(ValueError):
        CharacterGroup(-1)
    with pytest.raises(ValueError):
        CharacterGroup(0, (1,))


def test_rep_ring_unit_and_product():
    u = RepRingElement.character(G3, (1, 2))
    one = RepRingElement.one(G3)
    assert u * one == u
    v = RepRingElement.character(G3, (0, 2))
    assert u * v == RepRingElement.character(G3, (1, 1))


def test_rep_ring_torsion():
    x = RepRingElement.character(Z2, (1,))
    assert x * x == RepRingElement.one(Z2)


def test_rep_ring_laws():
    rng = random.Random(0)
    ring = RepRing(G3)

    def sample():
        out = RepRingElement.zero(G3)
        for _ in range(rng.randint(0, 3)):
            char = (rng.randint(-2, 2), rng.randint(0, 2))
            out = out + RepRingElement(G3, {char: rng.randint(-3, 3)})
        return out

    for _ in range(15):
        a, b, c = sample(), sample(), sample()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * ring.one() == a


def test_ch_by_character(torus2):
    w = torus2.generator_element("dx1").wedge(torus2.generator_element("dx2"))
    E = EquivTriple(torus2, G3, [((w, (1, 0)), 1), ((w.scaled(2), (0, 1)), 1)])
    table = ch_equivariant(E)
    assert set(table) == {(1, 0), (0, 1)}
    assert table[(1, 0)] == torus2.one_element() + w
    assert table[(0, 1)] == torus2.one_element() + w.scaled(rat(2))
    trivial = EquivTriple(torus2, G3, [((w, (0, 0)), 2)])
    assert set(ch_equivariant(trivial)) == {(0, 0)}


def test_unit_class(torus2):
    rng = random.Random(1)
    a = sample_equiv_class(torus2, G3, rng)
    assert equiv_cycle_mul(a, EquivClass.one(torus2, G3)) == a


def test_pure_form_product_character_rule(heis3):
    rng = random.Random(2)
    phi = sample_odd_coset(heis3, rng)
    psi = sample_odd_coset(heis3, rng)
    gamma, delta = (1, 2), (0, 1)
    a = equiv_map_a(heis3, G3, {gamma: phi})
    b = equiv_map_a(heis3, G3, {delta: psi})
    prod = equiv_cycle_mul(a, b)
    expected = equiv_map_a(
        heis3, G3, {G3.add(gamma, delta): OddCoset.of(-(phi.rep.d().wedge(psi.rep)))}
    )
    assert prod == expected


def test_commutativity_and_associativity(torus2):
    rng = random.Random(3)
    for _ in range(6):
        a = sample_equiv_class(torus2, Z2, rng)
        b = sample_equiv_class(torus2, Z2, rng)
        c = sample_equiv_class(torus2, Z2, rng)
        assert equiv_cycle_mul(a, b) == equiv_cycle_mul(b, a)
        assert equiv_cycle_mul(equiv_cycle_mul(a, b), c) == equiv_cycle_mul(a, equiv_cycle_mul(b, c))


def test_lambda_identity_and_line(torus2):
    rng = random.Random(4)
    a = sample_equiv_class(torus2, G3, rng)
    assert equiv_lambda(1, a) == a
    assert equiv_lambda(0, a) == EquivClass.one(torus2, G3)
    w = torus2.generator_element("dx1").wedge(torus2.generator_element("dx2"))
    line = EquivClass.from_cycle(EquivCycle.make(torus2, G3, [((w, (1, 1)), 1)]))
    for m in (2, 3):
        assert equiv_lambda(m, line).is_zero()


def test_adams_on_single_line(torus2):
    w = torus2.generator_element("dx1").wedge(torus2.generator_element("dx2"))
    line = EquivClass.from_cycle(EquivCycle.make(torus2, G3, [((w, (1, 2)), 1)]))
    out = equiv_adams(2, line)
    expected = EquivClass.from_cycle(
        EquivCycle.make(torus2, G3, [((w.scaled(2), (2, 1)), 1)])
    )
    assert out == expected


def test_adams_identities(torus2, s2):
    rng = random.Random(5)
    for model in (torus2, s2):
        for group in (G3, Z2):
            one = EquivClass.one(model, group)
            for k in (2, 3):
                assert equiv_adams(k, one) == one
            for _ in range(4):
                a = sample_equiv_class(model, group, rng)
                b = sample_equiv_class(model, group, rng)
                assert equiv_adams(1, a) == a
                assert equiv_adams(2, equiv_adams(3, a)) == equiv_adams(6, a)
                assert equiv_adams(2, equiv_cycle_mul(a, b)) == equiv_cycle_mul(
                    equiv_adams(2, a), equiv_adams(2, b)
                )


def test_adams_scales_odd_parts_and_characters(heis3):
    phi = OddCoset.of(heis3.generator_element("a"))
    a = equiv_map_a(heis3, Z2, {(1,): phi})
    out = equiv_adams(2, a)
    # degree-1 part scales by 2^1 and the character doubles to the unit
    expected = equiv_map_a(heis3, Z2, {(0,): phi.scaled(rat(2))})
    assert out == expected


def test_equivariant_transgression_contract(torus2, heis3):
    rng = random.Random(6)
    for model in (torus2, heis3):
        for _ in range(5):
            cyc = sample_equiv_cycle(model, G3, rng, max_rank=3)
            pert = sample_perturbation(cyc.triple, rng)
            cs = equiv_chern_simons(cyc.triple, pert)
            after = perturbed_equiv_triple(cyc.triple, pert)
            lhs = {c: v for c, v in ((c, p.d()) for c, p in cs.items()) if not v.is_zero()}
            rhs = {}
            for c, v in after.ch_by_char().items():
                rhs[c] = v
            for c, v in cyc.triple.ch_by_char().items():
                rhs[c] = rhs.get(c, model.zero_element()) - v
            rhs = {c: v for c, v in rhs.items() if not v.is_zero()}
            assert lhs == rhs


def test_equivariant_curvature_and_forgetful(torus2):
    rng = random.Random(7)
    from lambdaforge.gamma import zeven_adams

    for _ in range(6):
        a = sample_equiv_class(torus2, G3, rng)
        for k in (2, 3):
            cur = equiv_curvature(equiv_adams(k, a))
            expected = {}
            for c, v in equiv_curvature(a).items():
                key = G3.scale(k, c)
                add = zeven_adams(k, v)
                expected[key] = expected.get(key, torus2.zero_element()) + add
            expected = {c: v for c, v in expected.items() if not v.is_zero()}
            assert cur == expected
            assert equiv_map_I(equiv_adams(k, a)) == equiv_map_I(a).adams(k)


def test_group_mismatch(torus2):
    with pytest.raises(MismatchError):
        equiv_cycle_mul(EquivClass.one(torus2, G3), EquivClass.one(torus2, Z2))


def test_group_from_spec():
    g = CharacterGroup.from_spec({"free_rank": 1, "torsion": [3]})
    assert g == G3
    assert str(g) == "Z x Z/3"
