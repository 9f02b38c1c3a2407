"""Cycle model: characters, transgressions, products, operations, maps."""

import random

import pytest

from lambdaforge.algebra import rat
from lambdaforge.cdga import GradedElement, OddCoset, build_model, cpn_spec, formal_spec
from lambdaforge.contexts import (
    get_model,
    sample_class,
    sample_cycle,
    sample_odd_coset,
    sample_perturbation,
)
from lambdaforge.diffk import (
    DiffKClass,
    DiffKCycle,
    Perturbation,
    SplitTriple,
    chern_character,
    chern_simons,
    curvature_map,
    cycle_adams,
    cycle_lambda,
    cycle_mul,
    diffk_ring,
    exp_basis_matrix,
    lambda_t_cycle,
    map_I,
    map_a,
    normal_form,
    perturbed_triple,
)
from lambdaforge.errors import MismatchError
from lambdaforge.gamma import GammaElement, gamma_lambda
from lambdaforge.lambdaring import LambdaSeries


def line_class(model, root):
    return DiffKClass.from_cycle(DiffKCycle.make(model, [(root, 1)], None))


def test_chern_character_of_flat_bundle(torus4):
    E = SplitTriple(torus4, [(torus4.zero_element(), 3)])
    assert chern_character(E) == torus4.one_element().scaled(rat(3))


def test_chern_character_single_root(cp2):
    x = cp2.generator_element("x")
    E = SplitTriple.from_elements(cp2, [x])
    expected = cp2.one_element() + x + x.wedge(x).scaled(rat(1, 2))
    assert chern_character(E) == expected


def test_chern_character_opposite_roots():
    model = build_model(formal_spec("wide", [("x", 2)], ["x^5"], 8))
    x = model.generator_element("x")
    E = SplitTriple(model, [(x, 1), (x.scaled(-1), 1)])
    x2 = x.wedge(x)
    expected = model.one_element().scaled(rat(2)) + x2 + x2.wedge(x2).scaled(rat(1, 12))
    assert chern_character(E) == expected


def test_chern_simons_zero_perturbation(torus4):
    rng = random.Random(0)
    E = sample_cycle(torus4, rng, 3).triple
    assert chern_simons(E, Perturbation.zero(E)).is_zero()


def test_chern_simons_from_zero_root(heis3):
    c = heis3.generator_element("c")
    E = SplitTriple.from_elements(heis3, [heis3.zero_element()])
    cs = chern_simons(E, Perturbation((c,)))
    db = c.d()
    expected = c.wedge(heis3.one_element() + db.scaled(rat(1, 2)))
    assert cs == OddCoset.of(expected)
    # differential contract: d(CS) = exp(d beta) - 1
    exp_db = heis3.one_element() + db
    assert cs.d() == exp_db - heis3.one_element()


def test_chern_simons_additive_over_direct_sum(heis3):
    rng = random.Random(1)
    E = sample_cycle(heis3, rng, 2).triple
    F = sample_cycle(heis3, rng, 2).triple
    pe = sample_perturbation(E, rng)
    pf = sample_perturbation(F, rng)
    combined = Perturbation(pe.betas + pf.betas)
    assert chern_simons(E.direct_sum(F), combined) == chern_simons(E, pe) + chern_simons(F, pf)


def test_chern_simons_arity_mismatch(torus4):
    E = SplitTriple(torus4, [(torus4.zero_element(), 2)])
    with pytest.raises(MismatchError):
        chern_simons(E, Perturbation((torus4.zero_element(),)))


def test_cup_with_unit(torus4):
    rng = random.Random(2)
    a = sample_class(torus4, rng)
    assert cycle_mul(a, DiffKClass.one(torus4)) == a


def test_cup_bundle_with_form(torus4):
    rng = random.Random(3)
    E = DiffKClass.from_cycle(sample_cycle(torus4, rng, 2))
    E = DiffKClass.from_cycle(DiffKCycle.make(torus4, E.plus.triple.roots, None))
    psi = sample_odd_coset(torus4, rng)
    lhs = cycle_mul(E, map_a(psi))
    ch = chern_character(E.plus.triple)
    assert lhs == map_a(OddCoset.of(ch.wedge(psi.rep)))


def test_cup_form_with_form(heis3):
    rng = random.Random(4)
    phi = sample_odd_coset(heis3, rng)
    psi = sample_odd_coset(heis3, rng)
    lhs = cycle_mul(map_a(phi), map_a(psi))
    assert lhs == map_a(OddCoset.of(-(phi.rep.d().wedge(psi.rep))))


def test_ring_laws(torus4):
    rng = random.Random(5)
    R = diffk_ring(torus4)
    for _ in range(8):
        a, b, c = (sample_class(torus4, rng) for _ in range(3))
        assert cycle_mul(a, b) == cycle_mul(b, a)
        assert cycle_mul(cycle_mul(a, b), c) == cycle_mul(a, cycle_mul(b, c))
        assert cycle_mul(a + b, c) == cycle_mul(a, c) + cycle_mul(b, c)
        assert a + (-a) == R.zero()


def test_lambda_of_pure_bundle(torus4):
    rng = random.Random(6)
    cyc = DiffKCycle.make(torus4, sample_cycle(torus4, rng, 3).triple.roots, None)
    E = DiffKClass.from_cycle(cyc)
    for k in (1, 2, 3):
        lam = cycle_lambda(k, E)
        assert lam.plus.triple == cyc.triple.exterior(k)
        assert lam.plus.phi.is_zero()
        assert not lam.minus.triple.roots


def test_lambda_vanishes_above_rank_of_line(cp2):
    L = line_class(cp2, cp2.generator_element("x"))
    for m in (2, 3, 4):
        assert cycle_lambda(m, L).is_zero()


def test_lambda_of_pure_form(heis3):
    rng = random.Random(7)
    phi = sample_odd_coset(heis3, rng)
    for k in (1, 2, 3):
        lam = cycle_lambda(k, map_a(phi))
        assert not lam.plus.triple.roots
        gamma_side = gamma_lambda(k, GammaElement.from_odd(phi))
        assert lam.plus.phi == gamma_side.odd


def test_adams_on_lines(torus4):
    w = torus4.generator_element("dx1").wedge(torus4.generator_element("dx2"))
    L = line_class(torus4, w)
    for k in (2, 3):
        assert cycle_adams(k, L) == line_class(torus4, w.scaled(rat(k)))
    rng = random.Random(8)
    a = sample_class(torus4, rng)
    assert cycle_adams(1, a) == a


def test_adams_newton_cross_check(torus4, s2):
    rng = random.Random(9)
    from lambdaforge.symfun import newton_nu

    for model in (torus4, s2):
        R = diffk_ring(model)
        for _ in range(4):
            a = sample_class(model, rng)
            for k in (2, 3, 4):
                nu = newton_nu(k)
                assignment = {f"s{i}": cycle_lambda(i, a) for i in range(1, k + 1)}
                assert cycle_adams(k, a) == nu.poly.evaluate_in(R, assignment)


def test_curvature(torus4, heis3):
    rng = random.Random(10)
    E = DiffKClass.from_cycle(DiffKCycle.make(torus4, sample_cycle(torus4, rng, 2).triple.roots, None))
    assert curvature_map(E) == chern_character(E.plus.triple)
    phi = sample_odd_coset(heis3, rng)
    assert curvature_map(map_a(phi)) == -(phi.rep.d())
    assert curvature_map(DiffKClass.one(torus4)) == torus4.one_element()
    from lambdaforge.gamma import zeven_adams

    for _ in range(5):
        a = sample_class(heis3, rng)
        for k in (2, 3):
            assert curvature_map(cycle_adams(k, a)) == zeven_adams(k, curvature_map(a))


def test_map_a_and_forgetful(torus4, heis3):
    rng = random.Random(11)
    assert map_a(OddCoset.zero(torus4)).is_zero()
    phi = sample_odd_coset(torus4, rng)
    assert map_I(map_a(phi)).is_zero()
    a = sample_class(torus4, rng)
    b = sample_class(torus4, rng)
    assert map_I(a + b) == map_I(a) + map_I(b)
    assert map_I(cycle_mul(a, b)) == map_I(a) * map_I(b)
    for k in (2, 3):
        assert map_I(cycle_adams(k, a)) == map_I(a).adams(k)
    # the forgetful image drops the odd data
    assert map_I(a + map_a(phi)) == map_I(a)


def test_normal_form_idempotent(torus4, heis3):
    rng = random.Random(12)
    for model in (torus4, heis3):
        for _ in range(8):
            a = sample_class(model, rng)
            assert normal_form(a) == a


def test_normal_form_identifies_perturbed_roots(heis3):
    # the exact degree-2 form a*b is the differential of c: a cycle rooted
    # there collapses onto the zero root, corrected by the transgression of
    # the path from a*b down to 0
    a_ = heis3.generator_element("a")
    b_ = heis3.generator_element("b")
    c_ = heis3.generator_element("c")
    ab = a_.wedge(b_)
    cyc_moved = DiffKCycle.make(heis3, [(ab, 1)], None)
    cs_down = chern_simons(SplitTriple.from_elements(heis3, [ab]), Perturbation((-c_,)))
    cyc_base = DiffKCycle.make(heis3, [(heis3.zero_element(), 1)], cs_down)
    assert DiffKClass.from_cycle(cyc_moved) == DiffKClass.from_cycle(cyc_base)
    # and the moved cycle with its own upward correction matches the plain base
    cs_up = chern_simons(
        SplitTriple.from_elements(heis3, [heis3.zero_element()]), Perturbation((c_,))
    )
    lifted = DiffKCycle.make(heis3, [(ab, 1)], cs_up + OddCoset.zero(heis3))
    plain = DiffKCycle.make(heis3, [(heis3.zero_element(), 1)], cs_up + cs_down)
    assert DiffKClass.from_cycle(lifted) == DiffKClass.from_cycle(plain)


def test_normal_form_cancels_stabilization(torus4):
    rng = random.Random(13)
    E = sample_cycle(torus4, rng, 2)
    G = sample_cycle(torus4, rng, 2).triple
    stabilized = DiffKClass.make(
        DiffKCycle(E.triple.direct_sum(G), E.phi),
        DiffKCycle(G, OddCoset.zero(torus4)),
    )
    assert stabilized == DiffKClass.from_cycle(E)


def test_lambda_t_of_unit(torus4):
    one = DiffKClass.one(torus4)
    ring = diffk_ring(torus4)
    assert lambda_t_cycle(one, 3) == LambdaSeries.one_plus_t(ring, 3)


def test_lambda_t_of_negative_line(torus4):
    w = torus4.generator_element("dx1").wedge(torus4.generator_element("dx2"))
    L = line_class(torus4, w)
    ring = diffk_ring(torus4)
    neg = DiffKClass.zero(torus4) - L
    series = LambdaSeries(ring, [ring.one(), L], 3)
    assert lambda_t_cycle(neg, 3) == LambdaSeries.from_series(series.invert())


def test_lambda_t_group_inverse(torus4):
    rng = random.Random(14)
    ring = diffk_ring(torus4)
    a = sample_class(torus4, rng)
    prod = lambda_t_cycle(a, 3) * lambda_t_cycle(-a, 3)
    assert prod == LambdaSeries.one(ring, 3)


def test_exp_basis_rank_one():
    res = exp_basis_matrix(1, ["0"], cpn_spec(1))
    assert res.vandermonde == [[1]]
    assert res.all_verified


def test_exp_basis_rank_two_trivial_classes():
    res = exp_basis_matrix(2, ["0", "0"], cpn_spec(1))
    assert res.vandermonde == [[1, 1], [0, 1]]
    base = res.base
    assert res.matrix[0][0] == base.one_element()
    assert res.matrix[0][1] == base.one_element()
    assert res.matrix[1][0] == base.zero_element()
    assert res.matrix[1][1] == base.one_element()
    assert res.inverse[0][1] == -base.one_element()
    assert res.all_verified


def test_exp_basis_rank_three_nilpotent():
    res = exp_basis_matrix(3, ["x", "x^2", "x^3"], cpn_spec(3))
    assert res.all_verified


def test_exp_basis_requires_formal_base():
    from lambdaforge.contexts import heis3_spec
    from lambdaforge.errors import ModelConstructionError

    with pytest.raises(ModelConstructionError):
        exp_basis_matrix(2, ["0", "0"], heis3_spec())


def test_fixture_serialization(torus4):
    rng = random.Random(15)
    a = sample_class(torus4, rng)
    data = a.to_json_dict()
    assert data["model"] == "torus4"
    again = DiffKClass.from_json_dict(torus4, data)
    assert again == a


def test_model_mismatch(torus4, s2):
    with pytest.raises(MismatchError):
        cycle_mul(DiffKClass.one(torus4), DiffKClass.one(s2))
