"""Graded algebra models: construction, wedge, differential, cosets, maps."""

import random

import pytest

from lambdaforge.algebra import rat
from lambdaforge.cdga import (
    CDGAMorphism,
    GradedElement,
    OddCoset,
    build_model,
    coset_normalize,
    cpn_spec,
    differential,
    projective_bundle_spec,
    pullback,
    s2_spec,
    torus_spec,
    wedge,
)
from lambdaforge.contexts import builtin_morphisms, get_model, sample_odd_coset
from lambdaforge.errors import MismatchError, ModelConstructionError, NotExactError


def random_element(model, rng, picks=3):
    total = model.zero_element()
    for _ in range(picks):
        i = rng.randint(0, model.dimension - 1)
        total = total + model.basis_element(i).scaled(rat(rng.randint(-3, 3), rng.randint(1, 2)))
    return total


def test_torus2_shape(torus2):
    assert torus2.dimension == 4
    assert sorted(torus2.basis_label) == ["1", "dx1", "dx1*dx2", "dx2"]


def test_odd_square_vanishes(torus2):
    a = torus2.generator_element("dx1")
    assert wedge(a, a).is_zero()


def test_unit_is_neutral(torus4):
    rng = random.Random(0)
    a = random_element(torus4, rng)
    assert wedge(a, torus4.one_element()) == a


def test_graded_sign(torus2):
    a = torus2.generator_element("dx1")
    b = torus2.generator_element("dx2")
    assert wedge(a, b) == -wedge(b, a)


def test_graded_commutativity_random(s2, torus4):
    rng = random.Random(1)
    for model in (s2, torus4):
        for _ in range(10):
            a = random_element(model, rng)
            b = random_element(model, rng)
            lhs = wedge(a, b)
            sign_parts = []
            for k, comp_a in a.degree_components().items():
                for l, comp_b in b.degree_components().items():
                    term = wedge(comp_b, comp_a)
                    sign_parts.append(term.scaled(rat((-1) ** (k * l))))
            rhs = model.zero_element()
            for t in sign_parts:
                rhs = rhs + t
            assert lhs == rhs


def test_differential_on_models(cp2, s2):
    assert differential(cp2.generator_element("x")).is_zero()
    y = s2.generator_element("y")
    x = s2.generator_element("x")
    assert differential(y) == wedge(x, x)


def test_d_squared_zero_random(s2, heis3):
    rng = random.Random(2)
    for model in (s2, heis3):
        for _ in range(10):
            a = random_element(model, rng)
            assert differential(differential(a)).is_zero()


def test_leibniz_random(heis3):
    rng = random.Random(3)
    for _ in range(10):
        a = random_element(heis3, rng)
        b = random_element(heis3, rng)
        lhs = differential(wedge(a, b))
        rhs = heis3.zero_element()
        for k, comp in a.degree_components().items():
            rhs = rhs + wedge(differential(comp), b)
            rhs = rhs + wedge(comp, differential(b)).scaled(rat((-1) ** k))
        assert lhs == rhs


def test_coset_kills_exact_forms(heis3):
    # d of any even form is odd and exact, so its coset vanishes
    rng = random.Random(4)
    for _ in range(10):
        b = random_element(heis3, rng).even_part()
        assert coset_normalize(differential(b)).is_zero()


def test_coset_normalize_idempotent_and_invariant(heis3):
    rng = random.Random(5)
    for _ in range(15):
        a = random_element(heis3, rng).odd_part()
        b = random_element(heis3, rng).even_part()
        coset = coset_normalize(a)
        assert coset_normalize(coset.rep) == coset
        assert coset_normalize(a + differential(b)) == coset


def test_coset_rejects_even_parts(torus2):
    with pytest.raises(ValueError):
        coset_normalize(torus2.one_element())


def test_coset_dimension_count(heis3):
    # dim(odd) = dim(im d) + dim(canonical complement), per odd degree
    for degree in (1, 3):
        ids = heis3.ids_by_degree.get(degree, ())
        rows = heis3._imd_rows.get(degree, ())
        pivots = {r[0] for r in rows}
        complement = [i for i in ids if i not in pivots]
        assert len(ids) == len(rows) + len(complement)


def test_d_preimage(heis3):
    ab = heis3.generator_element("a").wedge(heis3.generator_element("b"))
    beta = GradedElement(heis3, heis3.d_preimage_coords(ab.coords))
    assert beta.d() == ab
    with pytest.raises(NotExactError):
        heis3.d_preimage_coords(heis3.generator_element("a").coords)


def test_zero_differential_means_everything_closed(torus4):
    rng = random.Random(6)
    assert random_element(torus4, rng).is_closed()


def test_model_mismatch_rejected(torus2, torus4):
    with pytest.raises(MismatchError):
        wedge(torus2.one_element(), torus4.one_element())


def test_projective_bundle_relation_degenerate():
    pb = build_model(projective_bundle_spec(
        {"name": "pt", "top_degree": 2, "generators": [], "differential": [], "relations": []},
        2, ["0", "0"],
    ))
    c = pb.generator_element("c")
    assert c.wedge(c).is_zero()
    assert pb.dimension == 2


def test_projective_bundle_freeness(cp2):
    pb = build_model(projective_bundle_spec(cpn_spec(2), 2, ["x", "x^2"]))
    base_dim = cp2.dimension
    assert pb.dimension == 2 * base_dim
    c = pb.generator_element("c")
    x = pb.generator_element("x")
    assert c.wedge(c) == -(c.wedge(x)) - x.wedge(x)


def test_invalid_relation_with_odd_generator():
    spec = torus_spec(2)
    spec["relations"] = ["dx1"]
    with pytest.raises(ModelConstructionError, match="odd"):
        build_model(spec)


def test_inconsistent_differential_rejected():
    # d(u) = u*u has wrong degree; d.d != 0 configurations are also caught
    spec = {
        "name": "bad",
        "top_degree": 4,
        "generators": [{"name": "u", "degree": 2}],
        "differential": [{"of": "u", "value": "u^2"}],
        "relations": [],
    }
    with pytest.raises(ModelConstructionError):
        build_model(spec)
    spec2 = {
        "name": "bad2",
        "top_degree": 4,
        "generators": [
            {"name": "a", "degree": 1},
            {"name": "u", "degree": 2},
            {"name": "w", "degree": 3},
        ],
        "differential": [{"of": "a", "value": "u"}, {"of": "u", "value": "w"}],
        "relations": [],
    }
    with pytest.raises(ModelConstructionError, match="d.d"):
        build_model(spec2)


def test_pullback_identity(torus4):
    ident = CDGAMorphism(
        "id", torus4, torus4,
        {g: torus4.generator_element(g) for g, _ in torus4.generators},
    )
    rng = random.Random(7)
    a = random_element(torus4, rng)
    assert pullback(ident, a) == a


def test_pullback_multiplicative():
    rng = random.Random(8)
    for f in builtin_morphisms():
        for _ in range(5):
            a = random_element(f.source, rng)
            b = random_element(f.source, rng)
            assert pullback(f, wedge(a, b)) == wedge(pullback(f, a), pullback(f, b))


def test_pullback_base_into_bundle(cp2):
    pb = build_model(projective_bundle_spec(cpn_spec(2), 2, ["x", "0"]))
    inclusion = CDGAMorphism("base", cp2, pb, {"x": pb.generator_element("x")})
    x = cp2.generator_element("x")
    assert pullback(inclusion, x) == pb.generator_element("x")


def test_morphism_not_commuting_with_d_rejected(s2, torus4):
    # y must land on a primitive of the image of x^2; zero forces x -> nilpotent
    with pytest.raises(ModelConstructionError):
        CDGAMorphism(
            "bad", s2, torus4,
            {
                "x": torus4.generator_element("dx1").wedge(torus4.generator_element("dx2"))
                + torus4.generator_element("dx3").wedge(torus4.generator_element("dx4")),
                "y": torus4.zero_element(),
            },
        )


def test_element_serialization_round_trip(torus4):
    rng = random.Random(9)
    a = random_element(torus4, rng)
    data = a.to_json_dict()
    assert GradedElement.from_json_dict(torus4, data) == a
