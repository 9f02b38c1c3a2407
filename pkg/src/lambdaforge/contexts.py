"""Ready-made verification contexts, samplers and registries.

Samplers draw from a ``random.Random`` instance only, in a fixed call
order, so a seed determines every generated element exactly.  Coefficients
are kept small: the laws being checked are exact, so magnitude adds cost
without adding coverage.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Callable

from .algebra.rationals import rat
from .algebra.rings import RationalField
from .axioms import LambdaContext
from .cdga import (
    CDGAModel,
    CDGAMorphism,
    GradedElement,
    OddCoset,
    build_model,
    cpn_spec,
    s2_spec,
    torus_spec,
)
from .diffk import (
    DiffKClass,
    DiffKCycle,
    Perturbation,
    cycle_lambda,
    diffk_ring,
    lambda_t_cycle,
)
from .equivariant import (
    CharacterGroup,
    EquivClass,
    EquivCycle,
    equiv_lambda,
    equiv_ring,
    lambda_t_equiv,
)
from .gamma import (
    GammaElement,
    ZEvenRing,
    gamma_lambda,
    gamma_lambda_series,
    gamma_ring,
    zeven_lambda,
    zeven_lambda_series,
)


def heis3_spec() -> dict:
    """Nilmanifold model: three circle forms with dc = a*b.

    The only built-in model whose degree-2 forms contain differentials, so
    root perturbations that actually move roots live here.
    """
    return {
        "name": "heis3",
        "top_degree": 3,
        "generators": [
            {"name": "a", "degree": 1},
            {"name": "b", "degree": 1},
            {"name": "c", "degree": 1},
        ],
        "differential": [{"of": "c", "value": "a*b"}],
        "relations": [],
    }


MODEL_SPECS: dict[str, Callable[[], dict]] = {
    "torus2": lambda: torus_spec(2),
    "torus3": lambda: torus_spec(3),
    "torus4": lambda: torus_spec(4),
    "torus6": lambda: torus_spec(6),
    "s2": s2_spec,
    "cp1": lambda: cpn_spec(1),
    "cp2": lambda: cpn_spec(2),
    "cp3": lambda: cpn_spec(3),
    "heis3": heis3_spec,
}

GROUPS: dict[str, CharacterGroup] = {
    "z": CharacterGroup(1),
    "z2": CharacterGroup(0, (2,)),
    "z3": CharacterGroup(0, (3,)),
    "zxz3": CharacterGroup(1, (3,)),
}

_MODEL_CACHE: dict[str, CDGAModel] = {}


def get_model(name: str) -> CDGAModel:
    if name not in MODEL_SPECS:
        raise KeyError(f"unknown model '{name}'; known: {', '.join(sorted(MODEL_SPECS))}")
    got = _MODEL_CACHE.get(name)
    if got is None:
        got = _MODEL_CACHE[name] = build_model(MODEL_SPECS[name]())
    return got


def list_models() -> list[str]:
    return sorted(MODEL_SPECS)


def get_group(name: str) -> CharacterGroup:
    if name not in GROUPS:
        raise KeyError(f"unknown group '{name}'; known: {', '.join(sorted(GROUPS))}")
    return GROUPS[name]


# -- morphisms for naturality checks -------------------------------------------


def builtin_morphisms() -> list[CDGAMorphism]:
    """Nontrivial validated maps between built-in models."""
    t2, t4 = get_model("torus2"), get_model("torus4")
    cp2, cp3, s2 = get_model("cp2"), get_model("cp3"), get_model("s2")
    collapse = CDGAMorphism(
        "collapse4to2", t4, t2,
        {
            "dx1": t2.generator_element("dx1"),
            "dx2": t2.generator_element("dx2"),
            "dx3": t2.zero_element(),
            "dx4": t2.zero_element(),
        },
    )
    include = CDGAMorphism(
        "include2in4", t2, t4,
        {"dx1": t4.generator_element("dx1"), "dx2": t4.generator_element("dx2")},
    )
    truncate = CDGAMorphism("cp3to2", cp3, cp2, {"x": cp2.generator_element("x")})
    sphere = CDGAMorphism(
        "s2to4", s2, t4,
        {
            "x": t4.generator_element("dx1").wedge(t4.generator_element("dx2")),
            "y": t4.zero_element(),
        },
    )
    swap = CDGAMorphism(
        "swap12", t4, t4,
        {
            "dx1": t4.generator_element("dx2"),
            "dx2": t4.generator_element("dx1"),
            "dx3": t4.generator_element("dx4"),
            "dx4": t4.generator_element("dx3"),
        },
    )
    return [collapse, include, truncate, sphere, swap]


# -- samplers --------------------------------------------------------------------


def sample_rational(rng: random.Random, span: int = 3):
    num = rng.randint(-span, span)
    den = rng.randint(1, 3)
    return rat(num, den)


def _sample_combo(vectors: list[GradedElement], model: CDGAModel,
                  rng: random.Random, picks: int) -> GradedElement:
    total = model.zero_element()
    if not vectors:
        return total
    for _ in range(picks):
        v = vectors[rng.randint(0, len(vectors) - 1)]
        total = total + v.scaled(sample_rational(rng))
    return total


def _closed_even_vectors(model: CDGAModel) -> list[GradedElement]:
    out = []
    for deg in range(0, model.top_degree + 1, 2):
        out.extend(model.closed_basis(deg))
    return out


def _odd_vectors(model: CDGAModel) -> list[GradedElement]:
    out = []
    for deg in range(1, model.top_degree + 1, 2):
        for i in model.ids_by_degree.get(deg, ()):
            out.append(model.basis_element(i))
    return out


def sample_closed_even(model: CDGAModel, rng: random.Random) -> GradedElement:
    return _sample_combo(_closed_even_vectors(model), model, rng, 2)


def sample_odd_coset(model: CDGAModel, rng: random.Random) -> OddCoset:
    return OddCoset.of(_sample_combo(_odd_vectors(model), model, rng, 2))


def sample_gamma(model: CDGAModel, rng: random.Random) -> GammaElement:
    return GammaElement(sample_closed_even(model, rng), sample_odd_coset(model, rng))


def sample_root(model: CDGAModel, rng: random.Random) -> GradedElement:
    """A closed degree-2 form; occasionally zero, occasionally non-canonical."""
    closed2 = [v for v in model.closed_basis(2)]
    if not closed2 or rng.random() < 0.2:
        return model.zero_element()
    picks = 1 + (rng.random() < 0.5)
    total = model.zero_element()
    for _ in range(picks):
        v = closed2[rng.randint(0, len(closed2) - 1)]
        total = total + v.scaled(sample_rational(rng, span=2))
    return total.component(2)


def sample_cycle(model: CDGAModel, rng: random.Random, max_rank: int = 2) -> DiffKCycle:
    roots = [(sample_root(model, rng), 1) for _ in range(rng.randint(0, max_rank))]
    return DiffKCycle.make(model, roots, sample_odd_coset(model, rng))


def sample_class(model: CDGAModel, rng: random.Random) -> DiffKClass:
    """Virtual class with total rank at most 4."""
    plus = sample_cycle(model, rng, max_rank=2)
    if rng.random() < 0.3:
        return DiffKClass.from_cycle(plus)
    minus = sample_cycle(model, rng, max_rank=2)
    return DiffKClass.make(plus, minus)


def sample_beta(model: CDGAModel, rng: random.Random) -> GradedElement:
    """A degree-1 form for connection perturbations."""
    ones = [model.basis_element(i) for i in model.ids_by_degree.get(1, ())]
    return _sample_combo(ones, model, rng, 2).component(1)


def sample_perturbation(triple, rng: random.Random) -> Perturbation:
    model = triple.model
    return Perturbation(tuple(sample_beta(model, rng) for _ in range(triple.rank)))


def sample_exact_perturbation(triple, rng: random.Random) -> Perturbation:
    """Perturbation along canonical preimages: beta determined by d(beta).

    These are the connection paths realized by the normal form itself, so
    perturbed cycles have identical normal forms by construction of the
    equivalence; see the cycle-model notes.
    """
    model = triple.model
    rows = model._imd_rows.get(2, ())
    betas = []
    for _ in range(triple.rank):
        beta = model.zero_element()
        for _, _, pre in rows:
            if rng.random() < 0.5:
                beta = beta + GradedElement(model, dict(pre)).scaled(sample_rational(rng, span=2))
        betas.append(beta)
    return Perturbation(tuple(betas))


def sample_character(group: CharacterGroup, rng: random.Random) -> tuple:
    free = tuple(rng.randint(-2, 2) for _ in range(group.free_rank))
    tors = tuple(rng.randint(0, n - 1) for n in group.torsion)
    return free + tors


def sample_equiv_cycle(model: CDGAModel, group: CharacterGroup,
                       rng: random.Random, max_rank: int = 2) -> EquivCycle:
    pairs = [
        ((sample_root(model, rng), sample_character(group, rng)), 1)
        for _ in range(rng.randint(0, max_rank))
    ]
    phi = {}
    for _ in range(rng.randint(0, 2)):
        phi_char = sample_character(group, rng)
        coset = sample_odd_coset(model, rng)
        got = phi.get(phi_char)
        phi[phi_char] = coset if got is None else got + coset
    return EquivCycle.make(model, group, pairs, phi)


def sample_equiv_class(model: CDGAModel, group: CharacterGroup,
                       rng: random.Random) -> EquivClass:
    plus = sample_equiv_cycle(model, group, rng)
    if rng.random() < 0.3:
        return EquivClass.from_cycle(plus)
    return EquivClass.make(plus, sample_equiv_cycle(model, group, rng))


# -- contexts ----------------------------------------------------------------------


def rational_binomial_context() -> LambdaContext:
    """The rationals with binomial-coefficient lambda operations."""
    ring = RationalField()

    def lam(n: int, x):
        if n == 0:
            return rat(1)
        value = rat(1)
        for i in range(n):
            value = value * (x - rat(i))
        return value / rat(_factorial_int(n))

    return LambdaContext(
        name="Q-binomial", ring=ring, lambda_op=lam, sample=sample_rational
    )


def _factorial_int(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def broken_context() -> LambdaContext:
    """Planted failure: all higher lambda operations collapse to zero."""
    ring = RationalField()

    def lam(n: int, x):
        return ring.one() if n == 0 else ring.zero()

    return LambdaContext(name="broken", ring=ring, lambda_op=lam, sample=sample_rational)


# Verification evaluates many lambda operations of the same element across
# the different laws.  The operations are pure, and the series machinery
# yields all orders up to N at once, so contexts memoize whole series.
_LAMBDA_CACHE_SIZE = 1 << 15
_SERIES_BLOCK = 6


def _series_lambda_op(series_fn, unit, plain_op):
    cached = lru_cache(maxsize=_LAMBDA_CACHE_SIZE)(series_fn)

    def lam(n: int, x):
        if n == 0:
            return unit(x)
        if n <= _SERIES_BLOCK:
            return cached(x, _SERIES_BLOCK).coefficient(n)
        return plain_op(n, x)

    return lam


def gamma_context(model_name: str) -> LambdaContext:
    model = get_model(model_name)
    ring = gamma_ring(model)
    return LambdaContext(
        name=f"gamma:{model_name}",
        ring=ring,
        lambda_op=_series_lambda_op(gamma_lambda_series, lambda x: ring.one(), gamma_lambda),
        sample=lambda rng: sample_gamma(model, rng),
    )


def zeven_context(model_name: str) -> LambdaContext:
    model = get_model(model_name)
    ring = ZEvenRing(model)
    return LambdaContext(
        name=f"zeven:{model_name}",
        ring=ring,
        lambda_op=_series_lambda_op(zeven_lambda_series, lambda x: ring.one(), zeven_lambda),
        sample=lambda rng: sample_closed_even(model, rng),
    )


def diffk_context(model_name: str) -> LambdaContext:
    model = get_model(model_name)
    ring = diffk_ring(model)
    return LambdaContext(
        name=f"diffk:{model_name}",
        ring=ring,
        lambda_op=_series_lambda_op(lambda_t_cycle, lambda x: ring.one(), cycle_lambda),
        sample=lambda rng: sample_class(model, rng),
    )


def equivariant_context(model_name: str, group_name: str) -> LambdaContext:
    model = get_model(model_name)
    group = get_group(group_name)
    ring = equiv_ring(model, group)
    return LambdaContext(
        name=f"equivariant:{model_name}:{group_name}",
        ring=ring,
        lambda_op=_series_lambda_op(lambda_t_equiv, lambda x: ring.one(), equiv_lambda),
        sample=lambda rng: sample_equiv_class(model, group, rng),
    )
