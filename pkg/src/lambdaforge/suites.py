"""Composite verification suites behind the command-line ``verify`` modes.

Each suite returns an ``AxiomReport`` whose checks are generated in a fixed
order from a seeded generator, so a seed plus a configuration determines the
report bytes exactly.
"""

from __future__ import annotations

import random
from itertools import combinations

from .algebra.rings import RationalField
from .axioms import AxiomReport, verify_axioms
from .cdga import GradedElement, OddCoset
from .contexts import (
    builtin_morphisms,
    diffk_context,
    equivariant_context,
    gamma_context,
    get_group,
    get_model,
    sample_beta,
    sample_class,
    sample_cycle,
    sample_equiv_cycle,
    sample_exact_perturbation,
    sample_gamma,
    sample_odd_coset,
    sample_perturbation,
    sample_rational,
    zeven_context,
)
from .diffk import (
    DiffKClass,
    DiffKCycle,
    Perturbation,
    SplitTriple,
    chern_character,
    chern_simons,
    cycle_adams,
    cycle_lambda,
    cycle_lambda_on_cycle,
    cycle_mul,
    curvature_map,
    diffk_ring,
    exp_basis_matrix,
    lambda_t_cycle,
    line_transgression,
    map_I,
    map_a,
    normal_form,
    perturbed_triple,
    pullback_class,
)
from .equivariant import (
    EquivClass,
    EquivCycle,
    equiv_adams,
    equiv_chern_simons,
    equiv_curvature,
    equiv_map_I,
    perturbed_equiv_triple,
)
from .gamma import (
    GammaElement,
    even_restriction_p,
    gamma_lambda,
    gamma_mul,
    zeven_adams,
    zeven_lambda,
)
from .lambdaring import LambdaSeries, witt_add, witt_lambda, witt_mul
from .symfun import newton_nu


def run_gamma_suite(model_name: str, samples: int = 100, seed: int = 0,
                    truncation: int = 6) -> AxiomReport:
    """Lambda-ring laws for the twisted form ring, its even subring, and the
    compatibility of the even restriction with both structures."""
    inner = verify_axioms(gamma_context(model_name), "lambda", samples=samples,
                          seed=seed, truncation=truncation)
    report = AxiomReport(mode="gamma", context=f"gamma:{model_name}", seed=seed,
                         truncation=truncation)
    report.checks.extend(inner.checks)
    report.checks.extend(
        verify_axioms(zeven_context(model_name), "lambda", samples=samples,
                      seed=seed, truncation=truncation).checks
    )
    model = get_model(model_name)
    rng = random.Random(seed)
    for idx in range(samples):
        x = sample_gamma(model, rng)
        y = sample_gamma(model, rng)
        tag = f"sample {idx}"
        ok = even_restriction_p(gamma_mul(x, y)) == even_restriction_p(x).wedge(even_restriction_p(y))
        report.record("p(x*y) = p(x) wedge p(y)", tag, ok)
        for n in range(1, 5):
            ok = even_restriction_p(gamma_lambda(n, x)) == zeven_lambda(n, even_restriction_p(x))
            report.record(f"p(lambda^{n}(x)) = lambda^{n}(p(x))", tag, ok)
        for k in range(1, 6):
            le = gamma_lambda(k, GammaElement.from_even(even_restriction_p(x)))
            lo = gamma_lambda(k, GammaElement.from_odd(x.odd))
            report.record(f"odd part of lambda^{k}(even, 0) vanishes", tag, le.odd.is_zero())
            report.record(f"even part of lambda^{k}(0, odd) vanishes", tag, lo.even.is_zero())
    return report


def run_witt_suite(context_name: str, triples: int = 200, seed: int = 0,
                   truncation: int = 6) -> AxiomReport:
    """Ring laws of series with constant term 1 under the twisted operations,
    including the exterior-power addition formula, over Q or a form ring."""
    if context_name == "Q":
        ring = RationalField()

        def sampler(rng):
            return sample_rational(rng)
    elif context_name.startswith("gamma:"):
        model = get_model(context_name.split(":", 1)[1])
        from .gamma import gamma_ring

        ring = gamma_ring(model)

        def sampler(rng):
            return sample_gamma(model, rng)
    else:
        raise ValueError(f"unknown witt context {context_name!r}")

    report = AxiomReport(mode="witt", context=context_name, seed=seed, truncation=truncation)
    rng = random.Random(seed)
    N = truncation
    for idx in range(triples):
        tag = f"triple {idx}"

        def draw(order):
            return LambdaSeries(ring, [ring.one()] + [sampler(rng) for _ in range(N)], order)

        series_i, series_j, series_k = draw(N), draw(N), draw(N)
        report.record("commutativity of twisted sum", tag,
                      witt_add(series_i, series_j) == witt_add(series_j, series_i))
        report.record("commutativity of twisted product", tag,
                      witt_mul(series_i, series_j) == witt_mul(series_j, series_i))
        lhs = witt_mul(witt_add(series_i, series_j), series_k)
        rhs = witt_add(witt_mul(series_i, series_k), witt_mul(series_j, series_k))
        report.record("distributivity", tag, lhs == rhs)
        report.record("1 is the zero", tag,
                      witt_add(LambdaSeries.one(ring, N), series_i) == series_i)
        report.record("1 + t is the identity", tag,
                      witt_mul(LambdaSeries.one_plus_t(ring, N), series_i) == series_i)
        # the addition formula needs the inputs as exact polynomials at
        # doubled order: their twisted sum has twice the degree
        wide_i = LambdaSeries(ring, list(series_i.coeffs), 2 * N)
        wide_j = LambdaSeries(ring, list(series_j.coeffs), 2 * N)
        wide_sum = witt_add(wide_i, wide_j)
        for n in range(2, 5):
            lhs = witt_lambda(n, wide_sum, out_order=N)
            rhs = LambdaSeries.one(ring, N)
            for j in range(n + 1):
                rhs = witt_add(rhs, witt_mul(
                    witt_lambda(j, wide_i, out_order=N),
                    witt_lambda(n - j, wide_j, out_order=N),
                ))
            report.record(f"exterior-power addition formula, index {n}", tag, lhs == rhs)
    return report


def run_diffk_suite(model_name: str, samples: int = 100, seed: int = 0) -> AxiomReport:
    """Cycle-level contracts: normal-form well-definedness, transgression
    differential identity, series-form laws on cycle shapes, and the
    even-part exterior-power law."""
    model = get_model(model_name)
    report = AxiomReport(mode="diffk", context=f"diffk:{model_name}", seed=seed, truncation=4)
    rng = random.Random(seed)
    ring = diffk_ring(model)
    for idx in range(samples):
        tag = f"sample {idx}"
        cyc = sample_cycle(model, rng, max_rank=3)

        # normal forms are blind to canonical-path perturbations
        pert = sample_exact_perturbation(cyc.triple, rng)
        moved = perturbed_triple(cyc.triple, pert)
        corrected = DiffKCycle.make(
            model, [(x, 1) for x in moved.expanded()], cyc.phi + chern_simons(cyc.triple, pert)
        )
        original = DiffKClass.from_cycle(DiffKCycle.make(model, cyc.triple.roots, cyc.phi))
        perturbed = DiffKClass.from_cycle(corrected)
        for k in (1, 2, 3):
            report.record(
                f"lambda^{k} has equal normal forms on equivalent cycles", tag,
                cycle_lambda(k, original) == cycle_lambda(k, perturbed),
            )

        # arbitrary perturbations: odd discrepancy is the induced transgression
        roots = cyc.triple.expanded()
        betas = [sample_beta(model, rng) for _ in roots]
        cs_total = model.zero_element()
        for x, b in zip(roots, betas):
            cs_total = cs_total + line_transgression(x, b)
        plain = DiffKCycle(cyc.triple, cyc.phi)
        moved_cycle = DiffKCycle(
            SplitTriple.from_elements(model, [x + b.d() for x, b in zip(roots, betas)]),
            cyc.phi + OddCoset.of(cs_total),
        )
        for k in (1, 2, 3):
            induced = model.zero_element()
            for combo in combinations(range(len(roots)), k):
                xs = model.zero_element()
                bs = model.zero_element()
                for i in combo:
                    xs = xs + roots[i]
                    bs = bs + betas[i]
                induced = induced + line_transgression(xs, bs)
            disc = cycle_lambda_on_cycle(k, moved_cycle).phi - cycle_lambda_on_cycle(k, plain).phi
            report.record(
                f"lambda^{k} discrepancy is the induced transgression", tag,
                disc == OddCoset.of(induced),
            )

        # transgression differential identity, arbitrary perturbation
        pert2 = sample_perturbation(cyc.triple, rng)
        cs = chern_simons(cyc.triple, pert2)
        after = perturbed_triple(cyc.triple, pert2)
        report.record(
            "d(transgression) = ch(after) - ch(before)", tag,
            cs.d() == chern_character(after) - chern_character(cyc.triple),
        )

        # series laws on cycle shapes
        bundle_e = DiffKClass.from_cycle(DiffKCycle.make(model, sample_cycle(model, rng, 2).triple.roots, None))
        bundle_f = DiffKClass.from_cycle(DiffKCycle.make(model, sample_cycle(model, rng, 2).triple.roots, None))
        form_phi = map_a(sample_odd_coset(model, rng))
        form_psi = map_a(sample_odd_coset(model, rng))
        for u, v, label in ((bundle_e, form_psi, "(E,0)(0,psi)"),
                            (form_phi, bundle_f, "(0,phi)(F,0)"),
                            (form_phi, form_psi, "(0,phi)(0,psi)")):
            lhs = lambda_t_cycle(cycle_mul(u, v), 4)
            rhs = witt_mul(lambda_t_cycle(u, 4), lambda_t_cycle(v, 4))
            report.record(f"series product law on {label}", tag, lhs == rhs)
        for m, order in ((2, 4), (3, 2), (4, 2)):
            lhs = lambda_t_cycle(cycle_lambda(m, form_phi), order)
            rhs = witt_lambda(m, lambda_t_cycle(form_phi, order * m), out_order=order)
            report.record(f"series composition law, index {m}, on forms", tag, lhs == rhs)

        # even part of the cycle-level lambda is the exterior-power character
        pair = cyc.gamma_pair()
        for k in range(1, 5):
            ok = gamma_lambda(k, pair).even == cyc.triple.exterior(k).chern_character()
            report.record(f"even part of lambda^{k} is ch of the exterior power", tag, ok)
    return report


def run_adams_suite(model_name: str, samples: int = 100, seed: int = 0,
                    truncation: int = 6) -> AxiomReport:
    """Adams-operation laws on classes, curvature and forgetful
    compatibilities, line scaling, split-bundle scaling, the Newton
    cross-check, and naturality along the built-in morphisms."""
    model = get_model(model_name)
    report = AxiomReport(mode="adams", context=f"diffk:{model_name}", seed=seed,
                         truncation=truncation)
    inner = verify_axioms(diffk_context(model_name), "adams-criterion", samples=min(samples, 25),
                          seed=seed, truncation=4, composition_cap=6)
    report.checks.extend(inner.checks)
    rng = random.Random(seed)
    ring = diffk_ring(model)
    one = ring.one()
    for k in range(1, 5):
        report.record(f"Psi^{k}(1) = 1", "unit", cycle_adams(k, one) == one)
        report.record(f"curvature of 1 is 1", "unit", curvature_map(one) == model.one_element())
    for idx in range(samples):
        tag = f"sample {idx}"
        a = sample_class(model, rng)
        b = sample_class(model, rng)
        for k in (2, 3):
            report.record(f"Psi^{k}(ab) = Psi^{k}(a)Psi^{k}(b)", tag,
                          cycle_adams(k, cycle_mul(a, b)) == cycle_mul(cycle_adams(k, a), cycle_adams(k, b)))
        report.record("Psi^2 Psi^3 = Psi^6", tag,
                      cycle_adams(2, cycle_adams(3, a)) == cycle_adams(6, a))
        report.record("Psi^1 = id", tag, cycle_adams(1, a) == a)
        # line scaling and split sums of up to four lines
        lines = [sample_cycle(model, rng, 1).triple for _ in range(4)]
        single = DiffKClass.from_cycle(DiffKCycle.make(model, lines[0].roots, None))
        for k in (2, 3):
            scaled = DiffKClass.from_cycle(DiffKCycle.make(model, lines[0].scale_roots(k).roots, None))
            report.record(f"Psi^{k} of a line is its {k}-th power", tag,
                          cycle_adams(k, single) == scaled)
        total = SplitTriple.empty(model)
        for ln in lines:
            total = total.direct_sum(ln)
        split_sum = DiffKClass.from_cycle(DiffKCycle.make(model, total.roots, None))
        for k in (2, 3):
            expected = DiffKClass.from_cycle(DiffKCycle.make(model, total.scale_roots(k).roots, None))
            report.record(f"Psi^{k} on a sum of lines scales every root", tag,
                          cycle_adams(k, split_sum) == expected)
        # Newton cross-check
        for k in range(2, 5):
            nu = newton_nu(k)
            assignment = {f"s{i}": cycle_lambda(i, a) for i in range(1, k + 1)}
            report.record(f"Psi^{k} = nu_{k}(lambda^1..lambda^{k})", tag,
                          cycle_adams(k, a) == nu.poly.evaluate_in(ring, assignment))
        # curvature and forgetful compatibility
        for k in (2, 3):
            report.record(f"curvature of Psi^{k} = degree scaling of curvature", tag,
                          curvature_map(cycle_adams(k, a)) == zeven_adams(k, curvature_map(a)))
            report.record(f"forgetful of Psi^{k} = Psi^{k} of forgetful", tag,
                          map_I(cycle_adams(k, a)) == map_I(a).adams(k))
        ch_e = chern_character(a.plus.triple)
        for k in (2, 3):
            report.record(f"degree scaling of ch = ch of root scaling, k={k}", tag,
                          zeven_adams(k, ch_e) == chern_character(a.plus.triple.scale_roots(k)))
    for f in builtin_morphisms():
        frng = random.Random(seed + 1)
        for idx in range(min(samples, 10)):
            a = sample_class(f.source, frng)
            for k in (2, 3):
                ok = pullback_class(f, cycle_adams(k, a)) == cycle_adams(k, pullback_class(f, a))
                report.record(f"naturality of Psi^{k} along {f.name}", f"sample {idx}", ok)
    return report


def run_equivariant_suite(model_name: str, group_name: str, samples: int = 100,
                          seed: int = 0) -> AxiomReport:
    """Lambda-ring laws on equivariant classes plus the equivariant Adams,
    transgression, curvature and forgetful compatibilities."""
    model = get_model(model_name)
    group = get_group(group_name)
    report = AxiomReport(mode="equivariant",
                         context=f"equivariant:{model_name}:{group_name}",
                         seed=seed, truncation=6)
    inner = verify_axioms(equivariant_context(model_name, group_name), "lambda",
                          samples=samples, seed=seed, truncation=6,
                          mult_order=3, composition_cap=6)
    report.checks.extend(inner.checks)
    rng = random.Random(seed)
    for idx in range(samples):
        tag = f"sample {idx}"
        cyc = sample_equiv_cycle(model, group, rng, max_rank=3)
        a = EquivClass.from_cycle(cyc)
        # Adams on roots, characters and odd parts
        for k in (2, 3):
            scaled = EquivClass.from_cycle(EquivCycle(cyc.triple.scale(k), cyc.phi_scaled_adams(k)))
            report.record(f"Psi^{k} scales roots, characters and odd parts", tag,
                          equiv_adams(k, a) == scaled)
        report.record("Psi^2 Psi^3 = Psi^6", tag,
                      equiv_adams(2, equiv_adams(3, a)) == equiv_adams(6, a))
        # characterwise transgression identity
        pert = sample_perturbation(cyc.triple, rng)
        cs = equiv_chern_simons(cyc.triple, pert)
        after = perturbed_equiv_triple(cyc.triple, pert)
        lhs = {c: v for c, v in ((c, p.d()) for c, p in cs.items()) if not v.is_zero()}
        rhs: dict = {}
        for c, v in after.ch_by_char().items():
            rhs[c] = v
        for c, v in cyc.triple.ch_by_char().items():
            rhs[c] = rhs.get(c, model.zero_element()) - v
        rhs = {c: v for c, v in rhs.items() if not v.is_zero()}
        report.record("characterwise d(transgression) = ch(after) - ch(before)", tag, lhs == rhs)
        # curvature and forgetful compatibility
        for k in (2, 3):
            cur = equiv_curvature(equiv_adams(k, a))
            expected = {}
            for c, v in equiv_curvature(a).items():
                key = group.scale(k, c)
                add = zeven_adams(k, v)
                expected[key] = expected.get(key, model.zero_element()) + add
            expected = {c: v for c, v in expected.items() if not v.is_zero()}
            report.record(f"curvature commutes with Psi^{k}", tag, cur == expected)
            report.record(f"forgetful commutes with Psi^{k}", tag,
                          equiv_map_I(equiv_adams(k, a)) == equiv_map_I(a).adams(k))
    return report


def run_splitting_suite(max_rank: int = 5, seed: int = 0) -> AxiomReport:
    """Exponential-basis change matrices across ranks on formal bases."""
    from .cdga import cpn_spec

    report = AxiomReport(mode="splitting", context="formal bases", seed=seed, truncation=0)
    configs = []
    for r in range(1, max_rank + 1):
        configs.append((r, cpn_spec(1), ["0"] * r, "cp1, vanishing classes"))
        chern = [f"x^{min(k, 3)}" if k <= 3 else "0" for k in range(1, r + 1)]
        configs.append((r, cpn_spec(3), chern, "cp3, mixed classes"))
    for r, base, chern, label in configs:
        result = exp_basis_matrix(r, chern, base)
        tag = f"rank {r}, {label}"
        report.record("degree-0 part is the power matrix; inverse is exact", tag,
                      result.verified_inverse)
        report.record("exponential basis expands over divided powers", tag,
                      result.verified_e_from_f)
        report.record("divided powers expand over the exponential basis", tag,
                      result.verified_f_from_e)
        report.record("bundle model is free of the expected rank", tag,
                      result.verified_free_rank)
    return report
