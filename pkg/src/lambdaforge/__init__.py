"""Exact lambda-ring calculus over a symbolic cycle model of differential K-theory.

The package computes the universal integer polynomials governing lambda
operations, realizes the twisted ring structure on series with constant
term 1, builds finite graded form models with canonical odd cosets, and
verifies, by exact rational arithmetic, that the cycle rings built on top
of them satisfy every lambda-ring and Adams-operation law in scope.
"""

from ._kernel import BACKEND as kernel_backend
from .algebra import (
    MultiPoly,
    PolynomialRing,
    RationalField,
    TruncSeries,
    poly_eval_in_ring,
    poly_mul,
    rat,
    series_invert,
    series_mul,
)
from .axioms import AxiomReport, LambdaContext, verify_axioms
from .cdga import (
    CDGAModel,
    CDGAMorphism,
    GradedElement,
    OddCoset,
    build_model,
    coset_normalize,
    differential,
    pullback,
    wedge,
)
from .diffk import (
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
    exp_basis_matrix,
    lambda_t_cycle,
    map_I,
    map_a,
    normal_form,
)
from .equivariant import (
    CharacterGroup,
    EquivClass,
    EquivCycle,
    EquivTriple,
    RepRingElement,
    ch_equivariant,
    equiv_adams,
    equiv_cycle_mul,
    equiv_lambda,
    rep_mul,
)
from .gamma import (
    GammaElement,
    GammaRing,
    even_restriction_p,
    gamma_adams,
    gamma_lambda,
    gamma_mul,
)
from .lambdaring import (
    LambdaSeries,
    adams_via_log,
    lambda_from_adams,
    lambda_t,
    witt_add,
    witt_lambda,
    witt_mul,
)
from .symfun import UniversalPoly, compute_Pn, compute_Pnm, newton_nu, to_elementary_basis

__version__ = "0.1.0"
