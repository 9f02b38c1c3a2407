"""Symbolic cycle model of a differential K-ring over a finite form model.

A geometric object is a split bundle: a multiset of formal line roots, each
a closed degree-2 form.  A cycle pairs such a bundle with an odd form
modulo differentials; a class is a virtual difference of cycles in normal
form.  The normal form replaces every root by its canonical representative
modulo exact forms, compensating the odd part with the matching
transgression form, moves all odd data to the plus side, and cancels common
roots.  The transgression of two paths between the same endpoints differs
by an exact form, so normal forms are stable under the modeled equivalence
(root perturbation with transgression correction, permutation and
stabilization).

The lambda operations on a cycle take exterior powers of the bundle and the
twisted-ring lambda of the paired (Chern form, odd coset); on virtual
classes they extend through the generating series and its group inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .algebra.multipoly import MultiPoly
from .algebra.rationals import ONE, rat
from .algebra.rings import CommutativeRing
from .cdga import CDGAModel, CDGAMorphism, GradedElement, OddCoset, build_model, projective_bundle_spec
from .errors import MismatchError, ModelConstructionError
from .gamma import GammaElement, gamma_lambda_series
from .lambdaring import LambdaSeries
from .symfun import UniversalPoly  # noqa: F401  (re-exported for fixtures)

_FACTORIALS = [1]


def _factorial(n: int) -> int:
    while len(_FACTORIALS) <= n:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS[n]


def _validate_root(x: GradedElement):
    if x.is_zero():
        return
    if x.degrees() != {2}:
        raise ValueError("line roots must be concentrated in degree 2")
    if not x.is_closed():
        raise ValueError("line roots must be closed")


_CH_CACHE: dict[tuple[int, tuple], GradedElement] = {}


def _exp_of_root(x: GradedElement) -> GradedElement:
    """Truncated exponential of a degree-2 root: finite by the top degree."""
    key = (id(x.model), x.key())
    got = _CH_CACHE.get(key)
    if got is not None:
        return got
    total = x.model.one_element()
    power = x.model.one_element()
    k = 1
    while 2 * k <= x.model.top_degree:
        power = power.wedge(x)
        if power.is_zero():
            break
        total = total + power.scaled(rat(1, _factorial(k)))
        k += 1
    _CH_CACHE[key] = total
    return total


def line_transgression(x: GradedElement, beta: GradedElement) -> GradedElement:
    """Transgression of one line from root x to x + d(beta), linear path.

    Returns beta . sum_{n>=1} (1/n!) sum_{j<n} x^j (x')^{n-1-j}; its
    differential is exactly exp(x') - exp(x).
    """
    model = x.model
    x_new = x + beta.d()
    total = model.zero_element()
    xp = [model.one_element()]
    yp = [model.one_element()]
    nmax = model.top_degree // 2 + 1
    for _ in range(nmax):
        xp.append(xp[-1].wedge(x))
        yp.append(yp[-1].wedge(x_new))
    for n in range(1, nmax + 1):
        inner = model.zero_element()
        for j in range(n):
            inner = inner + xp[j].wedge(yp[n - 1 - j])
        total = total + inner.scaled(rat(1, _factorial(n)))
    return beta.wedge(total)


class SplitTriple:
    """Multiset of line roots over one model."""

    __slots__ = ("model", "roots", "_hash")

    def __init__(self, model: CDGAModel, roots: Iterable[tuple[GradedElement, int]] = ()):
        counted: dict[GradedElement, int] = {}
        for x, mult in roots:
            if x.model is not model:
                raise MismatchError("root lives in a different model")
            if mult < 0:
                raise ValueError("root multiplicities must be nonnegative")
            if mult:
                counted[x] = counted.get(x, 0) + mult
        self.model = model
        self.roots: tuple[tuple[GradedElement, int], ...] = tuple(
            sorted(counted.items(), key=lambda rm: rm[0].key())
        )
        self._hash = None

    @classmethod
    def from_elements(cls, model: CDGAModel, roots: Iterable[GradedElement]) -> "SplitTriple":
        return cls(model, [(x, 1) for x in roots])

    @classmethod
    def empty(cls, model: CDGAModel) -> "SplitTriple":
        return cls(model)

    @classmethod
    def trivial_line(cls, model: CDGAModel) -> "SplitTriple":
        return cls(model, [(model.zero_element(), 1)])

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.roots)

    def expanded(self) -> list[GradedElement]:
        out = []
        for x, m in self.roots:
            out.extend([x] * m)
        return out

    def direct_sum(self, other: "SplitTriple") -> "SplitTriple":
        self._check(other)
        return SplitTriple(self.model, list(self.roots) + list(other.roots))

    def tensor(self, other: "SplitTriple") -> "SplitTriple":
        """Roots add pairwise; multiplicities multiply."""
        self._check(other)
        out = []
        for x, mx in self.roots:
            for y, my in other.roots:
                out.append((x + y, mx * my))
        return SplitTriple(self.model, out)

    def exterior(self, k: int) -> "SplitTriple":
        """Sums of roots over k-subsets of the expanded list."""
        if k < 0:
            raise ValueError("exterior power index must be nonnegative")
        if k == 0:
            return SplitTriple.trivial_line(self.model)
        items = self.expanded()
        out: dict[GradedElement, int] = {}
        for combo in combinations(range(len(items)), k):
            total = items[combo[0]]
            for i in combo[1:]:
                total = total + items[i]
            out[total] = out.get(total, 0) + 1
        return SplitTriple(self.model, out.items())

    def scale_roots(self, k: int) -> "SplitTriple":
        return SplitTriple(self.model, [(x.scaled(rat(k)), m) for x, m in self.roots])

    def chern_character(self) -> GradedElement:
        total = self.model.zero_element()
        for x, m in self.roots:
            total = total + _exp_of_root(x).scaled(rat(m))
        return total

    def _check(self, other: "SplitTriple"):
        if self.model is not other.model:
            raise MismatchError("triples live in different models")

    def key(self) -> tuple:
        return tuple((x.key(), m) for x, m in self.roots)

    def __eq__(self, other):
        if not isinstance(other, SplitTriple):
            return NotImplemented
        return self.model is other.model and self.roots == other.roots

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.model), self.key()))
        return self._hash

    def __repr__(self):
        if not self.roots:
            return "0"
        return " + ".join(
            f"L({x!r})" if m == 1 else f"{m}L({x!r})" for x, m in self.roots
        )


def chern_character(triple: SplitTriple) -> GradedElement:
    """Sum of root exponentials: closed, even, degree-0 part the rank."""
    return triple.chern_character()


@dataclass(frozen=True)
class Perturbation:
    """One degree-1 form per root slot (expanded order); new root x + d(beta)."""

    betas: tuple[GradedElement, ...]

    def __post_init__(self):
        for b in self.betas:
            if not b.is_zero() and b.degrees() != {1}:
                raise ValueError("perturbations are degree-1 forms")

    @classmethod
    def zero(cls, triple: SplitTriple) -> "Perturbation":
        return cls(tuple(triple.model.zero_element() for _ in range(triple.rank)))


def chern_simons(triple: SplitTriple, pert: Perturbation) -> OddCoset:
    """Transgression coset of a per-line change of connection."""
    roots = triple.expanded()
    if len(pert.betas) != len(roots):
        raise MismatchError(
            f"perturbation arity {len(pert.betas)} does not match rank {len(roots)}"
        )
    total = triple.model.zero_element()
    for x, beta in zip(roots, pert.betas):
        total = total + line_transgression(x, beta)
    return OddCoset.of(total)


def perturbed_triple(triple: SplitTriple, pert: Perturbation) -> SplitTriple:
    roots = triple.expanded()
    if len(pert.betas) != len(roots):
        raise MismatchError("perturbation arity does not match rank")
    return SplitTriple.from_elements(
        triple.model, [x + b.d() for x, b in zip(roots, pert.betas)]
    )


class DiffKCycle:
    """A split bundle paired with an odd coset; roots canonical."""

    __slots__ = ("triple", "phi", "_hash")

    def __init__(self, triple: SplitTriple, phi: OddCoset):
        if triple.model is not phi.model:
            raise MismatchError("bundle and odd part live in different models")
        self.triple = triple
        self.phi = phi
        self._hash = None

    @classmethod
    def make(cls, model: CDGAModel, roots: Iterable[tuple[GradedElement, int]],
             phi: OddCoset | GradedElement | None = None) -> "DiffKCycle":
        """Canonicalize roots, compensating the odd part with transgressions."""
        if phi is None:
            phi_coset = OddCoset.zero(model)
        elif isinstance(phi, OddCoset):
            phi_coset = phi
        else:
            phi_coset = OddCoset.of(phi)
        fixed: list[tuple[GradedElement, int]] = []
        correction = model.zero_element()
        for x, mult in roots:
            _validate_root(x)
            canon = GradedElement(model, model.reduce_mod_exact(x.coords))
            if canon != x:
                beta = GradedElement(model, model.d_preimage_coords((canon - x).coords))
                correction = correction + line_transgression(x, beta).scaled(rat(mult))
            fixed.append((canon, mult))
        if not correction.is_zero():
            phi_coset = phi_coset + OddCoset.of(correction)
        return cls(SplitTriple(model, fixed), phi_coset)

    @property
    def model(self) -> CDGAModel:
        return self.triple.model

    @property
    def rank(self) -> int:
        return self.triple.rank

    def direct_sum(self, other: "DiffKCycle") -> "DiffKCycle":
        return DiffKCycle(self.triple.direct_sum(other.triple), self.phi + other.phi)

    def gamma_pair(self) -> GammaElement:
        return GammaElement(self.triple.chern_character(), self.phi, _checked=True)

    def __eq__(self, other):
        if not isinstance(other, DiffKCycle):
            return NotImplemented
        return self.triple == other.triple and self.phi == other.phi

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((hash(self.triple), hash(self.phi)))
        return self._hash

    def __repr__(self):
        return f"({self.triple!r}, {self.phi!r})"


class DiffKClass:
    """Normalized virtual difference of cycles.

    Invariants: the minus side carries no odd part, and the two sides share
    no root.  Equality of classes is structural equality of this form.
    """

    __slots__ = ("plus", "minus", "_hash")

    def __init__(self, plus: DiffKCycle, minus: DiffKCycle):
        # internal: inputs already canonical; use make() to build
        self.plus = plus
        self.minus = minus
        self._hash = None

    @classmethod
    def make(cls, plus: DiffKCycle, minus: DiffKCycle | None = None) -> "DiffKClass":
        model = plus.model
        if minus is None:
            empty = SplitTriple.empty(model)
            return cls(plus, DiffKCycle(empty, OddCoset.zero(model)))
        if minus.model is not model:
            raise MismatchError("virtual parts live in different models")
        phi = plus.phi - minus.phi
        p = dict(plus.triple.roots)
        m = dict(minus.triple.roots)
        for x in list(p):
            if x in m:
                common = min(p[x], m[x])
                p[x] -= common
                m[x] -= common
                if not p[x]:
                    del p[x]
                if not m[x]:
                    del m[x]
        return cls(
            DiffKCycle(SplitTriple(model, p.items()), phi),
            DiffKCycle(SplitTriple(model, m.items()), OddCoset.zero(model)),
        )

    @classmethod
    def from_cycle(cls, cycle: DiffKCycle) -> "DiffKClass":
        return cls.make(cycle)

    @classmethod
    def zero(cls, model: CDGAModel) -> "DiffKClass":
        return cls.make(DiffKCycle(SplitTriple.empty(model), OddCoset.zero(model)))

    @classmethod
    def one(cls, model: CDGAModel) -> "DiffKClass":
        return cls.make(DiffKCycle(SplitTriple.trivial_line(model), OddCoset.zero(model)))

    @property
    def model(self) -> CDGAModel:
        return self.plus.model

    def is_zero(self) -> bool:
        return (
            not self.plus.triple.roots
            and not self.minus.triple.roots
            and self.plus.phi.is_zero()
        )

    def __add__(self, other):
        if not isinstance(other, DiffKClass):
            return NotImplemented
        return DiffKClass.make(
            self.plus.direct_sum(other.plus), self.minus.direct_sum(other.minus)
        )

    def __neg__(self):
        model = self.model
        return DiffKClass.make(
            DiffKCycle(self.minus.triple, self.minus.phi - self.plus.phi),
            DiffKCycle(self.plus.triple, OddCoset.zero(model)),
        )

    def __sub__(self, other):
        if not isinstance(other, DiffKClass):
            return NotImplemented
        return self + (-other)

    def int_scaled(self, n: int) -> "DiffKClass":
        if n == 0:
            return DiffKClass.zero(self.model)
        mag = abs(n)
        scaled_phi = (self.plus.phi - self.minus.phi).scaled(rat(n))
        p_triple = SplitTriple(self.model, [(x, m * mag) for x, m in self.plus.triple.roots])
        m_triple = SplitTriple(self.model, [(x, m * mag) for x, m in self.minus.triple.roots])
        zero_phi = OddCoset.zero(self.model)
        if n > 0:
            return DiffKClass.make(DiffKCycle(p_triple, scaled_phi), DiffKCycle(m_triple, zero_phi))
        return DiffKClass.make(DiffKCycle(m_triple, scaled_phi), DiffKCycle(p_triple, zero_phi))

    def __eq__(self, other):
        if not isinstance(other, DiffKClass):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((hash(self.plus), hash(self.minus)))
        return self._hash

    def __repr__(self):
        if self.minus.triple.roots:
            return f"[{self.plus!r} - {self.minus.triple!r}]"
        return f"[{self.plus!r}]"

    # -- fixture serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        def cycle_dict(cycle: DiffKCycle) -> dict:
            return {
                "roots": [
                    {"coords": x.to_json_dict(), "mult": m}
                    for x, m in cycle.triple.roots
                ],
                "phi": cycle.phi.rep.to_json_dict(),
            }

        return {
            "model": self.model.name,
            "plus": cycle_dict(self.plus),
            "minus": cycle_dict(self.minus),
        }

    @classmethod
    def from_json_dict(cls, model: CDGAModel, data: dict) -> "DiffKClass":
        def cycle_from(d: dict) -> DiffKCycle:
            roots = [
                (GradedElement.from_json_dict(model, r["coords"]), int(r["mult"]))
                for r in d.get("roots", ())
            ]
            phi = OddCoset.of(GradedElement.from_json_dict(model, d.get("phi", {})))
            return DiffKCycle.make(model, roots, phi)

        return cls.make(cycle_from(data["plus"]), cycle_from(data["minus"]))


def normal_form(a: DiffKClass) -> DiffKClass:
    """Re-normalize; idempotent on already-normal classes."""
    plus = DiffKCycle.make(a.model, a.plus.triple.roots, a.plus.phi)
    minus = DiffKCycle.make(a.model, a.minus.triple.roots, a.minus.phi)
    return DiffKClass.make(plus, minus)


def cycle_cup(c1: DiffKCycle, c2: DiffKCycle) -> DiffKCycle:
    """Cycle-level product: tensor of bundles, twisted product of odd parts."""
    if c1.model is not c2.model:
        raise MismatchError("product needs cycles over the same model")
    ch1 = c1.triple.chern_character()
    ch2 = c2.triple.chern_character()
    odd_rep = (
        ch1.wedge(c2.phi.rep)
        + c1.phi.rep.wedge(ch2)
        - c1.phi.rep.d().wedge(c2.phi.rep)
    )
    return DiffKCycle(c1.triple.tensor(c2.triple), OddCoset.of(odd_rep))


def cycle_mul(a: DiffKClass, b: DiffKClass) -> DiffKClass:
    """Bilinear extension of the cycle product to virtual classes."""
    if a.model is not b.model:
        raise MismatchError("product needs classes over the same model")
    plus = cycle_cup(a.plus, b.plus).direct_sum(cycle_cup(a.minus, b.minus))
    minus = cycle_cup(a.plus, b.minus).direct_sum(cycle_cup(a.minus, b.plus))
    return DiffKClass.make(plus, minus)


class DiffKRing(CommutativeRing):
    """The class ring over a fixed model.

    Not a rational vector space: bundle multiplicities are integers, so only
    the integer action is available.
    """

    is_q_linear = False

    def __init__(self, model: CDGAModel):
        self.model = model
        self.name = f"DiffK({model.name})"
        self._zero = DiffKClass.zero(model)
        self._one = DiffKClass.one(model)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return cycle_mul(a, b)

    def int_mul(self, n, a):
        return a.int_scaled(n)


_DIFFK_RINGS: dict[int, DiffKRing] = {}


def diffk_ring(model: CDGAModel) -> DiffKRing:
    ring = _DIFFK_RINGS.get(id(model))
    if ring is None:
        ring = _DIFFK_RINGS[id(model)] = DiffKRing(model)
    return ring


def cycle_lambda_on_cycle(k: int, cycle: DiffKCycle) -> DiffKCycle:
    """Exterior power of the bundle, twisted-ring lambda of the odd pairing."""
    if k == 0:
        return DiffKCycle(SplitTriple.trivial_line(cycle.model), OddCoset.zero(cycle.model))
    gam = gamma_lambda_series(cycle.gamma_pair(), k).coefficient(k)
    return DiffKCycle(cycle.triple.exterior(k), gam.odd)


def lambda_t_cycle(a: DiffKClass, order: int) -> LambdaSeries:
    """Generating series of the lambda operations over the class ring."""
    ring = diffk_ring(a.model)
    plus_series = _cycle_lambda_series(a.plus, order, ring)
    if not a.minus.triple.roots and a.minus.phi.is_zero():
        return plus_series
    minus_series = _cycle_lambda_series(a.minus, order, ring)
    return LambdaSeries.from_series(plus_series * minus_series.invert())


def _cycle_lambda_series(cycle: DiffKCycle, order: int, ring: DiffKRing) -> LambdaSeries:
    if order == 0:
        return LambdaSeries.one(ring, 0)
    gam_series = gamma_lambda_series(cycle.gamma_pair(), order)
    coeffs = [ring.one()]
    for k in range(1, order + 1):
        coeffs.append(
            DiffKClass.make(DiffKCycle(cycle.triple.exterior(k), gam_series.coefficient(k).odd))
        )
    return LambdaSeries(ring, coeffs, order)


def cycle_lambda(k: int, a: DiffKClass) -> DiffKClass:
    """Lambda operation on a class; series route on genuine virtual classes."""
    if k < 0:
        raise ValueError("lambda index must be nonnegative")
    if k == 0:
        return DiffKClass.one(a.model)
    if not a.minus.triple.roots:
        return DiffKClass.from_cycle(cycle_lambda_on_cycle(k, a.plus))
    return lambda_t_cycle(a, k).coefficient(k)


def cycle_adams(k: int, a: DiffKClass) -> DiffKClass:
    """Adams operation: roots scale by k, odd degree-(2l-1) parts by k^l."""
    if k < 1:
        raise ValueError("Adams index must be positive")

    def on_cycle(cycle: DiffKCycle) -> DiffKCycle:
        return DiffKCycle(
            cycle.triple.scale_roots(k),
            cycle.phi.scale_by_degree(lambda l: rat(k) ** l),
        )

    return DiffKClass.make(on_cycle(a.plus), on_cycle(a.minus))


def curvature_map(a: DiffKClass) -> GradedElement:
    """Chern form of the virtual bundle minus the differential of the odd part."""
    return (
        a.plus.triple.chern_character()
        - a.plus.phi.d()
        - a.minus.triple.chern_character()
        + a.minus.phi.d()
    )


def map_a(phi: OddCoset) -> DiffKClass:
    """Inclusion of an odd coset as a rank-zero class."""
    return DiffKClass.make(DiffKCycle(SplitTriple.empty(phi.model), phi))


class VirtualRoots:
    """Forgetful image of a class: the virtual root multiset, forms dropped."""

    __slots__ = ("model", "plus", "minus", "_hash")

    def __init__(self, model: CDGAModel, plus: Iterable[tuple[GradedElement, int]],
                 minus: Iterable[tuple[GradedElement, int]]):
        p: dict = {}
        for x, m in plus:
            if m:
                p[x] = p.get(x, 0) + m
        q: dict = {}
        for x, m in minus:
            if m:
                q[x] = q.get(x, 0) + m
        for x in list(p):
            if x in q:
                common = min(p[x], q[x])
                p[x] -= common
                q[x] -= common
                if not p[x]:
                    del p[x]
                if not q[x]:
                    del q[x]
        self.model = model
        self.plus = tuple(sorted(p.items(), key=lambda rm: rm[0].key()))
        self.minus = tuple(sorted(q.items(), key=lambda rm: rm[0].key()))
        self._hash = None

    @classmethod
    def zero(cls, model: CDGAModel) -> "VirtualRoots":
        return cls(model, (), ())

    def is_zero(self) -> bool:
        return not self.plus and not self.minus

    def __add__(self, other):
        return VirtualRoots(
            self.model, list(self.plus) + list(other.plus), list(self.minus) + list(other.minus)
        )

    def __neg__(self):
        return VirtualRoots(self.model, self.minus, self.plus)

    def __mul__(self, other):
        if not isinstance(other, VirtualRoots):
            return NotImplemented

        def tensor(a, b):
            return [(x + y, mx * my) for x, mx in a for y, my in b]

        return VirtualRoots(
            self.model,
            tensor(self.plus, other.plus) + tensor(self.minus, other.minus),
            tensor(self.plus, other.minus) + tensor(self.minus, other.plus),
        )

    def adams(self, k: int) -> "VirtualRoots":
        return VirtualRoots(
            self.model,
            [(x.scaled(rat(k)), m) for x, m in self.plus],
            [(x.scaled(rat(k)), m) for x, m in self.minus],
        )

    def __eq__(self, other):
        if not isinstance(other, VirtualRoots):
            return NotImplemented
        return self.model is other.model and self.plus == other.plus and self.minus == other.minus

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (id(self.model),
                 tuple((x.key(), m) for x, m in self.plus),
                 tuple((x.key(), m) for x, m in self.minus))
            )
        return self._hash

    def __repr__(self):
        return f"VirtualRoots(+{list(self.plus)!r}, -{list(self.minus)!r})"


def map_I(a: DiffKClass) -> VirtualRoots:
    """Forget the odd parts, keep the virtual bundle."""
    return VirtualRoots(a.model, a.plus.triple.roots, a.minus.triple.roots)


def pullback_class(f: CDGAMorphism, a: DiffKClass) -> DiffKClass:
    """Transport a class along a model morphism (roots and odd part)."""

    def on_cycle(cycle: DiffKCycle) -> DiffKCycle:
        roots = [(f.apply(x), m) for x, m in cycle.triple.roots]
        return DiffKCycle.make(f.target, roots, OddCoset.of(f.apply(cycle.phi.rep)))

    return DiffKClass.make(on_cycle(a.plus), on_cycle(a.minus))


# -- splitting-principle core ---------------------------------------------------


@dataclass
class ExpBasisResult:
    """Change of basis between exponential and divided-power root bases."""

    bundle: CDGAModel
    base: CDGAModel
    matrix: list[list[GradedElement]]
    inverse: list[list[GradedElement]]
    vandermonde: list[list[int]]
    verified_inverse: bool
    verified_e_from_f: bool
    verified_f_from_e: bool
    verified_free_rank: bool

    @property
    def all_verified(self) -> bool:
        return (
            self.verified_inverse
            and self.verified_e_from_f
            and self.verified_f_from_e
            and self.verified_free_rank
        )


def _rat_matrix_inverse(m: list[list]) -> list[list]:
    """Exact inverse of a rational matrix by Gauss-Jordan elimination."""
    n = len(m)
    aug = [[rat(m[i][j]) if isinstance(m[i][j], int) else m[i][j] for j in range(n)]
           + [ONE if i == j else rat(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def exp_basis_matrix(rank: int, chern: Sequence[str | MultiPoly], base_spec: dict) -> ExpBasisResult:
    """Exponential-basis change matrix on a bundle-of-lines model.

    Builds the rank-r model over the formal base with the given classes,
    expands each exponential power of the degree-2 generator over the basis
    1, c/1!, ..., c^{r-1}/(r-1)!, and inverts the resulting matrix exactly:
    the integer part is a Vandermonde matrix and the rest is nilpotent, so a
    finite geometric series does it.  All claims are re-verified inside the
    bundle model before returning.
    """
    if rank < 1:
        raise ValueError("rank must be positive")
    if base_spec.get("differential"):
        raise ModelConstructionError("exponential basis needs a formal (d = 0) base")
    base = build_model(base_spec)
    bundle = build_model(projective_bundle_spec(base_spec, rank, chern))

    # coordinates of a bundle element as sum_k (base element) c^k, k < rank
    c_index = bundle._gen_names.index("c")

    def split(elem: GradedElement) -> list[GradedElement]:
        parts: list[dict] = [dict() for _ in range(rank)]
        for bid, coeff in elem.coords.items():
            exp = bundle.basis_exp[bid]
            k = exp[c_index]
            base_exp = tuple(e for i, e in enumerate(exp) if i != c_index)
            base_id = base._mono_id.get(base_exp)
            if base_id is None or k >= rank:
                raise ModelConstructionError("bundle element does not split over the base")
            parts[k][base_id] = coeff
        return [GradedElement(base, p) for p in parts]

    def inject(elem: GradedElement) -> GradedElement:
        out: dict = {}
        for bid, coeff in elem.coords.items():
            exp = list(base.basis_exp[bid])
            exp.insert(c_index, 0)
            target = bundle._mono_id.get(tuple(exp))
            if target is not None:
                out[target] = coeff
        return GradedElement(bundle, out)

    # at rank 1 the relation rewrites c itself, so evaluate it through the
    # model rather than looking the monomial up
    c = bundle.element_from_poly(MultiPoly.variable("c"))
    exps = []
    for j in range(rank):
        exps.append(_exp_of_root(c.scaled(rat(j))))

    matrix: list[list[GradedElement]] = [[None] * rank for _ in range(rank)]
    vand = [[j ** k for j in range(rank)] for k in range(rank)]
    for j in range(rank):
        parts = split(exps[j])
        for k in range(rank):
            matrix[k][j] = parts[k].scaled(rat(_factorial(k)))

    # A = V + B: V the integer (unit-coefficient) part, B of positive degree
    unit = base.unit_id
    b_mat = []
    for k in range(rank):
        row = []
        for j in range(rank):
            got = matrix[k][j].coords.get(unit, rat(0))
            if got != rat(vand[k][j]):
                raise ModelConstructionError("degree-0 part is not the expected power matrix")
            row.append(matrix[k][j] - base.one_element().scaled(rat(vand[k][j])))
        b_mat.append(row)

    v_inv = _rat_matrix_inverse([[rat(v) for v in row] for row in vand])

    def scalar_apply(s: list[list], m: list[list[GradedElement]]) -> list[list[GradedElement]]:
        return [
            [
                sum(
                    (m[t][j].scaled(s[k][t]) for t in range(rank) if s[k][t]),
                    base.zero_element(),
                )
                for j in range(rank)
            ]
            for k in range(rank)
        ]

    def mat_mul(a: list[list[GradedElement]], b: list[list[GradedElement]]) -> list[list[GradedElement]]:
        return [
            [
                sum(
                    (a[i][t].wedge(b[t][j]) for t in range(rank)),
                    base.zero_element(),
                )
                for j in range(rank)
            ]
            for i in range(rank)
        ]

    def is_zero_mat(m: list[list[GradedElement]]) -> bool:
        return all(e.is_zero() for row in m for e in row)

    # A^{-1} = sum_m (-V^{-1} B)^m V^{-1}
    v_inv_elem = [[base.one_element().scaled(v) for v in row] for row in v_inv]
    neg_vb = scalar_apply([[-x for x in row] for row in v_inv], b_mat)
    inverse = [row[:] for row in v_inv_elem]
    power = neg_vb
    while not is_zero_mat(power):
        term = mat_mul(power, v_inv_elem)
        inverse = [
            [inverse[i][j] + term[i][j] for j in range(rank)] for i in range(rank)
        ]
        power = mat_mul(power, neg_vb)

    ident = [
        [base.one_element() if i == j else base.zero_element() for j in range(rank)]
        for i in range(rank)
    ]
    verified_inverse = mat_mul(matrix, inverse) == ident and mat_mul(inverse, matrix) == ident

    f_vec = []
    cpow = bundle.one_element()
    for k in range(rank):
        f_vec.append(cpow.scaled(rat(1, _factorial(k))))
        cpow = cpow.wedge(c)

    def combine(vec: list[GradedElement], m: list[list[GradedElement]]) -> list[GradedElement]:
        return [
            sum(
                (vec[k].wedge(inject(m[k][j])) for k in range(rank)),
                bundle.zero_element(),
            )
            for j in range(rank)
        ]

    verified_e = combine(f_vec, matrix) == exps
    verified_f = combine(exps, inverse) == f_vec

    # freeness of 1, c, ..., c^{r-1}: exact row rank of all products base_i c^k
    rows = []
    for k in range(rank):
        cpow_k = f_vec[k].scaled(rat(_factorial(k)))
        for bid in range(base.dimension):
            vec = inject(base.basis_element(bid)).wedge(cpow_k)
            rows.append(dict(vec.coords))
    pivots: dict[int, dict] = {}
    rank_count = 0
    for vec in rows:
        for p, rv in pivots.items():
            cval = vec.get(p)
            if cval:
                for i, v in rv.items():
                    new = vec.get(i, rat(0)) - cval * v
                    if new:
                        vec[i] = new
                    elif i in vec:
                        del vec[i]
        if vec:
            p = min(vec)
            inv = ONE / vec[p]
            pivots[p] = {i: v * inv for i, v in vec.items()}
            rank_count += 1
    verified_rank = rank_count == rank * base.dimension

    return ExpBasisResult(
        bundle=bundle,
        base=base,
        matrix=matrix,
        inverse=inverse,
        vandermonde=vand,
        verified_inverse=verified_inverse,
        verified_e_from_f=verified_e,
        verified_f_from_e=verified_f,
        verified_free_rank=verified_rank,
    )
