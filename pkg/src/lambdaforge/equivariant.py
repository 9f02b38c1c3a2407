"""Equivariant extension over a finitely generated abelian character group.

The acting group enters only through its character lattice: characters are
integer vectors plus residue vectors, multiplication of representations is
character addition, and the representation ring is the integral group ring.
Bundles decompose over the fixed-point model into lines carrying a root and
a character; odd data becomes a character-indexed family of cosets.  All
non-equivariant constructions extend by convolution over characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .algebra.rationals import rat
from .algebra.rings import CommutativeRing
from .cdga import CDGAModel, GradedElement, OddCoset
from .diffk import Perturbation, _exp_of_root, _validate_root, line_transgression
from .errors import MismatchError
from .gamma import GammaElement, gamma_adams, gamma_mul
from .lambdaring import LambdaSeries, lambda_from_adams


@dataclass(frozen=True)
class CharacterGroup:
    """Z^r times a product of finite cyclic factors; characters are tuples."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(n < 2 for n in self.torsion):
            raise ValueError("free rank must be >= 0 and torsion orders >= 2")
        object.__setattr__(self, "_width", self.free_rank + len(self.torsion))

    @classmethod
    def from_spec(cls, spec: Mapping) -> "CharacterGroup":
        return cls(int(spec.get("free_rank", 0)), tuple(int(n) for n in spec.get("torsion", ())))

    @property
    def width(self) -> int:
        return self._width

    def reduce(self, char: tuple) -> tuple:
        if len(char) != self._width:
            raise ValueError(f"character needs {self._width} components")
        if not self.torsion:
            return tuple(char)
        free = char[: self.free_rank]
        tors = tuple(c % n for c, n in zip(char[self.free_rank:], self.torsion))
        return tuple(free) + tors

    def zero(self) -> tuple:
        return (0,) * self.width

    def add(self, a: tuple, b: tuple) -> tuple:
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a: tuple) -> tuple:
        return self.reduce(tuple(-x for x in a))

    def scale(self, k: int, a: tuple) -> tuple:
        return self.reduce(tuple(k * x for x in a))

    def describe(self, a: tuple) -> str:
        free = ",".join(str(x) for x in a[: self.free_rank])
        tors = ",".join(str(x) for x in a[self.free_rank:])
        return f"({free}|{tors})"

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{n}" for n in self.torsion]
        return " x ".join(parts) if parts else "0"


class RepRingElement:
    """Finite integer combination of characters."""

    __slots__ = ("group", "terms", "_hash")

    def __init__(self, group: CharacterGroup, terms: Mapping[tuple, int]):
        self.group = group
        self.terms = {
            group.reduce(c): int(m) for c, m in terms.items() if m
        }
        self._hash = None

    @classmethod
    def character(cls, group: CharacterGroup, char: tuple, mult: int = 1) -> "RepRingElement":
        return cls(group, {char: mult})

    @classmethod
    def zero(cls, group: CharacterGroup) -> "RepRingElement":
        return cls(group, {})

    @classmethod
    def one(cls, group: CharacterGroup) -> "RepRingElement":
        return cls(group, {group.zero(): 1})

    def _check(self, other: "RepRingElement"):
        if self.group != other.group:
            raise MismatchError("representation elements over different groups")

    def __add__(self, other):
        if not isinstance(other, RepRingElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for c, m in other.terms.items():
            out[c] = out.get(c, 0) + m
        return RepRingElement(self.group, out)

    def __neg__(self):
        return RepRingElement(self.group, {c: -m for c, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RepRingElement):
            return NotImplemented
        self._check(other)
        out: dict[tuple, int] = {}
        for c1, m1 in self.terms.items():
            for c2, m2 in other.terms.items():
                key = self.group.add(c1, c2)
                out[key] = out.get(key, 0) + m1 * m2
        return RepRingElement(self.group, out)

    def __eq__(self, other):
        if not isinstance(other, RepRingElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{m}*chi{self.group.describe(c)}" if m != 1 else f"chi{self.group.describe(c)}"
            for c, m in sorted(self.terms.items())
        )


def rep_mul(u: RepRingElement, v: RepRingElement) -> RepRingElement:
    """Group-ring convolution; tensoring representations adds characters."""
    return u * v


class RepRing(CommutativeRing):
    """Integral group ring of the character group."""

    def __init__(self, group: CharacterGroup):
        self.group = group
        self.name = f"R({group})"

    def zero(self):
        return RepRingElement.zero(self.group)

    def one(self):
        return RepRingElement.one(self.group)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def int_mul(self, n, a):
        return RepRingElement(a.group, {c: n * m for c, m in a.terms.items()})


# -- character-indexed twisted-ring elements ----------------------------------


def _gg_normalize(data: Mapping[tuple, GammaElement]) -> dict:
    return {c: g for c, g in data.items() if not g.is_zero()}


class GammaGRing(CommutativeRing):
    """Convolution ring of character-indexed twisted-ring elements."""

    is_q_linear = True

    def __init__(self, model: CDGAModel, group: CharacterGroup):
        self.model = model
        self.group = group
        self.name = f"Gamma_g({model.name}; {group})"

    def zero(self):
        return {}

    def one(self):
        return {self.group.zero(): GammaElement.one(self.model)}

    def add(self, a, b):
        out = dict(a)
        for c, g in b.items():
            got = out.get(c)
            out[c] = g if got is None else got + g
        return _gg_normalize(out)

    def neg(self, a):
        return {c: -g for c, g in a.items()}

    def mul(self, a, b):
        out: dict[tuple, GammaElement] = {}
        for c1, g1 in a.items():
            for c2, g2 in b.items():
                key = self.group.add(c1, c2)
                prod = gamma_mul(g1, g2)
                got = out.get(key)
                out[key] = prod if got is None else got + prod
        return _gg_normalize(out)

    def int_mul(self, n, a):
        return _gg_normalize({c: g.scaled(rat(n)) for c, g in a.items()})

    def rat_mul(self, q, a):
        return _gg_normalize({c: g.scaled(q) for c, g in a.items()})

    def describe(self, a) -> str:
        return (
            "{" + ", ".join(
                f"{self.group.describe(c)}: {g!r}" for c, g in sorted(a.items())
            ) + "}"
        )


def gamma_g_adams(ring: GammaGRing, k: int, x: Mapping[tuple, GammaElement]) -> dict:
    """Degree-l parts scale by k^l while the character gets tensored k times."""
    out: dict[tuple, GammaElement] = {}
    for c, g in x.items():
        key = ring.group.scale(k, c)
        scaled = gamma_adams(k, g)
        got = out.get(key)
        out[key] = scaled if got is None else got + scaled
    return _gg_normalize(out)


def gamma_g_lambda_series(ring: GammaGRing, x: Mapping[tuple, GammaElement], order: int) -> LambdaSeries:
    psi = [gamma_g_adams(ring, k, x) for k in range(1, order + 1)]
    return lambda_from_adams(psi, ring, order)


# -- equivariant bundles, cycles and classes -----------------------------------


class EquivTriple:
    """Multiset of (line root, character) pairs over a fixed-point model."""

    __slots__ = ("model", "group", "pairs", "_hash")

    def __init__(self, model: CDGAModel, group: CharacterGroup,
                 pairs: Iterable[tuple[tuple[GradedElement, tuple], int]] = ()):
        counted: dict[tuple[GradedElement, tuple], int] = {}
        for (x, char), mult in pairs:
            if x.model is not model:
                raise MismatchError("root lives in a different model")
            if mult < 0:
                raise ValueError("multiplicities must be nonnegative")
            if mult:
                key = (x, group.reduce(char))
                counted[key] = counted.get(key, 0) + mult
        self.model = model
        self.group = group
        self.pairs = tuple(
            sorted(counted.items(), key=lambda km: (km[0][1], km[0][0].key()))
        )
        self._hash = None

    @classmethod
    def empty(cls, model: CDGAModel, group: CharacterGroup) -> "EquivTriple":
        return cls(model, group)

    @classmethod
    def trivial_line(cls, model: CDGAModel, group: CharacterGroup) -> "EquivTriple":
        return cls(model, group, [((model.zero_element(), group.zero()), 1)])

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.pairs)

    def expanded(self) -> list[tuple[GradedElement, tuple]]:
        out = []
        for pair, m in self.pairs:
            out.extend([pair] * m)
        return out

    def direct_sum(self, other: "EquivTriple") -> "EquivTriple":
        self._check(other)
        return EquivTriple(self.model, self.group, list(self.pairs) + list(other.pairs))

    def tensor(self, other: "EquivTriple") -> "EquivTriple":
        self._check(other)
        out = []
        for (x, c1), m1 in self.pairs:
            for (y, c2), m2 in other.pairs:
                out.append(((x + y, self.group.add(c1, c2)), m1 * m2))
        return EquivTriple(self.model, self.group, out)

    def exterior(self, k: int) -> "EquivTriple":
        if k == 0:
            return EquivTriple.trivial_line(self.model, self.group)
        items = self.expanded()
        out: dict[tuple[GradedElement, tuple], int] = {}
        for combo in combinations(range(len(items)), k):
            x, c = items[combo[0]]
            for i in combo[1:]:
                y, c2 = items[i]
                x = x + y
                c = self.group.add(c, c2)
            key = (x, c)
            out[key] = out.get(key, 0) + 1
        return EquivTriple(self.model, self.group, out.items())

    def scale(self, k: int) -> "EquivTriple":
        return EquivTriple(
            self.model,
            self.group,
            [((x.scaled(rat(k)), self.group.scale(k, c)), m) for (x, c), m in self.pairs],
        )

    def ch_by_char(self) -> dict[tuple, GradedElement]:
        out: dict[tuple, GradedElement] = {}
        for (x, c), m in self.pairs:
            val = _exp_of_root(x).scaled(rat(m))
            got = out.get(c)
            out[c] = val if got is None else got + val
        return {c: v for c, v in out.items() if not v.is_zero()}

    def _check(self, other: "EquivTriple"):
        if self.model is not other.model or self.group != other.group:
            raise MismatchError("triples live over different models or groups")

    def key(self) -> tuple:
        return tuple(((x.key(), c), m) for (x, c), m in self.pairs)

    def __eq__(self, other):
        if not isinstance(other, EquivTriple):
            return NotImplemented
        return (
            self.model is other.model and self.group == other.group and self.pairs == other.pairs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.model), self.group, self.key()))
        return self._hash

    def __repr__(self):
        if not self.pairs:
            return "0"
        return " + ".join(
            f"{m if m != 1 else ''}L({x!r}; chi{self.group.describe(c)})"
            for (x, c), m in self.pairs
        )


def ch_equivariant(triple: EquivTriple) -> dict[tuple, GradedElement]:
    """Characterwise Chern character of the split equivariant bundle."""
    return triple.ch_by_char()


def _phi_normalize(data: Mapping[tuple, OddCoset]) -> dict:
    return {c: p for c, p in data.items() if not p.is_zero()}


class EquivCycle:
    """Equivariant bundle paired with character-indexed odd cosets."""

    __slots__ = ("triple", "phi", "_hash")

    def __init__(self, triple: EquivTriple, phi: Mapping[tuple, OddCoset]):
        self.triple = triple
        self.phi = _phi_normalize({triple.group.reduce(c): p for c, p in phi.items()})
        self._hash = None

    @classmethod
    def make(cls, model: CDGAModel, group: CharacterGroup,
             pairs: Iterable[tuple[tuple[GradedElement, tuple], int]],
             phi: Mapping[tuple, OddCoset] | None = None) -> "EquivCycle":
        """Canonicalize roots, pushing transgressions into the right character."""
        corrections: dict[tuple, GradedElement] = {}
        fixed = []
        for (x, char), mult in pairs:
            _validate_root(x)
            char = group.reduce(char)
            canon = GradedElement(model, model.reduce_mod_exact(x.coords))
            if canon != x:
                beta = GradedElement(model, model.d_preimage_coords((canon - x).coords))
                corr = line_transgression(x, beta).scaled(rat(mult))
                got = corrections.get(char)
                corrections[char] = corr if got is None else got + corr
            fixed.append(((canon, char), mult))
        phi_map = {group.reduce(c): p for c, p in (phi or {}).items()}
        for c, corr in corrections.items():
            extra = OddCoset.of(corr)
            got = phi_map.get(c)
            phi_map[c] = extra if got is None else got + extra
        return cls(EquivTriple(model, group, fixed), phi_map)

    @property
    def model(self) -> CDGAModel:
        return self.triple.model

    @property
    def group(self) -> CharacterGroup:
        return self.triple.group

    def direct_sum(self, other: "EquivCycle") -> "EquivCycle":
        phi = dict(self.phi)
        for c, p in other.phi.items():
            got = phi.get(c)
            phi[c] = p if got is None else got + p
        return EquivCycle(self.triple.direct_sum(other.triple), phi)

    def gamma_pair(self) -> dict[tuple, GammaElement]:
        out: dict[tuple, GammaElement] = {}
        for c, ch in self.triple.ch_by_char().items():
            out[c] = GammaElement(ch, OddCoset.zero(self.model), _checked=True)
        for c, p in self.phi.items():
            part = GammaElement.from_odd(p)
            got = out.get(c)
            out[c] = part if got is None else got + part
        return out

    def phi_scaled_adams(self, k: int) -> dict[tuple, OddCoset]:
        out: dict[tuple, OddCoset] = {}
        for c, p in self.phi.items():
            key = self.group.scale(k, c)
            scaled = p.scale_by_degree(lambda l: rat(k) ** l)
            got = out.get(key)
            out[key] = scaled if got is None else got + scaled
        return out

    def __eq__(self, other):
        if not isinstance(other, EquivCycle):
            return NotImplemented
        return self.triple == other.triple and self.phi == other.phi

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((hash(self.triple), tuple(sorted(
                (c, hash(p)) for c, p in self.phi.items()
            ))))
        return self._hash

    def __repr__(self):
        phi_bits = ", ".join(
            f"chi{self.group.describe(c)}: {p!r}" for c, p in sorted(self.phi.items())
        )
        return f"({self.triple!r}, {{{phi_bits}}})"


class EquivClass:
    """Normalized virtual difference of equivariant cycles."""

    __slots__ = ("plus", "minus", "_hash")

    def __init__(self, plus: EquivCycle, minus: EquivCycle):
        self.plus = plus
        self.minus = minus
        self._hash = None

    @classmethod
    def make(cls, plus: EquivCycle, minus: EquivCycle | None = None) -> "EquivClass":
        model, group = plus.model, plus.group
        if minus is None:
            minus = EquivCycle(EquivTriple.empty(model, group), {})
        phi = dict(plus.phi)
        for c, p in minus.phi.items():
            got = phi.get(c)
            phi[c] = (-p) if got is None else got - p
        p_counts = dict(plus.triple.pairs)
        m_counts = dict(minus.triple.pairs)
        for key in list(p_counts):
            if key in m_counts:
                common = min(p_counts[key], m_counts[key])
                p_counts[key] -= common
                m_counts[key] -= common
                if not p_counts[key]:
                    del p_counts[key]
                if not m_counts[key]:
                    del m_counts[key]
        return cls(
            EquivCycle(EquivTriple(model, group, p_counts.items()), phi),
            EquivCycle(EquivTriple(model, group, m_counts.items()), {}),
        )

    @classmethod
    def from_cycle(cls, cycle: EquivCycle) -> "EquivClass":
        return cls.make(cycle)

    @classmethod
    def zero(cls, model: CDGAModel, group: CharacterGroup) -> "EquivClass":
        return cls.make(EquivCycle(EquivTriple.empty(model, group), {}))

    @classmethod
    def one(cls, model: CDGAModel, group: CharacterGroup) -> "EquivClass":
        return cls.make(EquivCycle(EquivTriple.trivial_line(model, group), {}))

    @property
    def model(self) -> CDGAModel:
        return self.plus.model

    @property
    def group(self) -> CharacterGroup:
        return self.plus.group

    def is_zero(self) -> bool:
        return not self.plus.triple.pairs and not self.minus.triple.pairs and not self.plus.phi

    def __add__(self, other):
        if not isinstance(other, EquivClass):
            return NotImplemented
        return EquivClass.make(
            self.plus.direct_sum(other.plus), self.minus.direct_sum(other.minus)
        )

    def __neg__(self):
        minus_phi = {c: -p for c, p in self.plus.phi.items()}
        for c, p in self.minus.phi.items():
            got = minus_phi.get(c)
            minus_phi[c] = p if got is None else got + p
        return EquivClass.make(
            EquivCycle(self.minus.triple, minus_phi),
            EquivCycle(self.plus.triple, {}),
        )

    def __sub__(self, other):
        return self + (-other)

    def int_scaled(self, n: int) -> "EquivClass":
        if n == 0:
            return EquivClass.zero(self.model, self.group)
        mag = abs(n)
        phi = {c: p.scaled(rat(n)) for c, p in self.plus.phi.items()}
        p_triple = EquivTriple(self.model, self.group,
                               [(k, m * mag) for k, m in self.plus.triple.pairs])
        m_triple = EquivTriple(self.model, self.group,
                               [(k, m * mag) for k, m in self.minus.triple.pairs])
        if n > 0:
            return EquivClass.make(EquivCycle(p_triple, phi), EquivCycle(m_triple, {}))
        return EquivClass.make(EquivCycle(m_triple, phi), EquivCycle(p_triple, {}))

    def __eq__(self, other):
        if not isinstance(other, EquivClass):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((hash(self.plus), hash(self.minus)))
        return self._hash

    def __repr__(self):
        if self.minus.triple.pairs:
            return f"[{self.plus!r} - {self.minus.triple!r}]"
        return f"[{self.plus!r}]"


def equiv_cycle_cup(c1: EquivCycle, c2: EquivCycle) -> EquivCycle:
    """Cup of cycles: tensor the bundles, convolve the twisted odd parts."""
    ring = GammaGRing(c1.model, c1.group)
    prod = ring.mul(c1.gamma_pair(), c2.gamma_pair())
    phi = _phi_normalize({c: g.odd for c, g in prod.items()})
    return EquivCycle(c1.triple.tensor(c2.triple), phi)


def equiv_cycle_mul(a: EquivClass, b: EquivClass) -> EquivClass:
    if a.model is not b.model or a.group != b.group:
        raise MismatchError("product needs classes over one model and group")
    plus = equiv_cycle_cup(a.plus, b.plus).direct_sum(equiv_cycle_cup(a.minus, b.minus))
    minus = equiv_cycle_cup(a.plus, b.minus).direct_sum(equiv_cycle_cup(a.minus, b.plus))
    return EquivClass.make(plus, minus)


class EquivRing(CommutativeRing):
    """The equivariant class ring over one model and character group."""

    is_q_linear = False

    def __init__(self, model: CDGAModel, group: CharacterGroup):
        self.model = model
        self.group = group
        self.name = f"EquivK({model.name}; {group})"
        self._zero = EquivClass.zero(model, group)
        self._one = EquivClass.one(model, group)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return equiv_cycle_mul(a, b)

    def int_mul(self, n, a):
        return a.int_scaled(n)


_EQUIV_RINGS: dict[tuple[int, CharacterGroup], EquivRing] = {}


def equiv_ring(model: CDGAModel, group: CharacterGroup) -> EquivRing:
    key = (id(model), group)
    ring = _EQUIV_RINGS.get(key)
    if ring is None:
        ring = _EQUIV_RINGS[key] = EquivRing(model, group)
    return ring


def equiv_lambda_on_cycle(n: int, cycle: EquivCycle) -> EquivCycle:
    if n == 0:
        return EquivCycle(EquivTriple.trivial_line(cycle.model, cycle.group), {})
    ring = GammaGRing(cycle.model, cycle.group)
    gam = gamma_g_lambda_series(ring, cycle.gamma_pair(), n).coefficient(n)
    phi = _phi_normalize({c: g.odd for c, g in gam.items()})
    return EquivCycle(cycle.triple.exterior(n), phi)


def _equiv_cycle_lambda_series(cycle: EquivCycle, order: int, ring: EquivRing) -> LambdaSeries:
    if order == 0:
        return LambdaSeries.one(ring, 0)
    gring = GammaGRing(cycle.model, cycle.group)
    gam_series = gamma_g_lambda_series(gring, cycle.gamma_pair(), order)
    coeffs = [ring.one()]
    for k in range(1, order + 1):
        gam = gam_series.coefficient(k)
        phi = _phi_normalize({c: g.odd for c, g in gam.items()})
        coeffs.append(EquivClass.from_cycle(EquivCycle(cycle.triple.exterior(k), phi)))
    return LambdaSeries(ring, coeffs, order)


def lambda_t_equiv(a: EquivClass, order: int) -> LambdaSeries:
    ring = equiv_ring(a.model, a.group)
    plus_series = _equiv_cycle_lambda_series(a.plus, order, ring)
    if not a.minus.triple.pairs and not a.minus.phi:
        return plus_series
    minus_series = _equiv_cycle_lambda_series(a.minus, order, ring)
    return LambdaSeries.from_series(plus_series * minus_series.invert())


def equiv_lambda(n: int, a: EquivClass) -> EquivClass:
    """Exterior-power operation on equivariant classes."""
    if n < 0:
        raise ValueError("lambda index must be nonnegative")
    if n == 0:
        return EquivClass.one(a.model, a.group)
    if not a.minus.triple.pairs:
        return EquivClass.from_cycle(equiv_lambda_on_cycle(n, a.plus))
    return lambda_t_equiv(a, n).coefficient(n)


def equiv_adams(k: int, a: EquivClass) -> EquivClass:
    """Roots scale by k, characters tensor k times, odd parts scale by k^l."""
    if k < 1:
        raise ValueError("Adams index must be positive")

    def on_cycle(cycle: EquivCycle) -> EquivCycle:
        return EquivCycle(cycle.triple.scale(k), cycle.phi_scaled_adams(k))

    return EquivClass.make(on_cycle(a.plus), on_cycle(a.minus))


def equiv_chern_simons(triple: EquivTriple, pert: Perturbation) -> dict[tuple, OddCoset]:
    """Characterwise transgression of a per-line connection change."""
    lines = triple.expanded()
    if len(pert.betas) != len(lines):
        raise MismatchError("perturbation arity does not match rank")
    raw: dict[tuple, GradedElement] = {}
    for (x, char), beta in zip(lines, pert.betas):
        term = line_transgression(x, beta)
        got = raw.get(char)
        raw[char] = term if got is None else got + term
    return _phi_normalize({c: OddCoset.of(v) for c, v in raw.items()})


def perturbed_equiv_triple(triple: EquivTriple, pert: Perturbation) -> EquivTriple:
    lines = triple.expanded()
    if len(pert.betas) != len(lines):
        raise MismatchError("perturbation arity does not match rank")
    return EquivTriple(
        triple.model,
        triple.group,
        [(((x + b.d()), c), 1) for (x, c), b in zip(lines, pert.betas)],
    )


def equiv_curvature(a: EquivClass) -> dict[tuple, GradedElement]:
    """Characterwise curvature: Chern form minus d of the odd part."""
    out: dict[tuple, GradedElement] = {}

    def acc(data: Mapping[tuple, GradedElement], sign: int):
        for c, v in data.items():
            v = v if sign > 0 else -v
            got = out.get(c)
            out[c] = v if got is None else got + v

    acc(a.plus.triple.ch_by_char(), 1)
    acc({c: p.d() for c, p in a.plus.phi.items()}, -1)
    acc(a.minus.triple.ch_by_char(), -1)
    acc({c: p.d() for c, p in a.minus.phi.items()}, 1)
    return {c: v for c, v in out.items() if not v.is_zero()}


class EquivVirtualRoots:
    """Forgetful image: virtual multiset of (root, character) pairs."""

    __slots__ = ("model", "group", "plus", "minus")

    def __init__(self, model, group, plus, minus):
        p: dict = {}
        for k, m in plus:
            if m:
                p[k] = p.get(k, 0) + m
        q: dict = {}
        for k, m in minus:
            if m:
                q[k] = q.get(k, 0) + m
        for key in list(p):
            if key in q:
                common = min(p[key], q[key])
                p[key] -= common
                q[key] -= common
                if not p[key]:
                    del p[key]
                if not q[key]:
                    del q[key]
        self.model = model
        self.group = group
        sortkey = lambda km: (km[0][1], km[0][0].key())
        self.plus = tuple(sorted(p.items(), key=sortkey))
        self.minus = tuple(sorted(q.items(), key=sortkey))

    def adams(self, k: int) -> "EquivVirtualRoots":
        def scale(items):
            return [(((x.scaled(rat(k))), self.group.scale(k, c)), m) for (x, c), m in items]

        return EquivVirtualRoots(self.model, self.group, scale(self.plus), scale(self.minus))

    def __eq__(self, other):
        if not isinstance(other, EquivVirtualRoots):
            return NotImplemented
        return (
            self.model is other.model
            and self.group == other.group
            and self.plus == other.plus
            and self.minus == other.minus
        )

    def __repr__(self):
        return f"EquivVirtualRoots(+{list(self.plus)!r}, -{list(self.minus)!r})"


def equiv_map_I(a: EquivClass) -> EquivVirtualRoots:
    return EquivVirtualRoots(a.model, a.group, a.plus.triple.pairs, a.minus.triple.pairs)


def equiv_map_a(model: CDGAModel, group: CharacterGroup,
                phi: Mapping[tuple, OddCoset]) -> EquivClass:
    return EquivClass.make(EquivCycle(EquivTriple.empty(model, group), phi))
