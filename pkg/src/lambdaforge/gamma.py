"""The twisted ring of closed even forms paired with odd cosets.

An element is a pair (omega, phi): a closed even form and an odd form
modulo differentials.  The product twists the naive one by a correction
term built from d(phi), which is exactly what makes the lambda operations
on cycle rings well defined later on.  Degree l pairs the 2l-form part
with the (2l-1)-coset part; Adams operations scale degree l by k^l and the
lambda operations are their exponential dictionary.
"""

from __future__ import annotations

from .algebra.rationals import ONE, rat
from .algebra.rings import CommutativeRing
from .cdga import CDGAModel, GradedElement, OddCoset
from .errors import MismatchError
from .lambdaring import lambda_from_adams


class GammaElement:
    """Pair of a closed even form and a canonical odd coset."""

    __slots__ = ("model", "even", "odd", "_hash")

    def __init__(self, even: GradedElement, odd: OddCoset, *, _checked: bool = False):
        if even.model is not odd.model:
            raise MismatchError("even part and odd coset live in different models")
        if not _checked:
            if not even.is_even():
                raise ValueError("even part has odd-degree components")
            if not even.is_closed():
                raise ValueError("even part must be closed")
        self.model = even.model
        self.even = even
        self.odd = odd
        self._hash = None

    @classmethod
    def of(cls, even: GradedElement, odd_rep: GradedElement | OddCoset) -> "GammaElement":
        odd = odd_rep if isinstance(odd_rep, OddCoset) else OddCoset.of(odd_rep)
        return cls(even, odd)

    @classmethod
    def zero(cls, model: CDGAModel) -> "GammaElement":
        return cls(model.zero_element(), OddCoset.zero(model), _checked=True)

    @classmethod
    def one(cls, model: CDGAModel) -> "GammaElement":
        return cls(model.one_element(), OddCoset.zero(model), _checked=True)

    @classmethod
    def from_even(cls, even: GradedElement) -> "GammaElement":
        return cls(even, OddCoset.zero(even.model))

    @classmethod
    def from_odd(cls, odd: OddCoset) -> "GammaElement":
        return cls(odd.model.zero_element(), odd, _checked=True)

    def __add__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return GammaElement(self.even + other.even, self.odd + other.odd, _checked=True)

    def __sub__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return GammaElement(self.even - other.even, self.odd - other.odd, _checked=True)

    def __neg__(self):
        return GammaElement(-self.even, -self.odd, _checked=True)

    def scaled(self, c) -> "GammaElement":
        return GammaElement(self.even.scaled(c), self.odd.scaled(c), _checked=True)

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((hash(self.even), hash(self.odd)))
        return self._hash

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def __repr__(self):
        return f"({self.even!r}, {self.odd!r})"


def gamma_mul(x: GammaElement, y: GammaElement) -> GammaElement:
    """(w1, p1) * (w2, p2) = (w1 w2, w1 p2 + p1 w2 - d(p1) p2)."""
    if x.model is not y.model:
        raise MismatchError("product needs elements of the same model")
    even = x.even.wedge(y.even)
    odd_rep = (
        x.even.wedge(y.odd.rep)
        + x.odd.rep.wedge(y.even)
        - x.odd.rep.d().wedge(y.odd.rep)
    )
    return GammaElement(even, OddCoset.of(odd_rep), _checked=True)


def gamma_adams(k: int, x: GammaElement) -> GammaElement:
    """Scale the degree-l component by k^l (2l-form and (2l-1)-coset alike)."""
    even = GradedElement(
        x.model,
        {
            i: c * rat(k) ** (x.model.basis_degree[i] // 2)
            for i, c in x.even.coords.items()
        },
    )
    odd = x.odd.scale_by_degree(lambda l: rat(k) ** l)
    return GammaElement(even, odd, _checked=True)


class GammaRing(CommutativeRing):
    """Ring object over a fixed model; elements are GammaElement values."""

    is_q_linear = True

    def __init__(self, model: CDGAModel):
        self.model = model
        self.name = f"Gamma({model.name})"
        self._zero = GammaElement.zero(model)
        self._one = GammaElement.one(model)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return gamma_mul(a, b)

    def int_mul(self, n, a):
        return a.scaled(rat(n))

    def rat_mul(self, q, a):
        return a.scaled(q)


_GAMMA_RINGS: dict[int, GammaRing] = {}


def gamma_ring(model: CDGAModel) -> GammaRing:
    ring = _GAMMA_RINGS.get(id(model))
    if ring is None:
        ring = _GAMMA_RINGS[id(model)] = GammaRing(model)
    return ring


def gamma_lambda_series(x: GammaElement, order: int):
    """All lambda operations of ``x`` up to ``order`` as one series."""
    psi = [gamma_adams(k, x) for k in range(1, order + 1)]
    return lambda_from_adams(psi, gamma_ring(x.model), order)


def gamma_lambda(n: int, x: GammaElement) -> GammaElement:
    """Lambda operations from Adams operations by the exponential dictionary."""
    if n == 0:
        return GammaElement.one(x.model)
    return gamma_lambda_series(x, n).coefficient(n)


def even_restriction_p(x: GammaElement) -> GradedElement:
    """Projection onto the closed even part."""
    return x.even


class ZEvenRing(CommutativeRing):
    """Closed even forms under the wedge product."""

    is_q_linear = True

    def __init__(self, model: CDGAModel):
        self.model = model
        self.name = f"Zeven({model.name})"

    def zero(self):
        return self.model.zero_element()

    def one(self):
        return self.model.one_element()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a.wedge(b)

    def int_mul(self, n, a):
        return a.scaled(rat(n))

    def rat_mul(self, q, a):
        return a.scaled(q)


def zeven_adams(k: int, alpha: GradedElement) -> GradedElement:
    """k^l on the 2l-form component."""
    return GradedElement(
        alpha.model,
        {
            i: c * rat(k) ** (alpha.model.basis_degree[i] // 2)
            for i, c in alpha.coords.items()
        },
    )


def zeven_lambda_series(alpha: GradedElement, order: int):
    psi = [zeven_adams(k, alpha) for k in range(1, order + 1)]
    return lambda_from_adams(psi, ZEvenRing(alpha.model), order)


def zeven_lambda(n: int, alpha: GradedElement) -> GradedElement:
    if n == 0:
        return alpha.model.one_element()
    return zeven_lambda_series(alpha, n).coefficient(n)
