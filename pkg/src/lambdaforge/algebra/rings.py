"""Abstract commutative-ring interface and basic instances.

Ring elements are plain Python values; a ring object supplies the
operations.  The required surface is small: ``zero``, ``one``, ``add``,
``neg``, ``mul`` and equality.  Rings that are vector spaces over the
rationals also provide ``rat_mul`` and report ``is_q_linear``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from ..errors import RingCapabilityError
from .multipoly import MultiPoly
from .rationals import is_rational, rat


class CommutativeRing(ABC):
    name: str = "ring"
    is_q_linear: bool = False

    @abstractmethod
    def zero(self): ...

    @abstractmethod
    def one(self): ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    @abstractmethod
    def mul(self, a, b): ...

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero())

    def int_mul(self, n: int, a):
        """``n . a`` for an integer n; overridden by rings with native scaling."""
        if n == 0:
            return self.zero()
        if n < 0:
            return self.neg(self.int_mul(-n, a))
        acc = self.zero()
        base = a
        while n:
            if n & 1:
                acc = self.add(acc, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return acc

    def rat_mul(self, q, a):
        """``q . a`` for rational q; only on rings with a rational action."""
        raise RingCapabilityError(f"ring '{self.name}' has no rational scaling")

    def pow(self, a, n: int):
        if n < 0:
            raise ValueError("negative ring powers are not defined")
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base) if n > 1 else base
            n >>= 1
        return result

    def describe(self, a) -> str:
        """Deterministic rendering used in verification witnesses."""
        return str(a)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class RationalField(CommutativeRing):
    """The rationals themselves."""

    name = "Q"
    is_q_linear = True

    def zero(self):
        return rat(0)

    def one(self):
        return rat(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def int_mul(self, n, a):
        return rat(n) * a

    def rat_mul(self, q, a):
        return q * a


class IntegerRing(CommutativeRing):
    """Plain integers; deliberately not a Q-vector space."""

    name = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def int_mul(self, n, a):
        return n * a


class PolynomialRing(CommutativeRing):
    """MultiPoly values under their own arithmetic."""

    name = "Q[..]"
    is_q_linear = True

    def zero(self):
        return MultiPoly.zero()

    def one(self):
        return MultiPoly.const(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def int_mul(self, n, a):
        return a.scaled(rat(n))

    def rat_mul(self, q, a):
        return a.scaled(q)

    def coerce(self, value) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value
        if is_rational(value):
            return MultiPoly.const(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")
