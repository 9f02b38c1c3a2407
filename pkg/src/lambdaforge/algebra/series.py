"""Truncated univariate power series over an abstract commutative ring.

A series holds exactly ``order + 1`` coefficients (indices 0..N); every
operation discards degrees above the truncation order.  Binary operations
require equal orders and the same ring.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import MismatchError
from .rings import CommutativeRing


class TruncSeries:
    __slots__ = ("ring", "coeffs", "order")

    def __init__(self, ring: CommutativeRing, coeffs: Sequence, order: int | None = None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = list(coeffs[: order + 1])
        coeffs.extend(ring.zero() for _ in range(order + 1 - len(coeffs)))
        self.ring = ring
        self.coeffs = tuple(coeffs)
        self.order = order

    @classmethod
    def constant(cls, ring: CommutativeRing, value, order: int) -> "TruncSeries":
        return cls(ring, [value], order)

    @classmethod
    def zero(cls, ring: CommutativeRing, order: int) -> "TruncSeries":
        return cls.constant(ring, ring.zero(), order)

    @classmethod
    def one(cls, ring: CommutativeRing, order: int) -> "TruncSeries":
        return cls.constant(ring, ring.one(), order)

    def coefficient(self, n: int):
        """Coefficient of t^n; zero above the truncation order."""
        return self.coeffs[n] if n <= self.order else self.ring.zero()

    def _check(self, other: "TruncSeries"):
        if self.ring is not other.ring:
            raise MismatchError(
                f"series rings differ: '{self.ring.name}' vs '{other.ring.name}'"
            )
        if self.order != other.order:
            raise MismatchError(
                f"series truncation orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        add = self.ring.add
        return TruncSeries(self.ring, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        sub = self.ring.sub
        return TruncSeries(self.ring, [sub(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return TruncSeries(self.ring, [self.ring.neg(a) for a in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        ring = self.ring
        out = [ring.zero()] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if ring.is_zero(a):
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if ring.is_zero(b):
                    continue
                out[i + j] = ring.add(out[i + j], ring.mul(a, b))
        return TruncSeries(ring, out, self.order)

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be the ring identity."""
        ring = self.ring
        if not ring.eq(self.coeffs[0], ring.one()):
            raise ValueError("series is invertible here only with constant term 1")
        out = [ring.one()]
        for n in range(1, self.order + 1):
            acc = ring.zero()
            for k in range(1, n + 1):
                acc = ring.add(acc, ring.mul(self.coeffs[k], out[n - k]))
            out.append(ring.neg(acc))
        return TruncSeries(ring, out, self.order)

    def derivative(self) -> "TruncSeries":
        """Formal d/dt; the order drops by one."""
        if self.order == 0:
            return TruncSeries(self.ring, [self.ring.zero()], 0)
        ring = self.ring
        return TruncSeries(
            ring,
            [ring.int_mul(n, self.coeffs[n]) for n in range(1, self.order + 1)],
            self.order - 1,
        )

    def truncated(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("use extended() to raise the order")
        return TruncSeries(self.ring, self.coeffs[: order + 1], order)

    def extended(self, order: int) -> "TruncSeries":
        """Zero-fill up to ``order``; exact only when the series is known to be
        a polynomial of degree at most the current order."""
        if order < self.order:
            raise ValueError("use truncated() to lower the order")
        return TruncSeries(self.ring, list(self.coeffs), order)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.ring is not other.ring or self.order != other.order:
            return False
        return all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((id(self.ring), self.order, self.coeffs))

    def __repr__(self):
        inner = ", ".join(self.ring.describe(c) for c in self.coeffs)
        return f"TruncSeries[{inner}; O(t^{self.order + 1})]"


def series_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common order."""
    return f * g


def series_invert(f: TruncSeries) -> TruncSeries:
    """Group inverse in 1 + A[[t]]^+ up to the truncation order."""
    return f.invert()
