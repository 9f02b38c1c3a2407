"""Series with constant term 1 and their twisted ring structure.

Under plain multiplication such series form a group; together with the
product induced by the universal polynomials ``P_n`` and the exterior-power
operations induced by ``P_{n,m}`` they form a ring with zero 1 and identity
1 + t, the classical big-Witt-style structure.  Adams operations are read
off the logarithmic derivative and the two directions of the lambda/Adams
dictionary are implemented as truncated exponential and quotient series.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .algebra.rationals import rat
from .algebra.series import TruncSeries
from .errors import MismatchError, RingCapabilityError
from .symfun import (
    compute_Pn,
    compute_Pnm,
    elementary_from_power_sums,
    power_sums_from_elementary,
    sigma_names,
)

#: largest n*m for which the exterior-power polynomial is expanded explicitly
PNM_EXPLICIT_CAP = 8


class LambdaSeries(TruncSeries):
    """Truncated series with constant term equal to the ring identity."""

    def __init__(self, ring, coeffs, order=None):
        super().__init__(ring, coeffs, order)
        if not ring.eq(self.coeffs[0], ring.one()):
            raise ValueError("series must have constant term 1")

    @classmethod
    def one(cls, ring, order: int) -> "LambdaSeries":
        return cls(ring, [ring.one()], order)

    @classmethod
    def one_plus_t(cls, ring, order: int) -> "LambdaSeries":
        coeffs = [ring.one()]
        if order >= 1:
            coeffs.append(ring.one())
        return cls(ring, coeffs, order)

    @classmethod
    def from_series(cls, s: TruncSeries) -> "LambdaSeries":
        return cls(s.ring, s.coeffs, s.order)


def witt_add(series_i: LambdaSeries, series_j: LambdaSeries) -> LambdaSeries:
    """The additive operation: plain series multiplication."""
    return LambdaSeries.from_series(series_i * series_j)


def witt_neg(series_i: LambdaSeries) -> LambdaSeries:
    """Additive inverse: the series group inverse."""
    return LambdaSeries.from_series(series_i.invert())


def witt_mul(series_i: LambdaSeries, series_j: LambdaSeries) -> LambdaSeries:
    """The twisted product; degree-n coefficient is P_n of the inputs."""
    if series_i.ring is not series_j.ring or series_i.order != series_j.order:
        raise MismatchError("twisted product needs matching rings and truncation orders")
    ring = series_i.ring
    out = [ring.one()]
    for n in range(1, series_i.order + 1):
        pn = compute_Pn(n)
        assignment = {f"s{k}": series_i.coeffs[k] for k in range(1, n + 1)}
        assignment.update(
            {name: series_j.coeffs[k] for k, name in enumerate(sigma_names(n), start=1)}
        )
        out.append(pn.poly.evaluate_in(ring, assignment))
    return LambdaSeries(ring, out, series_i.order)


def witt_lambda(m: int, series_i: LambdaSeries, out_order: int | None = None) -> LambdaSeries:
    """The m-th exterior-power operation on a series with constant term 1.

    The input is read as a polynomial: coefficients above its truncation
    order are zero.  Degree-n output coefficients are the exterior-power
    polynomials P_{n,m} of the input coefficients; they are evaluated
    explicitly for small n*m and through the Newton power-sum dictionary on
    rings with rational scaling otherwise.
    """
    if m < 0:
        raise ValueError("exterior power index must be nonnegative")
    ring = series_i.ring
    order = series_i.order if out_order is None else out_order
    if m == 0:
        return LambdaSeries.one_plus_t(ring, order)
    if m == 1:
        if order <= series_i.order:
            return LambdaSeries.from_series(series_i.truncated(order))
        return LambdaSeries.from_series(series_i.extended(order))
    if ring.is_q_linear:
        return _witt_lambda_newton(m, series_i, order)
    if order * m <= PNM_EXPLICIT_CAP:
        return _witt_lambda_explicit(m, series_i, order)
    raise RingCapabilityError(
        f"exterior power {m} at order {order} needs rational scaling in ring '{ring.name}' "
        f"(explicit polynomials are kept only up to n*m = {PNM_EXPLICIT_CAP})"
    )


def _witt_lambda_explicit(m: int, series_i: LambdaSeries, order: int) -> LambdaSeries:
    ring = series_i.ring
    out = [ring.one()]
    for n in range(1, order + 1):
        pnm = compute_Pnm(n, m)
        assignment = {
            f"s{k}": series_i.coefficient(k) for k in range(1, n * m + 1)
        }
        out.append(pnm.poly.evaluate_in(ring, assignment))
    return LambdaSeries(ring, out, order)


def _witt_lambda_newton(m: int, series_i: LambdaSeries, order: int) -> LambdaSeries:
    """Power-sum route: identical values, no large polynomial expansion.

    With e_i the input coefficients, the power sums of the underlying root
    multiset are Newton-recovered; the power sums of the m-subset multiset
    are elementary functions of the k-th root powers, and the output
    coefficients are Newton-converted back.
    """
    ring = series_i.ring
    e_vals = [series_i.coefficient(k) for k in range(1, series_i.order + 1)]
    root_powers = power_sums_from_elementary(e_vals, m * order, ring)
    subset_power = []
    for k in range(1, order + 1):
        powered = [root_powers[j * k - 1] for j in range(1, m + 1)]
        e_of_powered = elementary_from_power_sums(powered, m, ring)
        subset_power.append(e_of_powered[m - 1])
    out_coeffs = elementary_from_power_sums(subset_power, order, ring)
    return LambdaSeries(ring, [ring.one()] + out_coeffs, order)


def lambda_t(x, lambda_op: Callable[[int, object], object], ring, order: int) -> LambdaSeries:
    """The generating series of the lambda operations of ``x``."""
    coeffs = [ring.one()] + [lambda_op(n, x) for n in range(1, order + 1)]
    return LambdaSeries(ring, coeffs, order)


def adams_via_log(series: LambdaSeries) -> list:
    """Adams values Psi^1..Psi^N read off the logarithmic derivative.

    Computed as the quotient of the derivative by the series itself, so only
    ring operations are needed.
    """
    ratio = series.derivative() * series.invert().truncated(max(series.order - 1, 0))
    ring = series.ring
    out = []
    for n in range(series.order):
        v = ratio.coefficient(n)
        out.append(v if n % 2 == 0 else ring.neg(v))
    return out


def lambda_from_adams(psi_values: Sequence, ring, order: int) -> LambdaSeries:
    """Inverse dictionary: exp of the alternating Adams series.

    Needs division by integers, hence a ring with rational scaling.
    """
    if not ring.is_q_linear:
        raise RingCapabilityError(
            f"lambda-from-Adams needs rational scaling, absent in ring '{ring.name}'"
        )
    if len(psi_values) < order:
        raise ValueError(f"need {order} Adams values, got {len(psi_values)}")
    coeffs = [ring.one()]
    for n in range(1, order + 1):
        acc = ring.zero()
        for k in range(1, n + 1):
            term = ring.mul(psi_values[k - 1], coeffs[n - k])
            if k % 2 == 0:
                term = ring.neg(term)
            acc = ring.add(acc, term)
        coeffs.append(ring.rat_mul(rat(1, n), acc))
    return LambdaSeries(ring, coeffs, order)
