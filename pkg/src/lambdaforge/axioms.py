"""Executable law checking for lambda structures.

A context packages a commutative ring, its lambda operations and a seeded
sample generator.  ``verify_axioms`` drives one of three modes:

* ``pre-lambda``: the unit and addition laws of the lambda operations;
* ``lambda``: additionally the product law (degree-n coefficient given by
  the universal product polynomial) and the composition law (given by the
  exterior-power polynomial);
* ``adams-criterion``: Adams operations extracted from the logarithmic
  derivative satisfy unit, multiplicativity and composition.

Every check is recorded with a deterministic instance label and, on
failure, a witness rendering of the offending elements.  Equality is exact;
there are no tolerances.  Checks are per-sample: passing runs certify the
implementation on the sampled elements, they are not symbolic proofs.
A caveat for the criterion mode: it presumes the ring has no additive
torsion, which holds for every context shipped here but is not itself
checked.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra.rings import CommutativeRing
from .lambdaring import LambdaSeries, adams_via_log, lambda_t, witt_lambda, witt_mul
from .symfun import compute_Pn, compute_Pnm, sigma_names


@dataclass
class LambdaContext:
    """A ring with lambda operations and a deterministic sampler."""

    name: str
    ring: CommutativeRing
    lambda_op: Callable[[int, Any], Any]
    sample: Callable[[random.Random], Any]

    def lambda_series(self, x, order: int) -> LambdaSeries:
        return lambda_t(x, self.lambda_op, self.ring, order)

    def describe(self, x) -> str:
        return self.ring.describe(x)


@dataclass
class AxiomReport:
    mode: str
    context: str
    seed: int
    truncation: int
    checks: list[dict] = field(default_factory=list)

    def record(self, axiom: str, instance: str, passed: bool, witness: str | None = None):
        entry: dict[str, Any] = {
            "axiom": axiom,
            "instance": instance,
            "pass": bool(passed),
            "witness": witness,
        }
        self.checks.append(entry)

    @property
    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.checks)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["pass"]]

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "context": self.context,
            "seed": self.seed,
            "truncation": self.truncation,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def _composition_pairs(cap: int):
    """Index pairs (m, n) with 2 <= m, n and m*n <= cap, plus unit rows."""
    pairs = []
    for m in range(2, cap + 1):
        for n in range(2, cap + 1):
            if m * n <= cap:
                pairs.append((m, n))
    return pairs


def verify_axioms(
    ctx: LambdaContext,
    mode: str,
    samples: int = 25,
    seed: int = 0,
    truncation: int = 6,
    mult_order: int | None = None,
    composition_cap: int = 6,
) -> AxiomReport:
    """Run one verification mode; failures become report entries, not errors."""
    if mode not in ("pre-lambda", "lambda", "adams-criterion"):
        raise ValueError(f"unknown verification mode {mode!r}")
    report = AxiomReport(mode=mode, context=ctx.name, seed=seed, truncation=truncation)
    rng = random.Random(seed)
    ring = ctx.ring
    if mult_order is None:
        mult_order = truncation

    def eq(a, b) -> bool:
        return ring.eq(a, b)

    def witness(**elems) -> str:
        return "; ".join(f"{k}={ctx.describe(v)}" for k, v in elems.items())

    for idx in range(samples):
        x = ctx.sample(rng)
        y = ctx.sample(rng)
        tag = f"sample {idx}"

        if mode in ("pre-lambda", "lambda"):
            lam0 = ctx.lambda_op(0, x)
            report.record(
                "lambda^0(x) = 1", tag, eq(lam0, ring.one()),
                None if eq(lam0, ring.one()) else witness(x=x, got=lam0),
            )
            lam1 = ctx.lambda_op(1, x)
            report.record(
                "lambda^1(x) = x", tag, eq(lam1, x),
                None if eq(lam1, x) else witness(x=x, got=lam1),
            )
            xy_sum = ring.add(x, y)
            for n in range(2, truncation + 1):
                lhs = ctx.lambda_op(n, xy_sum)
                rhs = ring.zero()
                for j in range(n + 1):
                    rhs = ring.add(rhs, ring.mul(ctx.lambda_op(j, x), ctx.lambda_op(n - j, y)))
                ok = eq(lhs, rhs)
                report.record(
                    f"lambda^{n}(x+y) = sum lambda^j(x) lambda^(n-j)(y)", tag, ok,
                    None if ok else witness(x=x, y=y, lhs=lhs, rhs=rhs),
                )

        if mode == "lambda":
            xy = ring.mul(x, y)
            for n in range(1, mult_order + 1):
                pn = compute_Pn(n)
                assignment = {f"s{k}": ctx.lambda_op(k, x) for k in range(1, n + 1)}
                assignment.update(
                    {name: ctx.lambda_op(k, y) for k, name in enumerate(sigma_names(n), start=1)}
                )
                lhs = ctx.lambda_op(n, xy)
                rhs = pn.poly.evaluate_in(ring, assignment)
                ok = eq(lhs, rhs)
                report.record(
                    f"lambda^{n}(xy) = P_{n}(lambda(x); lambda(y))", tag, ok,
                    None if ok else witness(x=x, y=y, lhs=lhs, rhs=rhs),
                )
            for m, n in _composition_pairs(composition_cap):
                pnm = compute_Pnm(m, n)
                assignment = {f"s{k}": ctx.lambda_op(k, x) for k in range(1, m * n + 1)}
                lhs = ctx.lambda_op(m, ctx.lambda_op(n, x))
                rhs = pnm.poly.evaluate_in(ring, assignment)
                ok = eq(lhs, rhs)
                report.record(
                    f"lambda^{m}(lambda^{n}(x)) = P_({m},{n})(lambda(x))", tag, ok,
                    None if ok else witness(x=x, lhs=lhs, rhs=rhs),
                )

        if mode == "adams-criterion":
            def adams(k: int, a):
                return adams_via_log(ctx.lambda_series(a, k))[k - 1]

            xy = ring.mul(x, y)
            for n in range(1, truncation + 1):
                one_psi = adams(n, ring.one())
                report.record(
                    f"Psi^{n}(1) = 1", tag, eq(one_psi, ring.one()),
                    None if eq(one_psi, ring.one()) else witness(got=one_psi),
                )
                lhs = adams(n, xy)
                rhs = ring.mul(adams(n, x), adams(n, y))
                ok = eq(lhs, rhs)
                report.record(
                    f"Psi^{n}(xy) = Psi^{n}(x) Psi^{n}(y)", tag, ok,
                    None if ok else witness(x=x, y=y, lhs=lhs, rhs=rhs),
                )
            for m, n in _composition_pairs(composition_cap):
                lhs = adams(m, adams(n, x))
                rhs = adams(m * n, x)
                ok = eq(lhs, rhs)
                report.record(
                    f"Psi^{m}(Psi^{n}(x)) = Psi^{m * n}(x)", tag, ok,
                    None if ok else witness(x=x, lhs=lhs, rhs=rhs),
                )

    return report
