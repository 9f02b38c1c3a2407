"""Multivariate polynomials with exact rational coefficients.

Representation: a sorted tuple of variable names plus a map from exponent
tuples to nonzero coefficients.  Construction canonicalizes (zero terms and
unused variables are dropped, variables sorted), so structural equality is
mathematical equality.  Values are immutable and hashable.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Mapping

from .. import _kernel
from ..errors import EvaluationError, RingCapabilityError
from .rationals import ONE, is_rational, rat, rat_from_str, rat_num, rat_str

_NAME_RE = re.compile(r"^(.*?)(\d*)$")


def var_sort_key(name: str):
    """Sort key for variable names: alphabetic stem, then numeric suffix.

    Plain ``sorted()`` would put ``s10`` before ``s2``; indices are compared
    numerically instead so the canonical order is stable at any size.
    """
    m = _NAME_RE.match(name)
    stem, digits = m.group(1), m.group(2)
    return (stem, int(digits) if digits else -1)


def term_sort_key(exp: tuple) -> tuple:
    """Graded-lexicographic key (total degree first, then exponents)."""
    return (sum(exp), exp)


class MultiPoly:
    """Immutable multivariate polynomial over the rationals."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[tuple, object] | None = None):
        variables = tuple(variables)
        raw = dict(terms) if terms else {}
        cleaned: dict[tuple, object] = {}
        for exp, coeff in raw.items():
            if not is_rational(coeff):
                raise TypeError(f"coefficient {coeff!r} is not an exact rational")
            if isinstance(coeff, int):
                coeff = rat(coeff)
            if coeff:
                exp = tuple(exp)
                if len(exp) != len(variables):
                    raise ValueError("exponent arity does not match variable count")
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponents are not allowed")
                cleaned[exp] = cleaned.get(exp, rat(0)) + coeff
        cleaned = {e: c for e, c in cleaned.items() if c}

        # drop unused variables, then sort the remaining ones
        used = [i for i in range(len(variables)) if any(e[i] for e in cleaned)]
        variables2 = tuple(variables[i] for i in used)
        if len(set(variables2)) != len(variables2):
            raise ValueError("duplicate variable names")
        order = sorted(range(len(variables2)), key=lambda i: var_sort_key(variables2[i]))
        self.vars: tuple[str, ...] = tuple(variables2[i] for i in order)
        self.terms: dict[tuple, object] = {
            tuple(e[used[i]] for i in order): c for e, c in cleaned.items()
        }
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> "MultiPoly":
        """Internal fast path: inputs already canonical."""
        self = object.__new__(cls)
        self.vars = variables
        self.terms = terms
        self._hash = None
        return self

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw((), {})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = rat(c) if isinstance(c, int) else c
        return cls._raw((), {(): c}) if c else cls.zero()

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls._raw((name,), {(1,): ONE})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1) -> "MultiPoly":
        names = tuple(powers)
        return cls(names, {tuple(powers[n] for n in names): rat(coeff) if isinstance(coeff, int) else coeff})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self):
        if self.vars:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), rat(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def term_count(self) -> int:
        return len(self.terms)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def homogeneous_weight(self, weight_of: Callable[[str], int]) -> int:
        """The common weighted degree of all terms; raises if mixed."""
        weights = {sum(w * e for w, e in zip(map(weight_of, self.vars), exp)) for exp in self.terms}
        if len(weights) > 1:
            raise ValueError(f"polynomial is not weight-homogeneous: weights {sorted(weights)}")
        return weights.pop() if weights else 0

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in canonical order (graded-lex, highest first)."""
        return sorted(self.terms.items(), key=lambda t: term_sort_key(t[0]), reverse=True)

    # -- alignment helpers ---------------------------------------------

    def _aligned_with(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        union = sorted(set(self.vars) | set(other.vars), key=var_sort_key)
        pos = {v: i for i, v in enumerate(union)}
        n = len(union)

        def inject(poly: MultiPoly) -> dict:
            idx = [pos[v] for v in poly.vars]
            out = {}
            for e, c in poly.terms.items():
                e2 = [0] * n
                for i, v in zip(idx, e):
                    e2[i] = v
                out[tuple(e2)] = c
            return out

        return tuple(union), inject(self), inject(other)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        vars_, a, b = self._aligned_with(other)
        out = dict(a)
        _kernel.add_scaled(out, b, ONE)
        return MultiPoly(vars_, out)

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        vars_, a, b = self._aligned_with(other)
        out = dict(a)
        _kernel.add_scaled(out, b, -ONE)
        return MultiPoly(vars_, out)

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            if not self.terms or not other.terms:
                return MultiPoly.zero()
            vars_, a, b = self._aligned_with(other)
            return MultiPoly(vars_, _kernel.term_mul(a, b))
        if is_rational(other):
            return self.scaled(other)
        return NotImplemented

    __rmul__ = __mul__

    def scaled(self, c) -> "MultiPoly":
        c = rat(c) if isinstance(c, int) else c
        if not c:
            return MultiPoly.zero()
        return MultiPoly._raw(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset((e, c) for e, c in self.terms.items())))
        return self._hash

    # -- renaming -------------------------------------------------------

    def rename_vars(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return MultiPoly(tuple(mapping.get(v, v) for v in self.vars), self.terms)

    def swap_vars(self, a: str, b: str) -> "MultiPoly":
        return self.rename_vars({a: b, b: a})

    # -- evaluation ------------------------------------------------------

    def evaluate_in(self, ring, assignment: Mapping[str, object]):
        """Evaluate via the ring's operations.

        Missing assignments raise; non-integer coefficients need a ring with
        rational scaling.
        """
        for v in self.vars:
            if v not in assignment:
                raise EvaluationError(f"no assignment for indeterminate '{v}'")
        if not self.terms:
            return ring.zero()
        powers: list[dict[int, object]] = [{} for _ in self.vars]

        def power(i: int, k: int):
            cache = powers[i]
            got = cache.get(k)
            if got is None:
                got = assignment[self.vars[i]] if k == 1 else ring.mul(power(i, k - 1), assignment[self.vars[i]])
                cache[k] = got
            return got

        total = ring.zero()
        for exp, coeff in self.sorted_terms():
            term = None
            for i, k in enumerate(exp):
                if k:
                    term = power(i, k) if term is None else ring.mul(term, power(i, k))
            if term is None:
                term = ring.one()
            den = coeff.denominator
            if den == 1:
                term = ring.int_mul(rat_num(coeff), term)
            else:
                try:
                    term = ring.rat_mul(coeff, term)
                except RingCapabilityError:
                    raise RingCapabilityError(
                        f"coefficient {rat_str(coeff)} needs rational scaling, "
                        f"which ring '{ring.name}' does not provide"
                    ) from None
            total = ring.add(total, term)
        return total

    def substitute(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for variables (others must be assigned too)."""
        from .rings import PolynomialRing

        return self.evaluate_in(PolynomialRing(), mapping)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "num": str(rat_num(c)), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPoly":
        variables = tuple(data["vars"])
        terms = {
            tuple(t["exp"]): rat(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return cls(variables, terms)

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exp, coeff in self.sorted_terms():
            factors = [
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.vars, exp)
                if k
            ]
            mag = coeff if coeff > 0 else -coeff
            body = "*".join(factors)
            if not factors:
                body = rat_str(mag)
            elif mag != ONE:
                body = f"{rat_str(mag)}*{body}"
            chunks.append(("- " if coeff < 0 else "+ ") + body)
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"MultiPoly({self})"


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact product in canonical form."""
    return p * q


def poly_eval_in_ring(p: MultiPoly, assignment: Mapping[str, object], ring):
    """Evaluate ``p`` under ``assignment`` using the target ring's operations."""
    return p.evaluate_in(ring, assignment)


def parse_poly(text: str, allowed_vars: Iterable[str] | None = None) -> MultiPoly:
    """Parse a small polynomial expression.

    Grammar: sums/differences of terms, terms are ``*`` products of factors,
    factors are names, rational literals ``p`` or ``p/q``, parenthesized
    expressions, optionally raised by ``^`` to a nonnegative integer.
    """
    tokens = re.findall(r"\d+/\d+|\d+|[A-Za-zσ_][A-Za-z0-9σ_]*|[()^*+-]", text.replace(" ", ""))
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise ValueError(f"cannot tokenize polynomial expression: {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr() -> MultiPoly:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        node = parse_term().scaled(rat(sign))
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term() -> MultiPoly:
        node = parse_factor()
        while peek() == "*":
            take()
            node = node * parse_factor()
        return node

    def parse_factor() -> MultiPoly:
        base = parse_atom()
        if peek() == "^":
            take()
            tok = take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(tok)
        return base

    def parse_atom() -> MultiPoly:
        tok = take()
        if tok == "(":
            node = parse_expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return node
        if tok is None:
            raise ValueError("unexpected end of expression")
        if tok[0].isdigit():
            return MultiPoly.const(rat_from_str(tok))
        if allowed_vars is not None and tok not in allowed_vars:
            raise ValueError(f"unknown name '{tok}' in polynomial expression")
        return MultiPoly.variable(tok)

    result = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in polynomial expression: {tokens[pos:]}")
    return result
