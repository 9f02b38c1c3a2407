"""Universal integer polynomials in elementary-symmetric coordinates.

Three families are produced here, all as exact integer polynomials:

* ``compute_Pn(n)``: the coefficient of t^n of the doubled product
  prod_{i,j} (1 + xi_i zeta_j t), written in the elementary symmetric
  functions s_i of the xi family and sigma_j of the zeta family.  This is
  the structure polynomial of the twisted product on series with constant
  term 1.
* ``compute_Pnm(n, m)``: the coefficient of t^n of
  prod_{i_1<...<i_m} (1 + xi_{i_1}...xi_{i_m} t) in the s_i, governing the
  m-th exterior-power operation on such series.
* ``newton_nu(k)``: the k-th power sum in the elementary basis.

The rewriting into the elementary basis uses classical leading-term
subtraction: the lex-leading exponent of a symmetric polynomial is weakly
decreasing, the matching product of elementary polynomials removes it, and
the leading term strictly drops, so the loop terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import _kernel
from .algebra.multipoly import MultiPoly, var_sort_key
from .algebra.rationals import ONE, rat
from .algebra.rings import PolynomialRing
from .algebra.series import TruncSeries
from .errors import NotSymmetricError

SIGMA = "σ"  # second-family elementary symmetric functions

_POLY_RING = PolynomialRing()


def xi_names(q: int) -> tuple[str, ...]:
    return tuple(f"xi{i}" for i in range(1, q + 1))


def s_names(q: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(1, q + 1))


def sigma_names(r: int) -> tuple[str, ...]:
    return tuple(f"{SIGMA}{j}" for j in range(1, r + 1))


def elementary_symmetric_poly(i: int, q: int, prefix: str = "xi") -> MultiPoly:
    """The i-th elementary symmetric polynomial in q named variables."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i == 0:
        return MultiPoly.const(1)
    if i > q:
        return MultiPoly.zero()
    names = tuple(f"{prefix}{k}" for k in range(1, q + 1))
    terms = {}
    for subset in combinations(range(q), i):
        exp = [0] * q
        for k in subset:
            exp[k] = 1
        terms[tuple(exp)] = ONE
    return MultiPoly(names, terms)


# -- raw-dict machinery (fixed-width exponent tuples) -----------------------


def _raw_aligned(poly: MultiPoly, variables: tuple[str, ...]) -> dict:
    """Inject a polynomial's terms into a wider, fixed variable tuple."""
    pos = {v: i for i, v in enumerate(variables)}
    idx = [pos[v] for v in poly.vars]
    width = len(variables)
    out = {}
    for e, c in poly.terms.items():
        full = [0] * width
        for i, v in zip(idx, e):
            full[i] = v
        out[tuple(full)] = c
    return out


_E_RAW_CACHE: dict[tuple[int, int], dict] = {}
_E_MONO_CACHE: dict[tuple[int, tuple], dict] = {}


def _elementary_raw(i: int, q: int) -> dict:
    """e_i in q variables as a raw exponent dict (integer coefficients)."""
    key = (i, q)
    got = _E_RAW_CACHE.get(key)
    if got is None:
        got = {}
        for subset in combinations(range(q), i):
            exp = [0] * q
            for k in subset:
                exp[k] = 1
            got[tuple(exp)] = 1
        _E_RAW_CACHE[key] = got
    return got


def _e_monomial_raw(d: tuple[int, ...], q: int) -> dict:
    """prod_i e_i^{d_i} in q variables as a raw exponent dict."""
    key = (q, d)
    got = _E_MONO_CACHE.get(key)
    if got is not None:
        return got
    out = {(0,) * q: 1}
    for i, power in enumerate(d, start=1):
        base = _elementary_raw(i, q)
        for _ in range(power):
            out = _kernel.term_mul(out, base)
    _E_MONO_CACHE[key] = out
    return out


def _reduce_xi_family(raw: dict, nxi: int, inert: int) -> dict:
    """Rewrite the first ``nxi`` exponent positions into elementary coordinates.

    Input keys are tuples of length ``nxi + inert``; the trailing positions
    are carried through untouched.  Output keys have the same shape with the
    leading block now meaning s_1^{d_1} ... s_nxi^{d_nxi}.
    """
    work = dict(raw)
    out: dict = {}
    zeros = (0,) * nxi
    while work:
        alpha = max(e[:nxi] for e in work)
        if any(alpha[i] < alpha[i + 1] for i in range(nxi - 1)):
            raise NotSymmetricError(
                f"leading exponent {alpha} is not weakly decreasing; "
                "input is not symmetric in the xi family"
            )
        group = {e[nxi:]: c for e, c in work.items() if e[:nxi] == alpha}
        d = tuple(alpha[i] - alpha[i + 1] for i in range(nxi - 1)) + alpha[-1:]
        expansion = _e_monomial_raw(d, nxi)
        expansion_full = (
            {xe + (0,) * inert: c for xe, c in expansion.items()} if inert else expansion
        )
        for ie, ic in group.items():
            skey = d + ie
            prev = out.get(skey)
            total = ic if prev is None else prev + ic
            if total:
                out[skey] = total
            elif prev is not None:
                del out[skey]
            _kernel.add_scaled(work, expansion_full, -ic, zeros + ie if inert else None)
    return out


def to_elementary_basis(p: MultiPoly, q: int) -> MultiPoly:
    """Rewrite a symmetric polynomial in xi1..xiq as a polynomial in s1..sq.

    The input must be symmetric; violating a transposition raises
    ``NotSymmetricError`` naming the swap.
    """
    names = xi_names(q)
    foreign = set(p.vars) - set(names)
    if foreign:
        raise ValueError(f"polynomial mentions non-xi variables: {sorted(foreign)}")
    for i in range(1, q):
        if p.swap_vars(f"xi{i}", f"xi{i + 1}") != p:
            raise NotSymmetricError(
                f"not symmetric: swapping xi{i} and xi{i + 1} changes the polynomial"
            )
    reduced = _reduce_xi_family(_raw_aligned(p, names), q, 0)
    return MultiPoly(s_names(q), reduced)


# -- universal polynomials ---------------------------------------------------


@dataclass(frozen=True)
class UniversalPoly:
    """An integer polynomial from one of the universal families."""

    poly: MultiPoly
    kind: str  # "Pn" | "Pnm" | "nu"
    indices: tuple[int, ...]

    def __post_init__(self):
        if not self.poly.has_integer_coefficients():
            raise ValueError(f"{self.cache_key}: coefficients are not integers")
        self._check_weights()

    def _check_weights(self):
        if self.poly.is_zero():
            return

        def weight_of(prefix: str):
            def w(name: str) -> int:
                return int(name[len(prefix):]) if name.startswith(prefix) else 0

            return w

        if self.kind == "Pn":
            n = self.indices[0]
            if self.poly.homogeneous_weight(weight_of("s")) != n:
                raise ValueError(f"P_{n} has wrong weight in the s family")
            if self.poly.homogeneous_weight(weight_of(SIGMA)) != n:
                raise ValueError(f"P_{n} has wrong weight in the {SIGMA} family")
        elif self.kind == "Pnm":
            n, m = self.indices[:2]
            if self.poly.homogeneous_weight(weight_of("s")) != n * m:
                raise ValueError(f"P_{n},{m} has wrong weight in the s family")
        elif self.kind == "nu":
            k = self.indices[0]
            if self.poly.homogeneous_weight(weight_of("s")) != k:
                raise ValueError(f"nu_{k} has wrong weight")
        else:
            raise ValueError(f"unknown universal polynomial kind {self.kind!r}")

    @property
    def cache_key(self) -> str:
        return "/".join([self.kind] + [str(i) for i in self.indices])

    def to_json_dict(self) -> dict:
        return self.poly.to_json_dict()

    @classmethod
    def from_json_dict(cls, kind: str, indices: tuple[int, ...], data: dict) -> "UniversalPoly":
        return cls(MultiPoly.from_json_dict(data), kind, indices)

    def __str__(self):
        return str(self.poly)


_MEM_CACHE: dict[str, UniversalPoly] = {}
_DISK_CACHE = None


def set_disk_cache(cache) -> None:
    """Install a persistent cache (``load``/``store`` of JSON dicts) or None."""
    global _DISK_CACHE
    _DISK_CACHE = cache


def _cached(kind: str, indices: tuple[int, ...], compute):
    key = "/".join([kind] + [str(i) for i in indices])
    got = _MEM_CACHE.get(key)
    if got is not None:
        if _DISK_CACHE is not None and _DISK_CACHE.load(key) is None:
            _DISK_CACHE.store(key, got.to_json_dict())
        return got
    if _DISK_CACHE is not None:
        data = _DISK_CACHE.load(key)
        if data is not None:
            got = UniversalPoly.from_json_dict(kind, indices, data)
            _MEM_CACHE[key] = got
            return got
    got = compute()
    _MEM_CACHE[key] = got
    if _DISK_CACHE is not None:
        _DISK_CACHE.store(key, got.to_json_dict())
    return got


def compute_Pn(n: int, q: int | None = None, r: int | None = None) -> UniversalPoly:
    """Structure polynomial of the twisted series product, degree n.

    Computed with q = r = n variables by default.  The second family is
    collected factor by factor: the product over j of (1 + xi_i zeta_j t)
    equals sum_k sigma_k xi_i^k t^k, so only the xi family needs rewriting.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if q is None and r is None:
        return _cached("Pn", (n,), lambda: _compute_pn(n, n, n))
    return _compute_pn(n, q or n, r or n)


def _compute_pn(n: int, q: int, r: int) -> UniversalPoly:
    sig = sigma_names(r)
    product = TruncSeries.one(_POLY_RING, n)
    for i in range(1, q + 1):
        coeffs = [MultiPoly.const(1)]
        for k in range(1, min(n, r) + 1):
            coeffs.append(MultiPoly.monomial({f"xi{i}": k, sig[k - 1]: 1}))
        product = product * TruncSeries(_POLY_RING, coeffs, n)
    coeff_n = product.coefficient(n)
    variables = xi_names(q) + sig
    reduced = _reduce_xi_family(_raw_aligned(coeff_n, variables), q, r)
    poly = MultiPoly(s_names(q) + sig, reduced)
    return UniversalPoly(poly, "Pn", (n,))


def compute_Pnm(n: int, m: int, q: int | None = None) -> UniversalPoly:
    """Exterior-power structure polynomial: coefficient of t^n over m-subsets.

    Computed with q = n*m variables by default.  Passing a smaller q yields
    the specialization with s_i = 0 for i > q, which is what an exterior
    power of a series with only q known coefficients requires.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if m == 0:
        # the series 1 + t: coefficient 1 at n = 1, else 0
        poly = MultiPoly.const(1) if n == 1 else MultiPoly.zero()
        return UniversalPoly(poly, "Pnm", (n, m))
    if q is None:
        return _cached("Pnm", (n, m), lambda: _compute_pnm(n, m, n * m))
    return _compute_pnm(n, m, q)


def _compute_pnm(n: int, m: int, q: int) -> UniversalPoly:
    # e_n of the monomials xi_S over all m-subsets S, by one pass of the
    # elementary-function recurrence; then rewrite into the s basis.
    levels: list[dict] = [{(0,) * q: 1}] + [dict() for _ in range(n)]
    count = 0
    for subset in combinations(range(q), m):
        shift = [0] * q
        for i in subset:
            shift[i] = 1
        shift = tuple(shift)
        count += 1
        for k in range(min(n, count), 0, -1):
            if levels[k - 1]:
                _kernel.add_scaled(levels[k], levels[k - 1], 1, shift)
    reduced = _reduce_xi_family(levels[n], q, 0) if levels[n] else {}
    poly = MultiPoly(s_names(q), reduced)
    return UniversalPoly(poly, "Pnm", (n, m))


def newton_nu(k: int) -> UniversalPoly:
    """The k-th power sum written in the elementary basis."""
    if k < 1:
        raise ValueError("k must be at least 1")

    def build():
        e_vals = [MultiPoly.variable(f"s{i}") for i in range(1, k + 1)]
        p_vals = power_sums_from_elementary(e_vals, k, _POLY_RING)
        return UniversalPoly(p_vals[k - 1], "nu", (k,))

    return _cached("nu", (k,), build)


# -- Newton conversions over an arbitrary ring -------------------------------


def power_sums_from_elementary(e_vals: Sequence, upto: int, ring) -> list:
    """p_1..p_upto from elementary values e_1, e_2, ... (zero past the end).

    Uses the Newton recurrence
    p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^k k e_k; ring ops only.
    """

    def e(i: int):
        return e_vals[i - 1] if i <= len(e_vals) else ring.zero()

    p: list = []
    for j in range(1, upto + 1):
        acc = ring.int_mul((-1) ** (j - 1) * j, e(j))
        for i in range(1, j):
            term = ring.mul(e(i), p[j - i - 1])
            if i % 2 == 0:
                term = ring.neg(term)
            acc = ring.add(acc, term)
        p.append(acc)
    return p


def elementary_from_power_sums(p_vals: Sequence, upto: int, ring) -> list:
    """e_1..e_upto from power sums; needs division by integers (Q-linear ring)."""
    e: list = []
    for j in range(1, upto + 1):
        acc = ring.zero()
        for i in range(1, j + 1):
            term = ring.mul(p_vals[i - 1], e[j - i - 1]) if i < j else p_vals[i - 1]
            if i % 2 == 0:
                term = ring.neg(term)
            acc = ring.add(acc, term)
        e.append(ring.rat_mul(rat(1, j), acc))
    return e
