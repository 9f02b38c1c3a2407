"""Finite graded-commutative differential algebra models of form algebras.

A model is a finite-dimensional graded-commutative algebra with a degree +1
differential, standing in for the differential forms of a closed manifold at
desk scale.  Everything above the top degree is zero, which makes formal
exponentials finite.  Construction validates graded commutativity, d.d = 0
and the Leibniz rule on every basis pair, so an inconsistent specification
cannot produce a model.

Odd forms modulo differentials get canonical representatives: per degree,
the image of d is put in reduced row-echelon form and representative vectors
are the reductions that vanish on all pivot coordinates.  The projection is
linear and idempotent, so coset equality is representative equality.
"""

from __future__ import annotations

from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

from . import _kernel
from .algebra.multipoly import MultiPoly, parse_poly
from .algebra.rationals import ONE, ZERO, is_rational, rat, rat_from_str, rat_str
from .errors import MismatchError, ModelConstructionError, NotExactError


def _exp_divides(lead: tuple, exp: tuple) -> bool:
    return all(l <= e for l, e in zip(lead, exp))


class CDGAModel:
    """Validated finite CDGA; immutable after construction."""

    def __init__(self, name: str, generators: Sequence[tuple[str, int]],
                 relations: Sequence[MultiPoly], differentials: Mapping[str, MultiPoly],
                 top_degree: int, spec: dict | None = None):
        if top_degree < 1:
            raise ModelConstructionError("top degree must be positive")
        self.name = name
        self.top_degree = top_degree
        self.generators = tuple((str(g), int(d)) for g, d in generators)
        self.spec = spec
        gen_names = [g for g, _ in self.generators]
        if len(set(gen_names)) != len(gen_names):
            raise ModelConstructionError("duplicate generator names")
        if any(d < 1 for _, d in self.generators):
            raise ModelConstructionError("generator degrees must be at least 1")
        self._gen_names = tuple(gen_names)
        self._gen_deg = tuple(d for _, d in self.generators)
        self._odd = tuple(d % 2 == 1 for d in self._gen_deg)

        self._rules = self._compile_rules(relations)
        self._reduce_cache: dict[tuple, dict] = {}
        self._enumerate_basis()
        self._build_wedge()
        self._build_diff(differentials)
        self._validate()
        self._build_linear_data()

    # -- construction ------------------------------------------------------

    def _mono_degree(self, exp: tuple) -> int:
        return sum(d * e for d, e in zip(self._gen_deg, exp))

    def _poly_to_gen_dict(self, poly: MultiPoly) -> dict:
        pos = {g: i for i, g in enumerate(self._gen_names)}
        unknown = set(poly.vars) - set(pos)
        if unknown:
            raise ModelConstructionError(f"polynomial uses unknown generators {sorted(unknown)}")
        width = len(self._gen_names)
        out = {}
        for e, c in poly.terms.items():
            full = [0] * width
            for v, k in zip(poly.vars, e):
                full[pos[v]] = k
            out[tuple(full)] = c
        return out

    def _compile_rules(self, relations: Sequence[MultiPoly]):
        rules = []
        for rel in relations:
            raw = self._poly_to_gen_dict(rel)
            if not raw:
                continue
            degs = {self._mono_degree(e) for e in raw}
            if len(degs) > 1:
                raise ModelConstructionError(f"relation {rel} is not homogeneous")
            for e in raw:
                for i, k in enumerate(e):
                    if k and self._odd[i]:
                        raise ModelConstructionError(
                            f"relation {rel} involves odd generator "
                            f"'{self._gen_names[i]}'; only even relations are supported"
                        )
            lead = max(raw)
            lc = raw[lead]
            tail = {e: -c / lc for e, c in raw.items() if e != lead}
            rules.append((lead, tail))
        return tuple(rules)

    def _enumerate_basis(self):
        D = self.top_degree
        ranges = []
        for i, deg in enumerate(self._gen_deg):
            ranges.append(range(2) if self._odd[i] else range(D // deg + 1))
        monos = []
        for exp in _cartesian(*ranges) if ranges else [()]:
            if self._mono_degree(exp) > D:
                continue
            if any(_exp_divides(lead, exp) for lead, _ in self._rules):
                continue
            monos.append(exp)
        monos.sort(key=lambda e: (self._mono_degree(e), e))
        self.basis_exp: tuple[tuple, ...] = tuple(monos)
        self.basis_degree: tuple[int, ...] = tuple(self._mono_degree(e) for e in monos)
        self.basis_label: tuple[str, ...] = tuple(self._label(e) for e in monos)
        self._mono_id = {e: i for i, e in enumerate(monos)}
        self.dimension = len(monos)
        self.ids_by_degree: dict[int, tuple[int, ...]] = {}
        for i, d in enumerate(self.basis_degree):
            self.ids_by_degree.setdefault(d, [])
            self.ids_by_degree[d].append(i)
        self.ids_by_degree = {d: tuple(v) for d, v in self.ids_by_degree.items()}
        if 0 not in self.ids_by_degree or len(self.ids_by_degree[0]) != 1:
            raise ModelConstructionError("model must have exactly the unit in degree 0")
        self.unit_id = self.ids_by_degree[0][0]

    def _label(self, exp: tuple) -> str:
        parts = [
            g if k == 1 else f"{g}^{k}"
            for g, k in zip(self._gen_names, exp)
            if k
        ]
        return "*".join(parts) if parts else "1"

    def _reduce_exp(self, exp: tuple) -> dict:
        _cache = self._reduce_cache
        key = exp
        got = _cache.get(key)
        if got is not None:
            return got
        if self._mono_degree(exp) > self.top_degree or any(
            e > 1 for e, odd in zip(exp, self._odd) if odd
        ):
            result = {}
        else:
            for lead, tail in self._rules:
                if _exp_divides(lead, exp):
                    rest = tuple(e - l for e, l in zip(exp, lead))
                    result = {}
                    for te, tc in tail.items():
                        prod = tuple(t + r for t, r in zip(te, rest))
                        for be, bc in self._reduce_exp(prod).items():
                            c = bc * tc
                            prev = result.get(be)
                            total = c if prev is None else prev + c
                            if total:
                                result[be] = total
                            elif prev is not None:
                                del result[be]
                    break
            else:
                result = {exp: ONE}
        _cache[key] = result
        return result

    def _mono_mul(self, ea: tuple, eb: tuple):
        """Sign and merged exponent of a monomial product; None if zero."""
        inv = 0
        for i, odd in enumerate(self._odd):
            if not odd or not eb[i]:
                continue
            if ea[i]:
                return 0, None
            inv += sum(ea[j] for j in range(i + 1, len(ea)) if self._odd[j])
        return (-1) ** inv, tuple(a + b for a, b in zip(ea, eb))

    def _build_wedge(self):
        table: dict[tuple[int, int], tuple] = {}
        for i, ea in enumerate(self.basis_exp):
            for j, eb in enumerate(self.basis_exp):
                if self.basis_degree[i] + self.basis_degree[j] > self.top_degree:
                    continue
                sign, merged = self._mono_mul(ea, eb)
                if merged is None:
                    continue
                entries = []
                for be, bc in self._reduce_exp(merged).items():
                    bid = self._mono_id.get(be)
                    if bid is not None:
                        entries.append((bid, bc if sign > 0 else -bc))
                if entries:
                    table[(i, j)] = tuple(sorted(entries))
        self.wedge_table = table

    def _build_diff(self, differentials: Mapping[str, MultiPoly]):
        unknown = set(differentials) - set(self._gen_names)
        if unknown:
            raise ModelConstructionError(f"differential given for unknown generators {sorted(unknown)}")
        gen_diff_raw = {}
        for gname, poly in differentials.items():
            gi = self._gen_names.index(gname)
            raw = self._poly_to_gen_dict(poly)
            want = self._gen_deg[gi] + 1
            for e in raw:
                if self._mono_degree(e) != want:
                    raise ModelConstructionError(
                        f"d({gname}) must be homogeneous of degree {want}"
                    )
            gen_diff_raw[gi] = raw

        cache: dict[tuple, dict] = {}

        def d_mono(exp: tuple) -> dict:
            got = cache.get(exp)
            if got is not None:
                return got
            first = next((i for i, e in enumerate(exp) if e), None)
            result: dict = {}
            if first is not None:
                rest = tuple(e if i != first else e - 1 for i, e in enumerate(exp))

                def acc_product(mono_raw: dict, other: tuple, scale):
                    for me, mc in mono_raw.items():
                        sign, merged = self._mono_mul(me, other)
                        if merged is None:
                            continue
                        for be, bc in self._reduce_exp(merged).items():
                            bid = self._mono_id.get(be)
                            if bid is None:
                                continue
                            c = scale * mc * bc * (ONE if sign > 0 else -ONE)
                            prev = result.get(bid)
                            total = c if prev is None else prev + c
                            if total:
                                result[bid] = total
                            elif prev is not None:
                                del result[bid]

                dg = gen_diff_raw.get(first)
                if dg:
                    acc_product(dg, rest, ONE)
                unit = tuple(1 if i == first else 0 for i in range(len(exp)))
                sign = -ONE if self._odd[first] else ONE
                for bid, bc in d_mono(rest).items():
                    acc_product({unit: bc}, self.basis_exp[bid], sign)
            cache[exp] = result
            return result

        table = {}
        for i, exp in enumerate(self.basis_exp):
            entry = d_mono(exp)
            if entry:
                table[i] = tuple(sorted(entry.items()))
        self.diff_table = table

    def _wedge_ids(self, i: int, j: int) -> dict:
        return dict(self.wedge_table.get((i, j), ()))

    def _d_coords(self, coords: dict) -> dict:
        out: dict = {}
        for i, c in coords.items():
            entry = self.diff_table.get(i)
            if not entry:
                continue
            for k, s in entry:
                prev = out.get(k)
                total = c * s if prev is None else prev + c * s
                if total:
                    out[k] = total
                elif prev is not None:
                    del out[k]
        return out

    def _validate(self):
        for i in range(self.dimension):
            di = self.basis_degree[i]
            for j in range(self.dimension):
                dj = self.basis_degree[j]
                ab = self._wedge_ids(i, j)
                ba = self._wedge_ids(j, i)
                sign = -ONE if (di % 2 and dj % 2) else ONE
                if ab != {k: sign * c for k, c in ba.items()}:
                    raise ModelConstructionError(
                        f"graded commutativity fails for ({self.basis_label[i]}, {self.basis_label[j]})"
                    )
                # Leibniz: d(a.b) = da.b + (-1)^|a| a.db
                lhs = self._d_coords(ab)
                rhs: dict = {}
                for k, s in self.diff_table.get(i, ()):
                    _kernel.add_scaled(rhs, self._wedge_ids(k, j), s)
                asign = -ONE if di % 2 else ONE
                for k, s in self.diff_table.get(j, ()):
                    _kernel.add_scaled(rhs, self._wedge_ids(i, k), asign * s)
                if lhs != rhs:
                    raise ModelConstructionError(
                        f"Leibniz rule fails for ({self.basis_label[i]}, {self.basis_label[j]})"
                    )
            if self._d_coords(dict(self.diff_table.get(i, ()))):
                raise ModelConstructionError(f"d.d is nonzero on {self.basis_label[i]}")

    def _build_linear_data(self):
        # per degree k: reduced rows of Im(d: deg k-1 -> deg k) with preimages
        self._imd_rows: dict[int, list] = {}
        for k in range(1, self.top_degree + 1):
            rows: list = []
            for b in self.ids_by_degree.get(k - 1, ()):
                vec = dict(self.diff_table.get(b, ()))
                pre = {b: ONE}
                for pivot, rvec, rpre in rows:
                    c = vec.get(pivot)
                    if c:
                        _kernel.add_scaled(vec, rvec, -c)
                        _kernel.add_scaled(pre, rpre, -c)
                if not vec:
                    continue
                pivot = min(vec)
                inv = ONE / vec[pivot]
                vec = {i: c * inv for i, c in vec.items()}
                pre = {i: c * inv for i, c in pre.items()}
                for t, (p2, v2, p2re) in enumerate(rows):
                    c = v2.get(pivot)
                    if c:
                        v2 = dict(v2)
                        p2re = dict(p2re)
                        _kernel.add_scaled(v2, vec, -c)
                        _kernel.add_scaled(p2re, pre, -c)
                        rows[t] = (p2, v2, p2re)
                rows.append((pivot, vec, pre))
            rows.sort(key=lambda r: r[0])
            if rows:
                self._imd_rows[k] = rows

        # closed (kernel of d) basis per degree
        self._closed_basis: dict[int, list[dict]] = {}
        for k in range(0, self.top_degree + 1):
            rows = []
            kernel_vecs: list[dict] = []
            for b in self.ids_by_degree.get(k, ()):
                vec = dict(self.diff_table.get(b, ()))
                combo = {b: ONE}
                for pivot, rvec, rcombo in rows:
                    c = vec.get(pivot)
                    if c:
                        _kernel.add_scaled(vec, rvec, -c)
                        _kernel.add_scaled(combo, rcombo, -c)
                if vec:
                    pivot = min(vec)
                    inv = ONE / vec[pivot]
                    rows.append((pivot, {i: c * inv for i, c in vec.items()},
                                 {i: c * inv for i, c in combo.items()}))
                else:
                    kernel_vecs.append(combo)
            self._closed_basis[k] = kernel_vecs

    # -- linear services -----------------------------------------------------

    def reduce_mod_exact(self, coords: dict) -> dict:
        """Canonical representative of ``coords`` modulo Im d, per degree."""
        by_degree: dict[int, dict] = {}
        for i, c in coords.items():
            by_degree.setdefault(self.basis_degree[i], {})[i] = c
        out: dict = {}
        for k, vec in by_degree.items():
            for pivot, rvec, _ in self._imd_rows.get(k, ()):
                c = vec.get(pivot)
                if c:
                    _kernel.add_scaled(vec, rvec, -c)
            out.update(vec)
        return out

    def d_preimage_coords(self, coords: dict) -> dict:
        """Some beta with d(beta) = coords; raises if coords is not exact."""
        by_degree: dict[int, dict] = {}
        for i, c in coords.items():
            by_degree.setdefault(self.basis_degree[i], {})[i] = c
        pre: dict = {}
        for k, vec in by_degree.items():
            for pivot, rvec, rpre in self._imd_rows.get(k, ()):
                c = vec.get(pivot)
                if c:
                    _kernel.add_scaled(vec, rvec, -c)
                    _kernel.add_scaled(pre, rpre, c)
            if vec:
                raise NotExactError("form is not a differential image")
        return pre

    def closed_basis(self, degree: int) -> list["GradedElement"]:
        return [GradedElement(self, dict(v)) for v in self._closed_basis.get(degree, ())]

    # -- element constructors --------------------------------------------------

    def zero_element(self) -> "GradedElement":
        return GradedElement(self, {})

    def one_element(self) -> "GradedElement":
        return GradedElement(self, {self.unit_id: ONE})

    def generator_element(self, name: str) -> "GradedElement":
        exp = tuple(1 if g == name else 0 for g in self._gen_names)
        bid = self._mono_id.get(exp)
        if bid is None:
            raise ValueError(f"generator '{name}' is not a basis monomial")
        return GradedElement(self, {bid: ONE})

    def basis_element(self, bid: int) -> "GradedElement":
        return GradedElement(self, {bid: ONE})

    def element_from_poly(self, poly: MultiPoly) -> "GradedElement":
        """Evaluate a polynomial in the generators inside the model."""
        out: dict = {}
        for e, c in self._poly_to_gen_dict(poly).items():
            for be, bc in self._reduce_exp(e).items():
                bid = self._mono_id.get(be)
                if bid is None:
                    continue
                prev = out.get(bid)
                total = c * bc if prev is None else prev + c * bc
                if total:
                    out[bid] = total
                elif prev is not None:
                    del out[bid]
        return GradedElement(self, out)

    def __repr__(self):
        return f"<CDGAModel {self.name}: dim {self.dimension}, top degree {self.top_degree}>"


class GradedElement:
    """Sparse element of a model; immutable once built."""

    __slots__ = ("model", "coords", "_hash")

    def __init__(self, model: CDGAModel, coords: dict):
        self.model = model
        self.coords = {i: c for i, c in coords.items() if c}
        self._hash = None

    @classmethod
    def _fast(cls, model: CDGAModel, coords: dict) -> "GradedElement":
        """Internal: ``coords`` is known to be free of zero entries."""
        self = object.__new__(cls)
        self.model = model
        self.coords = coords
        self._hash = None
        return self

    def _check(self, other: "GradedElement"):
        if self.model is not other.model:
            raise MismatchError(
                f"elements live in different models: '{self.model.name}' vs '{other.model.name}'"
            )

    def __add__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check(other)
        out = dict(self.coords)
        _kernel.add_scaled(out, other.coords, ONE)
        return GradedElement._fast(self.model, out)

    def __sub__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check(other)
        out = dict(self.coords)
        _kernel.add_scaled(out, other.coords, -ONE)
        return GradedElement._fast(self.model, out)

    def __neg__(self):
        return GradedElement._fast(self.model, {i: -c for i, c in self.coords.items()})

    def scaled(self, c) -> "GradedElement":
        c = rat(c) if isinstance(c, int) else c
        if not c:
            return GradedElement._fast(self.model, {})
        return GradedElement._fast(self.model, {i: c * v for i, v in self.coords.items()})

    def wedge(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        return GradedElement._fast(
            self.model, _kernel.bilinear(self.coords, other.coords, self.model.wedge_table)
        )

    def d(self) -> "GradedElement":
        return GradedElement._fast(self.model, self.model._d_coords(self.coords))

    def is_zero(self) -> bool:
        return not self.coords

    def is_closed(self) -> bool:
        return not self.model._d_coords(self.coords)

    def degrees(self) -> set[int]:
        return {self.model.basis_degree[i] for i in self.coords}

    def component(self, degree: int) -> "GradedElement":
        return GradedElement._fast(
            self.model,
            {i: c for i, c in self.coords.items() if self.model.basis_degree[i] == degree},
        )

    def degree_components(self) -> dict[int, "GradedElement"]:
        return {k: self.component(k) for k in sorted(self.degrees())}

    def even_part(self) -> "GradedElement":
        return GradedElement._fast(
            self.model,
            {i: c for i, c in self.coords.items() if self.model.basis_degree[i] % 2 == 0},
        )

    def odd_part(self) -> "GradedElement":
        return GradedElement._fast(
            self.model,
            {i: c for i, c in self.coords.items() if self.model.basis_degree[i] % 2 == 1},
        )

    def is_even(self) -> bool:
        return all(d % 2 == 0 for d in self.degrees())

    def is_odd(self) -> bool:
        return all(d % 2 == 1 for d in self.degrees())

    def key(self) -> tuple:
        """Canonical hashable form (used for roots and witnesses)."""
        return tuple(sorted((i, rat_str(c)) for i, c in self.coords.items()))

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.model is other.model and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.model), self.key()))
        return self._hash

    def to_json_dict(self) -> dict:
        return {str(i): rat_str(c) for i, c in sorted(self.coords.items())}

    @classmethod
    def from_json_dict(cls, model: CDGAModel, data: Mapping[str, str]) -> "GradedElement":
        return cls(model, {int(i): rat_from_str(s) for i, s in data.items()})

    def __repr__(self):
        if not self.coords:
            return "0"
        bits = []
        for i in sorted(self.coords):
            c = self.coords[i]
            label = self.model.basis_label[i]
            if label == "1":
                bits.append(rat_str(c))
            elif c == ONE:
                bits.append(label)
            elif c == -ONE:
                bits.append(f"-{label}")
            else:
                bits.append(f"({rat_str(c)})*{label}")
        return " + ".join(bits).replace("+ -", "- ")


class OddCoset:
    """Canonical representative of an odd form modulo differentials."""

    __slots__ = ("model", "rep", "_hash")

    def __init__(self, model: CDGAModel, rep: GradedElement):
        # internal: rep is already canonical and odd
        self.model = model
        self.rep = rep
        self._hash = None

    @classmethod
    def of(cls, element: GradedElement) -> "OddCoset":
        if not element.is_odd():
            raise ValueError("coset construction needs an element concentrated in odd degrees")
        model = element.model
        return cls(model, GradedElement._fast(model, model.reduce_mod_exact(element.coords)))

    @classmethod
    def zero(cls, model: CDGAModel) -> "OddCoset":
        return cls(model, model.zero_element())

    def _check(self, other: "OddCoset"):
        if self.model is not other.model:
            raise MismatchError("cosets live in different models")

    def __add__(self, other):
        if not isinstance(other, OddCoset):
            return NotImplemented
        self._check(other)
        return OddCoset(self.model, self.rep + other.rep)

    def __sub__(self, other):
        if not isinstance(other, OddCoset):
            return NotImplemented
        self._check(other)
        return OddCoset(self.model, self.rep - other.rep)

    def __neg__(self):
        return OddCoset(self.model, -self.rep)

    def scaled(self, c) -> "OddCoset":
        return OddCoset(self.model, self.rep.scaled(c))

    def scale_by_degree(self, factor_of_degree) -> "OddCoset":
        """Scale the (2l-1)-degree component by ``factor_of_degree(l)``."""
        out: dict = {}
        for i, c in self.rep.coords.items():
            l = (self.model.basis_degree[i] + 1) // 2
            out[i] = c * factor_of_degree(l)
        return OddCoset(self.model, GradedElement(self.model, out))

    def d(self) -> GradedElement:
        return self.rep.d()

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __eq__(self, other):
        if not isinstance(other, OddCoset):
            return NotImplemented
        return self.model is other.model and self.rep == other.rep

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("coset", hash(self.rep)))
        return self._hash

    def __repr__(self):
        return f"[{self.rep!r}]"


def wedge(a: GradedElement, b: GradedElement) -> GradedElement:
    """Graded-commutative product, truncated above the top degree."""
    return a.wedge(b)


def differential(a: GradedElement) -> GradedElement:
    return a.d()


def coset_normalize(a: GradedElement) -> OddCoset:
    """Canonical representative of ``a`` modulo Im d (odd input only)."""
    return OddCoset.of(a)


class CDGAMorphism:
    """Degree-preserving algebra map commuting with d, given on generators."""

    def __init__(self, name: str, source: CDGAModel, target: CDGAModel,
                 gen_images: Mapping[str, GradedElement]):
        self.name = name
        self.source = source
        self.target = target
        images: dict[str, GradedElement] = {}
        for gname, gdeg in source.generators:
            if gname not in gen_images:
                raise ModelConstructionError(f"morphism '{name}' misses generator '{gname}'")
            img = gen_images[gname]
            if img.model is not target:
                raise ModelConstructionError(f"image of '{gname}' lives in the wrong model")
            if not img.is_zero() and img.degrees() != {gdeg}:
                raise ModelConstructionError(
                    f"image of '{gname}' must be homogeneous of degree {gdeg}"
                )
            images[gname] = img
        self.gen_images = images
        self._basis_image = tuple(self._image_of_exp(e) for e in source.basis_exp)
        self._validate()

    def _image_of_exp(self, exp: tuple) -> GradedElement:
        out = self.target.one_element()
        for gname, k in zip(self.source._gen_names, exp):
            for _ in range(k):
                out = out.wedge(self.gen_images[gname])
        return out

    def _validate(self):
        src = self.source
        for i in range(src.dimension):
            lhs = self.apply(src.basis_element(i).d())
            rhs = self._basis_image[i].d()
            if lhs != rhs:
                raise ModelConstructionError(
                    f"morphism '{self.name}' does not commute with d on {src.basis_label[i]}"
                )
            for j in range(src.dimension):
                prod = src.basis_element(i).wedge(src.basis_element(j))
                if self.apply(prod) != self._basis_image[i].wedge(self._basis_image[j]):
                    raise ModelConstructionError(
                        f"morphism '{self.name}' is not multiplicative on "
                        f"({src.basis_label[i]}, {src.basis_label[j]})"
                    )

    def apply(self, a: GradedElement) -> GradedElement:
        if a.model is not self.source:
            raise MismatchError(f"element is not in the source of morphism '{self.name}'")
        out = self.target.zero_element()
        for i, c in a.coords.items():
            out = out + self._basis_image[i].scaled(c)
        return out

    def apply_coset(self, phi: OddCoset) -> OddCoset:
        return OddCoset.of(self.apply(phi.rep))

    def __repr__(self):
        return f"<CDGAMorphism {self.name}: {self.source.name} -> {self.target.name}>"


def pullback(f: CDGAMorphism, a: GradedElement) -> GradedElement:
    """Image of ``a`` under the (already validated) algebra map."""
    return f.apply(a)


# -- model specifications ------------------------------------------------------


def build_model(spec: dict) -> CDGAModel:
    """Build and validate a model from its JSON-style specification.

    Schema: ``{"name": str, "top_degree": int, "generators": [{"name", "degree"}],
    "differential": [{"of": gen, "value": poly-expr}], "relations": [poly-expr]}``.
    Polynomial expressions use the generators, ``*``, ``^``, ``+``, ``-`` and
    rational literals.
    """
    name = spec.get("name", "model")
    gens = [(g["name"], int(g["degree"])) for g in spec.get("generators", ())]
    allowed = [g for g, _ in gens]
    rels = [
        r if isinstance(r, MultiPoly) else parse_poly(r, allowed)
        for r in spec.get("relations", ())
    ]
    diffs = {}
    for entry in spec.get("differential", ()):
        value = entry["value"]
        diffs[entry["of"]] = value if isinstance(value, MultiPoly) else parse_poly(value, allowed)
    top = int(spec["top_degree"])
    return CDGAModel(name, gens, rels, diffs, top, spec=spec)


def torus_spec(n: int) -> dict:
    """Exterior algebra on n circle forms; d = 0."""
    return {
        "name": f"torus{n}",
        "top_degree": n,
        "generators": [{"name": f"dx{i}", "degree": 1} for i in range(1, n + 1)],
        "differential": [],
        "relations": [],
    }


def s2_spec() -> dict:
    """Two-sphere minimal model: x in degree 2, y in degree 3, dy = x^2."""
    return {
        "name": "s2",
        "top_degree": 4,
        "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 3}],
        "differential": [{"of": "y", "value": "x^2"}],
        "relations": [],
    }


def cpn_spec(n: int) -> dict:
    """Formal complex projective space: one degree-2 class with x^{n+1} = 0."""
    return {
        "name": f"cp{n}",
        "top_degree": 2 * n,
        "generators": [{"name": "x", "degree": 2}],
        "differential": [],
        "relations": [f"x^{n + 1}"],
    }


def formal_spec(name: str, generators: Sequence[tuple[str, int]],
                relations: Sequence[str], top_degree: int) -> dict:
    """Polynomial model with zero differential."""
    return {
        "name": name,
        "top_degree": top_degree,
        "generators": [{"name": g, "degree": d} for g, d in generators],
        "differential": [],
        "relations": list(relations),
    }


def projective_bundle_spec(base_spec: dict, rank: int,
                           chern: Sequence[str | MultiPoly]) -> dict:
    """Bundle-of-lines model over a formal base.

    A degree-2 generator ``c`` is added, subject to the rank-r relation
    c^r + sum_j c^j * chern_{r-j} = 0 with the given classes of the base.
    The base must have zero differential.
    """
    if base_spec.get("differential"):
        raise ModelConstructionError("projective bundle models need a formal (d = 0) base")
    if len(chern) != rank:
        raise ModelConstructionError(f"need {rank} classes, got {len(chern)}")
    base_gens = [g["name"] for g in base_spec.get("generators", ())]
    if "c" in base_gens:
        raise ModelConstructionError("base already uses the generator name 'c'")
    parts = [f"c^{rank}"]
    rel_poly = parse_poly(parts[0], ["c"])
    for j in range(rank):
        ck = chern[rank - j - 1]
        ck_poly = ck if isinstance(ck, MultiPoly) else parse_poly(ck, base_gens)
        rel_poly = rel_poly + MultiPoly.variable("c") ** j * ck_poly
    return {
        "name": f"pb{rank}({base_spec.get('name', 'base')})",
        "top_degree": int(base_spec["top_degree"]) + 2 * (rank - 1),
        "generators": [{"name": "c", "degree": 2}] + list(base_spec.get("generators", ())),
        "differential": [],
        "relations": [rel_poly] + list(base_spec.get("relations", ())),
    }
