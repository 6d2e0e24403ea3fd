"""Sparse polynomials in P, Q, R (level q) and P2, Q2, R2 (level q^2).

Each generator carries a modular weight (P: 2, Q: 4, R: 6, same for the
level-2 copies).  Polynomials are immutable; arithmetic goes through the
usual operators and the ``poly_*`` functions mirror them.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, TypeVar, Union

from .exact_arith import RationalLike, as_rational, rational_from_str, rational_to_str

GENERATORS = ("P", "Q", "R", "P2", "Q2", "R2")
LATEX_GENERATORS = ("P", "Q", "R", "P_2", "Q_2", "R_2")
GENERATOR_WEIGHTS = (2, 4, 6, 2, 4, 6)
NGEN = len(GENERATORS)

Exps = tuple[int, int, int, int, int, int]
Weight = Union[int, str]
T = TypeVar("T")

__all__ = [
    "GENERATORS",
    "GradedPoly",
    "P",
    "Q",
    "R",
    "P2",
    "Q2",
    "R2",
    "ONE",
    "ZERO",
    "poly_add",
    "poly_mul",
    "weight_of",
    "evaluate_all_ones",
    "render",
    "monomial_weight",
]


def monomial_weight(exps: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(GENERATOR_WEIGHTS, exps))


def _sort_key(exps: Exps) -> tuple:
    # graded by weight, then lexicographic with P > Q > R > P2 > Q2 > R2
    return (-monomial_weight(exps), tuple(-e for e in exps))


class GradedPoly:
    """Polynomial over the six generators with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], RationalLike] | None = None):
        clean: dict[Exps, Fraction] = {}
        for exps, c in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != NGEN or any(e < 0 for e in key):
                raise ValueError(f"bad exponent vector {exps!r}")
            c = as_rational(c)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c  # type: ignore[index]
        self._terms: dict[Exps, Fraction] = {
            k: clean[k] for k in sorted(clean, key=_sort_key) if clean[k]
        }
        self._hash: int | None = None

    @classmethod
    def _from_clean(cls, terms: dict) -> "GradedPoly":
        obj = cls.__new__(cls)
        obj._terms = {k: terms[k] for k in sorted(terms, key=_sort_key)}
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: RationalLike) -> "GradedPoly":
        return cls({(0,) * NGEN: c})

    @classmethod
    def generator(cls, name: str) -> "GradedPoly":
        exps = [0] * NGEN
        exps[GENERATORS.index(name)] = 1
        return cls({tuple(exps): 1})

    @property
    def terms(self) -> dict[Exps, Fraction]:
        """Exponent vector -> coefficient, in canonical order (a copy)."""
        return dict(self._terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"GradedPoly({self.render('human')!r})"

    def __str__(self) -> str:
        return self.render("human")

    # arithmetic

    @staticmethod
    def _coerce(x: object) -> "GradedPoly":
        if isinstance(x, GradedPoly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return GradedPoly.constant(x)
        raise TypeError(f"cannot combine GradedPoly with {type(x).__name__}")

    def __add__(self, other: object) -> "GradedPoly":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in b._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GradedPoly._from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        return GradedPoly._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: object) -> "GradedPoly":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other: object) -> "GradedPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "GradedPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return ZERO
            return GradedPoly._from_clean({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, GradedPoly):
            return NotImplemented
        out: dict = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + ca * cb
        return GradedPoly._from_clean({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "GradedPoly":
        return self * (Fraction(1) / as_rational(other))

    def __pow__(self, e: int) -> "GradedPoly":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # structure

    def weight(self) -> Weight:
        ws = {monomial_weight(k) for k in self._terms}
        if not ws:
            return "zero"
        if len(ws) > 1:
            return "mixed"
        return ws.pop()

    def is_isobaric(self, w: int) -> bool:
        return self.weight() == w or not self._terms

    def map_exponents(self, f: Callable[[Exps], Sequence[int]]) -> "GradedPoly":
        return GradedPoly({tuple(f(k)): c for k, c in self._terms.items()})

    def to_level2(self) -> "GradedPoly":
        """Rename P, Q, R to P2, Q2, R2.  Only valid on polynomials free of the level-2 generators."""
        if any(k[3:] != (0, 0, 0) for k in self._terms):
            raise ValueError("polynomial already involves level-2 generators")
        return self.map_exponents(lambda k: (0, 0, 0) + tuple(k[:3]))

    def swap_levels(self) -> "GradedPoly":
        return self.map_exponents(lambda k: tuple(k[3:]) + tuple(k[:3]))

    def uses_only(self, names: Iterable[str]) -> bool:
        allowed = {GENERATORS.index(n) for n in names}
        return all(e == 0 or i in allowed for k in self._terms for i, e in enumerate(k))

    def content(self) -> tuple[Fraction, "GradedPoly"]:
        """Split into (positive scale, primitive integer polynomial): ``self == scale * prim``."""
        if not self._terms:
            return Fraction(1), ZERO
        den = math.lcm(*(c.denominator for c in self._terms.values()))
        nums = [int(c * den) for c in self._terms.values()]
        g = math.gcd(*nums)
        scale = Fraction(g, den)
        prim = GradedPoly._from_clean({k: c / scale for k, c in self._terms.items()})
        return scale, prim

    def evaluate(self, values: Sequence[T], one: T) -> T:
        """Substitute ``values`` (one per generator) into the polynomial.

        ``values`` may be any commutative ring elements that support ``+``,
        ``*`` and multiplication by a Fraction.  Evaluation is a nested Horner
        scheme, so the number of ring multiplications stays close to the term
        count rather than the total degree.
        """
        if len(values) != NGEN:
            raise ValueError(f"need {NGEN} values, got {len(values)}")
        if not self._terms:
            return one * 0  # type: ignore[operator]
        return _horner(list(self._terms.items()), 0, values, one)

    # text forms

    def render(self, fmt: str = "human") -> str:
        if fmt == "human":
            return _render_human(self._terms)
        if fmt == "latex":
            return _render_latex_factored(self)
        if fmt == "json":
            return json.dumps(self.to_json())
        raise ValueError(f"unknown format {fmt!r}")

    def to_json(self) -> dict:
        return {
            "generators": list(GENERATORS),
            "terms": [
                {"coeff": rational_to_str(c), "exps": list(k)} for k, c in self._terms.items()
            ],
            "weight": self.weight(),
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "GradedPoly":
        if isinstance(data, str):
            data = json.loads(data)
        gens = data.get("generators", list(GENERATORS))
        if list(gens) != list(GENERATORS):
            raise ValueError(f"unexpected generator list {gens!r}")
        terms: dict = {}
        for t in data["terms"]:
            k = tuple(t["exps"])
            if k in terms:
                raise ValueError(f"duplicate exponent vector {k}")
            terms[k] = rational_from_str(str(t["coeff"]))
        poly = cls(terms)
        if "weight" in data and data["weight"] != poly.weight():
            raise ValueError(f"declared weight {data['weight']!r} != actual {poly.weight()!r}")
        return poly


def _horner(items: list, var: int, values: Sequence, one):
    if var == NGEN:
        # single constant term left
        return one * items[0][1]
    groups: dict[int, list] = {}
    for k, c in items:
        groups.setdefault(k[var], []).append((k, c))
    x = values[var]
    acc = None
    for e in range(max(groups), -1, -1):
        if acc is not None:
            acc = acc * x
        if e in groups:
            sub = _horner(groups[e], var + 1, values, one)
            acc = sub if acc is None else acc + sub
    return acc


def _monomial_human(k: Exps) -> str:
    parts = []
    for name, e in zip(GENERATORS, k):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_human(terms: Mapping[Exps, Fraction]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (k, c) in enumerate(terms.items()):
        mono = _monomial_human(k)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _monomial_latex(k: Exps) -> str:
    parts = []
    for name, e in zip(LATEX_GENERATORS, k):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}" if e < 10 else f"{name}^{{{e}}}")
    return "".join(parts)


def render_latex_integer(poly: GradedPoly) -> str:
    """LaTeX for a polynomial with integer coefficients, e.g. ``5P^2-2Q``."""
    if not poly:
        return "0"
    out = []
    for i, (k, c) in enumerate(poly._terms.items()):
        mono = _monomial_latex(k)
        mag = abs(c)
        if not mono:
            body = _latex_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = _latex_rational(mag) + mono
        sign = "-" if c < 0 else ("+" if i else "")
        out.append(sign + body)
    return "".join(out)


def _latex_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def latex_scale(scale: Fraction) -> str:
    return "" if scale == 1 else _latex_rational(scale)


def _render_latex_factored(poly: GradedPoly) -> str:
    scale, prim = poly.content()
    inner = render_latex_integer(prim)
    if scale == 1:
        return inner
    if len(prim) == 1 and not any(next(iter(prim._terms))):
        return _latex_rational(scale * prim.coefficient((0,) * NGEN))
    return f"{latex_scale(scale)}({inner})"


def human_factored(poly: GradedPoly) -> str:
    """``(1/3)(5*P^2 - 2*Q)`` style; plain rendering when the content is 1."""
    scale, prim = poly.content()
    if scale == 1:
        return _render_human(prim._terms)
    if len(prim) == 1 and not any(next(iter(prim._terms))):
        return str(scale * prim.coefficient((0,) * NGEN))
    return f"({scale})({_render_human(prim._terms)})"


ZERO = GradedPoly()
ONE = GradedPoly.constant(1)
P = GradedPoly.generator("P")
Q = GradedPoly.generator("Q")
R = GradedPoly.generator("R")
P2 = GradedPoly.generator("P2")
Q2 = GradedPoly.generator("Q2")
R2 = GradedPoly.generator("R2")


def poly_add(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    return a + b


def poly_mul(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    return a * b


def weight_of(a: GradedPoly) -> Weight:
    """Common weight of all monomials, ``"mixed"``, or ``"zero"`` for the zero polynomial."""
    return a.weight()


def evaluate_all_ones(a: GradedPoly) -> Fraction:
    return sum(a._terms.values(), Fraction(0))


def render(a: GradedPoly, fmt: str = "human") -> str:
    return a.render(fmt)
