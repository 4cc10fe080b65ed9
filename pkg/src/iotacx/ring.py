"""Exact polynomial arithmetic.

Integer Laurent polynomials in ``t`` (Alexander polynomials) and F2
polynomials in the two knot variables, used as matrix entries elsewhere.
Python integers are unbounded, so no overflow check is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


class InvalidInputError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    pass


class LaurentPolynomial:
    """Integer-coefficient Laurent polynomial in one variable ``t``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[int(e)] = int(c)
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPolynomial":
        return cls({exp: coef})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], start: int = 0) -> "LaurentPolynomial":
        return cls({start + i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        other = _as_laurent(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            # only the units +-t^e are invertible
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise InexactDivisionError(f"{self!r} is not invertible")
            (e, c), = self._terms.items()
            return LaurentPolynomial({e * k: c ** (-k)})
        out = LaurentPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+") + s)
        text = "".join(parts)
        return text[1:] if text[0] == "+" else text


def _as_laurent(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial({0: x})
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPolynomial")


T = LaurentPolynomial.monomial(1)


def symmetric_alternating_poly(steps) -> LaurentPolynomial:
    """``1 - t^c1 + t^(c1+c2) - ...`` for an even-length sequence of positive steps."""
    steps = tuple(steps)
    if len(steps) % 2:
        raise InvalidInputError(f"step sequence must have even length, got {len(steps)}")
    if any(int(c) < 1 for c in steps):
        raise InvalidInputError("steps must be positive integers")
    terms = {0: 1}
    e = 0
    for k, c in enumerate(steps):
        e += int(c)
        terms[e] = -1 if k % 2 == 0 else 1
    return LaurentPolynomial(terms)


def laurent_div_exact(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial:
    """Quotient ``q`` with ``q * den == num``; raises if there is a remainder."""
    num, den = _as_laurent(num), _as_laurent(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPolynomial()
    lead_e, lead_c = den.max_exp(), den.coeff(den.max_exp())
    low = den.min_exp()
    rem = num.terms
    quot: dict[int, int] = {}
    # long division from the top degree down; stop once the remainder is
    # too short to contain another multiple of den
    while rem:
        top = max(rem)
        if top - lead_e < min(rem) - low:
            break
        c = rem[top]
        if c % lead_c:
            raise InexactDivisionError(f"{num!r} / {den!r}: non-integral coefficient")
        q = c // lead_c
        shift = top - lead_e
        quot[shift] = quot.get(shift, 0) + q
        for e, dc in den.terms.items():
            k = e + shift
            rem[k] = rem.get(k, 0) - q * dc
            if rem[k] == 0:
                del rem[k]
    if rem:
        raise InexactDivisionError(f"{num!r} / {den!r} leaves remainder {LaurentPolynomial(rem)!r}")
    return LaurentPolynomial(quot)


@dataclass(frozen=True, order=True)
class UVTerm:
    """The monomial U^u_exp V^v_exp (coefficient 1 in F2)."""

    u_exp: int = 0
    v_exp: int = 0

    def __post_init__(self):
        if self.u_exp < 0 or self.v_exp < 0:
            raise InvalidInputError(f"negative exponent in U^{self.u_exp} V^{self.v_exp}")

    def __mul__(self, other: "UVTerm") -> "UVTerm":
        return UVTerm(self.u_exp + other.u_exp, self.v_exp + other.v_exp)

    def swap(self) -> "UVTerm":
        return UVTerm(self.v_exp, self.u_exp)

    def __str__(self):
        parts = []
        if self.u_exp:
            parts.append("U" if self.u_exp == 1 else f"U^{self.u_exp}")
        if self.v_exp:
            parts.append("V" if self.v_exp == 1 else f"V^{self.v_exp}")
        return "".join(parts) or "1"


class UVPoly:
    """An F2-sum of monomials in U and V; addition is symmetric difference."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[UVTerm] = ()):
        acc: set[UVTerm] = set()
        for t in terms:
            acc ^= {t}
        self.terms = frozenset(acc)

    @classmethod
    def mono(cls, u: int = 0, v: int = 0) -> "UVPoly":
        return cls([UVTerm(u, v)])

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "UVPoly") -> "UVPoly":
        out = UVPoly()
        out.terms = self.terms ^ other.terms
        return out

    def __mul__(self, other: "UVPoly") -> "UVPoly":
        return UVPoly(a * b for a in self.terms for b in other.terms)

    def __eq__(self, other):
        if not isinstance(other, UVPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def swap(self) -> "UVPoly":
        return UVPoly(t.swap() for t in self.terms)

    def d_du(self) -> "UVPoly":
        return UVPoly(UVTerm(t.u_exp - 1, t.v_exp) for t in self.terms if t.u_exp % 2)

    def d_dv(self) -> "UVPoly":
        return UVPoly(UVTerm(t.u_exp, t.v_exp - 1) for t in self.terms if t.v_exp % 2)

    def has_constant(self) -> bool:
        return UVTerm(0, 0) in self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(t) for t in sorted(self.terms))
