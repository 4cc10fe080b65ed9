"""Parameter-level group arithmetic for sums of the classes C(n)."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .equivalence import SearchBounds, StandardParams, standard_complex, standard_rep_search
from .involutive import tensor_iota
from .ring import InvalidInputError

__all__ = [
    "OutOfScopeError",
    "SignedCnTerm",
    "cn_params",
    "param_negate",
    "simplified_sum_params",
    "sum_terms_from_params",
    "sf_member",
    "tensor_of_terms",
    "CombinationResult",
    "IndependenceReport",
    "independence_report",
]

# each term contributes a five-generator standard complex to a tensor product
MAX_CROSSCHECK_GENERATORS = 125


class OutOfScopeError(InvalidInputError):
    pass


@dataclass(frozen=True)
class SignedCnTerm:
    """``+C(n)`` or ``-C(n)`` with n > 1."""

    sign: str
    n: int

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise InvalidInputError(f"sign must be + or -, got {self.sign!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n <= 1:
            raise OutOfScopeError(f"the concatenation rule needs n > 1, got {self.n!r}")

    @classmethod
    def parse(cls, text: str) -> "SignedCnTerm":
        """Parse ``+3`` or ``-2`` (a bare number means +)."""
        t = text.strip()
        sign = "-" if t.startswith("-") else "+"
        try:
            n = int(t.lstrip("+-"))
        except ValueError:
            raise InvalidInputError(f"bad term {text!r}; expected +N or -N") from None
        return cls(sign, n)

    def __str__(self):
        return f"{self.sign}C({self.n})"


def cn_params(n: int) -> StandardParams:
    """Parameters (+, -1, +, -n) of C(n)."""
    return StandardParams(("+", -1, "+", -n))


def param_negate(p: StandardParams) -> StandardParams:
    """Swap every sign and negate every weight.

    This is the group inverse on sums of C(n) classes; for other parameters
    it is only a formal operation.
    """
    return StandardParams(tuple(("-" if v == "+" else "+") if k % 2 == 0 else -v for k, v in enumerate(p.entries)))


def _net_counts(terms) -> dict[int, int]:
    net: Counter = Counter()
    for t in terms:
        if not isinstance(t, SignedCnTerm):
            raise InvalidInputError(f"expected SignedCnTerm, got {t!r}")
        net[t.n] += 1 if t.sign == "+" else -1
    return {n: c for n, c in net.items() if c}


def simplified_sum_params(terms) -> StandardParams:
    """Standard parameters of a signed sum of C(n) classes.

    Opposite terms cancel, the rest are sorted by nonincreasing n and their
    blocks (+,-1,+,-n) or (-,1,-,n) are concatenated.
    """
    out: list = []
    for n, c in sorted(_net_counts(terms).items(), reverse=True):
        block = ("+", -1, "+", -n) if c > 0 else ("-", 1, "-", n)
        out += list(block) * abs(c)
    return StandardParams(tuple(out))


def sum_terms_from_params(p: StandardParams) -> list[SignedCnTerm] | None:
    """Split parameters into C(n) blocks, or None if they are not of that shape."""
    e = p.entries
    if len(e) % 4:
        return None
    terms = []
    for k in range(0, len(e), 4):
        blk = tuple(e[k : k + 4])
        if blk[0] == blk[2] == "+" and blk[1] == -1 and blk[3] < -1:
            terms.append(SignedCnTerm("+", -blk[3]))
        elif blk[0] == blk[2] == "-" and blk[1] == 1 and blk[3] > 1:
            terms.append(SignedCnTerm("-", blk[3]))
        else:
            return None
    return terms


def sf_member(p: StandardParams) -> bool:
    """Whether p satisfies the Seifert-fibered image conditions.

    For the pairs (a_i, b_i): sgn(b_i) = -sgn(a_i) for every i and
    |b_i| <= |b_(i-1)| for i >= 2.
    """
    prev = None
    for a, b in zip(p.signs, p.weights):
        if (b > 0) != (a == "-"):
            return False
        if prev is not None and abs(b) > abs(prev):
            return False
        prev = b
    return True


def tensor_of_terms(terms):
    """Tensor product of the standard complexes of the given terms."""
    if not terms:
        return standard_complex(())
    cs = [standard_complex(cn_params(t.n) if t.sign == "+" else param_negate(cn_params(t.n))) for t in terms]
    out = cs[0]
    for c in cs[1:]:
        out = tensor_iota(out, c)
    return out


@dataclass
class CombinationResult:
    coefficients: tuple
    terms: list
    params: StandardParams
    sf: bool
    oracle: StandardParams | None = None
    checked: bool = False

    @property
    def agrees(self) -> bool:
        return not self.checked or self.oracle == self.params


@dataclass
class IndependenceReport:
    family: tuple
    bound: int
    combinations: list = field(default_factory=list)

    @property
    def sf_hits(self) -> list:
        return [c for c in self.combinations if c.sf]

    @property
    def checked(self) -> list:
        return [c for c in self.combinations if c.checked]

    @property
    def disagreements(self) -> list:
        return [c for c in self.combinations if not c.agrees]

    @property
    def independent(self) -> bool:
        return not self.sf_hits and not self.disagreements

    def summary(self) -> str:
        return (
            f"family {list(self.family)}, bound {self.bound}: {len(self.combinations)} combinations, "
            f"{len(self.sf_hits)} in the SF image, {len(self.checked)} cross-checked, "
            f"{len(self.disagreements)} disagreements"
        )


def independence_report(family, combo_bound: int, crosscheck: bool = True) -> IndependenceReport:
    """Check that no nonzero combination of the family lands in the SF image.

    Combinations have coefficients in [-combo_bound, combo_bound] and are
    listed in lexicographic order of coefficient vectors. When
    ``crosscheck`` is set, every combination whose tensor product has at
    most 125 generators is also reduced by ``standard_rep_search``.
    """
    fam = tuple(int(n) for n in family)
    if len(set(fam)) != len(fam):
        raise InvalidInputError("family members must be distinct")
    for n in fam:
        SignedCnTerm("+", n)
    if combo_bound < 1:
        raise InvalidInputError("combination bound must be positive")
    rep = IndependenceReport(fam, combo_bound)
    rng = range(-combo_bound, combo_bound + 1)
    for coeffs in itertools.product(rng, repeat=len(fam)):
        if not any(coeffs):
            continue
        terms = [SignedCnTerm("+" if c > 0 else "-", n) for n, c in zip(fam, coeffs) for _ in range(abs(c))]
        params = simplified_sum_params(terms)
        res = CombinationResult(coeffs, terms, params, sf_member(params))
        if crosscheck and 5 ** len(terms) <= MAX_CROSSCHECK_GENERATORS:
            bounds = SearchBounds(2 * len(terms), max(fam))
            res.oracle = standard_rep_search(tensor_of_terms(terms), bounds)
            res.checked = True
        rep.combinations.append(res)
    return rep
