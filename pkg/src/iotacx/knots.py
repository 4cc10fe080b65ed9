"""Named complexes: torus-knot staircases, the box complex and their products."""

from __future__ import annotations

import math
import warnings
from typing import Sequence

import numpy as np

from . import gf2
from .chain import FreeUVComplex
from .involutive import IotaComplex, IotaKComplex, a0_subcomplex, tensor_iota_k
from .ring import InvalidInputError, LaurentPolynomial, T, laurent_div_exact

__all__ = [
    "NotLSpaceKnotError",
    "torus_alexander",
    "staircase_steps",
    "staircase",
    "trefoil",
    "cn",
    "dn",
    "box_complex",
    "en_complex",
    "yn_elements",
    "yn_fixture",
    "restrict_to_span",
    "torus_2n_2n1_steps",
    "torus_2n_4n1_steps",
]


class NotLSpaceKnotError(ValueError):
    pass


def torus_alexander(p: int, q: int) -> LaurentPolynomial:
    """``(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))`` by exact division."""
    if p < 2 or q < 2:
        raise InvalidInputError("torus knot parameters must be at least 2")
    if math.gcd(p, q) != 1:
        raise InvalidInputError(f"T({p},{q}) is not a knot: gcd is {math.gcd(p, q)}")
    num = (T ** (p * q) - 1) * (T - 1)
    den = (T**p - 1) * (T**q - 1)
    return laurent_div_exact(num, den)


def torus_2n_2n1_steps(n: int) -> tuple[int, ...]:
    """Steps (1, 2n-1, 2, 2n-2, ..., 2n-1, 1) of the T(2n, 2n+1) staircase."""
    out = []
    for k in range(1, 2 * n):
        out += [k, 2 * n - k]
    return tuple(out)


def torus_2n_4n1_steps(n: int) -> tuple[int, ...]:
    """Steps (1, 2n-1, 1, 2n-1, 2, 2n-2, 2, 2n-2, ...) of the T(2n, 4n+1) staircase."""
    out = []
    for k in range(1, 2 * n):
        out += [k, 2 * n - k, k, 2 * n - k]
    return tuple(out)


def staircase_steps(poly: LaurentPolynomial) -> tuple[int, ...]:
    """Step sequence of an alternating polynomial ``1 - t^c1 + t^(c1+c2) - ...``."""
    if poly.is_zero():
        raise NotLSpaceKnotError("zero polynomial")
    terms = sorted(poly.terms.items())
    coeffs = [c for _, c in terms]
    want = [1 if k % 2 == 0 else -1 for k in range(len(coeffs))]
    if coeffs != want or len(coeffs) % 2 == 0:
        raise NotLSpaceKnotError(f"{poly!r} does not have alternating +-1 coefficients starting and ending with +1")
    exps = [e for e, _ in terms]
    return tuple(b - a for a, b in zip(exps, exps[1:]))


def staircase(spec) -> IotaKComplex:
    """Staircase complex with its reflection involution.

    ``spec`` is a symmetric step sequence or an alternating polynomial.
    Generators g_0..g_2k satisfy ``d g_(2i+1) = V^c g_2i + U^c' g_(2i+2)``;
    the last generator has gr_w = 0 and the middle one Alexander grading 0.
    Generator m is named ``y{m-k}`` when it is a cycle and ``x{m-k}`` otherwise.
    """
    steps = staircase_steps(spec) if isinstance(spec, LaurentPolynomial) else tuple(int(c) for c in spec)
    if len(steps) % 2:
        raise InvalidInputError("step sequence must have even length")
    if any(c < 1 for c in steps):
        raise InvalidInputError("steps must be positive")
    if steps != steps[::-1]:
        raise InvalidInputError(f"step sequence {steps} is not symmetric")
    k = len(steps) // 2
    n = 2 * k + 1
    gw = np.zeros(n, dtype=np.int64)
    gz = np.zeros(n, dtype=np.int64)
    d = np.zeros((n, n), dtype=np.uint8)
    for m in range(1, n, 2):
        c_back, c_fwd = steps[m - 1], steps[m]
        # g_m sits above g_(m-1) by (1, 1 - 2 c_back)
        gw[m] = gw[m - 1] + 1
        gz[m] = gz[m - 1] + 1 - 2 * c_back
        gw[m + 1] = gw[m] - 1 + 2 * c_fwd
        gz[m + 1] = gz[m] - 1
        d[m - 1, m] = 1
        d[m + 1, m] = 1
    gw -= gw[-1]
    mid = k
    gz -= gz[mid] - gw[mid]
    names = [("y" if m % 2 == 0 else "x") + str(m - k) for m in range(n)]
    iota = np.eye(n, dtype=np.uint8)[::-1].copy()
    return IotaKComplex(FreeUVComplex(names, gw, gz, d), iota)


def trefoil() -> IotaKComplex:
    return staircase((1, 1))


def cn(n: int) -> IotaKComplex:
    """Staircase of T(2n, 2n+1)."""
    return staircase(torus_alexander(2 * n, 2 * n + 1))


def dn(n: int) -> IotaKComplex:
    """Staircase of T(2n, 4n+1)."""
    return staircase(torus_alexander(2 * n, 4 * n + 1))


def box_complex(n: int) -> IotaKComplex:
    """Five-generator box complex: a square on z0, z-1, z1, w plus a cycle v.

    ``d z0 = V^n z-1 + U^n z1``, ``d z-1 = U^n w``, ``d z1 = V^n w``, and
    ``iota(v) = v + U^(n-1) V^(n-1) w``, ``iota(z0) = z0 + v``, ``iota`` swaps
    z-1 and z1 and fixes w. The involution relation holds for odd n only.
    """
    if n < 1:
        raise InvalidInputError("box complex needs n >= 1")
    if n % 2 == 0:
        warnings.warn(f"box_complex({n}): the involution relation is only expected for odd n", stacklevel=2)
    gens = [
        ("v", 0, 0),
        ("z0", 0, 0),
        ("z-1", -1, 2 * n - 1),
        ("z1", 2 * n - 1, -1),
        ("w", 2 * n - 2, 2 * n - 2),
    ]
    c = FreeUVComplex.from_terms(
        gens,
        [("z0", "z-1", 0, n), ("z0", "z1", n, 0), ("z-1", "w", n, 0), ("z1", "w", 0, n)],
    )
    iota = np.zeros((5, 5), dtype=np.uint8)
    for src, tgt in [("v", "v"), ("v", "w"), ("z0", "z0"), ("z0", "v"), ("z-1", "z1"), ("z1", "z-1"), ("w", "w")]:
        iota[c.index(tgt), c.index(src)] = 1
    return IotaKComplex(c, iota)


def en_complex(n: int) -> IotaComplex:
    """A0 of the box complex tensored with the trefoil (fifteen generators)."""
    if n < 3 or n % 2 == 0:
        raise InvalidInputError(f"en_complex needs an odd n >= 3, got {n}")
    e = a0_subcomplex(tensor_iota_k(box_complex(n), trefoil()))
    assert e.n == 15
    return e


def yn_elements(n: int) -> list[list[str]]:
    """Basis of the staircase-plus-square summand of C_n x C_n.

    Each element is a list of tensor generator names whose sum it is. The
    staircase runs y_i y_i, y_i x_(i+1), y_i y_(i+2), x_(i+1) y_(i+2) for
    i < 0, then x_0 y_-1, then y_j y_(j-2), y_j x_(j-1), y_j y_j, x_(j+1) y_j
    for j > 0; the square is spanned by x_0 x_0 and three symmetrized sums.
    """
    def y(i):
        return f"y{i}"

    def x(i):
        return f"x{i}"

    def t(a, b):
        return f"{a}|{b}"

    out: list[list[str]] = []
    for i in range(1 - 2 * n, -1, 2):
        out += [[t(y(i), y(i))], [t(y(i), x(i + 1))], [t(y(i), y(i + 2))], [t(x(i + 1), y(i + 2))]]
    out += [[t(y(-1), y(-1))], [t(x(0), y(-1))]]
    for j in range(1, 2 * n, 2):
        out += [[t(y(j), y(j - 2))], [t(y(j), x(j - 1))], [t(y(j), y(j))]]
        if j < 2 * n - 1:
            out.append([t(x(j + 1), y(j))])
    out += [
        [t(x(0), x(0))],
        [t(y(-1), x(0)), t(x(0), y(-1))],
        [t(y(1), x(0)), t(x(0), y(1))],
        [t(y(1), y(-1)), t(y(-1), y(1))],
    ]
    return out


def restrict_to_span(k: IotaKComplex, elements: Sequence[Sequence[str]]) -> IotaKComplex:
    """The subcomplex spanned by homogeneous sums of generators, in that basis.

    Raises if an element is not homogeneous, or if the differential or the
    involution does not preserve the span.
    """
    c = k.complex
    vecs = np.zeros((c.n, len(elements)), dtype=np.uint8)
    gw, gz, names = [], [], []
    for col, elem in enumerate(elements):
        idx = [c.index(s) for s in elem]
        grs = {(int(c.gr_w[i]), int(c.gr_z[i])) for i in idx}
        if len(grs) != 1:
            raise InvalidInputError(f"element {'+'.join(elem)} is not homogeneous")
        vecs[idx, col] = 1
        (w, z), = grs
        gw.append(w)
        gz.append(z)
        names.append("+".join(elem))
    if gf2.rank(vecs) != len(elements):
        raise InvalidInputError("elements are linearly dependent")

    def express(images: np.ndarray, what: str) -> np.ndarray:
        out = np.zeros((len(elements), len(elements)), dtype=np.uint8)
        for col in range(images.shape[1]):
            target = images[:, col]
            if not target.any():
                continue
            b = gf2.SystemBuilder()
            u = b.unknown(np.ones((len(elements), 1), dtype=bool))
            b.equation(np.ones((c.n, 1), dtype=bool), [(vecs, u, None)], target[:, None], what)
            sol, _ = b.solve()
            if sol is None:
                raise InvalidInputError(f"{what} of {names[col]} leaves the span")
            out[:, col] = u.extract(sol)[:, 0]
        return out

    d = express(gf2.mul(c.d, vecs), "differential")
    iota = express(gf2.mul(k.iota_k, vecs), "involution")
    return IotaKComplex(FreeUVComplex(names, gw, gz, d), iota)


def yn_fixture(n: int) -> IotaKComplex:
    """The (8n+1)-generator summand of ``cn(n) x cn(n)`` used in equivalence checks."""
    return restrict_to_span(tensor_iota_k(cn(n), cn(n)), yn_elements(n))
