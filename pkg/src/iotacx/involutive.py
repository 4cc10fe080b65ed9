"""Complexes with involutions, their products, duals and the A0 subcomplex."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .chain import FreeUComplex, FreeUVComplex, derivative_maps, _check_matrix
from .ring import InvalidInputError

__all__ = [
    "IotaKComplex",
    "IotaComplex",
    "InvolutionCheck",
    "verify_involution",
    "tensor_iota_k",
    "tensor_iota",
    "dual",
    "a0_subcomplex",
    "omega",
    "trivial_iota_k",
    "trivial_iota",
]

TENSOR_SEP = "|"


class IotaKComplex:
    """A complex over F2[U, V] with a skew-equivariant ``iota_k``.

    ``iota_k[y, x] = 1`` means ``iota_k(x)`` contains ``U^i V^j y`` where the
    exponents are read off the swapped gradings of x.
    """

    def __init__(self, complex: FreeUVComplex, iota_k):
        self.complex = complex
        self.iota_k = (np.asarray(iota_k) & 1).astype(np.uint8)
        _, _, ok = complex.exponents((0, 0), skew=True)
        _check_matrix("involution", self.iota_k, ok, complex.names, complex.names)

    @property
    def n(self) -> int:
        return self.complex.n

    @property
    def names(self):
        return self.complex.names

    def phi_psi(self):
        return derivative_maps(self.complex)

    def __repr__(self):
        return f"IotaKComplex({self.n} generators)"


class IotaComplex:
    """A complex over F2[U] with a grading-preserving ``iota``."""

    def __init__(self, complex: FreeUComplex, iota):
        self.complex = complex
        self.iota = (np.asarray(iota) & 1).astype(np.uint8)
        _, ok = complex.exponents(0)
        _check_matrix("involution", self.iota, ok, complex.names, complex.names)

    @property
    def n(self) -> int:
        return self.complex.n

    @property
    def names(self):
        return self.complex.names

    def shifted(self, s: int) -> "IotaComplex":
        return IotaComplex(self.complex.shifted(s), self.iota)

    def __repr__(self):
        return f"IotaComplex({self.n} generators)"


@dataclass
class InvolutionCheck:
    """Outcome of ``verify_involution``; truthy on success.

    ``homotopy`` is the solved H; on failure ``residual`` names the first
    condition that could not be met.
    """

    ok: bool
    homotopy: np.ndarray | None = None
    residual: object = None

    def __bool__(self):
        return self.ok


def _solve_homotopy(d, hmask, eqmask, rhs, name):
    b = gf2.SystemBuilder()
    h = b.unknown(hmask)
    b.equation(eqmask, [(d, h, None), (None, h, d)], rhs, name)
    sol, conflict = b.solve()
    if sol is None:
        return None, conflict
    return h.extract(sol), None


def verify_involution(x, mode: str = "strict") -> InvolutionCheck:
    """Check the homotopy-involution relation by solving for H.

    For an IotaKComplex: ``iota_k^2 + id + Phi Psi = dH + Hd`` with H
    equivariant of bigrading (+1, +1). For an IotaComplex in strict mode:
    iota is a chain map and ``iota^2 + id = dH + Hd``; in almost mode both
    relations are only required modulo U.
    """
    if mode not in ("strict", "almost"):
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(x, IotaKComplex):
        c = x.complex
        phi, psi = derivative_maps(c)
        rhs = gf2.mul(x.iota_k, x.iota_k) ^ np.eye(c.n, dtype=np.uint8) ^ gf2.mul(phi, psi)
        _, _, eq_ok = c.exponents((0, 0))
        _, _, h_ok = c.exponents((1, 1))
        if not rhs.any():
            return InvolutionCheck(True, np.zeros((c.n, c.n), dtype=np.uint8))
        h, conflict = _solve_homotopy(c.d, h_ok, eq_ok, rhs, "iota_k^2 + id + Phi Psi")
        return InvolutionCheck(h is not None, h, conflict)
    if isinstance(x, IotaComplex):
        c = x.complex
        comm = gf2.mul(x.iota, c.d) ^ gf2.mul(c.d, x.iota)
        kd, okd = c.exponents(-1)
        k0, ok0 = c.exponents(0)
        _, okh = c.exponents(1)
        if mode == "strict":
            if comm.any():
                return InvolutionCheck(False, None, "iota is not a chain map")
            eqmask = ok0
        else:
            if (comm & (kd == 0)).any():
                return InvolutionCheck(False, None, "iota d + d iota is not in the image of U")
            eqmask = ok0 & (k0 == 0)
        rhs = gf2.mul(x.iota, x.iota) ^ np.eye(c.n, dtype=np.uint8)
        if not (rhs & eqmask).any():
            return InvolutionCheck(True, np.zeros((c.n, c.n), dtype=np.uint8))
        h, conflict = _solve_homotopy(c.d, okh, eqmask, rhs, "iota^2 + id")
        return InvolutionCheck(h is not None, h, conflict)
    raise TypeError(f"cannot verify {type(x).__name__}")


def _tensor_names(a, b):
    return [f"{p}{TENSOR_SEP}{q}" for p in a for q in b]


def _kron(a, b):
    return np.kron(a, b).astype(np.uint8)


def tensor_iota_k(a: IotaKComplex, b: IotaKComplex) -> IotaKComplex:
    """Product with involution ``(iota_a x iota_b)(id x id + Psi_a x Phi_b)``.

    Generators are ordered with the first factor major and named ``x|y``.
    """
    ca, cb = a.complex, b.complex
    ia, ib = np.eye(ca.n, dtype=np.uint8), np.eye(cb.n, dtype=np.uint8)
    d = _kron(ca.d, ib) ^ _kron(ia, cb.d)
    gw = (ca.gr_w[:, None] + cb.gr_w[None, :]).ravel()
    gz = (ca.gr_z[:, None] + cb.gr_z[None, :]).ravel()
    c = FreeUVComplex(_tensor_names(ca.names, cb.names), gw, gz, d)
    _, psi_a = derivative_maps(ca)
    phi_b, _ = derivative_maps(cb)
    corr = np.eye(c.n, dtype=np.uint8) ^ _kron(psi_a, phi_b)
    iota = gf2.mul(_kron(a.iota_k, b.iota_k), corr)
    return IotaKComplex(c, iota)


def tensor_iota(a: IotaComplex, b: IotaComplex) -> IotaComplex:
    """Product over F2[U] with involution ``iota_a x iota_b``."""
    ca, cb = a.complex, b.complex
    ia, ib = np.eye(ca.n, dtype=np.uint8), np.eye(cb.n, dtype=np.uint8)
    d = _kron(ca.d, ib) ^ _kron(ia, cb.d)
    gr = (ca.gr[:, None] + cb.gr[None, :]).ravel()
    c = FreeUComplex(_tensor_names(ca.names, cb.names), gr, d)
    return IotaComplex(c, _kron(a.iota, b.iota))


def dual(x):
    """Dual complex: gradings negated, differential and involution transposed."""
    if isinstance(x, IotaKComplex):
        c = x.complex
        names = [s + "*" for s in c.names]
        return IotaKComplex(FreeUVComplex(names, -c.gr_w, -c.gr_z, c.d.T), x.iota_k.T)
    if isinstance(x, IotaComplex):
        c = x.complex
        names = [s + "*" for s in c.names]
        return IotaComplex(FreeUComplex(names, -c.gr, c.d.T), x.iota.T)
    if isinstance(x, FreeUVComplex):
        return FreeUVComplex([s + "*" for s in x.names], -x.gr_w, -x.gr_z, x.d.T)
    if isinstance(x, FreeUComplex):
        return FreeUComplex([s + "*" for s in x.names], -x.gr, x.d.T)
    raise TypeError(f"cannot dualize {type(x).__name__}")


def a0_subcomplex(k: IotaKComplex) -> IotaComplex:
    """The Alexander-grading-zero subcomplex with U acting as UV.

    Each generator x contributes ``U^A x`` (A >= 0) or ``V^-A x`` (A < 0);
    its grading is the gr_w of that monomial, i.e. ``min(gr_w, gr_z)``. The
    matrices of the differential and of iota_k carry over unchanged.
    """
    c = k.complex
    diff = c.gr_w - c.gr_z
    if np.any(diff % 2):
        raise InvalidInputError("A0 needs integral Alexander gradings")
    gr = np.minimum(c.gr_w, c.gr_z)
    return IotaComplex(FreeUComplex(c.names, gr, c.d), k.iota_k)


def omega(x: IotaComplex) -> np.ndarray:
    """``id + iota``."""
    return x.iota ^ np.eye(x.n, dtype=np.uint8)


def trivial_iota_k(name: str = "t") -> IotaKComplex:
    return IotaKComplex(FreeUVComplex([name], [0], [0]), np.ones((1, 1), dtype=np.uint8))


def trivial_iota(name: str = "t0") -> IotaComplex:
    return IotaComplex(FreeUComplex([name], [0]), np.ones((1, 1), dtype=np.uint8))
