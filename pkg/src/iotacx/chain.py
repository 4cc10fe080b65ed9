"""Free graded chain complexes over F2[U, V] and F2[U].

Every map handled here is homogeneous, so between two generators it has at
most one monomial and that monomial is fixed by the gradings. A map is
therefore stored as an F2 matrix ``M[target, source]`` and its exponents are
recovered from the gradings when needed (see ``uv_exponents`` and
``u_exponents``). Composition of maps is then plain F2 matrix
multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2
from .ring import InvalidInputError, UVPoly, UVTerm

__all__ = [
    "UVGenerator",
    "UGenerator",
    "FreeUVComplex",
    "FreeUComplex",
    "TowerClass",
    "NotHomogenizableError",
    "uv_exponents",
    "u_exponents",
    "d_squared_is_zero",
    "derivative_maps",
    "cancel_reduce",
    "localized_tower",
    "homogenize_pair",
    "map_entry",
]


class NotHomogenizableError(ValueError):
    pass


@dataclass(frozen=True)
class UVGenerator:
    name: str
    gr_w: int
    gr_z: int

    @property
    def alexander(self) -> int:
        return (self.gr_w - self.gr_z) // 2


@dataclass(frozen=True)
class UGenerator:
    name: str
    gr: int


def uv_exponents(src_w, src_z, tgt_w, tgt_z, shift=(0, 0), skew=False):
    """Exponents (i, j) of the unique monomial a homogeneous map can use.

    A map of bigrading ``shift`` sends ``x`` to ``U^i V^j y`` only if
    ``gr(y) - (2i, 2j) = gr(x) + shift``; a skew map uses the swapped
    bigrading of ``x``. Returns ``(i, j, ok)`` as arrays indexed
    ``[target, source]``, where ``ok`` marks integral nonnegative exponents.
    """
    src_w, src_z = np.asarray(src_w), np.asarray(src_z)
    tgt_w, tgt_z = np.asarray(tgt_w), np.asarray(tgt_z)
    if skew:
        src_w, src_z = src_z, src_w
    twice_i = tgt_w[:, None] - src_w[None, :] - shift[0]
    twice_j = tgt_z[:, None] - src_z[None, :] - shift[1]
    ok = (twice_i % 2 == 0) & (twice_j % 2 == 0) & (twice_i >= 0) & (twice_j >= 0)
    return twice_i // 2, twice_j // 2, ok


def u_exponents(src_gr, tgt_gr, shift: int = 0):
    """Exponent k of ``U^k`` for a homogeneous F2[U]-map of degree ``shift``."""
    twice_k = np.asarray(tgt_gr)[:, None] - np.asarray(src_gr)[None, :] - shift
    ok = (twice_k % 2 == 0) & (twice_k >= 0)
    return twice_k // 2, ok


def _check_matrix(name, mat, ok, labels_src, labels_tgt):
    bad = np.argwhere((mat != 0) & ~ok)
    if bad.size:
        t, s = bad[0]
        raise InvalidInputError(
            f"{name} term from {labels_src[s]} to {labels_tgt[t]} is not compatible with the gradings"
        )


class FreeUVComplex:
    """Free bigraded complex over F2[U, V]; ``d[y, x] = 1`` means y appears in dx."""

    ring_tag = "F2[U,V]"

    def __init__(self, names: Sequence[str], gr_w, gr_z, d=None):
        self.names = tuple(str(s) for s in names)
        if len(set(self.names)) != len(self.names):
            raise InvalidInputError("generator names must be unique")
        n = len(self.names)
        self.gr_w = np.asarray(gr_w, dtype=np.int64).reshape(n)
        self.gr_z = np.asarray(gr_z, dtype=np.int64).reshape(n)
        if np.any((self.gr_w - self.gr_z) % 2):
            k = int(np.nonzero((self.gr_w - self.gr_z) % 2)[0][0])
            raise InvalidInputError(f"generator {self.names[k]} has a half-integer Alexander grading")
        self.d = np.zeros((n, n), dtype=np.uint8) if d is None else (np.asarray(d) & 1).astype(np.uint8)
        _, _, ok = self.exponents((-1, -1))
        _check_matrix("differential", self.d, ok, self.names, self.names)
        self._index = {s: k for k, s in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def generators(self) -> list[UVGenerator]:
        return [UVGenerator(s, int(w), int(z)) for s, w, z in zip(self.names, self.gr_w, self.gr_z)]

    @property
    def alexander(self) -> np.ndarray:
        return (self.gr_w - self.gr_z) // 2

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no generator named {name!r}") from None

    def exponents(self, shift=(0, 0), skew=False, other: "FreeUVComplex | None" = None):
        """Exponent arrays for maps from self to ``other`` (default self)."""
        tgt = self if other is None else other
        return uv_exponents(self.gr_w, self.gr_z, tgt.gr_w, tgt.gr_z, shift, skew)

    @classmethod
    def from_terms(cls, generators, terms):
        """Build from ``(name, gr_w, gr_z)`` triples and ``(src, tgt, u, v)`` terms.

        Repeated terms cancel in pairs. Every term must match the gradings.
        """
        names = [g[0] for g in generators]
        obj = cls(names, [g[1] for g in generators], [g[2] for g in generators])
        obj.d = _matrix_from_terms(obj, terms, (-1, -1), False, "differential")
        return obj

    def entry(self, tgt: str, src: str) -> UVPoly:
        return map_entry(self, self.d, self.index(tgt), self.index(src), (-1, -1))

    def terms(self):
        return _terms_of(self, self.d, (-1, -1), False)

    def relabel(self, names) -> "FreeUVComplex":
        return FreeUVComplex(names, self.gr_w, self.gr_z, self.d)

    def shifted(self, dw: int, dz: int) -> "FreeUVComplex":
        return FreeUVComplex(self.names, self.gr_w + dw, self.gr_z + dz, self.d)

    def __repr__(self):
        return f"FreeUVComplex({self.n} generators)"


class FreeUComplex:
    """Free graded complex over F2[U]; ``d[y, x] = 1`` means y appears in dx."""

    ring_tag = "F2[U]"

    def __init__(self, names: Sequence[str], gr, d=None):
        self.names = tuple(str(s) for s in names)
        if len(set(self.names)) != len(self.names):
            raise InvalidInputError("generator names must be unique")
        n = len(self.names)
        self.gr = np.asarray(gr, dtype=np.int64).reshape(n)
        self.d = np.zeros((n, n), dtype=np.uint8) if d is None else (np.asarray(d) & 1).astype(np.uint8)
        _, ok = self.exponents(-1)
        _check_matrix("differential", self.d, ok, self.names, self.names)
        self._index = {s: k for k, s in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def generators(self) -> list[UGenerator]:
        return [UGenerator(s, int(g)) for s, g in zip(self.names, self.gr)]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no generator named {name!r}") from None

    def exponents(self, shift: int = 0, other: "FreeUComplex | None" = None):
        tgt = self if other is None else other
        return u_exponents(self.gr, tgt.gr, shift)

    @classmethod
    def from_terms(cls, generators, terms):
        """Build from ``(name, gr)`` pairs and ``(src, tgt, k)`` terms (U^k)."""
        obj = cls([g[0] for g in generators], [g[1] for g in generators])
        obj.d = _matrix_from_terms(obj, terms, -1, False, "differential")
        return obj

    def entry(self, tgt: str, src: str) -> int | None:
        """U-exponent of the ``src -> tgt`` term, or None."""
        i, j = self.index(tgt), self.index(src)
        if not self.d[i, j]:
            return None
        k, _ = self.exponents(-1)
        return int(k[i, j])

    def terms(self):
        return _terms_of(self, self.d, -1, False)

    def relabel(self, names) -> "FreeUComplex":
        return FreeUComplex(names, self.gr, self.d)

    def shifted(self, s: int) -> "FreeUComplex":
        return FreeUComplex(self.names, self.gr + s, self.d)

    def __repr__(self):
        return f"FreeUComplex({self.n} generators)"


def _is_uv(c) -> bool:
    return isinstance(c, FreeUVComplex)


def _matrix_from_terms(c, terms, shift, skew, what):
    m = np.zeros((c.n, c.n), dtype=np.uint8)
    seen = set()
    if _is_uv(c):
        ei, ej, _ = c.exponents(shift, skew)
    else:
        ek, _ = c.exponents(shift)
    for term in terms:
        src, tgt = term[0], term[1]
        for label in (src, tgt):
            if label not in c._index:
                raise InvalidInputError(f"{what} term refers to unknown generator {label!r}")
        s, t = c._index[src], c._index[tgt]
        expo = tuple(int(e) for e in term[2:])
        if _is_uv(c):
            want = (int(ei[t, s]), int(ej[t, s]))
        else:
            want = (int(ek[t, s]),)
        if expo != want:
            raise InvalidInputError(
                f"{what} term {src} -> {tgt} with exponents {expo} is inconsistent with the gradings"
                f" (expected {want})"
            )
        key = (s, t)
        if key in seen:
            raise InvalidInputError(f"duplicate {what} term {src} -> {tgt}")
        seen.add(key)
        m[t, s] ^= 1
    return m


def _terms_of(c, mat, shift, skew):
    """Sorted list of ``(src, tgt, exponents...)`` for the set entries of ``mat``."""
    out = []
    if _is_uv(c):
        ei, ej, _ = c.exponents(shift, skew)
        for t, s in np.argwhere(mat):
            out.append((c.names[s], c.names[t], int(ei[t, s]), int(ej[t, s])))
    else:
        ek, _ = c.exponents(shift)
        for t, s in np.argwhere(mat):
            out.append((c.names[s], c.names[t], int(ek[t, s])))
    return sorted(out, key=lambda r: (c.index(r[0]), c.index(r[1])))


def map_entry(c: FreeUVComplex, mat, tgt: int, src: int, shift=(0, 0), skew=False) -> UVPoly:
    """The matrix entry of a homogeneous endomorphism as a polynomial."""
    if not mat[tgt, src]:
        return UVPoly()
    ei, ej, ok = c.exponents(shift, skew)
    if not ok[tgt, src]:
        raise InvalidInputError("entry is not compatible with the gradings")
    return UVPoly([UVTerm(int(ei[tgt, src]), int(ej[tgt, src]))])


def d_squared_is_zero(c) -> bool:
    return not gf2.mul(c.d, c.d).any()


def derivative_maps(c: FreeUVComplex):
    """Formal derivatives (Phi, Psi) of the differential in U and in V.

    A term ``U^i V^j`` contributes to Phi iff i is odd and to Psi iff j is
    odd. Phi has bigrading shift (+1, -1) and Psi has (-1, +1).
    """
    i, j, _ = c.exponents((-1, -1))
    phi = (c.d & (i % 2 == 1)).astype(np.uint8)
    psi = (c.d & (j % 2 == 1)).astype(np.uint8)
    return phi, psi


PHI_SHIFT = (1, -1)
PSI_SHIFT = (-1, 1)


def _constant_mask(c) -> np.ndarray:
    if _is_uv(c):
        i, j, ok = c.exponents((-1, -1))
        return ok & (i == 0) & (j == 0)
    k, ok = c.exponents(-1)
    return ok & (k == 0)


@dataclass
class Reduction:
    complex: object
    maps: list
    projection: np.ndarray
    inclusion: np.ndarray


def cancel_reduce(c, carried_maps=(), return_equivalences: bool = False):
    """Cancel every differential entry with a constant coefficient.

    Each step removes a pair ``dx = y + ...``; the lexicographically first
    (source, target) index pair is cancelled first. Carried endomorphisms f
    become ``P f I`` where P and I are the projection and inclusion of the
    cancellation. Returns ``(reduced complex, carried maps)``, or a
    ``Reduction`` that also holds the composite P and I.
    """
    d = c.d.copy()
    const = _constant_mask(c)
    maps = [np.asarray(m, dtype=np.uint8).copy() for m in carried_maps]
    keep = np.arange(c.n)
    proj = np.eye(c.n, dtype=np.uint8)
    incl = np.eye(c.n, dtype=np.uint8)
    while True:
        live = d & const[np.ix_(keep, keep)]
        hits = np.argwhere(live.T)
        if hits.size == 0:
            break
        x, y = (int(v) for v in hits[0])
        col_x = d[:, x].copy()
        row_y = d[y, :].copy()
        d ^= np.outer(col_x, row_y).astype(np.uint8)
        for k, f in enumerate(maps):
            f = f ^ np.outer(f[:, x], row_y).astype(np.uint8)
            f = f ^ np.outer(col_x, f[y, :]).astype(np.uint8)
            maps[k] = f
        incl = incl ^ np.outer(incl[:, x], row_y).astype(np.uint8)
        proj = proj ^ np.outer(col_x, proj[y, :]).astype(np.uint8)
        rest = np.array([k for k in range(len(keep)) if k not in (x, y)], dtype=int)
        d = d[np.ix_(rest, rest)]
        maps = [f[np.ix_(rest, rest)] for f in maps]
        incl = incl[:, rest]
        proj = proj[rest, :]
        keep = keep[rest]
    names = [c.names[k] for k in keep]
    if _is_uv(c):
        out = FreeUVComplex(names, c.gr_w[keep], c.gr_z[keep], d)
    else:
        out = FreeUComplex(names, c.gr[keep], d)
    if return_equivalences:
        return Reduction(out, maps, proj, incl)
    return out, maps


@dataclass(frozen=True)
class TowerClass:
    """U-nontorsion part of homology.

    ``cycle`` is a homogeneous cycle of top grading in U = 1 coordinates and
    ``functional`` a cocycle pairing to 1 with it (both only when rank is 1).
    """

    rank: int
    top_grading: int | None
    cycle: np.ndarray | None = None
    functional: np.ndarray | None = None


def localized_tower(c: FreeUComplex) -> TowerClass:
    """Rank and top grading of U^{-1} H_*(C).

    Inverting U identifies U^{-1}C with (C at U = 1) tensor F2[U, U^-1], so
    the rank is the homology dimension of the F2 complex obtained by
    forgetting exponents. A homogeneous cycle of grading g is supported on
    generators of grading >= g and the same parity; it generates the tower
    iff it is not a boundary at U = 1. Gradings are scanned downward over
    ``[g_min - 2(G + E), g_max]``.
    """
    n = c.n
    if n == 0:
        return TowerClass(0, None)
    d1 = c.d
    r = n - 2 * gf2.rank(d1)
    k, _ = c.exponents(-1)
    emax = int(k[c.d.astype(bool)].max()) if c.d.any() else 0
    g_max, g_min = int(c.gr.max()), int(c.gr.min())
    lo = g_min - 2 * (n + emax)
    if r == 0:
        return TowerClass(0, None)
    if r == 1:
        functional = _tower_functional(d1)
        for g in range(g_max, lo - 1, -1):
            cols = np.nonzero((c.gr >= g) & ((c.gr - g) % 2 == 0))[0]
            if cols.size == 0:
                continue
            z = gf2.kernel_vector_with(d1, functional, cols)
            if z is not None:
                return TowerClass(1, g, z, functional)
        raise AssertionError("tower cycle not found in the grading window")
    bound_rank = gf2.rank(d1)
    for g in range(g_max, lo - 1, -1):
        cols = np.nonzero((c.gr >= g) & ((c.gr - g) % 2 == 0))[0]
        if cols.size == 0:
            continue
        cyc = gf2.nullspace(d1[:, cols])
        if cyc.shape[0] == 0:
            continue
        full = np.zeros((cyc.shape[0], n), dtype=np.uint8)
        full[:, cols] = cyc
        if gf2.rank(np.vstack([d1.T, full])) > bound_rank:
            return TowerClass(r, g)
    return TowerClass(r, None)


def _tower_functional(d1: np.ndarray) -> np.ndarray:
    """A cocycle pairing to 1 with some non-boundary cycle (rank-1 case)."""
    bound_rank = gf2.rank(d1)
    for z in gf2.nullspace(d1):
        if gf2.rank(np.vstack([d1.T, z[None, :]])) > bound_rank:
            lam = gf2.kernel_vector_with(d1.T, z)
            if lam is not None:
                return lam
    raise AssertionError("no homology class found")


def homogenize_pair(c: FreeUVComplex, x: str, y: str, x_mono: UVTerm = UVTerm(), y_mono: UVTerm = UVTerm()) -> int:
    """The k >= 0 making ``x + (UV)^k y`` bigrading-homogeneous."""
    xi, yi = c.index(x), c.index(y)
    xw = int(c.gr_w[xi]) - 2 * x_mono.u_exp
    xz = int(c.gr_z[xi]) - 2 * x_mono.v_exp
    yw = int(c.gr_w[yi]) - 2 * y_mono.u_exp
    yz = int(c.gr_z[yi]) - 2 * y_mono.v_exp
    if yw - xw != yz - xz:
        raise NotHomogenizableError(f"{x} and {y} have different Alexander gradings")
    if (yw - xw) % 2:
        raise NotHomogenizableError(f"{x} and {y} differ by an odd Maslov grading")
    k = (yw - xw) // 2
    if k < 0:
        raise NotHomogenizableError(f"{y} would need the negative power (UV)^{k}")
    return k
