"""Linear algebra over F2.

Matrices are numpy uint8 arrays with entries in {0, 1}. Linear systems are
solved with rows stored as Python integers used as bitsets, which keeps
elimination on a few thousand unknowns fast without any native extension.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "mul",
    "rank",
    "nullspace",
    "kernel_vector_with",
    "MapUnknown",
    "LinearSystem",
    "SystemBuilder",
]


def mul(*mats: np.ndarray) -> np.ndarray:
    """Product of F2 matrices."""
    out = mats[0].astype(np.int64)
    for m in mats[1:]:
        out = (out @ m.astype(np.int64)) & 1
    return out.astype(np.uint8)


def _row_ints(m: np.ndarray) -> list[int]:
    if m.size == 0:
        return [0] * m.shape[0]
    packed = np.packbits(m.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def rank(m: np.ndarray) -> int:
    """Rank over F2."""
    pivots: dict[int, int] = {}
    for row in _row_ints(np.asarray(m)):
        while row:
            low = (row & -row).bit_length() - 1
            if low in pivots:
                row ^= pivots[low]
            else:
                pivots[low] = row
                break
    return len(pivots)


class LinearSystem:
    """Incremental Gaussian elimination for ``A x = b`` over F2.

    Each equation is a bitset over the unknowns plus a right-hand side bit.
    Equations are reduced as they arrive; an inconsistent one is remembered
    together with its label.
    """

    def __init__(self, nvars: int):
        self.nvars = nvars
        self._rhs_bit = 1 << nvars
        self._pivots: dict[int, int] = {}
        self.conflict = None
        self.failed = False

    def add(self, row: int, rhs: int = 0, label=None) -> bool:
        if self.failed:
            return False
        if rhs:
            row |= self._rhs_bit
        pivots = self._pivots
        while row:
            low = (row & -row).bit_length() - 1
            if low == self.nvars:
                self.failed = True
                self.conflict = label
                return False
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = row
                return True
            row ^= piv
        return True

    @property
    def consistent(self) -> bool:
        return not self.failed

    def solve(self) -> int | None:
        """One solution as a bitset (free unknowns set to zero), or None."""
        if self.failed:
            return None
        sol = 0
        var_mask = self._rhs_bit - 1
        for col in sorted(self._pivots, reverse=True):
            row = self._pivots[col]
            rest = row & var_mask & ~(1 << col)
            bit = (row >> self.nvars) & 1
            bit ^= (rest & sol).bit_count() & 1
            if bit:
                sol |= 1 << col
        return sol


def nullspace(m: np.ndarray) -> np.ndarray:
    """Basis of ``{z : m z = 0}`` as the rows of a matrix."""
    m = np.asarray(m, dtype=np.uint8)
    ncols = m.shape[1]
    # reduced row echelon form, pivoting on the lowest column index
    rows = [r for r in _row_ints(m) if r]
    pivots: dict[int, int] = {}
    for row in rows:
        for c, p in pivots.items():
            if (row >> c) & 1:
                row ^= p
        if not row:
            continue
        c = (row & -row).bit_length() - 1
        for k in pivots:
            if (pivots[k] >> c) & 1:
                pivots[k] ^= row
        pivots[c] = row
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for r, f in enumerate(free):
        basis[r, f] = 1
        for c, p in pivots.items():
            if (p >> f) & 1:
                basis[r, c] = 1
    return basis


def kernel_vector_with(m: np.ndarray, functional: np.ndarray, cols=None) -> np.ndarray | None:
    """A vector z with ``m z = 0`` and ``functional . z = 1``, or None.

    ``cols`` restricts the support of z to the given column indices.
    """
    m = np.asarray(m, dtype=np.uint8)
    ncols = m.shape[1]
    cols = np.arange(ncols) if cols is None else np.asarray(cols, dtype=int)
    sub = m[:, cols]
    sys = LinearSystem(len(cols))
    for row in _row_ints(sub):
        if row:
            sys.add(row)
    fun = _row_ints(np.asarray(functional, dtype=np.uint8)[cols][None, :])[0]
    sys.add(fun, 1)
    sol = sys.solve()
    if sol is None:
        return None
    z = np.zeros(ncols, dtype=np.uint8)
    for k, c in enumerate(cols):
        if (sol >> k) & 1:
            z[c] = 1
    return z


class MapUnknown:
    """An unknown F2 matrix whose free entries are those where ``mask`` is set."""

    def __init__(self, mask: np.ndarray, offset: int):
        self.mask = np.asarray(mask, dtype=bool)
        self.shape = self.mask.shape
        self.ids = np.full(self.shape, -1, dtype=np.int64)
        n = int(self.mask.sum())
        self.ids[self.mask] = np.arange(offset, offset + n)
        self.offset = offset
        self.count = n

    def extract(self, sol: int) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        rows, cols = np.nonzero(self.mask)
        ids = self.ids[rows, cols]
        for r, c, v in zip(rows, cols, ids):
            if (sol >> int(v)) & 1:
                out[r, c] = 1
        return out


class SystemBuilder:
    """Assembles matrix equations ``sum_k L_k X_k R_k + C = 0`` entrywise.

    Unknown matrices are registered with ``unknown``; each ``equation`` call
    adds one block of scalar equations indexed by the entries of ``eq_mask``.
    """

    def __init__(self):
        self.unknowns: list[MapUnknown] = []
        self.nvars = 0
        self._blocks: list[tuple] = []
        self._affine: list[tuple[np.ndarray, int, str]] = []

    def unknown(self, mask: np.ndarray) -> MapUnknown:
        u = MapUnknown(mask, self.nvars)
        self.nvars += u.count
        self.unknowns.append(u)
        return u

    def equation(self, eq_mask: np.ndarray, terms, const: np.ndarray | None = None, name: str = ""):
        """Add equations for each set entry of ``eq_mask``.

        ``terms`` is a list of ``(L, X, R)`` with ``L`` or ``R`` possibly None
        (meaning identity), where X is a MapUnknown.
        """
        eq_mask = np.asarray(eq_mask, dtype=bool)
        p, q = eq_mask.shape
        eq_ids = np.full((p, q), -1, dtype=np.int64)
        neq = int(eq_mask.sum())
        eq_ids[eq_mask] = np.arange(neq)
        eq_chunks, var_chunks = [], []
        for left, x, right in terms:
            e, v = _term_pairs(left, x, right, eq_ids)
            eq_chunks.append(e)
            var_chunks.append(v)
        eqs = np.concatenate(eq_chunks) if eq_chunks else np.zeros(0, dtype=np.int64)
        vs = np.concatenate(var_chunks) if var_chunks else np.zeros(0, dtype=np.int64)
        rhs = np.zeros(neq, dtype=np.uint8)
        if const is not None:
            rhs = np.asarray(const, dtype=np.uint8)[eq_mask] & 1
        self._blocks.append((eqs, vs, rhs, name, eq_mask))

    def affine(self, coeffs: list[tuple[MapUnknown, np.ndarray]], rhs: int, name: str = ""):
        """One extra equation: sum of entrywise products <W, X> equals rhs."""
        row = 0
        for x, weight in coeffs:
            sel = np.asarray(weight, dtype=bool) & x.mask
            for v in x.ids[sel]:
                row ^= 1 << int(v)
        self._affine.append((row, rhs, name))

    def solve(self):
        """Return (solution bitset or None, label of the first conflicting equation)."""
        sys = LinearSystem(self.nvars)
        for eqs, vs, rhs, name, eq_mask in self._blocks:
            neq = rhs.shape[0]
            if neq == 0:
                continue
            key = eqs * (self.nvars + 1) + vs
            key, counts = np.unique(key, return_counts=True)
            key = key[counts % 2 == 1]
            dense = np.zeros((neq, self.nvars), dtype=np.uint8)
            dense[key // (self.nvars + 1), key % (self.nvars + 1)] = 1
            rows = _row_ints(dense)
            positions = np.argwhere(eq_mask)
            for k in range(neq):
                if rows[k] or rhs[k]:
                    if not sys.add(rows[k], int(rhs[k]), (name, tuple(int(t) for t in positions[k]))):
                        return None, sys.conflict
        for row, rhs, name in self._affine:
            if not sys.add(row, rhs, (name, None)):
                return None, sys.conflict
        return sys.solve(), None


def _term_pairs(left, x: MapUnknown, right, eq_ids):
    """(equation id, variable id) incidences of the product L X R."""
    p, q = eq_ids.shape
    k1, k2 = x.shape
    left = np.eye(p, k1, dtype=np.uint8) if left is None else np.asarray(left, dtype=np.uint8)
    right = np.eye(k2, q, dtype=np.uint8) if right is None else np.asarray(right, dtype=np.uint8)
    # entry (i, j) of L X R picks up X[a, b] whenever L[i, a] and R[b, j]
    xa, xb = np.nonzero(x.mask)
    if xa.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    var = x.ids[xa, xb]
    eq_out, var_out = [], []
    lcols = [np.nonzero(left[:, a])[0] for a in range(k1)]
    rrows = [np.nonzero(right[b, :])[0] for b in range(k2)]
    for a, b, v in zip(xa, xb, var):
        ii, jj = lcols[a], rrows[b]
        if ii.size == 0 or jj.size == 0:
            continue
        ids = eq_ids[np.ix_(ii, jj)].ravel()
        ids = ids[ids >= 0]
        if ids.size:
            eq_out.append(ids)
            var_out.append(np.full(ids.size, v, dtype=np.int64))
    if not eq_out:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(eq_out), np.concatenate(var_out)
