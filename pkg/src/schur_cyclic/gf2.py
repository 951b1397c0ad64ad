"""Bit-packed GF(2) kernels.

Rows are packed little-endian into uint64 words: column c lives in word
c // 64, bit c % 64.  The pivot of a row is its lowest set column, so
"reduced row echelon" here means the usual left-to-right RREF.
"""

from __future__ import annotations

import numba
import numpy as np

_ONE = np.uint64(1)


def n_words(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack(rows) -> np.ndarray:
    """0/1 matrix (k x n) -> uint64 words (k x ceil(n/64))."""
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.ndim == 1:
        rows = rows[None, :]
    k, n = rows.shape
    W = n_words(n)
    padded = np.zeros((k, W * 64), dtype=np.uint8)
    padded[:, :n] = rows & 1
    as_bytes = np.packbits(padded.reshape(k, W * 8, 8), axis=2, bitorder="little")
    return as_bytes.reshape(k, W * 8).view("<u8").astype(np.uint64).reshape(k, W)


def unpack(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    k = words.shape[0]
    if k == 0:
        return np.zeros((0, n), dtype=np.uint8)
    bits = np.unpackbits(words.view(np.uint8).reshape(k, -1), axis=1, bitorder="little")
    return bits[:, :n].astype(np.uint8)


@numba.njit(cache=True)
def _ctz(x):
    c = 0
    while (x & np.uint64(1)) == np.uint64(0):
        x >>= np.uint64(1)
        c += 1
    return c


@numba.njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@numba.njit(cache=True)
def _insert(cands, basis, pivot_row, nbasis):
    """Reduce each candidate against the echelon basis; keep the independent ones."""
    W = cands.shape[1]
    ncols = pivot_row.shape[0]
    row = np.empty(W, dtype=np.uint64)
    for c in range(cands.shape[0]):
        if nbasis == ncols:
            break
        for j in range(W):
            row[j] = cands[c, j]
        w = 0
        while w < W:
            x = row[w]
            if x == np.uint64(0):
                w += 1
                continue
            col = w * 64 + _ctz(x)
            p = pivot_row[col]
            if p < 0:
                for j in range(W):
                    basis[nbasis, j] = row[j]
                pivot_row[col] = nbasis
                nbasis += 1
                break
            for j in range(w, W):
                row[j] ^= basis[p, j]
    return nbasis


@numba.njit(cache=True)
def _back_substitute(basis, pivots):
    """basis rows sorted by pivot; clear every pivot column above its row."""
    k = basis.shape[0]
    W = basis.shape[1]
    for i in range(k - 1, -1, -1):
        col = pivots[i]
        w = col // 64
        bit = np.uint64(1) << np.uint64(col % 64)
        for j in range(i):
            if basis[j, w] & bit:
                for t in range(w, W):
                    basis[j, t] ^= basis[i, t]


class EchelonBasis:
    """Incrementally grown echelon basis of a subspace of GF(2)^n."""

    def __init__(self, n: int):
        self.n = n
        self.W = n_words(n)
        self._rows = np.zeros((n, self.W), dtype=np.uint64)
        self._pivot_row = -np.ones(n, dtype=np.int64)
        self.rank = 0

    def add(self, words: np.ndarray) -> int:
        """Insert packed rows; returns how many were independent."""
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.ndim == 1:
            words = words[None, :]
        if words.shape[0] == 0:
            return 0
        before = self.rank
        self.rank = _insert(words, self._rows, self._pivot_row, self.rank)
        return self.rank - before

    def contains(self, word: np.ndarray) -> bool:
        rows = self._rows.copy()
        piv = self._pivot_row.copy()
        return _insert(np.ascontiguousarray(word[None, :]), rows, piv, self.rank) == self.rank

    def rref(self) -> tuple[np.ndarray, np.ndarray]:
        """(packed RREF rows, pivot columns), rows ordered by pivot."""
        pivots = np.flatnonzero(self._pivot_row >= 0)
        rows = self._rows[self._pivot_row[pivots]].copy()
        _back_substitute(rows, pivots)
        return rows, pivots


def rref(rows01) -> tuple[np.ndarray, np.ndarray]:
    """RREF of a 0/1 matrix; returns (0/1 rows, pivot columns)."""
    rows01 = np.asarray(rows01, dtype=np.uint8)
    n = rows01.shape[1]
    eb = EchelonBasis(n)
    eb.add(pack(rows01))
    words, pivots = eb.rref()
    return unpack(words, n), pivots


def rank(rows01) -> int:
    rows01 = np.asarray(rows01, dtype=np.uint8)
    eb = EchelonBasis(rows01.shape[1])
    eb.add(pack(rows01))
    return eb.rank


def schur_products(words: np.ndarray):
    """Yield blocks of pairwise ANDs w_i & w_j, i <= j."""
    for i in range(words.shape[0]):
        yield words[i] & words[i:]


@numba.njit(cache=True)
def _gray_min_weight(rows, n):
    """Minimum nonzero weight over all 2^k - 1 nonzero combinations.

    Returns (weight, gray index of a lightest combination).
    """
    k = rows.shape[0]
    W = rows.shape[1]
    cur = np.zeros(W, dtype=np.uint64)
    best = n + 1
    best_idx = 0
    total = np.int64(1) << np.int64(k)
    for i in range(1, total):
        j = _ctz(np.uint64(i))
        for t in range(W):
            cur[t] ^= rows[j, t]
        wt = 0
        for t in range(W):
            wt += _popcount(cur[t])
        if wt < best and wt > 0:
            best = wt
            best_idx = i ^ (i >> 1)
    return best, best_idx


def gray_min_weight(words: np.ndarray, n: int) -> tuple[int, int]:
    return _gray_min_weight(np.ascontiguousarray(words, dtype=np.uint64), n)


@numba.njit(cache=True)
def _weights(words):
    out = np.zeros(words.shape[0], dtype=np.int64)
    for i in range(words.shape[0]):
        s = 0
        for t in range(words.shape[1]):
            s += _popcount(words[i, t])
        out[i] = s
    return out


def weights(words: np.ndarray) -> np.ndarray:
    return _weights(np.ascontiguousarray(words, dtype=np.uint64))
