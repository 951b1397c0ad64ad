"""Generic linear codes over GF(q): generator matrices, Schur squares,
minimum distance, coordinate transforms and reference evaluation codes.

GF(2) matrices are reduced through the bit-packed kernels in ``gf2``; every
other field goes through the table-driven elimination below.  Both paths
produce the same RREF, which the tests check against each other.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb

import numpy as np

from . import gf2
from .algebra import FieldCtx, get_field

DEFAULT_EXHAUSTIVE_CAP = 1 << 26
CAP_ENV = "SCHUR_CYCLIC_CAP"


def exhaustive_cap() -> int:
    """Enumeration cap (number of items); SCHUR_CYCLIC_CAP gives it in bits."""
    bits = os.environ.get(CAP_ENV)
    if bits:
        return 1 << int(bits)
    return DEFAULT_EXHAUSTIVE_CAP


# ---------------------------------------------------------------------------
# elimination over an arbitrary field
# ---------------------------------------------------------------------------

def rref_generic(field: FieldCtx, M) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form via table arithmetic (rows, pivot columns)."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, ncols = M.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        lead = int(M[r, c])
        if lead != 1:
            M[r] = field.mul_v(M[r], field.inv(lead))
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            factors = M[others, c][:, None]
            M[others] = field.sub_v(M[others], field.mul_v(factors, M[r][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], np.array(pivots, dtype=np.int64)


def rref(field: FieldCtx, M) -> tuple[np.ndarray, np.ndarray]:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 2 and M.shape[0] == 0:
        return M.reshape(0, M.shape[1]), np.zeros(0, dtype=np.int64)
    if field.q == 2:
        rows, piv = gf2.rref(M)
        return rows.astype(np.int64), piv.astype(np.int64)
    return rref_generic(field, M)


def nullspace(field: FieldCtx, A) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    ncols = A.shape[1]
    R, piv = rref(field, A) if A.shape[0] else (np.zeros((0, ncols), np.int64), np.zeros(0, np.int64))
    free = [c for c in range(ncols) if c not in set(piv.tolist())]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        if len(piv):
            basis[i, piv] = field.neg_v(R[:, f])
    return basis


# ---------------------------------------------------------------------------
# generator matrices
# ---------------------------------------------------------------------------

class GeneratorMatrix:
    """A linear code given by a basis in reduced row echelon form."""

    def __init__(self, field: FieldCtx, rows, n: int | None = None, *, reduced: bool = False):
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows.reshape(-1, n if n is not None else rows.shape[0])
        if rows.size == 0:
            if n is None:
                n = rows.shape[1] if rows.ndim == 2 else 0
            rows = rows.reshape(0, n)
        self.field = field
        self.n = rows.shape[1]
        if reduced:
            self.rows = rows
            self.pivots = np.array([int(np.flatnonzero(r)[0]) for r in rows], dtype=np.int64)
        else:
            self.rows, self.pivots = rref(field, rows)

    @classmethod
    def zero(cls, field, n):
        return cls(field, np.zeros((0, n), dtype=np.int64), n, reduced=True)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rank(self) -> int:
        return self.rows.shape[0]

    k = rank

    def __repr__(self):
        return f"GeneratorMatrix(q={self.q}, n={self.n}, k={self.rank})"

    def __eq__(self, other):
        """Equality of row spaces."""
        return (isinstance(other, GeneratorMatrix) and self.field == other.field
                and self.n == other.n and np.array_equal(self.rows, other.rows))

    __hash__ = None

    def packed(self) -> np.ndarray:
        if self.q != 2:
            raise ValueError("packing is only defined over GF(2)")
        return gf2.pack(self.rows) if self.rank else np.zeros((0, gf2.n_words(self.n)), np.uint64)

    def encode(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.int64)
        f = self.field
        return f.sum_v(f.mul_v(coeffs[:, None], self.rows), axis=0)

    def contains(self, word) -> bool:
        word = np.asarray(word, dtype=np.int64).reshape(1, self.n)
        if self.q == 2:
            return gf2.rank(np.vstack([self.rows, word])) == self.rank
        return rref(self.field, np.vstack([self.rows, word]))[0].shape[0] == self.rank

    def permute(self, perm) -> "GeneratorMatrix":
        return GeneratorMatrix(self.field, self.rows[:, list(perm)])


def same_row_space(a: GeneratorMatrix, b: GeneratorMatrix) -> bool:
    return a == b


def schur_square(G: GeneratorMatrix) -> GeneratorMatrix:
    """Span of all coordinatewise products of pairs of basis rows."""
    if G.rank == 0:
        return GeneratorMatrix.zero(G.field, G.n)
    if G.q == 2:
        basis = gf2.EchelonBasis(G.n)
        for block in gf2.schur_products(G.packed()):
            basis.add(block)
            if basis.rank == G.n:
                break
        words, _ = basis.rref()
        return GeneratorMatrix(G.field, gf2.unpack(words, G.n).astype(np.int64), reduced=True)
    f = G.field
    prods = [f.mul_v(G.rows[i][None, :], G.rows[i:]) for i in range(G.rank)]
    return GeneratorMatrix(f, np.vstack(prods))


def schur_square_rank(G: GeneratorMatrix) -> int:
    """dim of the square without forming its reduced basis."""
    if G.q != 2:
        return schur_square(G).rank
    basis = gf2.EchelonBasis(G.n)
    for block in gf2.schur_products(G.packed()):
        basis.add(block)
        if basis.rank == G.n:
            break
    return basis.rank


# ---------------------------------------------------------------------------
# minimum distance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceResult:
    value: int
    exact: bool
    method: str  # "exhaustive" | "witness" | "bound_only"
    witness: tuple | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.method not in ("exhaustive", "witness", "bound_only"):
            raise ValueError(f"unknown method {self.method!r}")


def hamming_weight(word) -> int:
    return int(np.count_nonzero(np.asarray(word)))


def min_distance(G: GeneratorMatrix, *, cap: int | None = None, lower_bound: int | None = None,
                 samples: int = 20000, seed: int = 0) -> DistanceResult:
    """Minimum distance: exhaustive when q^k <= cap, else seeded sampling.

    A sampled witness whose weight meets ``lower_bound`` certifies the exact
    value.
    """
    if G.rank == 0:
        raise ValueError("the zero code has no minimum distance")
    cap = exhaustive_cap() if cap is None else cap
    if G.q ** G.rank <= cap:
        value, witness = _exhaustive(G)
        if lower_bound is not None and value < lower_bound:
            raise AssertionError(f"exhaustive distance {value} below lower bound {lower_bound}")
        return DistanceResult(value, True, "exhaustive", tuple(int(x) for x in witness))
    if samples <= 0:
        if lower_bound is None:
            raise ValueError("no search allowed and no lower bound supplied")
        return DistanceResult(lower_bound, False, "bound_only", None, seed)
    value, witness = _sample(G, samples, seed)
    exact = lower_bound is not None and value == lower_bound
    return DistanceResult(value, exact, "witness", tuple(int(x) for x in witness), seed)


def _exhaustive(G: GeneratorMatrix):
    f = G.field
    if f.q == 2:
        w, idx = gf2.gray_min_weight(G.packed(), G.n)
        coeffs = np.array([(idx >> j) & 1 for j in range(G.rank)], dtype=np.int64)
        return int(w), G.encode(coeffs)
    q, k = f.q, G.rank
    b = k
    while b > 1 and q**b > (1 << 14):
        b -= 1
    tail = G.rows[k - b:]
    coefs = np.array(list(itertools.product(range(q), repeat=b)), dtype=np.int64)
    block = np.zeros((len(coefs), G.n), dtype=np.int64)
    for j in range(b):
        block = f.add_v(block, f.mul_v(coefs[:, j][:, None], tail[j][None, :]))
    best, best_word = G.n + 1, None
    for head in itertools.product(range(q), repeat=k - b):
        base = np.zeros(G.n, dtype=np.int64)
        for j, c in enumerate(head):
            if c:
                base = f.add_v(base, f.mul_v(G.rows[j], c))
        words = f.add_v(block, base[None, :])
        wts = np.count_nonzero(words, axis=1)
        if not any(head):
            wts[0] = G.n + 1
        i = int(np.argmin(wts))
        if wts[i] < best:
            best, best_word = int(wts[i]), words[i]
    return best, best_word


def _sample(G: GeneratorMatrix, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    f = G.field
    best, best_word = G.n + 1, None
    # rows of the RREF basis are themselves codewords
    for row in G.rows:
        w = hamming_weight(row)
        if w < best:
            best, best_word = w, row
    done = 0
    while done < samples:
        batch = min(4096, samples - done)
        coefs = rng.integers(0, f.q, size=(batch, G.rank), dtype=np.int64)
        if f.q == 2:
            words = (coefs @ G.rows) & 1
        else:
            words = np.zeros((batch, G.n), dtype=np.int64)
            for j in range(G.rank):
                words = f.add_v(words, f.mul_v(coefs[:, j][:, None], G.rows[j][None, :]))
        wts = np.count_nonzero(words, axis=1)
        wts[wts == 0] = G.n + 1
        i = int(np.argmin(wts))
        if wts[i] < best:
            best, best_word = int(wts[i]), words[i]
        done += batch
    return best, best_word


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def puncture(G: GeneratorMatrix, positions) -> GeneratorMatrix:
    """Delete the given coordinates."""
    drop = set(int(p) for p in positions)
    if any(not 0 <= p < G.n for p in drop):
        raise ValueError("position out of range")
    keep = [c for c in range(G.n) if c not in drop]
    if not keep:
        raise ValueError("cannot puncture every coordinate")
    return GeneratorMatrix(G.field, G.rows[:, keep], len(keep))


def shorten(G: GeneratorMatrix, positions) -> GeneratorMatrix:
    """Keep the codewords vanishing on ``positions``, then delete those coordinates."""
    drop = sorted(set(int(p) for p in positions))
    if any(not 0 <= p < G.n for p in drop):
        raise ValueError("position out of range")
    keep = [c for c in range(G.n) if c not in set(drop)]
    if not keep:
        raise ValueError("cannot shorten every coordinate")
    R, piv = rref(G.field, G.rows[:, drop + keep]) if G.rank else (G.rows, G.pivots)
    sub = R[piv >= len(drop)] if G.rank else R
    return GeneratorMatrix(G.field, sub[:, len(drop):], len(keep))


def repeat(G: GeneratorMatrix, m: int) -> GeneratorMatrix:
    """Each codeword c becomes (c, c, ..., c), m copies."""
    if m < 1:
        raise ValueError("repetition factor must be >= 1")
    return GeneratorMatrix(G.field, np.tile(G.rows, (1, m)), G.n * m)


# ---------------------------------------------------------------------------
# reference codes
# ---------------------------------------------------------------------------

def reed_solomon(field: FieldCtx, points, m: int) -> GeneratorMatrix:
    """Evaluations of all polynomials of degree <= m at ``points``."""
    points = [int(b) for b in points]
    n = len(points)
    if len(set(points)) != n:
        raise ValueError("evaluation points must be distinct")
    if not 0 <= m < n <= field.q:
        raise ValueError("need 0 <= m < n <= q")
    rows = [[field.pow(b, j) for b in points] for j in range(m + 1)]
    return GeneratorMatrix(field, rows, n)


def reed_muller(r: int, k: int) -> GeneratorMatrix:
    """Binary RM(r, k).

    Coordinate j is the point of GF(2)^k whose coordinates are the binary
    digits of j, most significant first; variable X_i reads digit i.
    """
    if not 0 <= r <= k:
        raise ValueError("need 0 <= r <= k")
    pts = (np.arange(1 << k)[:, None] >> np.arange(k - 1, -1, -1)[None, :]) & 1
    rows = []
    for deg in range(r + 1):
        for mono in itertools.combinations(range(k), deg):
            rows.append(np.prod(pts[:, list(mono)], axis=1) if mono else np.ones(1 << k, dtype=np.int64))
    G = GeneratorMatrix(get_field(2), np.array(rows, dtype=np.int64), 1 << k)
    assert G.rank == sum(comb(k, i) for i in range(r + 1))
    return G


@dataclass(frozen=True)
class ConcatParams:
    q: int
    s: int
    m: int
    length: int
    dim: int
    square_distance_lb: int


def concat_params(q: int, s: int, m: int) -> ConcatParams:
    """Parameters of the concatenated Reed-Solomon construction (arithmetic only)."""
    if s < 1 or m < 0:
        raise ValueError("need s >= 1 and m >= 0")
    big = q ** (2 * s + 1)
    if not m * (q**s + 1) < big:
        raise ValueError(f"need m < q^(2s+1)/(q^s+1), got m={m}")
    return ConcatParams(q, s, m, (s + 1) * (2 * s + 1) * big, (2 * s + 1) * (m + 1),
                        big - m * (q**s + 1))
