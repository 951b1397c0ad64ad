"""Restricted q-ary weights and the cyclic codes built from them.

For n = q^k - 1, the s-restricted weight of t is the largest digit sum over
the k cyclic windows of s consecutive base-q digits of t.  Taking as
generating set every residue of restricted weight <= m gives a code whose
square is controlled by residues of restricted weight <= 2m.  The size of
that set is a count of closed walks in a small digraph, which is what the
walk-graph half of this module computes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .cyclic import CyclicCodeSpec, extension_for, from_generating_set
from .cyclotomic import IndexSet, all_cosets, amplitude, negate, sumset
from .linear import exhaustive_cap

# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------


def digits(t: int, q: int, k: int) -> list[int]:
    """Base-q digits of t, least significant first (length k)."""
    out = []
    for _ in range(k):
        t, d = divmod(t, q)
        out.append(d)
    return out


def wq(t: int, q: int, k: int | None = None) -> int:
    """q-ary weight: sum of the base-q digits."""
    s = 0
    while t:
        t, d = divmod(t, q)
        s += d
    return s


def wqs(t: int, q: int, k: int, s: int) -> int:
    """s-restricted weight: max digit sum over k cyclic windows of length s."""
    if not 1 <= s <= k:
        raise ValueError("need 1 <= s <= k")
    d = digits(t, q, k)
    d = d + d[: s - 1]
    return max(sum(d[i:i + s]) for i in range(k))


def _digit_matrix(start: int, stop: int, q: int, k: int) -> np.ndarray:
    t = np.arange(start, stop, dtype=np.int64)
    return ((t[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q).astype(np.int16)


def restricted_weights(q: int, k: int, s: int, *, chunk: int = 1 << 20) -> np.ndarray:
    """wqs(t) for every t in [0, q^k - 1), vectorised."""
    if not 1 <= s <= k:
        raise ValueError("need 1 <= s <= k")
    n = q**k - 1
    out = np.empty(n, dtype=np.int16)
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        D = _digit_matrix(start, stop, q, k)
        ext = np.concatenate([D, D[:, : s - 1]], axis=1)
        cs = np.concatenate([np.zeros((len(D), 1), np.int32), np.cumsum(ext, axis=1, dtype=np.int32)], axis=1)
        out[start:stop] = (cs[:, s:s + k] - cs[:, :k]).max(axis=1)
    return out


def q_weights(q: int, k: int) -> np.ndarray:
    """wq(t) for every t in [0, q^k - 1)."""
    n = q**k - 1
    out = np.zeros(n, dtype=np.int16)
    t = np.arange(n, dtype=np.int64)
    for _ in range(k):
        out += (t % q).astype(np.int16)
        t //= q
    return out


@dataclass(frozen=True)
class RWParams:
    q: int
    k: int
    s: int
    m: int

    def __post_init__(self):
        if self.q < 2 or self.k < 1:
            raise ValueError("need q >= 2 and k >= 1")
        if not 1 <= self.s <= self.k:
            raise ValueError(f"need 1 <= s <= k, got s={self.s}, k={self.k}")
        if not 1 <= self.m < self.s:
            raise ValueError(f"need 1 <= m < s, got m={self.m}, s={self.s}")

    @property
    def n(self) -> int:
        return self.q**self.k - 1

    @property
    def square_safe(self) -> bool:
        return 2 * self.m <= self.s - 1

    @property
    def weight_cap(self) -> int:
        """floor(m k / s), the largest q-ary weight inside W."""
        return (self.m * self.k) // self.s


def _check_enumerable(q: int, k: int):
    if q**k > exhaustive_cap():
        raise ValueError(f"q^k = {q**k} exceeds the enumeration cap {exhaustive_cap()}")


def w_set(q: int, k: int, s: int, m: int) -> IndexSet:
    """W_{k,s,m}: residues mod q^k - 1 of restricted weight <= m."""
    _check_enumerable(q, k)
    mask = restricted_weights(q, k, s) <= m
    W = IndexSet.from_mask(mask, q)
    assert W.is_coset_union, "restricted weight must be constant on cosets"
    return W


# ---------------------------------------------------------------------------
# extremal elements B and B-hat
# ---------------------------------------------------------------------------


def _greedy_max(q: int, k: int, s: int, window_cap: int, total_cap: int | None = None) -> int:
    """Largest t < q^k whose windows (and total) respect the caps.

    Digits are fixed most significant first, each to the largest value for
    which the partial string completed by zeros is still admissible; zeros
    never raise a window sum, so that completion decides feasibility.
    """
    d = [0] * k

    def ok():
        ext = d + d[: s - 1]
        if any(sum(ext[i:i + s]) > window_cap for i in range(k)):
            return False
        return total_cap is None or sum(d) <= total_cap

    for pos in range(k - 1, -1, -1):
        for v in range(q - 1, -1, -1):
            d[pos] = v
            if ok():
                break
    return sum(v * q**i for i, v in enumerate(d))


def b_max_formula(k: int, s: int, m: int) -> int:
    """Closed form of B_{k,s,m} for q = 2."""
    blocks, ell = divmod(k, s)
    head = sum(2 ** (k - i * s - j) for i in range(blocks) for j in range(1, m + 1))
    return head + sum(2**i for i in range(s - m, ell))


def bhat_max_formula(k: int, s: int, m: int) -> int:
    """Closed form of B-hat_{k,s,2m} for q = 2 (needs 2m <= s - 1)."""
    blocks, ell = divmod(k, s)
    head = sum(2 ** (k - i * s - j) for i in range(blocks) for j in range(1, 2 * m + 1))
    u = max(s - 2 * m, ell - (2 * ((m * k) // s) - 2 * m * blocks))
    return head + sum(2**i for i in range(u, ell))


def b_max(q: int, k: int, s: int, m: int) -> int:
    """B_{k,s,m} = max W_{k,s,m}."""
    RWParams(q, k, s, m)
    val = _greedy_max(q, k, s, m)
    if q == 2:
        closed = b_max_formula(k, s, m)
        if closed != val:
            raise RuntimeError(f"B_{{{k},{s},{m}}}: greedy {val} != closed form {closed}")
    return val


def bhat_max(q: int, k: int, s: int, m: int) -> int:
    """B-hat_{k,s,2m}: max of W_{k,s,2m} among t with wq(t) <= 2 floor(mk/s)."""
    p = RWParams(q, k, s, m)
    if 2 * m > s * (q - 1):
        raise ValueError("window cap 2m exceeds the largest window sum")
    val = _greedy_max(q, k, s, 2 * m, 2 * p.weight_cap)
    if q == 2 and p.square_safe:
        closed = bhat_max_formula(k, s, m)
        if closed != val:
            raise RuntimeError(f"Bhat_{{{k},{s},{2 * m}}}: greedy {val} != closed form {closed}")
    return val


# ---------------------------------------------------------------------------
# walk graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WalkGraph:
    """Digraph on (s-1)-digit strings of digit sum <= m.

    x -> y is an edge when y is x shifted by one place (x_2..x_{s-1} =
    y_1..y_{s-2}) and the glued string x_1..x_{s-1} y_{s-1} has sum <= m.
    Closed walks of length k correspond to t in W_{k,s,m} (k >= s).
    """

    q: int
    s: int
    m: int
    vertices: tuple
    adjacency: np.ndarray
    charpoly: tuple  # p_0 .. p_g, low-to-high, monic

    @property
    def order(self) -> int:
        return len(self.vertices)


MAX_GRAPH_VERTICES = 4096


def build_graph(q: int, s: int, m: int) -> WalkGraph:
    if not 1 <= m < s:
        raise ValueError("need 1 <= m < s")
    verts = [v for v in itertools.product(range(q), repeat=s - 1) if sum(v) <= m]
    if len(verts) > MAX_GRAPH_VERTICES:
        raise ValueError(f"{len(verts)} vertices exceed the cap {MAX_GRAPH_VERTICES}")
    index = {v: i for i, v in enumerate(verts)}
    A = np.zeros((len(verts), len(verts)), dtype=np.int64)
    for x in verts:
        for last in range(q):
            y = x[1:] + (last,)
            if y in index and sum(x) + last <= m:
                A[index[x], index[y]] = 1
    return WalkGraph(q, s, m, tuple(verts), A, charpoly(A))


def charpoly(A) -> tuple:
    """Integer coefficients of det(X I - A), low-to-high (Faddeev-LeVerrier)."""
    A = np.array(A, dtype=object)
    g = A.shape[0]
    coeffs = [0] * (g + 1)
    coeffs[g] = 1
    eye = np.identity(g, dtype=object) if g else np.zeros((0, 0), dtype=object)
    M = np.zeros((g, g), dtype=object)
    for k in range(1, g + 1):
        M = A.dot(M) + coeffs[g - k + 1] * eye
        tr = int(np.trace(A.dot(M)))
        if tr % k:
            raise ArithmeticError("non-integral characteristic polynomial coefficient")
        coeffs[g - k] = -tr // k
    return tuple(int(c) for c in coeffs)


def walk_traces(A, kmax: int) -> list[int]:
    """[Tr(A^0), ..., Tr(A^kmax)] in exact integers."""
    A = np.array(A, dtype=object)
    P = np.identity(A.shape[0], dtype=object)
    out = []
    for _ in range(kmax + 1):
        out.append(int(np.trace(P)))
        P = P.dot(A)
    return out


def n_sequence(graph: WalkGraph, kmax: int) -> list[int]:
    """N'_0 .. N'_kmax via the characteristic-polynomial recurrence.

    Seeds are Tr(A^j) for j < g; beyond that
    N'_k = -sum_{j=1..g} p_{g-j} N'_{k-j}.
    """
    p = graph.charpoly
    g = len(p) - 1
    seq = walk_traces(graph.adjacency, min(kmax, g - 1))
    for k in range(len(seq), kmax + 1):
        seq.append(-sum(p[g - j] * seq[k - j] for j in range(1, g + 1)))
    return seq


CROSSCHECK_LIMIT = 1 << 16


def n_count(q: int, s: int, m: int, k: int) -> int:
    """N'_{k,s,m} = Tr(A^k) for the walk graph of (q, s, m).

    For k >= s and small q^k the value is checked against |W_{k,s,m}|.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    val = n_sequence(build_graph(q, s, m), k)[k]
    if k >= s and q**k <= CROSSCHECK_LIMIT:
        size = len(w_set(q, k, s, m))
        if size != val:
            raise RuntimeError(f"N'={val} but |W_{{{k},{s},{m}}}| = {size}")
    return val


def count_closed_walks(graph: WalkGraph, k: int) -> int:
    """Closed walks of length k, by explicit depth-first enumeration."""
    succ = [np.flatnonzero(row).tolist() for row in graph.adjacency]
    total = 0

    def walk(start, v, steps):
        nonlocal total
        if steps == k:
            total += v == start
            return
        for w in succ[v]:
            walk(start, w, steps + 1)

    for v in range(graph.order):
        walk(v, v, 0)
    return total


def walk_of(t: int, q: int, k: int, s: int) -> list[tuple]:
    """The closed walk (t^[0], ..., t^[k]) attached to t."""
    d = digits(t, q, k)
    d = d + d[: s]
    return [tuple(d[j:j + s - 1]) for j in range(k + 1)]


# ---------------------------------------------------------------------------
# code constructions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    k: int
    n: int
    dim_C: int
    d_C_lower: int
    dim_Csq: int
    d_Csq_lower: int
    flags: tuple = field(default_factory=tuple)

    def values(self) -> tuple:
        return (self.k, self.n, self.dim_C, self.d_C_lower, self.dim_Csq, self.d_Csq_lower)


def _exactness_flags(q: int, k: int, s: int, m: int, drop_zero: bool = False) -> tuple:
    if q == 2 and (s, m) in ((3, 1), (5, 2)) and k % s == 0 and not drop_zero:
        return ("d_Csq_exact",)
    return ()


def construct_restricted(q: int, k: int, s: int, m: int, drop_zero: bool = False):
    """Code with generating set W_{k,s,m} (optionally without 0) and its bounds."""
    p = RWParams(q, k, s, m)
    if not p.square_safe:
        raise ValueError(f"need m <= (s-1)/2, got s={s}, m={m}")
    if drop_zero and not 2 * p.weight_cap < k:
        raise ValueError(f"dropping 0 needs 2*floor(mk/s) < k, got {2 * p.weight_cap} >= {k}")
    W = w_set(q, k, s, m)
    I = W.difference({0}) if drop_zero else W
    spec = from_generating_set(q, p.n, I)
    shift = 1 if drop_zero else 0
    row = TableRow(
        k=k,
        n=p.n,
        dim_C=len(I),
        d_C_lower=p.n - b_max(q, k, s, m) + shift,
        dim_Csq=len(sumset(I, I)),
        d_Csq_lower=p.n - bhat_max(q, k, s, m) + shift,
        flags=_exactness_flags(q, k, s, m, drop_zero),
    )
    return spec, row


def construct_bch_t(q: int, n: int, t: int):
    """Union of the cosets lying inside {0..t}; d(C) >= n - t, d(C^2) >= n - 2t."""
    if not 0 <= t < n:
        raise ValueError("need 0 <= t < n")
    ext = extension_for(q, n)
    r = ext.r
    members = set()
    for c in all_cosets(q, n):
        if c.max() <= t:
            members |= c.members
    I = IndexSet(n, frozenset(members), q)
    spec = from_generating_set(q, n, I)
    dim_lb = max(1, n - (n - t - 1) * r)
    if q == 2:
        dim_lb = max(dim_lb, max(1, -(-(2 * n - (n - t) * r) // 2)))
    if spec.dim < dim_lb:
        raise RuntimeError(f"dim {spec.dim} below the guaranteed {dim_lb}")
    row = TableRow(k=r, n=n, dim_C=spec.dim, d_C_lower=max(1, n - t),
                   dim_Csq=len(sumset(I, I)), d_Csq_lower=max(1, n - 2 * t))
    return spec, row


def construct_qweight(q: int, k: int, h: int):
    """Generating set {i : wq(i) <= (q-1) h}; d(C^2) >= q^(k-2h) - 1."""
    if h < 1 or k < 1:
        raise ValueError("need h >= 1 and k >= 1")
    _check_enumerable(q, k)
    n = q**k - 1
    I = IndexSet.from_mask(q_weights(q, k) <= (q - 1) * h, q)
    spec = from_generating_set(q, n, I)
    I2 = sumset(I, I)
    if 2 * h <= k:
        assert amplitude(I2) <= 1 + q**k - q ** (k - 2 * h)
        sq_lb = max(1, q ** (k - 2 * h) - 1)
    else:
        sq_lb = 1
    row = TableRow(k=k, n=n, dim_C=len(I), d_C_lower=n - amplitude(I) + 1,
                   dim_Csq=len(I2), d_Csq_lower=sq_lb)
    return spec, row


def special_low_weight_word(k: int, s: int) -> np.ndarray:
    """Weight n/(2^s - 1) word of the square, for s in {3, 5} dividing k.

    f = (X^n - 1)/(X^(n/p) - 1) with p = 2^s - 1 has its exponents in
    -(I + I), so its evaluation vector lies in the square; the vector is the
    indicator of multiples of p.  Membership is re-checked against the
    square's defining set and the weight is checked to be n/p.
    """
    if s not in (3, 5):
        raise ValueError("only the s=3 (m=1) and s=5 (m=2) families are covered")
    if k % s:
        raise ValueError(f"{s} must divide k={k}")
    m = (s - 1) // 2
    n = 2**k - 1
    p = 2**s - 1
    step = n // p
    I = w_set(2, k, s, m)
    I2 = sumset(I, I)
    exps = [j * step for j in range(p)]
    neg = negate(I2)
    if any(e not in neg for e in exps):
        raise RuntimeError("f is not supported on -(I + I)")
    ext = extension_for(2, n)
    big = ext.big
    bp = ext.beta_powers()
    i = np.arange(n, dtype=np.int64)
    # f(beta^i) = sum_j beta^(i * j * n/p)
    vals = big.sum_v(bp[(i[:, None] * np.array(exps)[None, :]) % n], axis=1)
    if np.any(vals > 1):
        raise RuntimeError("evaluation vector is not binary")
    word = vals.astype(np.uint8)
    support = np.flatnonzero(word)
    defining = I2.complement().array()
    syndromes = big.sum_v(bp[(defining[:, None] * support[None, :]) % n], axis=1) if len(defining) else []
    if np.any(np.asarray(syndromes) != 0):
        raise RuntimeError("word fails the parity checks of the square")
    if len(support) != step:
        raise RuntimeError(f"weight {len(support)} != n/{p} = {step}")
    return word


# ---------------------------------------------------------------------------
# closed-form families (recurrences only)
# ---------------------------------------------------------------------------


def _family_m1(s: int, k: int) -> tuple[int, int, int]:
    """(N', d, d-hat) for q=2, m=1 from the recurrences in k."""
    N = [s] + [1] * (s - 1)
    for j in range(s, k + 1):
        N.append(N[j - 1] + N[j - s])
    d = 2 ** (s - 1) - 1
    dh = 2 ** (s - 2) - 1
    for j in range(s + 1, k + 1):
        if j % s == 0:
            d = 2 * d - 2 ** (s - 1) + 1
            dh = 2 * dh - 3 * 2 ** (s - 2) + 1
        else:
            d = 2 * d + 1
            dh = 2 * dh + 1
    return N[k], d, dh


_S5M2_SEEDS = (1, 1, 4, 5, 16, 22, 29, 45, 76, 126)


def _family_s5m2(k: int) -> tuple[int, int, int]:
    """(N', d, d-hat) for q=2, s=5, m=2 from the recurrences in k."""
    N = {j + 1: v for j, v in enumerate(_S5M2_SEEDS)}
    for j in range(11, k + 1):
        N[j] = N[j - 1] + N[j - 3] + 2 * N[j - 5] - N[j - 8] - N[j - 10]
    d, dh = 7, 1
    for j in range(6, k + 1):
        d = 2 * d - 7 if j % 5 in (0, 4) else 2 * d + 1
        dh = 2 * dh - 5 if j % 5 in (0, 3) else 2 * dh + 1
    return N[k], d, dh


TABLES = {"t1": (3, 1), "t2": (5, 2)}


def table(which: str, kmin: int | None = None, kmax: int = 12, *, with_square_dim: bool = True):
    """Rows of the (s=3, m=1) or (s=5, m=2) binary family.

    dim C and both distance bounds come from the recurrences alone;
    dim C^2 = |W + W| needs the index sets and is skipped when
    ``with_square_dim`` is false (reported as -1).
    """
    if which not in TABLES:
        raise ValueError(f"unknown table {which!r}; expected one of {sorted(TABLES)}")
    s, m = TABLES[which]
    kmin = s if kmin is None else kmin
    if kmin < s:
        raise ValueError(f"k must be >= {s}")
    rows = []
    for k in range(kmin, kmax + 1):
        N, d, dh = _family_m1(s, k) if m == 1 else _family_s5m2(k)
        if with_square_dim:
            W = w_set(2, k, s, m)
            dim_sq = len(sumset(W, W))
        else:
            dim_sq = -1
        rows.append(TableRow(k, 2**k - 1, N, d, dim_sq, dh, _exactness_flags(2, k, s, m)))
    return rows


def spec_for_row(which: str, k: int) -> CyclicCodeSpec:
    s, m = TABLES[which]
    return construct_restricted(2, k, s, m)[0]
