import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schur_cyclic import gf2
from schur_cyclic.algebra import get_field
from schur_cyclic.cyclic import from_generating_set
from schur_cyclic.linear import (GeneratorMatrix, concat_params, min_distance, nullspace,
                                 puncture, reed_muller, reed_solomon, repeat, rref_generic,
                                 schur_square, schur_square_rank, shorten)

F2 = get_field(2)
HAMMING = GeneratorMatrix(F2, [[1, 1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 1, 0, 0],
                               [0, 0, 1, 1, 0, 1, 0], [0, 0, 0, 1, 1, 0, 1]])


def brute_distance(G):
    """Minimum weight by listing every nonzero combination."""
    f = G.field
    best = G.n + 1
    for coeffs in itertools.product(range(f.q), repeat=G.rank):
        if any(coeffs):
            best = min(best, int(np.count_nonzero(G.encode(coeffs))))
    return best


def brute_square(G):
    """Square by independent generic elimination of every pairwise product."""
    f = G.field
    prods = [f.mul_v(a, b) for a, b in itertools.combinations_with_replacement(G.rows, 2)]
    return rref_generic(f, np.array(prods))[0]


binary_matrices = st.integers(1, 7).flatmap(
    lambda k: st.integers(k, 40).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=k, max_size=k)))


@settings(max_examples=150, deadline=None)
@given(binary_matrices)
def test_gf2_rref_matches_generic(rows):
    rows = np.array(rows)
    packed_rows, packed_piv = gf2.rref(rows)
    ref_rows, ref_piv = rref_generic(F2, rows)
    assert np.array_equal(packed_rows, ref_rows)
    assert np.array_equal(packed_piv, ref_piv)


@pytest.mark.parametrize("n", [1, 63, 64, 65, 130])
def test_pack_roundtrip(n):
    rng = np.random.default_rng(n)
    rows = rng.integers(0, 2, (5, n)).astype(np.uint8)
    assert np.array_equal(gf2.unpack(gf2.pack(rows), n), rows)
    assert np.array_equal(gf2.weights(gf2.pack(rows)), rows.sum(axis=1))


@settings(max_examples=60, deadline=None)
@given(binary_matrices)
def test_gf2_square_matches_generic(rows):
    G = GeneratorMatrix(F2, rows)
    if G.rank == 0:
        return
    assert np.array_equal(schur_square(G).rows, brute_square(G))
    assert schur_square_rank(G) == schur_square(G).rank


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2), (5, 1)])
def test_general_q_square_and_nullspace(p, e):
    f = get_field(p, e)
    rng = np.random.default_rng(p * 10 + e)
    M = rng.integers(0, f.q, (4, 9))
    G = GeneratorMatrix(f, M)
    assert np.array_equal(schur_square(G).rows, brute_square(G))
    N = nullspace(f, M)
    assert N.shape[0] == 9 - G.rank
    for v in N:
        assert np.all(f.sum_v(f.mul_v(M, v[None, :]), axis=1) == 0)


@settings(max_examples=40, deadline=None)
@given(binary_matrices, st.integers(0, 2**32 - 1))
def test_square_rank_invariant_under_row_operations(rows, seed):
    G = GeneratorMatrix(F2, rows)
    rng = np.random.default_rng(seed)
    k = G.rank
    while True:
        T = rng.integers(0, 2, (k, k))
        if gf2.rank(T) == k:
            break
    H = GeneratorMatrix(F2, (T @ G.rows) % 2 if k else G.rows, G.n)
    assert H == G
    assert schur_square_rank(H) == schur_square_rank(G)


def test_full_space_is_idempotent():
    G = GeneratorMatrix(F2, np.eye(6, dtype=int))
    assert schur_square(G) == G


def test_hamming():
    assert HAMMING.rank == 4
    r = min_distance(HAMMING)
    assert (r.value, r.exact, r.method) == (3, True, "exhaustive")
    assert int(np.count_nonzero(r.witness)) == 3 and HAMMING.contains(r.witness)
    assert schur_square(HAMMING).rank == 7


def test_t2_k6_square_rank():
    from schur_cyclic.restricted import w_set
    c = from_generating_set(2, 63, w_set(2, 6, 5, 2))
    assert c.dim == 22
    assert schur_square(c.generator_matrix()).rank == 57


def test_square_of_t1_k4_distance():
    c = from_generating_set(2, 15, [0, 1, 2, 4, 8])
    sq = schur_square(c.generator_matrix())
    assert sq.rank == 11
    assert min_distance(sq).value == 3


@pytest.mark.parametrize("m", [1, 4, 9])
def test_repetition_code(m):
    G = GeneratorMatrix(F2, [[1] * m])
    assert min_distance(G).value == m


@settings(max_examples=40, deadline=None)
@given(binary_matrices)
def test_exhaustive_distance_matches_brute_force(rows):
    G = GeneratorMatrix(F2, rows)
    if G.rank == 0:
        return
    assert min_distance(G).value == brute_distance(G)
    perm = np.random.default_rng(0).permutation(G.n)
    assert min_distance(G.permute(perm)).value == brute_distance(G)


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2)])
def test_exhaustive_distance_general_q(p, e):
    f = get_field(p, e)
    rng = np.random.default_rng(1)
    for _ in range(5):
        G = GeneratorMatrix(f, rng.integers(0, f.q, (4, 10)))
        assert min_distance(G).value == brute_distance(G)


def test_sampling_is_seeded_and_certifies_with_bound():
    a = min_distance(HAMMING, cap=1, samples=200, seed=5)
    b = min_distance(HAMMING, cap=1, samples=200, seed=5)
    assert a == b and a.method == "witness" and a.seed == 5
    assert not a.exact
    c = min_distance(HAMMING, cap=1, samples=200, seed=5, lower_bound=3)
    assert c.value == 3 and c.exact
    d = min_distance(HAMMING, cap=1, samples=0, lower_bound=3)
    assert d.method == "bound_only" and not d.exact


def test_zero_code_distance_raises():
    with pytest.raises(ValueError):
        min_distance(GeneratorMatrix.zero(F2, 5))


def test_puncture_and_shorten_hamming():
    P = puncture(HAMMING, [0])
    assert (P.n, P.rank, min_distance(P).value) == (6, 4, 2)
    S = shorten(HAMMING, [0])
    assert (S.n, S.rank) == (6, 3)
    assert min_distance(S).value >= 3
    assert puncture(HAMMING, []) == HAMMING
    with pytest.raises(ValueError):
        puncture(HAMMING, range(7))


def test_shorten_keeps_exactly_the_vanishing_words():
    rng = np.random.default_rng(3)
    G = GeneratorMatrix(F2, rng.integers(0, 2, (6, 14)))
    S = shorten(G, [2, 5])
    words = {tuple(np.delete(G.encode(c), [2, 5])) for c in itertools.product(range(2), repeat=G.rank)
             if not G.encode(c)[[2, 5]].any()}
    mine = {tuple(S.encode(c)) for c in itertools.product(range(2), repeat=S.rank)}
    assert words == mine


@pytest.mark.parametrize("a,b", [(0, 1), (1, 0), (1, 2), (2, 1)])
def test_shorten_puncture_square_guarantees(a, b):
    c = from_generating_set(2, 15, [0, 1, 2, 4, 8, 5, 10])
    G = c.generator_matrix()
    d_sq = min_distance(schur_square(G)).value
    rng = np.random.default_rng(a * 7 + b)
    pos = rng.choice(15, a + b, replace=False)
    D = shorten(G, pos[:a])
    keep = [j for j in range(15) if j not in pos[:a]]
    if b:
        D = puncture(D, [keep.index(j) for j in pos[a:]])
    assert D.rank >= G.rank - a
    assert min_distance(schur_square(D)).value >= d_sq - b


def test_repeat():
    assert repeat(HAMMING, 1) == HAMMING
    D = repeat(HAMMING, 2)
    assert (D.n, D.rank) == (14, 4)
    assert min_distance(schur_square(D)).value == 2
    E = repeat(GeneratorMatrix(F2, np.eye(4, dtype=int)), 3)
    assert (E.n, E.rank, min_distance(E).value) == (12, 4, 3)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_reed_solomon_square(m):
    f = get_field(2, 3)
    pts = [f.exp(i) for i in range(7)]
    G = reed_solomon(f, pts, m)
    assert G.rank == m + 1
    assert schur_square(G) == reed_solomon(f, pts, min(2 * m, 6))
    assert min_distance(G).value == 7 - m


def test_reed_solomon_rejects_repeated_points():
    with pytest.raises(ValueError):
        reed_solomon(get_field(2, 3), [1, 1, 2], 1)


@pytest.mark.parametrize("r,k", [(1, 3), (1, 4), (2, 4), (2, 5), (1, 5)])
def test_reed_muller(r, k):
    G = reed_muller(r, k)
    assert G.rank == sum(comb(k, i) for i in range(r + 1))
    assert min_distance(G).value == 2 ** (k - r)
    sq = schur_square(G)
    assert sq == reed_muller(min(k, 2 * r), k)
    assert min_distance(sq).value == 2 ** max(0, k - 2 * r)


@pytest.mark.parametrize("args,expected", [
    ((2, 3, 6), (3584, 49, 74)),
    ((2, 3, 7), (3584, 56, 65)),
    ((2, 1, 0), (48, 3, 8)),
])
def test_concat_params(args, expected):
    c = concat_params(*args)
    assert (c.length, c.dim, c.square_distance_lb) == expected


def test_concat_params_range():
    with pytest.raises(ValueError):
        concat_params(2, 1, 3)
