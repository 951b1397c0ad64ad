import pytest
from hypothesis import given, settings, strategies as st

from schur_cyclic.cyclotomic import (IndexSet, all_cosets, amplitude, closure, coset,
                                     coset_unions, negate, sumset)


def naive_amplitude(members, n):
    best = n
    for start in range(n):
        for length in range(1, n + 1):
            block = {(start + j) % n for j in range(length)}
            if set(members) <= block:
                best = min(best, length)
                break
    return best


def subsets(n):
    return st.sets(st.integers(0, n - 1), min_size=1).map(lambda s: IndexSet(n, frozenset(s)))


def test_coset_examples():
    assert coset(1, 2, 7).sorted == [1, 2, 4]
    assert coset(5, 2, 15).sorted == [5, 10]
    assert coset(0, 3, 8).sorted == [0]


@pytest.mark.parametrize("q,n,count", [(2, 7, 3), (2, 15, 5), (2, 31, 7), (3, 8, 5), (7, 6, 6)])
def test_cosets_partition(q, n, count):
    cs = all_cosets(q, n)
    assert len(cs) == count
    members = [u for c in cs for u in c]
    assert sorted(members) == list(range(n))
    assert all(c.is_coset_union for c in cs)


def test_coset_unions_enumeration():
    sets = list(coset_unions(2, 15))
    assert len(sets) == 2**5
    assert len(sets[0]) == 0 and len(sets[-1]) == 15
    assert len({s.members for s in sets}) == 32


@settings(max_examples=150, deadline=None)
@given(subsets(21), subsets(21))
def test_sumset_matches_definition(a, b):
    ref = {(i + j) % 21 for i in a for j in b}
    assert sumset(a, b).members == ref


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**7 - 1))
def test_sumset_of_coset_unions_is_closed(bits):
    cs = all_cosets(2, 31)
    I = IndexSet(31, frozenset().union(*[c.members for i, c in enumerate(cs) if bits >> i & 1]))
    assert I.is_coset_union
    assert sumset(I, I).is_coset_union


def test_sumset_modulus_mismatch():
    with pytest.raises(ValueError):
        sumset(IndexSet.of(7, [1]), IndexSet.of(15, [1]))


@settings(max_examples=200, deadline=None)
@given(subsets(17))
def test_amplitude_matches_naive(a):
    assert amplitude(a) == naive_amplitude(a.members, 17)


def test_amplitude_examples():
    assert amplitude(IndexSet.of(7, [0, 1, 2, 4])) == 5
    assert amplitude(IndexSet.full(9)) == 9
    assert amplitude(IndexSet.of(9, [8, 0])) == 2
    with pytest.raises(ValueError):
        amplitude(IndexSet(9))


@settings(max_examples=100, deadline=None)
@given(subsets(20))
def test_negate_is_an_involution(a):
    assert negate(negate(a)) == a
    assert amplitude(negate(a)) == amplitude(a)


@settings(max_examples=100, deadline=None)
@given(subsets(26))
def test_closure_is_least_coset_union(a):
    a = IndexSet(26, a.members, 3)
    c = closure(a)
    assert c.is_coset_union and a.members <= c.members
    for cs in all_cosets(3, 26):
        if cs.members & a.members:
            assert cs.members <= c.members
        else:
            assert not cs.members & c.members


def test_complement_and_mask():
    a = IndexSet.of(7, [0, 1, 2, 4])
    assert a.complement().sorted == [3, 5, 6]
    assert IndexSet.from_mask(a.mask()) == a
    assert a.union(a.complement()) == IndexSet.full(7)
    with pytest.raises(ValueError):
        IndexSet(7, frozenset({7}))
