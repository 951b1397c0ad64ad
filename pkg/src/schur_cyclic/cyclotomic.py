"""Index sets in Z/nZ: cyclotomic cosets, closures, sumsets, amplitude."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class IndexSet:
    """A subset of Z/nZ; ``q`` is the field size that coset closure refers to."""

    n: int
    members: frozenset = field(default_factory=frozenset)
    q: int = 2

    def __post_init__(self):
        members = frozenset(int(m) for m in self.members)
        if any(not 0 <= m < self.n for m in members):
            raise ValueError(f"members must lie in [0, {self.n})")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n: int, members, q: int = 2) -> "IndexSet":
        return cls(n, frozenset(int(m) % n for m in members), q)

    @classmethod
    def full(cls, n: int, q: int = 2) -> "IndexSet":
        return cls(n, frozenset(range(n)), q)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted)

    def __contains__(self, u):
        return u in self.members

    def __repr__(self):
        return f"IndexSet(n={self.n}, q={self.q}, {self.sorted})"

    @cached_property
    def sorted(self) -> list[int]:
        return sorted(self.members)

    @cached_property
    def is_coset_union(self) -> bool:
        return all((u * self.q) % self.n in self.members for u in self.members)

    def array(self) -> np.ndarray:
        return np.array(self.sorted, dtype=np.int64)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        m[self.sorted] = True
        return m

    @classmethod
    def from_mask(cls, mask, q: int = 2) -> "IndexSet":
        mask = np.asarray(mask, dtype=bool)
        return cls(len(mask), frozenset(np.flatnonzero(mask).tolist()), q)

    def complement(self) -> "IndexSet":
        return IndexSet(self.n, frozenset(range(self.n)) - self.members, self.q)

    def union(self, other: "IndexSet") -> "IndexSet":
        _same_modulus(self, other)
        return IndexSet(self.n, self.members | other.members, self.q)

    def difference(self, other) -> "IndexSet":
        other = other.members if isinstance(other, IndexSet) else frozenset(other)
        return IndexSet(self.n, self.members - other, self.q)

    def max(self) -> int:
        return max(self.members)


def _same_modulus(a: IndexSet, b: IndexSet):
    if a.n != b.n:
        raise ValueError(f"modulus mismatch: {a.n} vs {b.n}")


def coset(u: int, q: int, n: int) -> IndexSet:
    """The q-cyclotomic coset {u q^j mod n}."""
    out = set()
    x = u % n
    while x not in out:
        out.add(x)
        x = (x * q) % n
    return IndexSet(n, frozenset(out), q)


def all_cosets(q: int, n: int) -> list[IndexSet]:
    """Every q-cyclotomic coset of Z/nZ, ordered by least member."""
    seen = np.zeros(n, dtype=bool)
    out = []
    for u in range(n):
        if not seen[u]:
            c = coset(u, q, n)
            seen[c.sorted] = True
            out.append(c)
    return out


def coset_unions(q: int, n: int):
    """Yield every union of q-cyclotomic cosets (2^#cosets sets, empty first)."""
    cosets = all_cosets(q, n)
    for size in range(len(cosets) + 1):
        for combo in combinations(cosets, size):
            members = frozenset().union(*(c.members for c in combo))
            yield IndexSet(n, members, q)


def closure(s: IndexSet) -> IndexSet:
    """Smallest union of cosets containing s."""
    out = set()
    for u in s.members:
        if u not in out:
            out |= coset(u, s.q, s.n).members
    return IndexSet(s.n, frozenset(out), s.q)


def sumset(a: IndexSet, b: IndexSet) -> IndexSet:
    """{i + j mod n : i in a, j in b}."""
    _same_modulus(a, b)
    if not a.members or not b.members:
        return IndexSet(a.n, frozenset(), a.q)
    sums = np.add.outer(a.array(), b.array()).ravel() % a.n
    mask = np.zeros(a.n, dtype=bool)
    mask[sums] = True
    out = IndexSet.from_mask(mask, a.q)
    if a.is_coset_union and b.is_coset_union and a.q == b.q:
        assert out.is_coset_union, "sumset of coset unions must be coset-closed"
    return out


def negate(a: IndexSet) -> IndexSet:
    """-a = {n - i mod n}."""
    return IndexSet(a.n, frozenset((-u) % a.n for u in a.members), a.q)


def amplitude(a: IndexSet) -> int:
    """Size of the shortest cyclic interval of Z/nZ containing ``a``.

    Equivalently n minus the longest cyclic run of residues missing from a.
    """
    if not a.members:
        raise ValueError("amplitude of the empty set is undefined")
    m = a.array()
    gaps = np.diff(np.append(m, m[0] + a.n)) - 1
    return a.n - int(gaps.max())
