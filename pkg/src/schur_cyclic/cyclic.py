"""Cyclic codes given by generating sets, their squares and duals, plus two
independent routes to the square: the subfield subcode of an evaluation code
and the gcd-of-products generator formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (MAX_BASE_ORDER, ExtensionCtx, FieldCtx, Poly, build_extension,
                      field_of_order, get_field)
from .cyclotomic import IndexSet, amplitude, closure, negate, sumset
from .linear import GeneratorMatrix, nullspace


@lru_cache(maxsize=None)
def extension_for(q: int, n: int) -> ExtensionCtx:
    if q > MAX_BASE_ORDER:
        raise ValueError(f"q={q} exceeds {MAX_BASE_ORDER}")
    return build_extension(field_of_order(q), n)


@dataclass(frozen=True, eq=False)
class CyclicCodeSpec:
    """The cyclic code of length n over GF(q) with generating set I.

    J is the defining set (the complement of I) and g = prod_{j in J}(X - beta^j).
    I = {} is the zero code, represented with g = X^n - 1.
    """

    q: int
    n: int
    I: IndexSet
    J: IndexSet
    g: Poly
    ext: ExtensionCtx

    @property
    def dim(self) -> int:
        return len(self.I)

    @property
    def field(self) -> FieldCtx:
        return self.ext.base

    def is_zero(self) -> bool:
        return not self.I.members

    def __eq__(self, other):
        return (isinstance(other, CyclicCodeSpec) and (self.q, self.n) == (other.q, other.n)
                and self.I == other.I)

    def __hash__(self):
        return hash((self.q, self.n, self.I.members))

    def __repr__(self):
        return f"CyclicCodeSpec(q={self.q}, n={self.n}, dim={self.dim})"

    def generator_matrix(self) -> GeneratorMatrix:
        return cyclic_generator_matrix(self.field, self.n, self.g)


def cyclic_generator_matrix(field: FieldCtx, n: int, g: Poly) -> GeneratorMatrix:
    """Rows g, gX, ..., gX^(n - deg g - 1) of the ideal generated by g | X^n - 1."""
    k = n - g.degree
    if k <= 0:
        return GeneratorMatrix.zero(field, n)
    base = g.array(n)
    rows = np.stack([np.roll(base, j) for j in range(k)])
    return GeneratorMatrix(field, rows, n)


def from_generating_set(q: int, n: int, I, *, auto_close: bool = False) -> CyclicCodeSpec:
    """Build the code with generating set I (a union of q-cyclotomic cosets)."""
    ext = extension_for(q, n)
    if not isinstance(I, IndexSet):
        I = IndexSet.of(n, I, q)
    if I.n != n:
        raise ValueError(f"index set lives in Z/{I.n}, expected Z/{n}")
    if I.q != q:
        I = IndexSet(n, I.members, q)
    if not I.is_coset_union:
        if not auto_close:
            raise ValueError(f"generating set is not a union of {q}-cyclotomic cosets: {I.sorted}")
        I = closure(I)
    big = ext.big
    f_big = Poly.from_roots(big, [ext.beta_pow(i) for i in I.sorted])
    try:
        f = ext.restrict_poly(f_big)
    except ValueError as exc:
        raise RuntimeError(f"prod (X - beta^i) left GF({q}): {exc}") from exc
    xn1 = Poly.x_n_minus_1(ext.base, n)
    g, rem = divmod(xn1, f)
    if not rem.is_zero():
        raise RuntimeError("generator does not divide X^n - 1")
    J = I.complement()
    if g.degree != len(J):
        raise RuntimeError("deg g differs from |J|")
    return CyclicCodeSpec(q, n, I, J, g, ext)


def square_spec(c: CyclicCodeSpec) -> CyclicCodeSpec:
    """The square, a cyclic code with generating set I + I."""
    I2 = sumset(c.I, c.I)
    assert I2.is_coset_union, "I + I must be a union of cosets"
    return from_generating_set(c.q, c.n, I2)


def dual_spec(c: CyclicCodeSpec) -> CyclicCodeSpec:
    """The dual code, with generating set -J."""
    return from_generating_set(c.q, c.n, negate(c.J))


@dataclass(frozen=True)
class BoundsReport:
    n: int
    dim_C: int
    d_C_lower: int
    dim_Csq: int
    d_Csq_lower: int
    singleton_cap: int


def singleton_cap(n: int, dim: int) -> int:
    """Upper bound max{1, n - 2 dim + 2} on the distance of the square."""
    return max(1, n - 2 * dim + 2)


def bounds(c: CyclicCodeSpec) -> BoundsReport:
    """Amplitude (BCH) lower bounds for C and its square."""
    if c.is_zero():
        raise ValueError("bounds are undefined for the zero code")
    I2 = sumset(c.I, c.I)
    return BoundsReport(
        n=c.n,
        dim_C=c.dim,
        d_C_lower=c.n - amplitude(c.I) + 1,
        dim_Csq=len(I2),
        d_Csq_lower=c.n - amplitude(I2) + 1,
        singleton_cap=singleton_cap(c.n, c.dim),
    )


def _digit_planes(big: FieldCtx, values: np.ndarray) -> np.ndarray:
    """GF(p)-coordinates of each entry: shape values.shape + (big.e,)."""
    p = big.p
    scale = p ** np.arange(big.e, dtype=np.int64)
    return (values[..., None] // scale) % p


def subfield_subcode_oracle(M: IndexSet, ext: ExtensionCtx) -> GeneratorMatrix:
    """Basis of B(M) restricted to GF(q)^n.

    B(M) is the set of evaluation vectors (f(1), f(beta), ..., f(beta^(n-1)))
    for f in the span of X^i, i in M.  Each coefficient f_i is written over
    the GF(p) basis of the big field; the restriction to GF(q) is the kernel
    of the GF(p)-linear map y -> y^q - y applied coordinatewise, which we
    solve for and then map back to codewords.
    """
    n, big, base = ext.n, ext.big, ext.base
    if M.n != n:
        raise ValueError("index set modulus differs from n")
    if not M.members:
        return GeneratorMatrix.zero(base, n)
    prime = get_field(big.p, 1)
    bp = ext.beta_powers()
    ls = np.arange(n, dtype=np.int64)
    # y[a, b, l] = x^b * beta^(i_a * l)
    evals = np.stack([bp[(i * ls) % n] for i in M.sorted])
    basis = np.array(ext.basis, dtype=np.int64)
    y = big.mul_v(evals[:, None, :], basis[None, :, None])
    phi = big.sub_v(big.pow_v(y, base.q), y)
    # rows: (l, digit); columns: (a, b)
    A = _digit_planes(big, phi).transpose(2, 3, 0, 1).reshape(n * big.e, -1)
    kernel = nullspace(prime, A)
    words = []
    flat_y = y.reshape(-1, n)
    for lam in kernel:
        cw = big.sum_v(big.mul_v(lam[:, None], flat_y), axis=0)
        words.append([ext.restrict(int(v)) for v in cw])
    if not words:
        return GeneratorMatrix.zero(base, n)
    return GeneratorMatrix(base, np.array(words, dtype=np.int64), n)


def mir12_square_generator(c: CyclicCodeSpec) -> Poly:
    """gcd of g * (g X^j), j < dim C, taken together with X^n - 1.

    Including X^n - 1 turns the gcd of the products into the generator of the
    ideal they span, so the result is directly comparable with the generator
    of ``square_spec(c)``.
    """
    field = c.field
    acc = Poly.x_n_minus_1(field, c.n)
    if c.is_zero():
        return acc
    ga = c.g.array(c.n)
    for j in range(c.dim):
        prod = field.mul_v(ga, np.roll(ga, j))
        acc = _gcd(acc, Poly(field, prod.tolist()))
        if acc.degree == 0:
            break
    return acc


def _gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()
