import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from schur_cyclic.algebra import (FieldCtx, Poly, build_extension, field_of_order, get_field,
                                  is_irreducible, minimal_poly, multiplicative_order, poly_gcd,
                                  primitive_modulus)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (2, 4), (3, 2), (2, 6), (3, 3), (5, 2)]


def clmul_mod(a, b, mod, e):
    """Independent GF(2^e) product: carry-less multiply, then reduce."""
    prod = 0
    for i in range(e):
        if b >> i & 1:
            prod ^= a << i
    for bit in range(2 * e - 2, e - 1, -1):
        if prod >> bit & 1:
            prod ^= mod << (bit - e)
    return prod


def test_char_two_addition():
    f = get_field(2)
    assert f.add(1, 1) == 0


def test_gf8_x_times_x_squared():
    f = get_field(2, 3)
    assert f.modulus == (1, 1, 0, 1)  # x^3 + x + 1
    assert f.mul(2, 4) == 3  # x + 1


@pytest.mark.parametrize("e", [2, 3, 4, 5, 8])
def test_binary_multiplication_matches_clmul(e):
    f = get_field(2, e)
    mod = sum(c << i for i, c in enumerate(f.modulus))
    a = np.arange(f.q)
    table = f.mul_v(a[:, None], a[None, :])
    for x in range(0, f.q, max(1, f.q // 37)):
        for y in range(f.q):
            assert table[x, y] == clmul_mod(x, y, mod, e)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_fermat_and_inverse(p, e):
    f = get_field(p, e)
    nz = np.arange(1, f.q)
    assert np.all(f.pow_v(nz, f.q - 1) == 1)
    assert np.all(f.mul_v(nz, f.inv_v(nz)) == 1)


@pytest.mark.parametrize("p,e", [(2, 4), (3, 2), (2, 6), (5, 2)])
def test_inverse_of_product_exhaustive(p, e):
    f = get_field(p, e)
    a = np.arange(1, f.q)
    A, B = np.meshgrid(a, a, indexing="ij")
    lhs = f.inv_v(f.mul_v(A, B))
    rhs = f.mul_v(f.inv_v(B), f.inv_v(A))
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_field_axioms_sampled(p, e):
    f = get_field(p, e)
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, f.q, (3, 500))
    assert np.array_equal(f.mul_v(a, b), f.mul_v(b, a))
    assert np.array_equal(f.add_v(a, b), f.add_v(b, a))
    assert np.array_equal(f.mul_v(a, f.add_v(b, c)), f.add_v(f.mul_v(a, b), f.mul_v(a, c)))
    assert np.all(f.add_v(a, f.neg_v(a)) == 0)
    for x, y in zip(a[:50].tolist(), b[:50].tolist()):
        assert f.mul(x, y) == int(f.mul_v(np.int64(x), np.int64(y)))
        assert f.sub(x, y) == f.add(x, f.neg(y))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        get_field(2, 3).inv(0)


@pytest.mark.parametrize("p", [2, 3])
def test_irreducibility_against_sympy(p):
    x = sympy.symbols("x")
    for deg in range(1, 6 if p == 2 else 4):
        for low in itertools.product(range(p), repeat=deg):
            coeffs = tuple(low) + (1,)
            ref = sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible
            assert is_irreducible(coeffs, p) == ref, coeffs


@pytest.mark.parametrize("p,e,expected", [
    (2, 3, (1, 1, 0, 1)),
    (2, 4, (1, 1, 0, 0, 1)),
    (2, 8, (1, 0, 1, 1, 1, 0, 0, 0, 1)),  # x^8 + x^4 + x^3 + x^2 + 1
])
def test_default_modulus_is_least_primitive(p, e, expected):
    assert primitive_modulus(p, e) == expected
    f = FieldCtx(p, e)
    # x is primitive: its powers run through every nonzero element
    seen, x = set(), 1
    for _ in range(f.q - 1):
        seen.add(x)
        x = f.mul(x, p)
    assert x == 1 and len(seen) == f.q - 1


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldCtx(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_field_of_order():
    assert field_of_order(8) is get_field(2, 3)
    with pytest.raises(ValueError):
        field_of_order(6)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def P(coeffs, p=2, e=1):
    return Poly(get_field(p, e), coeffs)


def test_poly_mod_in_char_two():
    assert (P([1, 0, 1]) % P([1, 1])).is_zero()


def test_gcd_hamming_factor():
    g = P([1, 1, 0, 1])
    assert poly_gcd(Poly.x_n_minus_1(get_field(2), 7), g) == g


def test_normalization_trims_zeros():
    assert P([1, 1, 0, 0]).degree == 1
    assert P([0, 0]).is_zero()


def test_division_by_zero_poly():
    with pytest.raises(ZeroDivisionError):
        divmod(P([1, 1]), P([]))


poly_coeffs = st.lists(st.integers(0, 2), min_size=0, max_size=8)


@settings(max_examples=200, deadline=None)
@given(poly_coeffs, poly_coeffs.filter(lambda c: any(c)))
def test_divmod_identity_gf3(a, b):
    A, B = P(a, 3), P(b, 3)
    Q, R = divmod(A, B)
    assert Q * B + R == A
    assert R.is_zero() or R.degree < B.degree


@settings(max_examples=100, deadline=None)
@given(poly_coeffs, poly_coeffs, st.integers(0, 2))
def test_evaluation_is_a_ring_map(a, b, x):
    A, B = P(a, 3), P(b, 3)
    f = get_field(3)
    assert (A * B)(x) == f.mul(A(x), B(x))
    assert (A + B)(x) == f.add(A(x), B(x))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=6), st.lists(st.integers(0, 3), max_size=6))
def test_gcd_divides_both_gf4(a, b):
    A, B = P(a, 2, 2), P(b, 2, 2)
    g = poly_gcd(A, B)
    if g.is_zero():
        assert A.is_zero() and B.is_zero()
        return
    assert g.lead == 1
    assert (A % g).is_zero() and (B % g).is_zero()


# ---------------------------------------------------------------------------
# extensions and minimal polynomials
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("q,n,r", [(2, 7, 3), (2, 15, 4), (2, 1, 1), (2, 4095, 12), (3, 8, 2), (4, 21, 3)])
def test_extension_degree(q, n, r):
    ext = build_extension(field_of_order(q), n)
    assert ext.r == r == multiplicative_order(q, n)
    assert (q**r - 1) % n == 0
    big = ext.big
    assert big.pow(ext.beta, n) == 1
    orders = [d for d in range(1, min(n, 500)) if big.pow(ext.beta, d) == 1]
    assert orders == []
    if n == 1:
        assert ext.beta == 1


def test_extension_requires_coprime():
    with pytest.raises(ValueError):
        build_extension(get_field(2), 6)


def test_extension_is_deterministic():
    a = build_extension(FieldCtx(2, 1), 63)
    b = build_extension(FieldCtx(2, 1), 63)
    assert (a.beta, a.big.modulus, a.embed_table) == (b.beta, b.big.modulus, b.embed_table)


@pytest.mark.parametrize("q,n", [(4, 5), (4, 21), (8, 7), (9, 10)])
def test_subfield_embedding_is_a_homomorphism(q, n):
    ext = build_extension(field_of_order(q), n)
    base, big = ext.base, ext.big
    for a in range(q):
        for b in range(q):
            assert ext.embed(base.mul(a, b)) == big.mul(ext.embed(a), ext.embed(b))
            assert ext.embed(base.add(a, b)) == big.add(ext.embed(a), ext.embed(b))
    # the image is exactly the fixed field of y -> y^q
    fixed = {y for y in range(big.q) if big.pow(y, q) == y}
    assert fixed == set(ext.embed_table)


def _cosets(q, n):
    seen, out = set(), []
    for u in range(n):
        if u not in seen:
            c, x = set(), u
            while x not in c:
                c.add(x)
                x = x * q % n
            seen |= c
            out.append(sorted(c))
    return out


@pytest.mark.parametrize("q,n", [(2, 7), (2, 15), (2, 21), (2, 31), (3, 8), (3, 13), (4, 15), (5, 12)])
def test_minimal_polys_factor_x_n_minus_1(q, n):
    ext = build_extension(field_of_order(q), n)
    prod = Poly(ext.base, [1])
    for c in _cosets(q, n):
        m = minimal_poly(ext, c[0])
        assert m.degree == len(c) and m.lead == 1
        emb = ext.embed_poly(m)
        for j in c:
            assert emb(ext.beta_pow(j)) == 0
        prod = prod * m
    assert prod == Poly.x_n_minus_1(ext.base, n)


def test_minimal_poly_examples():
    e7 = build_extension(get_field(2), 7)
    assert minimal_poly(e7, 0).coeffs == (1, 1)
    assert minimal_poly(e7, 1).degree == 3
    e15 = build_extension(get_field(2), 15)
    assert minimal_poly(e15, 5).coeffs == (1, 1, 1)
