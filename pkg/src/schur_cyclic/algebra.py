"""Exact arithmetic in GF(p^e), univariate polynomials over it, and the
splitting field of X^n - 1.

Field elements are plain ints: the base-p digits of an element (least
significant first) are its coefficients in the polynomial basis
1, x, ..., x^(e-1).  ``FieldCtx.coeffs`` / ``FieldCtx.from_coeffs`` convert
between the two views.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

MAX_FIELD_ORDER = 1 << 24
MAX_BASE_ORDER = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n."""
    divs = [1]
    for r in prime_factors(n):
        k, m = 0, n
        while m % r == 0:
            m //= r
            k += 1
        divs = [d * r**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def multiplicative_order(a: int, n: int) -> int:
    """Smallest r >= 1 with a^r = 1 mod n (n = 1 gives 1)."""
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    r, x = 1, a % n
    while x != 1:
        x = (x * a) % n
        r += 1
    return r


# ---------------------------------------------------------------------------
# polynomials over the prime field, coefficient lists low-to-high
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _pp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_mod(out, m, p)


def _pp_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pp_mod(base, m, p)
    while e:
        if e & 1:
            result = _pp_mulmod(result, base, m, p)
        base = _pp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _int_to_digits(a: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _digits_to_int(digits, p: int) -> int:
    a = 0
    for d in reversed(list(digits)):
        a = a * p + int(d)
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    e = len(modulus) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in range(p**d):
            divisor = _int_to_digits(low, p, d) + [1]
            if not _pp_mod(list(modulus), divisor, p):
                return False
    return True


def _is_primitive(modulus: list[int], p: int) -> bool:
    e = len(modulus) - 1
    order = p**e - 1
    x = [0, 1]
    if e == 1:
        # GF(p) itself: a degree-1 modulus never makes x a generator in
        # general, so primitivity is judged on the root -modulus[0].
        root = (-modulus[0]) % p
        if root == 0:
            return False
        return all(pow(root, order // r, p) != 1 for r in prime_factors(order)) if order > 1 else True
    if _pp_powmod(x, order, modulus, p) != [1]:
        return False
    return all(_pp_powmod(x, order // r, modulus, p) != [1] for r in prime_factors(order))


@lru_cache(maxsize=None)
def primitive_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least primitive monic polynomial of degree e over GF(p).

    Candidates are ordered by the integer whose base-p digits are the
    coefficients (low-to-high), so for p=2 this is the usual numeric order
    of the bit pattern (x^3+x+1 = 0b1011 precedes x^3+x^2+1 = 0b1101).
    """
    if e == 1:
        # x - g for the least primitive root g; the field is then GF(p) with
        # the usual integer encoding.
        for low in range(p):
            cand = [low, 1]
            if _is_primitive(cand, p):
                return tuple(cand)
        return (0, 1)
    for low in range(1, p**e):
        cand = _int_to_digits(low, p, e) + [1]
        if cand[0] == 0:
            continue
        if _is_primitive(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no primitive polynomial of degree {e} over GF({p})")


class FieldCtx:
    """The finite field GF(p^e) defined by an irreducible ``modulus``.

    Multiplication goes through exp/log tables built from a generator: the
    class of x when it is primitive, otherwise the least primitive element by
    integer encoding.
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**e
        if q > MAX_FIELD_ORDER:
            raise ValueError(f"field order {q} exceeds {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = primitive_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus
        self._build_tables()

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    # -- raw arithmetic, used only to build the tables ---------------------
    def _mul_raw(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return (a * b) % p
        if p == 2:
            mod = _digits_to_int(self.modulus, 2)
            out = 0
            while b:
                if b & 1:
                    out ^= a
                b >>= 1
                a <<= 1
                if a >> e:
                    a ^= mod
            return out
        da = _int_to_digits(a, p, e)
        db = _int_to_digits(b, p, e)
        prod = _pp_mulmod(da, db, list(self.modulus), p)
        return _digits_to_int(prod, p)

    def _build_tables(self):
        q = self.q
        n = q - 1
        if q == 2:
            gen = 1
        elif self.e > 1 and self._order_raw(self.p) == n:
            gen = self.p  # the class of x
        else:
            gen = next(g for g in range(2, q) if self._order_raw(g) == n)
        self.generator = gen
        exp = np.zeros(2 * n + 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        if self.e > 1 and gen == self.p:
            step = self._times_x
        else:
            def step(v):
                return self._mul_raw(v, gen)
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = step(x)
        if x != 1:
            raise RuntimeError("generator order mismatch")
        exp[n:2 * n] = exp[:n]
        exp[2 * n] = exp[0]
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    def _times_x(self, a: int) -> int:
        p, e = self.p, self.e
        if p == 2:
            a <<= 1
            if a >> e:
                a ^= _digits_to_int(self.modulus, 2)
            return a
        top, rest = divmod(a, p ** (e - 1))
        a = rest * p
        if top:
            low = _int_to_digits(a, p, e)
            for i in range(e):
                low[i] = (low[i] - top * self.modulus[i]) % p
            a = _digits_to_int(low, p)
        return a

    def _order_raw(self, g: int) -> int:
        n = self.q - 1
        for d in divisors(n):
            x, acc = 1, g
            k = d
            while k:
                if k & 1:
                    x = self._mul_raw(x, acc)
                acc = self._mul_raw(acc, acc)
                k >>= 1
            if x == 1:
                return d
        return n

    # -- element views ----------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial-basis coordinates of ``a`` (length e, low-to-high)."""
        return tuple(_int_to_digits(a, self.p, self.e))

    def from_coeffs(self, c) -> int:
        c = list(c)
        if len(c) != self.e or any(not 0 <= x < self.p for x in c):
            raise ValueError(f"expected {self.e} residues mod {self.p}")
        return _digits_to_int(c, self.p)

    def elements(self) -> range:
        return range(self.q)

    # -- scalar arithmetic -----------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        return int(self.add_v(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return int(self.neg_v(np.int64(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp_list[(self.q - 1 - self._log_list[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp_list[(self._log_list[a] * k) % (self.q - 1)]

    def exp(self, k: int) -> int:
        """generator^k."""
        return self._exp_list[k % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log_list[a]

    # -- vectorised arithmetic on int64 arrays -----------------------------
    def add_v(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.e):
            out += ((a // scale % p + b // scale % p) % p) * scale
            scale *= p
        return out

    def neg_v(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.e):
            out += ((-(a // scale % p)) % p) * scale
            scale *= p
        return out

    def sub_v(self, a, b):
        return self.add_v(a, self.neg_v(b))

    def mul_v(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv_v(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow_v(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        out = self._exp[(self._log[a] * k) % (self.q - 1)]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def sum_v(self, a, axis=None):
        """Field sum of array entries along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.e == 1:
            return np.sum(a, axis=axis) % self.p
        p = self.p
        out = 0
        scale = 1
        for _ in range(self.e):
            out = out + (np.sum(a // scale % p, axis=axis) % p) * scale
            scale *= p
        return out

    def in_prime_subfield(self, a: int) -> bool:
        return 0 <= a < self.p


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1) -> FieldCtx:
    """Shared default-modulus field (tables are costly for large q)."""
    return FieldCtx(p, e)


def field_of_order(q: int) -> FieldCtx:
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise ValueError(f"{q} is not a prime power")
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return get_field(p, e)


# ---------------------------------------------------------------------------
# polynomials over a FieldCtx
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial over ``ctx``; ``coeffs`` low-to-high, trimmed."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, ctx, k: int, c: int = 1) -> "Poly":
        return cls(ctx, [0] * k + [c])

    @classmethod
    def x_n_minus_1(cls, ctx, n: int) -> "Poly":
        return cls(ctx, [ctx.neg(1)] + [0] * (n - 1) + [1])

    @classmethod
    def from_roots(cls, ctx, roots) -> "Poly":
        """prod (X - r) for r in roots."""
        acc = np.array([1], dtype=np.int64)
        for r in roots:
            nxt = np.zeros(len(acc) + 1, dtype=np.int64)
            nxt[1:] = acc
            nxt[:-1] = ctx.sub_v(nxt[:-1], ctx.mul_v(acc, r))
            acc = nxt
        return cls(ctx, acc.tolist())

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def array(self, length: int | None = None) -> np.ndarray:
        a = np.array(self.coeffs, dtype=np.int64)
        if length is not None:
            if length < len(a):
                raise ValueError("length shorter than polynomial")
            a = np.concatenate([a, np.zeros(length - len(a), dtype=np.int64)])
        return a

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, self.ctx.add_v(self.array(n), other.array(n)).tolist())

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, self.ctx.neg_v(self.array()).tolist())

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.ctx)
        ctx = self.ctx
        b = other.array()
        out = np.zeros(len(self.coeffs) + len(b) - 1, dtype=np.int64)
        for i, ai in enumerate(self.coeffs):
            if ai:
                seg = slice(i, i + len(b))
                out[seg] = ctx.add_v(out[seg], ctx.mul_v(b, ai))
        return Poly(ctx, out.tolist())

    def scale(self, c: int) -> "Poly":
        return Poly(self.ctx, self.ctx.mul_v(self.array(), c).tolist())

    def shift(self, k: int) -> "Poly":
        return Poly(self.ctx, (0,) * k + self.coeffs) if self.coeffs else self

    def __divmod__(self, other: "Poly"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = self.array()
        db = other.degree
        b = other.array()
        inv_lead = ctx.inv(other.lead)
        if len(rem) - 1 < db:
            return Poly(ctx), Poly(ctx, rem.tolist())
        quot = np.zeros(len(rem) - db, dtype=np.int64)
        for shift in range(len(rem) - 1 - db, -1, -1):
            c = int(rem[shift + db])
            if c == 0:
                continue
            c = ctx.mul(c, inv_lead)
            quot[shift] = c
            seg = slice(shift, shift + db + 1)
            rem[seg] = ctx.sub_v(rem[seg], ctx.mul_v(b, c))
        return Poly(ctx, quot.tolist()), Poly(ctx, rem[:db].tolist())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lead))

    def __call__(self, x: int) -> int:
        """Horner evaluation at a field element."""
        ctx = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def map_coeffs(self, ctx: FieldCtx, fn) -> "Poly":
        return Poly(ctx, [fn(c) for c in self.coeffs])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------------------
# splitting field of X^n - 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtensionCtx:
    """GF(q^r) containing a primitive n-th root of unity ``beta``.

    ``embed`` maps base-field ints to their images in ``big``; ``basis`` is
    the GF(p)-polynomial basis 1, x, ..., x^(er-1) of ``big``, the one used to
    flatten extension-field coordinates into prime-field coordinates.
    """

    base: FieldCtx
    n: int
    r: int
    big: FieldCtx
    beta: int
    embed_table: tuple
    basis: tuple

    def embed(self, a: int) -> int:
        return self.embed_table[a]

    def restrict(self, y: int) -> int:
        """Inverse of ``embed``; raises if ``y`` lies outside GF(q)."""
        try:
            return self._restrict_map[y]
        except KeyError:
            raise ValueError(f"{y} is not in the base field GF({self.base.q})") from None

    def in_base(self, y: int) -> bool:
        return y in self._restrict_map

    @property
    def _restrict_map(self) -> dict:
        cache = self.__dict__.get("_rmap")
        if cache is None:
            cache = {y: a for a, y in enumerate(self.embed_table)}
            object.__setattr__(self, "_rmap", cache)
        return cache

    def beta_pow(self, j: int) -> int:
        return self.big.pow(self.beta, j % self.n) if self.n > 1 else 1

    def beta_powers(self) -> np.ndarray:
        """beta^0 .. beta^(n-1) as an int64 array."""
        step = (self.big.q - 1) // self.n
        idx = (np.arange(self.n, dtype=np.int64) * step) % (self.big.q - 1)
        return self.big._exp[idx]

    def embed_poly(self, f: Poly) -> Poly:
        return f.map_coeffs(self.big, self.embed)

    def restrict_poly(self, f: Poly) -> Poly:
        return f.map_coeffs(self.base, self.restrict)


def build_extension(base: FieldCtx, n: int, max_degree: int = 24) -> ExtensionCtx:
    """Smallest extension GF(q^r) of ``base`` holding a primitive n-th root of 1.

    beta is generator^((q^r - 1)/n), with the generator fixed by the default
    (lexicographically least primitive) modulus of GF(p^(e r)).
    """
    q = base.q
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(n, q) != 1:
        raise ValueError(f"n={n} is not coprime with q={q}")
    r = multiplicative_order(q, n)
    if r > max_degree:
        raise ValueError(f"extension degree {r} exceeds cap {max_degree}")
    big = get_field(base.p, base.e * r)
    Q = big.q
    beta = big.exp((Q - 1) // n)
    if big.pow(beta, n) != 1:
        raise RuntimeError("beta^n != 1")
    for d in divisors(n)[:-1]:
        if big.pow(beta, d) == 1:
            raise RuntimeError(f"beta has order dividing {d} < {n}")
    if base.e == 1:
        embed = tuple(range(base.p))
    else:
        alpha = _subfield_root(base, big)
        embed = tuple(
            _eval_digits(big, base.coeffs(a), alpha) for a in range(q))
    basis = tuple(big.from_coeffs([int(i == j) for i in range(big.e)]) for j in range(big.e))
    return ExtensionCtx(base=base, n=n, r=r, big=big, beta=beta,
                        embed_table=embed, basis=basis)


def _eval_digits(big: FieldCtx, digits, x: int) -> int:
    acc = 0
    for d in reversed(digits):
        acc = big.add(big.mul(acc, x), d)
    return acc


def _subfield_root(base: FieldCtx, big: FieldCtx) -> int:
    """Least-log root in ``big`` of the base modulus (fixes the embedding)."""
    q, Q = base.q, big.q
    step = (Q - 1) // (q - 1)
    for j in range(q - 1):
        cand = big.exp(j * step)
        if _eval_digits(big, base.modulus, cand) == 0:
            return cand
    raise RuntimeError("base modulus has no root in the extension")


def minimal_poly(ext: ExtensionCtx, i: int) -> Poly:
    """Minimal polynomial over GF(q) of beta^i: prod over the coset of i."""
    n, q = ext.n, ext.base.q
    coset = set()
    u = i % n
    while u not in coset:
        coset.add(u)
        u = (u * q) % n
    f = Poly.from_roots(ext.big, [ext.beta_pow(j) for j in sorted(coset)])
    return ext.restrict_poly(f)
