"""Arithmetic for the coordinate domains of the incidence graphs.

Two contexts are provided:

* :class:`FieldCtx` -- the quadratic extension F_{q^2} of F_q, q = p^m.  Elements
  of F_{q^2} are integers in ``[0, q^2)`` whose base-p digits (low degree first)
  are the coefficients of a polynomial reduced modulo a fixed irreducible of
  degree 2m over F_p.  F_q is the subfield fixed by ``x -> x^q``.
* :class:`RingCtx` -- the pair of residue rings Z_{n^2} and Z_n.

Both contexts are immutable; the field context precomputes full addition,
multiplication and Frobenius tables so graph enumeration can be vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "FieldCtx",
    "RingCtx",
    "build_field",
    "build_ring",
    "factor_prime_power",
    "field_arith",
    "frobenius",
    "trace_term",
    "subfield_elements",
    "is_irreducible",
]


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists low degree first
# ---------------------------------------------------------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a, f, p):
    a = _trim(a)
    f = _trim(f)
    inv_lead = pow(f[-1], -1, p)
    while len(a) >= len(f):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(f)
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fi) % p
        a = _trim(a)
    return a


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base, e, f, p):
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p):
    """Rabin-style test: ``f`` of degree d has no factor of degree <= d // 2.

    A factor of degree k divides ``x^(p^k) - x``, so it suffices to check
    ``gcd(f, x^(p^k) - x) == 1`` for ``k = 1 .. d // 2``.
    """
    f = _trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    x = [0, 1]
    power = x
    for _ in range(d // 2):
        power = _poly_powmod(power, p, f, p)
        if len(_poly_gcd(f, _poly_sub(power, x, p), p)) > 1:
            return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def factor_prime_power(q):
    """Return ``(p, m)`` with ``q == p**m``; raise ValueError otherwise."""
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q!r}")
    q = int(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not _is_prime(p):
        raise ValueError(f"q must be a prime power, got {q}")
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"q must be a prime power, got {q}")
    return p, m


# ---------------------------------------------------------------------------
# F_{q^2}
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    """The field F_{q^2} with its subfield F_q, as precomputed tables.

    ``modulus`` holds the coefficients of the defining polynomial, low degree
    first, including the leading 1.
    """

    p: int
    m: int
    modulus: tuple
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    frob_table: np.ndarray = field(repr=False)
    subfield: np.ndarray = field(repr=False)

    family = "field"

    @property
    def q(self):
        return self.p ** self.m

    @property
    def order(self):
        """Number of elements of the big field, q^2."""
        return self.q ** 2

    @property
    def small_order(self):
        return self.q

    def encode(self, coeffs):
        """Integer encoding of a coefficient list (low degree first)."""
        value = 0
        for c in reversed(list(coeffs)):
            value = value * self.p + (int(c) % self.p)
        return value

    def decode(self, x):
        """Coefficient list of length 2m for the element ``x``."""
        out = []
        for _ in range(2 * self.m):
            x, d = divmod(int(x), self.p)
            out.append(d)
        return out

    def describe(self):
        """Human-readable modulus, e.g. ``t^2 + 1``."""
        terms = []
        for deg in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[deg]
            if not c:
                continue
            mono = "1" if deg == 0 else ("t" if deg == 1 else f"t^{deg}")
            if c != 1 and deg:
                mono = f"{c}{mono}"
            elif c != 1:
                mono = str(c)
            terms.append(mono)
        return " + ".join(terms)

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_{q^2}")
        return int(self.inv_table[a])

    def power(self, a, e):
        """Square-and-multiply exponentiation."""
        result, base = 1, int(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def in_subfield(self, a):
        return int(self.frob_table[a]) == int(a)


def _smallest_irreducible(p, degree):
    # monic; tail coefficients read as a base-p number, low degree least
    # significant, so numeric order equals high-degree-first lexicographic order
    for tail in range(p ** degree):
        coeffs = []
        t = tail
        for _ in range(degree):
            t, d = divmod(t, p)
            coeffs.append(d)
        coeffs.append(1)
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {degree} over F_{p}")


@lru_cache(maxsize=None)
def build_field(q):
    """Build F_{q^2} over F_q using the smallest monic irreducible modulus.

    >>> build_field(3).describe()
    't^2 + 1'
    """
    p, m = factor_prime_power(q)
    degree = 2 * m
    modulus = _smallest_irreducible(p, degree)
    size = p ** degree

    digits = np.array([[(x // p ** k) % p for k in range(degree)] for x in range(size)],
                      dtype=np.int64)
    weights = p ** np.arange(degree, dtype=np.int64)
    add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg_table = ((-digits) % p) @ weights

    # multiplication by t as a linear map on digit vectors; build products by
    # accumulating a * t^k * b_k
    shifted = np.zeros((size,), dtype=np.int64)
    lead = np.array(modulus[:degree], dtype=np.int64)
    for x in range(size):
        d = digits[x]
        top = d[-1]
        nd = np.concatenate(([0], d[:-1]))
        nd = (nd - top * lead) % p
        shifted[x] = nd @ weights

    mul_table = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        # a*b = sum_k b_k * (a t^k)
        cur = a
        power_rows = []
        for _ in range(degree):
            power_rows.append(cur)
            cur = shifted[cur]
        mul_table[a] = ((digits @ digits[power_rows]) % p) @ weights

    inv_table = np.zeros(size, dtype=np.int64)
    for a in range(1, size):
        inv_table[a] = int(np.flatnonzero(mul_table[a] == 1)[0])

    # x -> x^q by repeated p-th powers (square-and-multiply per step)
    frob = np.arange(size, dtype=np.int64)
    for _ in range(m):
        nxt = np.ones(size, dtype=np.int64)
        base = frob.copy()
        e = p
        while e:
            if e & 1:
                nxt = mul_table[nxt, base]
            base = mul_table[base, base]
            e >>= 1
        frob = nxt
    subfield = np.flatnonzero(frob == np.arange(size)).astype(np.int64)

    for arr in (add_table, mul_table, neg_table, inv_table, frob, subfield):
        arr.setflags(write=False)
    ctx = FieldCtx(p, m, modulus, add_table, mul_table, neg_table, inv_table, frob, subfield)
    if len(subfield) != ctx.q:
        raise RuntimeError("subfield size mismatch; modulus is not irreducible")
    return ctx


def field_arith(ctx, op, a, b=None):
    """Dispatch ``add | sub | mul | inv`` on encoded elements."""
    if op == "add":
        return ctx.add(a, b)
    if op == "sub":
        return ctx.sub(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "inv":
        return ctx.inv(a if b is None else b)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(ctx, y):
    """y^q, computed by square-and-multiply."""
    return ctx.power(y, ctx.q)


def trace_term(ctx, a, y):
    """a*y + a*y^q for ``a`` in F_q; the result lies in F_q."""
    if not ctx.in_subfield(a):
        raise ValueError(f"{a} is not in the subfield F_{ctx.q}")
    return ctx.add(ctx.mul(a, y), ctx.mul(a, frobenius(ctx, y)))


def subfield_elements(ctx):
    """Elements fixed by Frobenius, ascending by encoding."""
    return [int(x) for x in ctx.subfield]


# ---------------------------------------------------------------------------
# Z_{n^2} / Z_n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingCtx:
    """Residue rings Z_{n^2} (big coordinates) and Z_n (small coordinates)."""

    n: int

    family = "ring"

    @property
    def order(self):
        return self.n ** 2

    @property
    def small_order(self):
        return self.n

    def mod_big(self, v):
        return v % (self.n * self.n)

    def mod_small(self, v):
        return v % self.n

    def power_n(self, y):
        """y^n reduced modulo n^2."""
        return pow(int(y), self.n, self.n * self.n)

    def trace_term(self, a, y):
        """(a*y + a*y^n) mod n."""
        return (a * y + a * self.power_n(y)) % self.n


def build_ring(n):
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    return RingCtx(int(n))
