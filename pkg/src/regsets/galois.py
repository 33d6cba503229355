"""Exact arithmetic in GF(p^n) with subfield towers, relative trace and norm.

Elements are plain integers in [0, p^n).  The base-p digits of the index are
the coefficients of the polynomial representative (digit i multiplies x^i).
Index 0 is the additive identity, index 1 the multiplicative identity.

The reducing modulus is the lexicographically smallest monic primitive
polynomial of the requested degree (coefficients compared low-degree-first
as a base-p integer), so field construction is deterministic and needs no
embedded tables.  Multiplication runs on log/antilog tables built once at
construction; addition runs on base-p digit vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

MAX_ORDER = 1 << 20
MAX_DEGREE = 8

# Full Q x Q operation tables are only materialized up to this order; larger
# fields still support all scalar and vectorized element-wise operations.
TABLE_CAP = 2048


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _mulx(digits, mod_low, p):
    """Multiply a polynomial (digit list, low first) by x modulo x^n + mod_low."""
    n = len(digits)
    top = digits[n - 1]
    out = [0] * n
    out[0] = (-top * mod_low[0]) % p
    for i in range(1, n):
        out[i] = (digits[i - 1] - top * mod_low[i]) % p
    return out


def _x_order(p, n, low_digits):
    """Multiplicative order of the residue class of x mod x^n + low, or 0 if x
    never returns to 1 within p^n - 1 steps (cannot happen for units)."""
    q = p**n
    one = [1] + [0] * (n - 1)
    cur = _mulx(one, low_digits, p)
    for k in range(1, q):
        if cur == one:
            return k
        cur = _mulx(cur, low_digits, p)
    return 0


def _smallest_primitive_modulus(p, n):
    """Low-degree coefficient digits of the lexicographically smallest monic
    primitive polynomial of degree n over GF(p)."""
    q = p**n
    if n == 1:
        # x + c: the residue class of x is -c; need a primitive root mod p.
        for c in range(1, p):
            g = (p - c) % p
            val, k = g, 1
            while val != 1:
                val = (val * g) % p
                k += 1
            if k == p - 1:
                return [c]
        raise RuntimeError("no primitive root found")  # pragma: no cover
    for enc in range(1, q):
        digits = [(enc // p**i) % p for i in range(n)]
        if digits[0] == 0:
            continue  # x divides the candidate, x is not a unit
        if _x_order(p, n, digits) == q - 1:
            return digits
    raise RuntimeError("no primitive polynomial found")  # pragma: no cover


class GaloisField:
    """GF(p^n) with integer-indexed elements and table-driven arithmetic.

    Immutable after construction; all operations are pure, so one instance
    can be shared freely across workers.
    """

    def __init__(self, p: int, n: int):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if not (1 <= n <= MAX_DEGREE):
            raise ValueError(f"extension degree n={n} out of range [1, {MAX_DEGREE}]")
        if p**n > MAX_ORDER:
            raise ValueError(f"field order {p}^{n} exceeds {MAX_ORDER}")
        self.p = p
        self.n = n
        self.order = p**n
        low = _smallest_primitive_modulus(p, n)
        self.modulus = tuple(low + [1])  # ascending degree, monic

        q = self.order
        # digit matrix: row a = base-p digits of a
        powers = p ** np.arange(n, dtype=np.int64)
        self._powers = powers
        self._digits = ((np.arange(q, dtype=np.int64)[:, None] // powers[None, :]) % p).astype(np.int16)

        # antilog/log tables for the residue class of x (n=1: for -c)
        exp = np.zeros(q - 1, dtype=np.int32)
        if n == 1:
            g = (p - low[0]) % p
            val = 1
            for k in range(q - 1):
                exp[k] = val
                val = (val * g) % p
            self.generator = g
        else:
            cur = [0] * n
            cur[0] = 1
            for k in range(q - 1):
                exp[k] = int(sum(c * p**i for i, c in enumerate(cur)))
                cur = _mulx(cur, low, p)
            self.generator = p  # digits (0, 1, 0, ...): the class of x
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self._exp = exp
        self._log = log

        self._neg = self._from_digits((p - self._digits) % p)
        self._frob: dict[int, np.ndarray] = {}
        self._trace: dict[int, np.ndarray] = {}
        self._norm: dict[int, np.ndarray] = {}
        self._towers: dict[int, TowerMap] = {}
        self._add_table = None
        self._mul_table = None
        self._sub_table = None

    # ------------------------------------------------------------------
    # scalar operations
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return int(self._from_digits((self._digits[a] + self._digits[b]) % self.p))

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, int(self._neg[b]))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._exp[(-self._log[a]) % (self.order - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """a**k with exponent reduced mod order-1 for nonzero a."""
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self._exp[(self._log[a] * k) % (self.order - 1)])

    def frobenius(self, a: int, k: int = 1) -> int:
        """a ** (p**k); k is reduced mod n since Frobenius has order n."""
        return self.pow(a, self.p ** (k % self.n))

    def rel_trace(self, a: int, m: int) -> int:
        """Trace into the subfield GF(p^m): sum of a^(p^(m*j)), j < n/m."""
        self._check_subdegree(m)
        acc = 0
        for j in range(self.n // m):
            acc = self.add(acc, self.frobenius(a, m * j))
        return acc

    def rel_norm(self, a: int, m: int) -> int:
        """Norm into GF(p^m): a ** ((p^n - 1)/(p^m - 1))."""
        self._check_subdegree(m)
        if a == 0:
            return 0
        return self.pow(a, (self.order - 1) // (self.p**m - 1))

    def is_square(self, a: int) -> bool:
        """Whether a = s*s for some s; zero counts as a square."""
        if self.p == 2 or a == 0:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    def elements(self) -> range:
        return range(self.order)

    def _check_subdegree(self, m: int) -> None:
        if not (1 <= m <= self.n and self.n % m == 0):
            raise ValueError(f"sub-degree {m} does not divide {self.n}")

    # ------------------------------------------------------------------
    # vectorized operations (element index arrays in, same out)
    # ------------------------------------------------------------------
    def _from_digits(self, digits):
        return digits.astype(np.int64) @ self._powers

    def add_v(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._from_digits((self._digits[a] + self._digits[b]) % self.p)

    def sub_v(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add_v(a, self._neg[b])

    def mul_v(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        nz = (a != 0) & (b != 0)
        la = self._log[np.broadcast_to(a, out.shape)[nz]]
        lb = self._log[np.broadcast_to(b, out.shape)[nz]]
        out[nz] = self._exp[(la + lb) % (self.order - 1)]
        return out

    def frobenius_vector(self, k: int = 1) -> np.ndarray:
        """Permutation vector F with F[a] = a ** (p**k)."""
        k = k % self.n
        if k not in self._frob:
            q = self.order
            out = np.zeros(q, dtype=np.int64)
            e = pow(self.p, k, q - 1) if q > 2 else 1
            out[1:] = self._exp[(self._log[1:] * e) % (q - 1)]
            out[1] = 1
            self._frob[k] = out
        return self._frob[k]

    def trace_vector(self, m: int) -> np.ndarray:
        """T with T[a] = rel_trace(a, m), for every element a."""
        self._check_subdegree(m)
        if m not in self._trace:
            acc = np.zeros(self.order, dtype=np.int64)
            for j in range(self.n // m):
                acc = self.add_v(acc, self.frobenius_vector(m * j))
            self._trace[m] = acc
        return self._trace[m]

    def norm_vector(self, m: int) -> np.ndarray:
        self._check_subdegree(m)
        if m not in self._norm:
            q = self.order
            e = (q - 1) // (self.p**m - 1)
            out = np.zeros(q, dtype=np.int64)
            out[1:] = self._exp[(self._log[1:] * e) % (q - 1)]
            self._norm[m] = out
        return self._norm[m]

    # ------------------------------------------------------------------
    # full operation tables (for the counting kernels)
    # ------------------------------------------------------------------
    def _check_table_cap(self):
        if self.order > TABLE_CAP:
            raise ValueError(
                f"operation tables are limited to order <= {TABLE_CAP} (got {self.order})"
            )

    def add_table(self) -> np.ndarray:
        if self._add_table is None:
            self._check_table_cap()
            q = self.order
            out = np.empty((q, q), dtype=np.int32)
            for a in range(q):
                out[a] = self.add_v(np.full(q, a, dtype=np.int64), np.arange(q, dtype=np.int64))
            self._add_table = out
        return self._add_table

    def sub_table(self) -> np.ndarray:
        if self._sub_table is None:
            self._sub_table = np.ascontiguousarray(self.add_table()[:, self._neg])
        return self._sub_table

    def mul_table(self) -> np.ndarray:
        if self._mul_table is None:
            self._check_table_cap()
            q = self.order
            out = np.zeros((q, q), dtype=np.int32)
            body = self._exp[(self._log[1:, None] + self._log[None, 1:]) % (q - 1)]
            out[1:, 1:] = body
            self._mul_table = out
        return self._mul_table

    # ------------------------------------------------------------------
    # subfield towers
    # ------------------------------------------------------------------
    def subfield(self, m: int) -> "TowerMap":
        """The canonical embedding GF(p^m) -> GF(p^n) (m | n)."""
        self._check_subdegree(m)
        if m not in self._towers:
            self._towers[m] = _build_tower(create_field(self.p, m), self)
        return self._towers[m]

    def __repr__(self):
        return f"GaloisField(p={self.p}, n={self.n}, order={self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))


@dataclass(frozen=True)
class TowerMap:
    """Field homomorphism GF(p^m) -> GF(p^n), tabulated on every element.

    The image is the fixed field of x -> x^(p^m).  Among elements of
    multiplicative order p^m - 1 that are roots of the subfield's modulus,
    the generator's image is the one with the smallest index, which pins
    the embedding deterministically.
    """

    sub: GaloisField
    sup: GaloisField
    table: np.ndarray = field(repr=False)

    def embed(self, a: int) -> int:
        return int(self.table[a])

    def embed_v(self, a) -> np.ndarray:
        return self.table[a]

    @property
    def image_mask(self) -> np.ndarray:
        mask = np.zeros(self.sup.order, dtype=bool)
        mask[self.table] = True
        return mask


def _build_tower(sub: GaloisField, sup: GaloisField) -> TowerMap:
    p, m = sub.p, sub.n
    q_sub, q_sup = sub.order, sup.order
    step = (q_sup - 1) // (q_sub - 1)
    best = None
    for k in range(1, q_sub):
        if gcd(k, q_sub - 1) != 1:
            continue
        t = int(sup._exp[(k * step) % (q_sup - 1)])
        # t must be a root of the subfield modulus for additivity to hold
        acc = 0
        for c in reversed(sub.modulus):
            acc = sup.add(sup.mul(acc, t), c % p)
        if acc == 0 and (best is None or t < best):
            best = t
    if best is None:  # pragma: no cover
        raise RuntimeError("no homomorphic image of the subfield generator found")
    table = np.zeros(q_sub, dtype=np.int64)
    cur = 1
    for k in range(q_sub - 1):
        table[sub._exp[k]] = cur
        cur = sup.mul(cur, best)
    return TowerMap(sub=sub, sup=sup, table=table)


_FIELD_CACHE: dict[tuple[int, int], GaloisField] = {}


def create_field(p: int, n: int) -> GaloisField:
    """Deterministic GF(p^n); repeated calls return the same instance."""
    key = (p, n)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = GaloisField(p, n)
    return _FIELD_CACHE[key]


def field_of_order(q: int) -> GaloisField:
    """GF(q) for a prime power q, factoring q as p^n."""
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = 2
    while q % p:
        p += 1
        if p * p > q:
            p = q
            break
    n = 0
    r = q
    while r > 1:
        if r % p:
            raise ValueError(f"not a prime power: {q}")
        r //= p
        n += 1
    return create_field(p, n)
