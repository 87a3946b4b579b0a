"""Exact arithmetic in GF(q) for prime powers q <= 2**16.

Elements are plain integers in ``[0, q)``.  The integer ``a`` encodes the
polynomial ``sum(d_i * x**i)`` where ``d_i`` is the i-th base-p digit of
``a``, reduced modulo the field's defining polynomial.  So ``0`` and ``1``
are the additive and multiplicative identities, and for prime q the
encoding is the usual residue.

Every operation accepts Python ints or integer numpy arrays (broadcasting
as numpy does).  Scalar inputs give a Python int back.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DivisionByZero, NotPrimePower, TooLarge

MAX_Q = 1 << 16


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, deg)`` with ``q == p**deg`` or None if q is not a prime power."""
    if q < 2:
        return None
    p = next((d for d in range(2, int(q**0.5) + 1) if q % d == 0), q)
    deg, rest = 0, q
    while rest % p == 0:
        rest //= p
        deg += 1
    return (p, deg) if rest == 1 else None


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomial helpers over GF(p); coefficient lists are low degree first ---

def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        if c:
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(coeffs: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial-division irreducibility test for a monic polynomial over GF(p)."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_rem(coeffs, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, deg: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree ``deg`` over GF(p).

    Candidates are ordered by the integer value of their coefficient vector
    read from the top coefficient down, which is lexicographic order on the
    written polynomial.
    """
    for low in range(p**deg):
        coeffs = [(low // p**i) % p for i in range(deg)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {deg} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """A finite field GF(q) together with its discrete exp/log tables.

    ``exp_table[i]`` is ``g**i`` for the fixed primitive element ``g``;
    ``log_table[a]`` is its inverse on nonzero ``a`` and ``-1`` at 0.
    """

    q: int
    p: int
    deg: int
    modulus: tuple[int, ...]
    primitive: int
    exp_table: np.ndarray
    log_table: np.ndarray

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __repr__(self):
        return f"GF({self.q})"

    # ------------------------------------------------------------ arithmetic
    def add(self, a, b):
        scalar = np.isscalar(a) and np.isscalar(b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            out = a ^ b
        elif self.deg == 1:
            out = (a + b) % self.p
        else:
            out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
            place = 1
            for _ in range(self.deg):
                out += ((a // place + b // place) % self.p) * place
                place *= self.p
        return int(out) if scalar else out

    def neg(self, a):
        scalar = np.isscalar(a)
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            out = a.copy()
        elif self.deg == 1:
            out = (-a) % self.p
        else:
            out = np.zeros_like(a)
            place = 1
            for _ in range(self.deg):
                out += ((-(a // place)) % self.p) * place
                place *= self.p
        return int(out) if scalar else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        scalar = np.isscalar(a) and np.isscalar(b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.q == 2:
            out = a & b
            return int(out) if scalar else out
        logs = (self.log_table[a] + self.log_table[b]) % (self.q - 1)
        out = np.where((a == 0) | (b == 0), 0, self.exp_table[logs])
        return int(out) if scalar else out

    def inv(self, a):
        scalar = np.isscalar(a)
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of 0 in " + repr(self))
        out = self.exp_table[(-self.log_table[a]) % (self.q - 1)]
        return int(out) if scalar else out

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        scalar = np.isscalar(a)
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            out = np.ones_like(a)
        else:
            out = np.where(a == 0, 0, self.exp_table[(self.log_table[a] * e) % (self.q - 1)])
        return int(out) if scalar else out

    def elements(self) -> range:
        return range(self.q)


# --- table construction ---

def _digits(a: int, p: int, deg: int) -> list[int]:
    return [(a // p**i) % p for i in range(deg)]


def _mul_map(c: int, modulus: tuple[int, ...], p: int) -> np.ndarray:
    """deg x deg matrix M over GF(p) with digits(a*c) = digits(a) @ M mod p."""
    deg = len(modulus) - 1
    rows = []
    cur = _digits(c, p, deg)
    for _ in range(deg):
        rows.append(cur)
        # multiply by x and reduce with the monic modulus
        top = cur[-1]
        shifted = [0] + cur[:-1]
        cur = [(s - top * m) % p for s, m in zip(shifted, modulus[:-1])]
    return np.array(rows, dtype=np.int64)


def _slow_mul(a: int, c: int, modulus, p: int) -> int:
    deg = len(modulus) - 1
    d = (np.array(_digits(a, p, deg), dtype=np.int64) @ _mul_map(c, modulus, p)) % p
    return int(d @ (p ** np.arange(deg, dtype=np.int64)))


def _slow_pow(a: int, e: int, modulus, p: int) -> int:
    result, base = 1, a
    while e:
        if e & 1:
            result = _slow_mul(result, base, modulus, p)
        base = _slow_mul(base, base, modulus, p)
        e >>= 1
    return result


def _build(q: int) -> FieldSpec:
    pp = prime_power(q)
    if pp is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > MAX_Q:
        raise TooLarge(f"q={q} exceeds {MAX_Q}")
    p, deg = pp
    modulus = smallest_irreducible(p, deg)
    factors = _prime_factors(q - 1)
    primitive = next(
        g for g in range(1, q)
        if all(_slow_pow(g, (q - 1) // r, modulus, p) != 1 for r in factors)
    )
    weights = p ** np.arange(deg, dtype=np.int64)
    # digits of g**i for i in [0, m), doubled until it covers q - 1 powers
    block = np.array([_digits(1, p, deg)], dtype=np.int64)
    step = primitive  # g**len(block)
    while len(block) < q - 1:
        nxt = (block @ _mul_map(step, modulus, p)) % p
        block = np.vstack([block, nxt])
        step = _slow_mul(step, step, modulus, p)
    exp_table = (block[: q - 1] @ weights).astype(np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(q - 1, dtype=np.int64)
    exp_table.setflags(write=False)
    log_table.setflags(write=False)
    return FieldSpec(q, p, deg, modulus, primitive, exp_table, log_table)


@lru_cache(maxsize=None)
def field_make(q: int) -> FieldSpec:
    """Construct GF(q) with the canonical modulus for q (cached)."""
    return _build(q)
