"""Reed-Solomon and one-point Hermitian codes, and the AG-code erasure bounds.

The Hermitian curve ``y**q0 + y = x**(q0+1)`` over GF(q0**2) has q0**3 affine
points plus one point at infinity and genus ``q0*(q0-1)/2``.  The one-point
code of degree m evaluates the monomials ``x**i * y**j`` (``j < q0``) whose
pole order ``i*q0 + j*(q0+1)`` at infinity is at most m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .code import LinearCode, code_from_generator, list_exponent
from .errors import DegreeOutOfRange, NotDistinct, NotPrimePower, PreconditionViolated, TooLong
from .gf import field_make, prime_power
from .matgf import MatGF, rank


@dataclass(frozen=True)
class CurveData:
    q0: int
    q: int
    genus: int
    affine_points: tuple[tuple[int, int], ...]

    @property
    def N(self) -> int:
        """Rational points, including the point at infinity."""
        return len(self.affine_points) + 1


@dataclass(frozen=True)
class HermitianCodeSpec:
    curve: CurveData
    m: int
    basis: tuple[tuple[int, int], ...]  # (i, j) for x**i * y**j

    @property
    def n(self) -> int:
        return len(self.curve.affine_points)

    @property
    def k(self) -> int:
        return len(self.basis)

    def pole_order(self, i: int, j: int) -> int:
        q0 = self.curve.q0
        return i * q0 + j * (q0 + 1)


def rs_code(q: int, n: int, k: int, eval_points: Sequence[int] | None = None) -> LinearCode:
    """Reed-Solomon code: row i of the generator is ``(x_j**i)_j``."""
    F = field_make(q)
    if n > q:
        raise TooLong(f"RS length {n} exceeds field size {q}")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    pts = list(range(n)) if eval_points is None else [int(x) for x in eval_points]
    if len(pts) != n:
        raise ValueError(f"{len(pts)} evaluation points for length {n}")
    if len(set(pts)) != n:
        raise NotDistinct("evaluation points must be distinct")
    x = np.array(pts, dtype=np.int64)
    G = np.stack([F.pow(x, i) for i in range(k)])
    return code_from_generator(F, MatGF(F, G))


def hermitian_curve(q0: int) -> CurveData:
    if prime_power(q0) is None:
        raise NotPrimePower(f"q0={q0} is not a prime power")
    q = q0 * q0
    F = field_make(q)
    xs = np.arange(q, dtype=np.int64)
    lhs = F.add(F.pow(xs, q0), xs)  # y**q0 + y over all y
    rhs = F.pow(xs, q0 + 1)  # x**(q0+1) over all x
    pts = tuple(
        (int(x), int(y)) for x in range(q) for y in np.flatnonzero(lhs == rhs[x])
    )
    return CurveData(q0=q0, q=q, genus=q0 * (q0 - 1) // 2, affine_points=pts)


def hermitian_basis(q0: int, m: int) -> tuple[tuple[int, int], ...]:
    """Monomials (i, j), j < q0, with pole order <= m, sorted by pole order."""
    mons = [
        (i, j)
        for j in range(q0)
        for i in range(m // q0 + 1)
        if i * q0 + j * (q0 + 1) <= m
    ]
    return tuple(sorted(mons, key=lambda ij: ij[0] * q0 + ij[1] * (q0 + 1)))


def hermitian_code(curve: CurveData, m: int) -> tuple[HermitianCodeSpec, LinearCode]:
    """One-point code C(m * P_inf) evaluated at every affine point in (x, y) index order."""
    n = len(curve.affine_points)
    if not 0 <= m < n:
        raise DegreeOutOfRange(f"m must lie in [0, {n}), got {m}")
    F = field_make(curve.q)
    basis = hermitian_basis(curve.q0, m)
    spec = HermitianCodeSpec(curve, m, basis)
    orders = [spec.pole_order(i, j) for i, j in basis]
    assert len(set(orders)) == len(orders), "pole orders must be distinct"
    px = np.array([p[0] for p in curve.affine_points], dtype=np.int64)
    py = np.array([p[1] for p in curve.affine_points], dtype=np.int64)
    G = MatGF(F, np.stack([F.mul(F.pow(px, i), F.pow(py, j)) for i, j in basis]))
    assert rank(G) == len(basis), "evaluation map is not injective"
    return spec, code_from_generator(F, G)


def gonality_lb(N: int, q: int) -> Fraction:
    """Lower bound N / (q + 1) on the gonality of a curve with N rational points."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return Fraction(N, q + 1)


def _ratio(q: int, t: int) -> Fraction:
    return Fraction(q ** (t - 1) - 1, q**t - 1)


def grismer_degree_lb(N: int, q: int, t: int) -> Fraction:
    """Smallest degree a divisor with >= t independent functions can have: N(q^(t-1)-1)/(q^t-1)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return N * _ratio(q, t)


def ag_erasure_radius(n: int, N: int, degG: int, q: int, t: int) -> tuple[int, int]:
    """Erasures an AG code is guaranteed to list-decode with list size q**(t-1).

    Returns ``(s_max, t - 1)``.  The degree inequality behind the guarantee,
    ``ceil(ratio * n) - 1 < N * ratio``, is re-checked and a violation raises
    :class:`PreconditionViolated`.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not degG < n:
        raise PreconditionViolated(f"need deg G < n, got deg G={degG}, n={n}")
    ratio = _ratio(q, t)
    extra = math.ceil(ratio * n)
    s_max = n - degG + extra - 1
    # deg(G - sum_{i in T} P_i) at s = s_max
    residual = degG - (n - s_max)
    if not residual < N * ratio:
        raise PreconditionViolated(
            f"degree {residual} of the residual divisor is not below N*ratio = {N * ratio}"
        )
    return s_max, t - 1


def ag_ghw_lb(n: int, degG: int, q: int, t: int, k: int | None = None) -> int:
    """Lower bound n - deg G + ceil(ratio * n) on the t-th generalized Hamming weight."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if k is not None and t > k:
        raise PreconditionViolated(f"t={t} exceeds the code dimension {k}")
    return n - degG + math.ceil(_ratio(q, t) * n)


def hermitian_summary(q0: int, m: int, ts: Sequence[int] = (1, 2)) -> dict:
    """JSON-ready description of a Hermitian code and its guaranteed radii."""
    curve = hermitian_curve(q0)
    spec, C = hermitian_code(curve, m)
    out = {
        "q0": q0,
        "q": curve.q,
        "m": m,
        "genus": curve.genus,
        "N": curve.N,
        "n": spec.n,
        "k": spec.k,
        "basis": [[i, j, spec.pole_order(i, j)] for i, j in spec.basis],
        "s_max": {},
        "ghw_lb": {},
    }
    for t in ts:
        if t > spec.k:
            continue
        s_max, e = ag_erasure_radius(spec.n, curve.N, m, curve.q, t)
        out["s_max"][str(t)] = {"s_max": s_max, "list_size": curve.q**e}
        out["ghw_lb"][str(t)] = ag_ghw_lb(spec.n, m, curve.q, t, k=spec.k)
    return out


def list_size_for(q: int, t: int) -> int:
    """List size q**(t-1); its log_q floor gives back r = t."""
    L = q ** (t - 1)
    assert list_exponent(q, L) + 1 == t
    return L
