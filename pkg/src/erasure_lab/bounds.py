"""Closed-form rate bounds for erasure list decoding.

Functions take floats and return floats, except where noted: the AG versus
Johnson comparison is rational whenever q is a perfect square, and returns
``Fraction`` values when tau and epsilon are given as ``Fraction``/int.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .code import list_exponent
from .errors import DomainError, NotSquare

CSV_HEADER = ("q", "tau", "epsilon", "r", "rate_lemma27", "johnson_rate", "ag_rate", "gap", "capacity")


def entropy_q(q: int, x: float) -> float:
    """q-ary entropy x log_q(q-1) - x log_q x - (1-x) log_q(1-x), with 0 log 0 = 0."""
    if not 0 <= x <= 1:
        raise DomainError(f"entropy argument must lie in [0, 1], got {x}")
    lq = math.log(q)
    h = x * math.log(q - 1) / lq if x > 0 else 0.0
    if 0 < x:
        h -= x * math.log(x) / lq
    if x < 1:
        h -= (1 - x) * math.log(1 - x) / lq
    return h


def rate_lb_for_r(q: int, r: int, tau: float) -> float:
    """1 - (tau/r) log_q((q^r - 1)/(q - 1)) - H_q(tau)/r.  May be negative."""
    if not 0 <= tau <= 1:
        raise DomainError(f"tau must lie in [0, 1], got {tau}")
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    # (q^r - 1)/(q - 1) is an integer; math.log handles big ints exactly enough
    count = (q**r - 1) // (q - 1)
    return 1 - (tau / r) * math.log(count) / math.log(q) - entropy_q(q, tau) / r


def rate_lb_lemma27(q: int, L: int, tau: float) -> float:
    """Achievable rate for list size L at erasure fraction tau (raw value, may be negative)."""
    if L < 1:
        raise DomainError(f"L must be >= 1, got {L}")
    return rate_lb_for_r(q, list_exponent(q, L) + 1, tau)


def clamp_rate(value: float) -> tuple[float, bool]:
    """(max(value, 0), vacuous flag) for display."""
    return max(value, 0.0), value < 0


def johnson_erasure(q: int, delta: float) -> float:
    """Erasure fraction delta * q / (q - 1) reachable with O(1/eps) lists at distance delta."""
    if not 0 <= delta < 1 - 1 / q:
        raise DomainError(f"delta must lie in [0, 1 - 1/q), got {delta}")
    return delta + delta / (q - 1)


def _isqrt_exact(q: int) -> int:
    s = math.isqrt(q)
    if s * s != q or s < 2:
        raise NotSquare(f"q={q} is not a square >= 4")
    return s


def ag_vs_johnson_rates(q: int, tau, epsilon=0):
    """(ag_rate, johnson_rate, gap) for AG codes at erasure fraction tau.

    ag_rate = 1 - tau - 1/(sqrt q - 1) + 1/q - eps and
    johnson_rate = 1 - tau - 1/(sqrt q - 1) + tau/q - eps, so
    gap = (1 - tau)/q.
    """
    sq = _isqrt_exact(q)
    if not 0 < tau < 1:
        raise DomainError(f"tau must lie in (0, 1), got {tau}")
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    exact = all(isinstance(v, (int, Fraction)) for v in (tau, epsilon))
    one = Fraction(1) if exact else 1.0
    base = one - tau - one / (sq - 1) - epsilon
    ag = base + one / q
    johnson = base + tau * one / q
    return ag, johnson, ag - johnson


@dataclass
class BoundsRow:
    q: int
    tau: float
    epsilon: float
    r: int
    rate_lemma27: float
    johnson_rate: float | None
    ag_rate: float | None
    gap: float | None
    capacity: float

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f) for f in CSV_HEADER)


def bounds_row(q: int, tau: float, epsilon: float = 0.0, L: int = 1) -> BoundsRow:
    r = list_exponent(q, L) + 1
    ag = johnson = gap = None
    if math.isqrt(q) ** 2 == q:
        ag, johnson, gap = ag_vs_johnson_rates(q, tau, epsilon)
    return BoundsRow(q, tau, epsilon, r, rate_lb_for_r(q, r, tau), johnson, ag, gap, 1 - tau)


def tau_grid(steps: int = 99) -> list[float]:
    """Evenly spaced tau values strictly inside (0, 1), e.g. 0.01 .. 0.99."""
    return [round(i / (steps + 1), 12) for i in range(1, steps + 1)]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(round(v, 12))
    return str(v)


def bounds_csv(rows: Iterable[BoundsRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([_fmt(v) for v in row.as_tuple()])
    return buf.getvalue()
