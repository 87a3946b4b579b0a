"""Random linear codes: full-rank probability and sampled decodability trials.

Random parity-check matrices come from numpy's PCG64 generator.  Each code
in a trial draws from its own stream seeded by ``(seed, code_index)``, so
results do not depend on how the work is split across threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .code import list_exponent
from .errors import BudgetExceeded, InvalidEpsilon
from .gf import field_make
from .matgf import MatGF, batch_rank

EXHAUSTIVE_BUDGET = 1 << 24


def _rng(seed, *stream: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), *stream]) if stream else np.random.default_rng(int(seed))


def sample_parity_check(q: int, n: int, nk: int, seed: int) -> MatGF:
    """nk x n matrix with i.i.d. uniform entries over GF(q)."""
    if not 1 <= nk <= n:
        raise ValueError(f"need 1 <= rows <= n, got rows={nk}, n={n}")
    return MatGF(field_make(q), _rng(seed).integers(0, q, size=(nk, n)))


def full_rank_exact(q: int, n: int, nk: int) -> Fraction:
    """Probability that a uniform nk x n matrix has rank nk, as a fraction."""
    p = Fraction(1)
    for i in range(nk):
        p *= 1 - Fraction(q**i, q**n)
    return p


def full_rank_probability(
    q: int,
    n: int,
    nk: int,
    mode: Literal["exact_formula", "exhaustive", "monte_carlo"] = "exact_formula",
    trials: int = 10**5,
    seed: int = 0,
) -> float:
    if nk == 0:
        return 1.0
    if mode == "exact_formula":
        return float(full_rank_exact(q, n, nk))
    F = field_make(q)
    if mode == "exhaustive":
        total = q ** (n * nk)
        if total > EXHAUSTIVE_BUDGET:
            raise BudgetExceeded("exhaustive matrix count", total, EXHAUSTIVE_BUDGET)
        full, chunk = 0, 1 << 16
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            mats = np.empty((idx.size, nk * n), dtype=np.int64)
            for j in range(nk * n):
                mats[:, j] = idx % q
                idx //= q
            full += int((batch_rank(F, mats.reshape(-1, nk, n)) == nk).sum())
        return full / total
    if mode == "monte_carlo":
        rng = _rng(seed)
        full, chunk = 0, 1 << 14
        for start in range(0, trials, chunk):
            b = min(chunk, trials - start)
            mats = rng.integers(0, q, size=(b, nk, n))
            full += int((batch_rank(F, mats) == nk).sum())
        return full / trials
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class TrialParams:
    q: int
    n: int
    k: int
    ell: int
    s: int
    epsilon: float | None = None
    trials: int = 100
    pattern_samples: int = 10**4
    seed: int = 0
    vacuous: bool = field(init=False)
    degenerate: bool = field(init=False)

    def __post_init__(self):
        self.vacuous = self.s - self.ell <= 0
        self.degenerate = self.s <= 0

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def L(self) -> int:
        """List size q**ell (Python ints do not overflow)."""
        return self.q**self.ell


@dataclass
class TrialReport:
    sampled_codes: int
    full_rank_rejections: int
    pattern_checks: int
    violations: int
    violation_rate: float
    seed: int
    per_code: list[dict] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("per_code")
        return d


def _log_q_2(q: int):
    """log_q(2), exact when q is a power of two."""
    a = q.bit_length() - 1
    if 1 << a == q:
        return Fraction(1, a)
    return math.log(2) / math.log(q)


def thm33_params(q: int, n: int, k: int, epsilon, **trial_kw) -> TrialParams:
    """Parameters for a random [n, k] code at erasure fraction 1 - R - epsilon.

    ``ell = ceil((1/eps) * ((2 - R) * log_q 2 + 1))``, ``L = q**ell`` and
    ``s = floor(n - k - eps * n)``.
    """
    eps = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
    if not 0 < eps < 1:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    R = Fraction(k, n)
    lg = _log_q_2(q)
    if isinstance(lg, Fraction):
        ell = math.ceil(((2 - R) * lg + 1) / eps)
    else:
        # guard against float noise just above an integer
        ell = math.ceil(((2 - float(R)) * lg + 1) / float(eps) - 1e-9)
    s = math.floor(n - k - eps * n)
    return TrialParams(q=q, n=n, k=k, ell=ell, s=s, epsilon=float(eps), **trial_kw)


def _one_code(params: TrialParams, index: int) -> dict:
    F = field_make(params.q)
    rng = _rng(params.seed, index)
    nk = params.n - params.k
    rejections = 0
    while True:
        H = rng.integers(0, params.q, size=(nk, params.n))
        if batch_rank(F, H[None])[0] == nk:
            break
        rejections += 1
    need = params.s - params.ell
    violations = 0
    if need > 0 and params.s > 0:
        cols = rng.random((params.pattern_samples, params.n)).argsort(axis=1)[:, : params.s]
        cols.sort(axis=1)
        chunk = max(1, (1 << 21) // (nk * params.s))
        for start in range(0, params.pattern_samples, chunk):
            c = cols[start : start + chunk]
            subs = np.transpose(H[:, c], (1, 0, 2))
            violations += int((batch_rank(F, subs) < need).sum())
    return {"code": index, "rejections": rejections, "violations": violations}


def decodability_trial(params: TrialParams, workers: int = 1) -> TrialReport:
    """Sample full-rank parity checks and test random s-column submatrices.

    A pattern is a violation when its submatrix has rank below ``s - ell``,
    i.e. the erasure pattern leaves more than ``q**ell`` candidates.  This
    is a sampled estimate; it does not check every pattern.
    """
    if params.pattern_samples < 1:
        raise ValueError("pattern_samples must be >= 1")
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(lambda i: _one_code(params, i), range(params.trials)))
    else:
        rows = [_one_code(params, i) for i in range(params.trials)]
    checks = params.trials * params.pattern_samples
    violations = sum(r["violations"] for r in rows)
    return TrialReport(
        sampled_codes=params.trials,
        full_rank_rejections=sum(r["rejections"] for r in rows),
        pattern_checks=checks,
        violations=violations,
        violation_rate=violations / checks if checks else 0.0,
        seed=params.seed,
        per_code=rows,
    )


# kept for callers that think in list sizes rather than exponents
def ell_for_list_size(q: int, L: int) -> int:
    return list_exponent(q, L)
