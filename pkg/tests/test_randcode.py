from fractions import Fraction
from itertools import product

import pytest

from erasure_lab.errors import BudgetExceeded, InvalidEpsilon
from erasure_lab.randcode import (
    TrialParams,
    decodability_trial,
    ell_for_list_size,
    full_rank_exact,
    full_rank_probability,
    sample_parity_check,
    thm33_params,
)


def _gf2_rank_bits(rows):
    # plain xor elimination on integer bitmasks
    rows, r = list(rows), 0
    for bit in reversed(range(64)):
        piv = next((i for i in range(r, len(rows)) if rows[i] >> bit & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] >> bit & 1:
                rows[i] ^= rows[r]
        r += 1
    return r


def test_sampling_is_deterministic():
    a = sample_parity_check(5, 12, 4, seed=11)
    b = sample_parity_check(5, 12, 4, seed=11)
    c = sample_parity_check(5, 12, 4, seed=12)
    assert a == b and a != c
    assert a.shape == (4, 12)


def test_entries_are_uniform_on_average():
    H = sample_parity_check(3, 1000, 100, seed=0)
    assert abs(H.data.mean() - 1.0) <= 0.01
    counts = [int((H.data == v).sum()) for v in range(3)]
    assert all(abs(c / 10**5 - 1 / 3) < 0.01 for c in counts)


def test_full_rank_2x4_by_enumeration():
    full = sum(_gf2_rank_bits([a, b]) == 2 for a, b in product(range(16), repeat=2))
    assert full == 210  # (16 - 1) * (16 - 2)
    assert full_rank_exact(2, 4, 2) == Fraction(210, 256)
    assert full_rank_probability(2, 4, 2, "exhaustive") == 210 / 256
    assert full_rank_probability(2, 4, 2, "exact_formula") == 210 / 256


@pytest.mark.parametrize("q,n,nk", [(2, 5, 3), (3, 4, 2), (4, 3, 2), (2, 6, 3), (5, 3, 2)])
def test_exhaustive_matches_formula(q, n, nk):
    assert abs(full_rank_probability(q, n, nk, "exhaustive") - float(full_rank_exact(q, n, nk))) <= 1e-12


def test_exhaustive_budget():
    with pytest.raises(BudgetExceeded):
        full_rank_probability(2, 10, 5, "exhaustive")


@pytest.mark.parametrize("q,n,nk", [(2, 10, 5), (2, 8, 8), (3, 6, 4)])
def test_monte_carlo_band(q, n, nk):
    est = full_rank_probability(q, n, nk, "monte_carlo", trials=10**5, seed=1)
    assert abs(est - float(full_rank_exact(q, n, nk))) <= 0.01


def test_monte_carlo_seeded():
    a = full_rank_probability(2, 10, 5, "monte_carlo", trials=5000, seed=4)
    assert a == full_rank_probability(2, 10, 5, "monte_carlo", trials=5000, seed=4)


def test_full_rank_increases_with_n():
    ps = [full_rank_exact(2, n, n // 2) for n in (10, 20, 30)]
    assert ps[0] < ps[1] < ps[2] < 1


def test_no_rows_is_full_rank():
    assert full_rank_probability(7, 5, 0) == 1.0
    assert full_rank_probability(7, 5, 0, "monte_carlo") == 1.0


def test_unknown_mode():
    with pytest.raises(ValueError):
        full_rank_probability(2, 4, 2, "guess")


def test_params_binary_example():
    # R = 1/2, log_2 2 = 1: ell = ceil(10 * 2.5) = 25, s = floor(40 - 20 - 4) = 16
    p = thm33_params(2, 40, 20, 0.1)
    assert (p.ell, p.s) == (25, 16)
    assert p.vacuous and not p.degenerate
    assert p.L == 2**25 and p.rate == 0.5


def test_params_quaternary_example():
    # log_4 2 = 1/2: ell = ceil((1.5 * 0.5 + 1) / 0.1) = ceil(17.5) = 18, s = 100 - 50 - 10
    p = thm33_params(4, 100, 50, 0.1)
    assert (p.ell, p.s) == (18, 40)
    assert not p.vacuous


def test_params_non_power_of_two():
    # ell = ceil(((2 - 1/3) * log_3 2 + 1) / 0.25) with log_3 2 = 0.6309...
    p = thm33_params(3, 30, 10, 0.25)
    assert p.ell == 9 and p.s == 12  # 4 * (1.0515 + 1) = 8.206
    assert isinstance(p.L, int) and p.L == 3**9


def test_huge_list_size_does_not_overflow():
    p = thm33_params(65536, 10, 5, 0.01)
    assert p.L == 65536**p.ell and p.L.bit_length() > 64


@pytest.mark.parametrize("eps", [0, 1, -0.1, 1.5])
def test_invalid_epsilon(eps):
    with pytest.raises(InvalidEpsilon):
        thm33_params(2, 40, 20, eps)


def test_degenerate_params():
    p = thm33_params(2, 10, 9, 0.5)
    assert p.s <= 0 and p.degenerate
    rep = decodability_trial(TrialParams(**{**_fields(p), "trials": 3, "pattern_samples": 10}))
    assert rep.violations == 0


def _fields(p):
    return dict(q=p.q, n=p.n, k=p.k, ell=p.ell, s=p.s, epsilon=p.epsilon, seed=p.seed)


def test_vacuous_trial_has_no_violations():
    p = thm33_params(2, 40, 20, 0.1, trials=5, pattern_samples=500, seed=3)
    rep = decodability_trial(p)
    assert rep.violations == 0 and rep.violation_rate == 0.0
    assert rep.sampled_codes == 5 and rep.pattern_checks == 2500


def test_trial_reproducible_and_thread_invariant():
    p = TrialParams(q=2, n=16, k=8, ell=1, s=6, trials=12, pattern_samples=300, seed=9)
    a = decodability_trial(p)
    b = decodability_trial(p, workers=4)
    assert a.to_dict() == b.to_dict() and a.per_code == b.per_code
    c = decodability_trial(TrialParams(**{**_fields(p), "seed": 10, "trials": 12, "pattern_samples": 300}))
    assert c.per_code != a.per_code


def test_square_patterns_hit_singular_submatrices():
    # s = n - k and ell = 0: a violation is a singular (n-k)x(n-k) submatrix.
    # For an unconditioned uniform square matrix that happens with probability
    # 1 - prod(1 - 2^-i); conditioning H on full rank shifts it only slightly.
    p = TrialParams(q=2, n=20, k=10, ell=0, s=10, trials=20, pattern_samples=500, seed=0)
    rep = decodability_trial(p)
    expected = 1 - float(full_rank_exact(2, 10, 10))
    assert rep.violation_rate > 0
    assert abs(rep.violation_rate - expected) < 0.05


def test_report_dict_keys():
    rep = decodability_trial(TrialParams(q=3, n=8, k=4, ell=1, s=3, trials=2, pattern_samples=10))
    assert set(rep.to_dict()) == {
        "sampled_codes", "full_rank_rejections", "pattern_checks", "violations", "violation_rate", "seed"
    }


def test_ell_for_list_size():
    assert [ell_for_list_size(2, L) for L in (1, 2, 5, 8)] == [0, 1, 2, 3]
