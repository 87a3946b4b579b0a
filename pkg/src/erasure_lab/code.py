"""Linear codes, generalized Hamming weights and erasure list decodability.

Three independent routes decide whether a code is (s/n, L)-erasure
list-decodable:

* ``definition``: enumerate every codeword and, for every set of s erased
  coordinates, count the codewords that vanish on the kept ones;
* ``ghw``: compare s with the generalized Hamming weight d_r, where
  ``r = floor(log_q L) + 1``;
* ``rank``: every s columns of the parity-check matrix must have rank at
  least ``s - floor(log_q L)``.

Coordinates are 0-based throughout.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, FormatError, RankDeficient
from .gf import FieldSpec, field_make
from .matgf import MatGF, batch_rank, kernel_basis, matmul, rank, rref

GHW_BUDGET = 10**8
PATTERN_BUDGET = 10**6
CODEWORD_BUDGET = 1 << 22

# per-code memo of exact GHW results and packed codeword supports; codes are immutable
_GHW_CACHE: "weakref.WeakKeyDictionary[LinearCode, dict[int, GhwResult]]" = weakref.WeakKeyDictionary()
_SUPPORT_CACHE: "weakref.WeakKeyDictionary[LinearCode, tuple[np.ndarray, np.ndarray]]" = weakref.WeakKeyDictionary()

Method = Literal["definition", "ghw", "rank"]
METHODS: tuple[str, ...] = ("definition", "ghw", "rank")


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k] code over GF(q) with generator G (k x n) and parity check H ((n-k) x n)."""

    field: FieldSpec
    G: MatGF
    H: MatGF

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rate(self) -> float:
        return self.k / self.n

    def encode(self, message: Sequence[int]) -> np.ndarray:
        return self.G.apply(message)

    def messages(self) -> np.ndarray:
        """All q**k messages in lexicographic order (first coordinate most significant)."""
        return _all_vectors(self.q, self.k)

    def codewords(self, budget: int = CODEWORD_BUDGET) -> np.ndarray:
        """All codewords, row i encoding message i of :meth:`messages`."""
        count = self.q**self.k
        if count > budget:
            raise BudgetExceeded("codeword enumeration", count, budget)
        return matmul(self.field, self.messages(), self.G.data)

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}]_{self.q})"


@dataclass(frozen=True)
class GhwResult:
    r: int
    d_r: int
    witness: MatGF


def _all_vectors(q: int, length: int) -> np.ndarray:
    idx = np.arange(q**length, dtype=np.int64)
    out = np.empty((idx.size, length), dtype=np.int64)
    for j in range(length - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def code_from_generator(field: FieldSpec, G: MatGF) -> LinearCode:
    if G.field != field:
        raise DimensionMismatch(f"generator over {G.field!r}, expected {field!r}")
    if G.rows < 1 or rank(G) != G.rows:
        raise RankDeficient(f"generator of shape {G.shape} is not full row rank")
    return LinearCode(field, G, kernel_basis(G))


def dual(C: LinearCode) -> LinearCode:
    return code_from_generator(C.field, C.H)


def same_code(a: LinearCode, b: LinearCode) -> bool:
    """True when the two generators span the same space."""
    return a.field == b.field and a.G.shape == b.G.shape and rref(a.G)[0] == rref(b.G)[0]


def list_exponent(q: int, L: int) -> int:
    """floor(log_q L), computed exactly."""
    if L < 1:
        raise ValueError(f"list size must be >= 1, got {L}")
    e, power = 0, q
    while power <= L:
        e += 1
        power *= q
    return e


def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^k."""
    if r < 0 or r > k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subcode_support(basis: MatGF) -> tuple[int, ...]:
    """Coordinates where some vector of span(basis) is nonzero."""
    if basis.rows == 0:
        return ()
    return tuple(int(i) for i in np.flatnonzero((basis.data != 0).any(axis=0)))


def _support_words(words: np.ndarray) -> np.ndarray:
    """Pack each row's support into uint64 words, shape (rows, ceil(n/64))."""
    rows, n = words.shape
    nw = max(1, -(-n // 64))
    out = np.zeros((rows, nw), dtype=np.uint64)
    nz = words != 0
    for i in range(n):
        out[:, i // 64] |= nz[:, i].astype(np.uint64) << np.uint64(i % 64)
    return out


def _rref_subspaces(q: int, k: int, r: int, chunk: int = 1 << 16):
    """Yield message-index arrays (B, r) for every r-dim subspace of GF(q)^k.

    Each subspace appears once, as its canonical RREF basis.  Order: pivot
    sets lexicographically, then free entries lexicographically.  Message
    indices use the ordering of :meth:`LinearCode.messages`.
    """
    place = [q ** (k - 1 - j) for j in range(k)]
    for pivots in combinations(range(k), r):
        pset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, k) if j not in pset]
        base = np.array([place[p] for p in pivots], dtype=np.int64)
        total = q ** len(free)
        for start in range(0, total, chunk):
            fill = np.arange(start, min(total, start + chunk), dtype=np.int64)
            idx = np.tile(base, (fill.size, 1))
            rest = fill.copy()
            for i, j in reversed(free):
                idx[:, i] += (rest % q) * place[j]
                rest //= q
            yield idx


def ghw_exact(C: LinearCode, r: int, budget: int = GHW_BUDGET) -> GhwResult:
    """Exact r-th generalized Hamming weight with a witness subcode.

    Enumerates every r-dimensional subspace of the message space once; the
    witness is the first minimiser in enumeration order.
    """
    if not 1 <= r <= C.k:
        raise ValueError(f"r must lie in [1, {C.k}], got {r}")
    count = gaussian_binomial(C.k, r, C.q)
    if count > budget:
        raise BudgetExceeded(f"GHW d_{r} subspace count", count, budget)
    memo = _GHW_CACHE.setdefault(C, {})
    if r not in memo:
        memo[r] = _ghw_search(C, r, budget)
    return memo[r]


def _codeword_supports(C: LinearCode, budget: int = CODEWORD_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    if C not in _SUPPORT_CACHE:
        words = C.codewords(budget=budget)
        _SUPPORT_CACHE[C] = (words, _support_words(words))
    return _SUPPORT_CACHE[C]


def _ghw_search(C: LinearCode, r: int, budget: int) -> GhwResult:
    words, supp = _codeword_supports(C, budget=max(CODEWORD_BUDGET, budget))
    best, best_rows = C.n + 1, None
    for idx in _rref_subspaces(C.q, C.k, r):
        union = supp[idx[:, 0]]
        for i in range(1, r):
            union = union | supp[idx[:, i]]
        sizes = np.bitwise_count(union).sum(axis=1)
        j = int(sizes.argmin())
        if sizes[j] < best:
            best, best_rows = int(sizes[j]), idx[j]
            if best == r:  # supports of r independent vectors have size >= r
                break
    witness = MatGF(C.field, words[best_rows])
    return GhwResult(r, best, witness)


def ghw_hierarchy(C: LinearCode, budget: int = GHW_BUDGET) -> list[GhwResult]:
    out = [ghw_exact(C, r, budget) for r in range(1, C.k + 1)]
    for a, b in zip(out, out[1:]):
        assert a.d_r < b.d_r, f"GHW hierarchy not strictly increasing: {a.d_r} >= {b.d_r}"
    return out


def _erased_sets(n: int, s: int, budget: int) -> Iterable[tuple[int, ...]]:
    count = comb(n, s)
    if count > budget:
        raise BudgetExceeded(f"erasure patterns C({n},{s})", count, budget)
    return combinations(range(n), s)


def _check_definition(C: LinearCode, s: int, L: int, budget: int) -> bool:
    patterns = list(_erased_sets(C.n, s, budget))
    _, supp = _codeword_supports(C)
    # bitmask of each erased set, same packing as the supports
    masks = np.zeros((len(patterns), supp.shape[1]), dtype=np.uint64)
    for row, E in enumerate(patterns):
        for i in E:
            masks[row, i // 64] |= np.uint64(1) << np.uint64(i % 64)
    step = max(1, (1 << 22) // supp.shape[0])
    for start in range(0, len(patterns), step):
        m = masks[start : start + step]
        # codeword vanishes on the kept set iff its support lies inside E
        inside = ((supp[None, :, :] & ~m[:, None, :]) == 0).all(axis=2)
        if inside.sum(axis=1).max() > L:
            return False
    return True


def _check_rank(C: LinearCode, s: int, e: int, budget: int) -> bool:
    need = s - e
    if need <= 0:
        return True
    H = C.H.data
    patterns = list(_erased_sets(C.n, s, budget))
    if H.shape[0] < need:
        return False
    step = max(1, (1 << 20) // max(1, H.shape[0] * s))
    for start in range(0, len(patterns), step):
        cols = np.array(patterns[start : start + step], dtype=np.int64)
        subs = np.transpose(H[:, cols], (1, 0, 2))
        if batch_rank(C.field, subs).min() < need:
            return False
    return True


def is_erasure_list_decodable(
    C: LinearCode,
    s: int,
    L: int,
    method: Method = "rank",
    *,
    ghw_budget: int = GHW_BUDGET,
    pattern_budget: int = PATTERN_BUDGET,
) -> bool:
    """Is C (s/n, L)-erasure list-decodable?  All methods agree on every input."""
    if not 0 <= s <= C.n:
        raise ValueError(f"erasure count s must lie in [0, {C.n}], got {s}")
    e = list_exponent(C.q, L)
    if s == 0:
        return True
    if method == "definition":
        return _check_definition(C, s, L, pattern_budget)
    if method == "ghw":
        r = e + 1
        if r > C.k:
            return True
        return ghw_exact(C, r, ghw_budget).d_r > s
    if method == "rank":
        return _check_rank(C, s, e, pattern_budget)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def erasure_radius(C: LinearCode, L: int, budget: int = GHW_BUDGET) -> int:
    """Largest s such that C is (s/n, L)-erasure list-decodable.

    With ``r = floor(log_q L) + 1 > k`` every pattern leaves at most
    ``q**k <= L`` candidates and the radius is n.
    """
    r = list_exponent(C.q, L) + 1
    if r > C.k:
        return C.n
    return ghw_exact(C, r, budget).d_r - 1


# --- code file: "q n k" then k generator rows ---

def format_code(C: LinearCode) -> str:
    lines = [f"{C.q} {C.n} {C.k}"]
    lines += [" ".join(str(int(v)) for v in row) for row in C.G.data]
    return "\n".join(lines) + "\n"


def _parse_header_and_rows(lines: list[str]) -> tuple[FieldSpec, MatGF]:
    try:
        q, n, k = (int(t) for t in lines[0].split())
        rows = [[int(t) for t in ln.split()] for ln in lines[1 : 1 + k]]
    except (ValueError, IndexError) as exc:
        raise FormatError(f"malformed code header or generator rows: {exc}") from None
    if len(rows) != k or any(len(r) != n for r in rows):
        raise FormatError(f"expected {k} generator rows of length {n}")
    F = field_make(q)
    if any(v < 0 or v >= q for r in rows for v in r):
        raise FormatError(f"generator entries must lie in [0, {q})")
    return F, MatGF.from_rows(F, rows, cols=n)


def parse_code(text: str) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty code file")
    F, G = _parse_header_and_rows(lines)
    if len(lines) > 1 + G.rows:
        raise FormatError(f"unexpected content after {G.rows} generator rows: {lines[1 + G.rows]!r}")
    return code_from_generator(F, G)
