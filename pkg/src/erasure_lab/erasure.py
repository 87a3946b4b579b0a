"""Erasure channel model and the linear-algebra erasure list decoder.

A codeword ``c = lam @ G`` is consistent with the received symbols on the
kept set T iff ``lam @ G[:, T] == values``.  The decoder solves that
|T|-equation, k-unknown system once and walks the solution coset, so it
never touches all q**k codewords.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .code import LinearCode, _parse_header_and_rows, code_from_generator, format_code
from .errors import DimensionMismatch, FormatError, IndexOutOfRange
from .matgf import matmul, rank, solve_affine


@dataclass(frozen=True)
class ErasurePattern:
    n: int
    kept: tuple[int, ...]

    def __post_init__(self):
        kept = tuple(sorted(set(int(i) for i in self.kept)))
        if any(i < 0 or i >= self.n for i in kept):
            raise IndexOutOfRange(f"kept indices must lie in [0, {self.n})")
        object.__setattr__(self, "kept", kept)

    @classmethod
    def from_erased(cls, n: int, erased) -> "ErasurePattern":
        erased = set(erased)
        return cls(n, tuple(i for i in range(n) if i not in erased))

    @property
    def erased(self) -> tuple[int, ...]:
        kept = set(self.kept)
        return tuple(i for i in range(self.n) if i not in kept)

    @property
    def s(self) -> int:
        return self.n - len(self.kept)


@dataclass(frozen=True)
class ErasureQuery:
    T: tuple[int, ...]
    values: tuple[int, ...]
    L: int = 1

    def __post_init__(self):
        if len(self.T) != len(self.values):
            raise DimensionMismatch(f"{len(self.T)} kept indices but {len(self.values)} values")
        if list(self.T) != sorted(set(self.T)):
            raise ValueError("kept indices must be strictly increasing")
        if self.L < 1:
            raise ValueError("list cap L must be >= 1")


@dataclass
class DecodeList:
    codewords: list[list[int]] = field(default_factory=list)
    truncated: bool = False
    solution_dim: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {"solution_dim": self.solution_dim, "truncated": self.truncated, "codewords": self.codewords}
        )


def erase(word: Sequence[int], pattern: ErasurePattern) -> tuple[int, ...]:
    """Symbols of ``word`` on the kept coordinates, in index order."""
    if len(word) != pattern.n:
        raise DimensionMismatch(f"word of length {len(word)} for pattern of length {pattern.n}")
    return tuple(int(word[i]) for i in pattern.kept)


def query_for(word: Sequence[int], pattern: ErasurePattern, L: int = 1) -> ErasureQuery:
    return ErasureQuery(pattern.kept, erase(word, pattern), L)


def list_decode(C: LinearCode, query: ErasureQuery, cap: int) -> DecodeList:
    """All codewords agreeing with ``query.values`` on ``query.T``.

    If the solution coset holds more than ``cap`` codewords, the first
    ``cap`` (lexicographic in kernel coefficients) are returned and the
    result is flagged truncated.  ``solution_dim`` is always
    ``k - rank(G[:, T])``.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if any(i < 0 or i >= C.n for i in query.T):
        raise DimensionMismatch(f"kept index outside [0, {C.n})")
    F = C.field
    A = C.G.select_columns(query.T).T  # |T| x k
    sol = solve_affine(A, query.values)
    if sol is None:
        # kernel dimension of the homogeneous system still describes the ambiguity
        return DecodeList([], False, C.k - rank(A))
    x0, K = sol
    dim = K.rows
    size = C.q**dim
    truncated = size > cap
    count = min(size, cap)
    coeffs = np.array(list(_first_coefficients(C.q, dim, count)), dtype=np.int64).reshape(count, dim)
    lams = F.add(x0[None, :], matmul(F, coeffs, K.data)) if dim else np.tile(x0, (1, 1))
    words = matmul(F, lams, C.G.data)
    return DecodeList([list(map(int, w)) for w in words], truncated, dim)


def _first_coefficients(q: int, dim: int, count: int):
    for i, c in enumerate(product(range(q), repeat=dim)):
        if i == count:
            return
        yield c


def brute_force_list(C: LinearCode, query: ErasureQuery) -> list[list[int]]:
    """Reference filter over all q**k codewords (for testing)."""
    words = C.codewords()
    if not query.T:
        return [list(map(int, w)) for w in words]
    mask = (words[:, list(query.T)] == np.array(query.values)[None, :]).all(axis=1)
    return [list(map(int, w)) for w in words[mask]]


# --- decode request file ---

def parse_decode_request(text: str) -> tuple[LinearCode, ErasureQuery]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty decode request")
    F, G = _parse_header_and_rows(lines)
    C = code_from_generator(F, G)
    kept = values = None
    for ln in lines[1 + C.k :]:
        key, _, rest = ln.partition(":")
        try:
            nums = tuple(int(t) for t in rest.split())
        except ValueError:
            raise FormatError(f"malformed line {ln!r}") from None
        if key.strip() == "kept":
            kept = nums
        elif key.strip() == "values":
            values = nums
        else:
            raise FormatError(f"unexpected line {ln!r}")
    if kept is None or values is None:
        raise FormatError("decode request needs 'kept:' and 'values:' lines")
    if any(v < 0 or v >= F.q for v in values):
        raise FormatError(f"values must lie in [0, {F.q})")
    if any(i < 0 or i >= C.n for i in kept):
        raise FormatError(f"kept indices must lie in [0, {C.n})")
    try:
        return C, ErasureQuery(kept, values)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_decode_request(C: LinearCode, query: ErasureQuery) -> str:
    return (
        format_code(C)
        + "kept: " + " ".join(map(str, query.T)) + "\n"
        + "values: " + " ".join(map(str, query.values)) + "\n"
    )
