"""Erasure list decoding of linear codes: criteria, decoder, random and AG codes."""
from .gf import FieldSpec, field_make
from .matgf import MatGF, kernel_basis, rank, rank_of_columns, rref, solve_affine
from .code import (
    GhwResult,
    LinearCode,
    code_from_generator,
    erasure_radius,
    ghw_exact,
    ghw_hierarchy,
    is_erasure_list_decodable,
    subcode_support,
)
from .erasure import DecodeList, ErasurePattern, ErasureQuery, erase, list_decode

__version__ = "0.1.0"
