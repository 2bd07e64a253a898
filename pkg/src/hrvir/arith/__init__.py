"""Exact arithmetic: symbols, sparse polynomials, reduced rational functions."""
from .algorithms import (cancel, determinant, poly_divides, poly_gcd, rational_roots,
                         resultant, sylvester_matrix)
from .parse import parse_scalar
from .polynomial import Polynomial
from .scalar import Scalar, S
from .symbols import (BASIS_VALUE, INDEXED_UNKNOWN, PARAMETER, TABLE, Symbol, basis_symbol,
                      symbol, unknown)

__all__ = [
    "BASIS_VALUE", "INDEXED_UNKNOWN", "PARAMETER", "Polynomial", "S", "Scalar", "Symbol",
    "TABLE", "basis_symbol", "cancel", "determinant", "parse_scalar", "poly_divides",
    "poly_gcd", "rational_roots", "resultant", "sylvester_matrix", "symbol", "unknown",
]
