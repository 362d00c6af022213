"""Exact integer-arithmetic tools for totalization towers of cosimplicial
chain complexes, homotopy colimits of covers, and poset-indexed delooping
certificates.

Everything here computes over Z with arbitrary precision.  No floats, no
numerical tolerance anywhere: equalities of homology groups, chain maps and
spectral sequence pages are decided exactly.
"""

__version__ = "0.1.0"

from .errors import InputError, InvariantError, PreconditionError

__all__ = [
    "InputError",
    "InvariantError",
    "PreconditionError",
    "__version__",
]
