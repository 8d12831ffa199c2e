"""Rees ideals of uniform monomial ideals I = (x1^a, ..., xn^a, (x1...xn)^b).

Closed-form and iterated Sylvester-form generators, a Buchberger engine with
an elimination oracle, monomial-ideal tools and a claim-by-claim verifier.
"""

from .groebner import Caps, GroebnerBasis, ResourceCapExceeded, buchberger, rees_oracle
from .monomial_ideal import MonomialIdeal, predicted_colon, predicted_initial_ideal
from .poly import MonomialOrder, Polynomial, Ring, VarSet, WeightVector
from .uniform import (
    InvalidParams, UniformParams, rees_generators, reduction_data, sequential_tuples,
    sylvester_closed, sylvester_iterative,
)
from .verifier import CertReport, run_grid, verify_point

__all__ = [
    "Caps", "CertReport", "GroebnerBasis", "InvalidParams", "MonomialIdeal", "MonomialOrder",
    "Polynomial", "ResourceCapExceeded", "Ring", "UniformParams", "VarSet", "WeightVector",
    "buchberger", "predicted_colon", "predicted_initial_ideal", "rees_generators", "rees_oracle",
    "reduction_data", "run_grid", "sequential_tuples", "sylvester_closed", "sylvester_iterative",
    "verify_point",
]
