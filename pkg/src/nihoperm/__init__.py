"""All-ones permutation trinomials over GF(2^(2m)) built from unit-circle fractional maps."""

from .construct import (
    ExponentTriple,
    SparsePolynomial,
    as_polynomial,
    canonicalize,
    derive_exponents,
    enumerate_triples,
)
from .field import FieldSpec, make_field
from .invert import compose_inverse, inverse_params_special, theorem_inverse, verify_roundtrip
from .unit_circle import FractionMap, build_unit_circle, fraction_permutes, tu_fraction
from .verify import (
    binomial_criterion,
    permutes_exhaustive,
    permutes_expsum,
    permutes_via_subgroup,
)

__version__ = "0.1.0"
