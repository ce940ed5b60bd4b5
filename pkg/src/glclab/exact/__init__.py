from .rational import format_rational, parse_rational, to_fraction
from .interval import RealInterval, Sign, certified_sign, interval_arith, PrecisionExhausted
from .poly import IntegerPolynomial
from .algebraic import AlgebraicReal, isolate_real_roots, refine
from .numfield import (
    Embedded,
    FieldElement,
    NumberField,
    ProductValue,
    embedded,
    field_new,
    product_form,
)
