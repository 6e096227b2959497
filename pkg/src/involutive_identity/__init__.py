"""Exact verification of a multinomial summation identity and its involutive proof."""

from .arith import falling_factorial, multinomial, power_vec
from .configspace import ConfigParams, Configuration, count, enumerate_configurations, validate
from .identity import IdentityInstance, verify_random, verify_symbolic
from .involution import audit
from .multipoly import ALPHA, BETA, Polynomial, X, Y, canonical_string, const, var

__all__ = [
    "ALPHA",
    "BETA",
    "ConfigParams",
    "Configuration",
    "IdentityInstance",
    "Polynomial",
    "X",
    "Y",
    "audit",
    "canonical_string",
    "const",
    "count",
    "enumerate_configurations",
    "falling_factorial",
    "multinomial",
    "power_vec",
    "validate",
    "var",
    "verify_random",
    "verify_symbolic",
]
