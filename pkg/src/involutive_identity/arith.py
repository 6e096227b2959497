"""Exact integer/rational helpers and the numeric multinomial coefficient.

Integers are Python ints and rationals are ``fractions.Fraction``; both are
arbitrary precision, so nothing here can overflow. An index vector is a plain
tuple of ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

__all__ = [
    "factorial",
    "falling_factorial",
    "multinomial",
    "power_vec",
    "norm",
    "is_natural",
    "parse_rational",
    "format_rational",
    "parse_index_vector",
]

IndexVector = tuple[int, ...]


def norm(n: Iterable[int]) -> int:
    """|n|, the sum of the entries."""
    return sum(n)


def is_natural(n: Iterable[int]) -> bool:
    return all(ni >= 0 for ni in n)


def falling_factorial(x: int, t: int) -> int:
    """x(x-1)...(x-t+1); the empty product (t=0) is 1."""
    if t < 0:
        raise ValueError(f"falling factorial length must be >= 0, got {t}")
    result = 1
    for j in range(t):
        result *= x - j
    return result


def multinomial(x: int, n: Sequence[int]) -> int:
    """Multinomial coefficient of an integer top over an index vector.

    Zero when some entry of ``n`` is negative. Otherwise the falling factorial
    of length |n| divided by the product of the entry factorials, which is
    always an exact integer.
    """
    if not is_natural(n):
        return 0
    q, r = divmod(falling_factorial(x, norm(n)), prod(factorial(ni) for ni in n))
    if r:
        raise ArithmeticError(f"inexact multinomial division for x={x}, n={tuple(n)}")
    return q


def power_vec(b: Sequence[Fraction | int], a: Sequence[int]) -> Fraction:
    """b_1^a_1 * ... * b_m^a_m."""
    if len(b) != len(a):
        raise ValueError(f"length mismatch: base has {len(b)} entries, exponent {len(a)}")
    if not is_natural(a):
        raise ValueError(f"exponent vector must be nonnegative, got {tuple(a)}")
    return Fraction(prod((Fraction(bi) ** ai for bi, ai in zip(b, a)), start=Fraction(1)))


def parse_rational(text: str) -> Fraction:
    """Parse "p", "-p" or "p/q" into a reduced Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction | int) -> str:
    # Fraction's str already prints "p" when the denominator is 1
    return str(Fraction(q))


def parse_index_vector(text: str) -> IndexVector:
    """Parse a comma-separated list of integers, e.g. "2,2"."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"not a comma-separated integer list: {text!r}") from exc
