"""Sparse multivariate polynomials with exact rational coefficients.

Variables are alpha, beta, x1..xm, y1..ym, totally ordered as

    alpha < beta < x1 < ... < xm < y1 < ... < ym

A monomial is a tuple of ``(Var, exponent)`` pairs sorted by variable, with
every exponent positive; the constant monomial is ``()``. A polynomial maps
monomials to nonzero ``Fraction`` coefficients, so two polynomials are equal
exactly when their term maps are equal. Terms are listed in descending
graded-lexicographic order (total degree first, then exponents compared in
variable order).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Mapping, Sequence, Union

from .arith import is_natural, norm

Monomial = tuple  # tuple[tuple[Var, int], ...]
Scalar = Union[int, Fraction]


class Kind(IntEnum):
    ALPHA = 0
    BETA = 1
    X = 2
    Y = 3


@dataclass(frozen=True, order=True)
class Var:
    kind: Kind
    index: int = 0

    def __post_init__(self):
        if self.kind in (Kind.X, Kind.Y):
            if self.index < 1:
                raise ValueError(f"x/y variables need a positive index, got {self.index}")
        elif self.index != 0:
            raise ValueError(f"{self.kind.name.lower()} takes no index")

    def __str__(self) -> str:
        if self.kind is Kind.ALPHA:
            return "alpha"
        if self.kind is Kind.BETA:
            return "beta"
        return f"{'x' if self.kind is Kind.X else 'y'}{self.index}"

    def __repr__(self) -> str:
        return f"Var({self})"


ALPHA = Var(Kind.ALPHA)
BETA = Var(Kind.BETA)


def X(i: int) -> Var:
    return Var(Kind.X, i)


def Y(i: int) -> Var:
    return Var(Kind.Y, i)


def parse_var(name: str) -> Var:
    """Inverse of ``str(Var)``: "alpha", "beta", "x3", "y1"."""
    if name == "alpha":
        return ALPHA
    if name == "beta":
        return BETA
    if len(name) >= 2 and name[0] in "xy" and name[1:].isdigit():
        return Var(Kind.X if name[0] == "x" else Kind.Y, int(name[1:]))
    raise ValueError(f"unknown variable name {name!r}")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


class Polynomial:
    """Immutable polynomial in canonical form.

    Supports ``+ - * **`` with other polynomials and with int/Fraction
    scalars. Equality is structural, which coincides with mathematical
    equality because the representation is canonical.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # caller guarantees canonical monomials and no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @staticmethod
    def coerce(value: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return const(value)
        return NotImplemented

    # -- inspection ---------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """(monomial, coefficient) pairs in descending graded-lex order."""
        variables = sorted({v for mono in self._terms for v, _ in mono})
        position = {v: i for i, v in enumerate(variables)}

        def key(mono):
            dense = [0] * len(variables)
            for v, e in mono:
                dense[position[v]] = e
            return (_mono_degree(mono), dense)

        return sorted(self._terms.items(), key=lambda item: key(item[0]), reverse=True)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> set[Var]:
        return {v for mono in self._terms for v, _ in mono}

    def degree(self, variables: Iterable[Var] | None = None) -> int:
        """Total degree, optionally counting only ``variables``; -1 for zero."""
        if not self._terms:
            return -1
        if variables is None:
            return max(_mono_degree(mono) for mono in self._terms)
        keep = set(variables)
        return max(sum(e for v, e in mono if v in keep) for mono in self._terms)

    def min_degree(self, variables: Iterable[Var]) -> int:
        if not self._terms:
            return -1
        keep = set(variables)
        return min(sum(e for v, e in mono if v in keep) for mono in self._terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = Polynomial.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other):
        other = Polynomial.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Polynomial.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Polynomial.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = _mono_mul(ma, mb)
                out[mono] = out.get(mono, 0) + ca * cb
        return Polynomial._raw({mono: c for mono, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {e!r}")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- equality / display -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return canonical_string(self)

    def __repr__(self) -> str:
        return f"Polynomial({canonical_string(self)!r})"

    # -- substitution -------------------------------------------------------

    def evaluate(self, assignment: Mapping[Var, Scalar]) -> Fraction:
        """Exact value; every variable of the polynomial must be assigned."""
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                try:
                    term *= Fraction(assignment[v]) ** e
                except KeyError:
                    raise KeyError(f"no value assigned to variable {v}") from None
            total += term
        return total

    def substitute(self, assignment: Mapping[Var, Scalar]) -> "Polynomial":
        """Replace the assigned variables by constants, keeping the rest symbolic."""
        out: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            rest = []
            for v, e in mono:
                if v in assignment:
                    c = c * Fraction(assignment[v]) ** e
                else:
                    rest.append((v, e))
            if c:
                key = tuple(rest)
                out[key] = out.get(key, 0) + c
        return Polynomial._raw({mono: c for mono, c in out.items() if c})

    def rename(self, mapping: Mapping[Var, Var]) -> "Polynomial":
        """Apply an injective renaming of variables."""
        out: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            key = tuple(sorted((mapping.get(v, v), e) for v, e in mono))
            out[key] = out.get(key, 0) + c
        return Polynomial(out)


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({(): Fraction(1)})


def const(c: Scalar) -> Polynomial:
    c = Fraction(c)
    return Polynomial._raw({(): c}) if c else ZERO


def var(v: Var) -> Polynomial:
    return Polynomial._raw({((v, 1),): Fraction(1)})


def monomial(exponents: Mapping[Var, int], coefficient: Scalar = 1) -> Polynomial:
    mono = tuple(sorted((v, e) for v, e in exponents.items() if e))
    return Polynomial({mono: coefficient})


def evaluate(p: Polynomial, assignment: Mapping[Var, Scalar]) -> Fraction:
    return p.evaluate(assignment)


def falling_factorial_poly(p: Polynomial, t: int) -> Polynomial:
    """p(p-1)...(p-t+1)."""
    result = ONE
    for j in range(t):
        result = result * (p - j)
    return result


def multinomial_poly(p: Polynomial | Scalar, n: Sequence[int]) -> Polynomial:
    """Multinomial coefficient with a polynomial top.

    The falling factorial of ``p`` of length |n|, scaled by 1/(n_1!...n_m!);
    the zero polynomial when some entry of ``n`` is negative.
    """
    if not is_natural(n):
        return ZERO
    p = Polynomial.coerce(p)
    scale = Fraction(1, prod(factorial(ni) for ni in n))
    return falling_factorial_poly(p, norm(n)) * scale


def binomial_poly(p: Polynomial | Scalar, j: int) -> Polynomial:
    """Binomial coefficient p choose j; zero for negative j."""
    if j < 0:
        return ZERO
    p = Polynomial.coerce(p)
    return falling_factorial_poly(p, j) * Fraction(1, factorial(j))


def _format_monomial(mono: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)


def canonical_string(p: Polynomial) -> str:
    """Deterministic text form, e.g. ``2*x1^2*y2 - 3/2*alpha*beta + 1``."""
    terms = p.terms()
    if not terms:
        return "0"
    parts = []
    for i, (mono, c) in enumerate(terms):
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = _format_monomial(mono)
        else:
            body = f"{mag}*{_format_monomial(mono)}"
        if i == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts)
