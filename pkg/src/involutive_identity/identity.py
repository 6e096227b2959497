"""Builders and verifiers for three nested summation identities.

``multinomial_lhs`` / ``multinomial_rhs``
    sum over 0 <= k <= n of
    (-1)^(|n|-|k|) C(beta-alpha+|n|, n-k) C(beta+|k|, k) (x+y)^k y^(n-k)
    versus
    C(alpha, n-k) C(beta+|k|, k) x^k y^(n-k),
    with C(top, v) the multinomial coefficient.

``binomial_lhs`` / ``binomial_rhs``
    the one-variable case, written with ordinary binomials in x = x1, y = y1.

``delannoy_lhs`` / ``delannoy_rhs``
    sum_k C(n,k) C(n+k,k) (-1)^(n-k) (1+x)^k = sum_k C(n,k) C(n+k,k) x^k,
    the binomial case at alpha = beta = n, y = 1.

Each family is built from its own formula, so comparing them is a genuine
cross-check rather than a tautology.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Mapping, Sequence

from .arith import falling_factorial, format_rational, is_natural, norm
from .multipoly import (
    ALPHA,
    BETA,
    ONE,
    ZERO,
    Polynomial,
    Var,
    X,
    Y,
    binomial_poly,
    canonical_string,
    const,
    multinomial_poly,
    var,
)

SYMBOLIC = "symbolic"
RANDOMIZED = "randomized"
ENUMERATIVE = "enumerative"


@dataclass(frozen=True)
class IdentityInstance:
    """One instance of the multinomial identity.

    ``alpha``/``beta`` are ints or ``None`` (symbolic). ``x``/``y`` are
    length-m sequences of rationals or ``None`` (symbolic); they are
    independent so that e.g. y may be fixed to 1 while x stays symbolic.
    """

    n: tuple[int, ...]
    alpha: int | None = None
    beta: int | None = None
    x: tuple[Fraction, ...] | None = None
    y: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        if not self.n:
            raise ValueError("n must have at least one entry")
        if not is_natural(self.n):
            raise ValueError(f"n must be nonnegative, got {self.n}")
        for name in ("x", "y"):
            values = getattr(self, name)
            if values is not None:
                values = tuple(Fraction(v) for v in values)
                if len(values) != self.m:
                    raise ValueError(f"{name} has {len(values)} entries, expected m={self.m}")
                object.__setattr__(self, name, values)

    @property
    def m(self) -> int:
        return len(self.n)

    def symbolic_variables(self) -> list[Var]:
        out = []
        if self.alpha is None:
            out.append(ALPHA)
        if self.beta is None:
            out.append(BETA)
        if self.x is None:
            out.extend(X(i) for i in range(1, self.m + 1))
        if self.y is None:
            out.extend(Y(i) for i in range(1, self.m + 1))
        return out

    def to_json(self) -> dict:
        def vec(values):
            return None if values is None else [format_rational(v) for v in values]

        return {
            "m": self.m,
            "n": list(self.n),
            "alpha": self.alpha,
            "beta": self.beta,
            "x": vec(self.x),
            "y": vec(self.y),
        }


@dataclass
class VerifyReport:
    equal: bool
    mode: str
    difference: Polynomial
    trials: int | None = None
    witness: dict[Var, Fraction] | None = field(default=None)

    def to_json(self) -> dict:
        out = {
            "equal": self.equal,
            "mode": self.mode,
            "difference": canonical_string(self.difference),
        }
        if self.trials is not None:
            out["trials"] = self.trials
        if self.witness is not None:
            out["witness"] = {str(v): format_rational(q) for v, q in self.witness.items()}
        return out


def k_vectors(n: Sequence[int]) -> itertools.product:
    """All k with 0 <= k_i <= n_i, lexicographically ascending."""
    return itertools.product(*(range(ni + 1) for ni in n))


def _symbols(inst: IdentityInstance):
    alpha = var(ALPHA) if inst.alpha is None else const(inst.alpha)
    beta = var(BETA) if inst.beta is None else const(inst.beta)
    m = range(1, inst.m + 1)
    xs = [var(X(i)) for i in m] if inst.x is None else [const(v) for v in inst.x]
    ys = [var(Y(i)) for i in m] if inst.y is None else [const(v) for v in inst.y]
    return alpha, beta, xs, ys


def _powers(bases: Sequence[Polynomial], exps: Sequence[int]) -> Polynomial:
    result = ONE
    for b, e in zip(bases, exps):
        result = result * b**e
    return result


def multinomial_lhs_terms(inst: IdentityInstance) -> dict[tuple[int, ...], Polynomial]:
    """Signed left-hand summand for every k, keyed by k in ascending order."""
    alpha, beta, xs, ys = _symbols(inst)
    n, total = inst.n, norm(inst.n)
    top = beta - alpha + total
    xy = [xi + yi for xi, yi in zip(xs, ys)]
    terms = {}
    for k in k_vectors(n):
        rest = tuple(ni - ki for ni, ki in zip(n, k))
        sign = -1 if (total - sum(k)) % 2 else 1
        terms[k] = (
            multinomial_poly(top, rest)
            * multinomial_poly(beta + sum(k), k)
            * _powers(xy, k)
            * _powers(ys, rest)
            * sign
        )
    return terms


def multinomial_rhs_terms(inst: IdentityInstance) -> dict[tuple[int, ...], Polynomial]:
    alpha, beta, xs, ys = _symbols(inst)
    n = inst.n
    terms = {}
    for k in k_vectors(n):
        rest = tuple(ni - ki for ni, ki in zip(n, k))
        terms[k] = (
            multinomial_poly(alpha, rest)
            * multinomial_poly(beta + sum(k), k)
            * _powers(xs, k)
            * _powers(ys, rest)
        )
    return terms


def multinomial_lhs(inst: IdentityInstance) -> Polynomial:
    return sum(multinomial_lhs_terms(inst).values(), ZERO)


def multinomial_rhs(inst: IdentityInstance) -> Polynomial:
    return sum(multinomial_rhs_terms(inst).values(), ZERO)


def _binomial_symbols(alpha, beta, x, y):
    return (
        var(ALPHA) if alpha is None else const(alpha),
        var(BETA) if beta is None else const(beta),
        var(X(1)) if x is None else const(x),
        var(Y(1)) if y is None else const(y),
    )


def binomial_lhs(n: int, alpha=None, beta=None, x=None, y=None) -> Polynomial:
    """sum_k C(beta-alpha+n, n-k) C(beta+k, k) (-1)^(n-k) (x+y)^k y^(n-k)."""
    a, b, xp, yp = _binomial_symbols(alpha, beta, x, y)
    total = ZERO
    for k in range(n + 1):
        total = total + (
            binomial_poly(b - a + n, n - k)
            * binomial_poly(b + k, k)
            * (-1) ** (n - k)
            * (xp + yp) ** k
            * yp ** (n - k)
        )
    return total


def binomial_rhs(n: int, alpha=None, beta=None, x=None, y=None) -> Polynomial:
    """sum_k C(alpha, n-k) C(beta+k, k) x^k y^(n-k)."""
    a, b, xp, yp = _binomial_symbols(alpha, beta, x, y)
    total = ZERO
    for k in range(n + 1):
        total = total + binomial_poly(a, n - k) * binomial_poly(b + k, k) * xp**k * yp ** (n - k)
    return total


def delannoy_lhs(n: int) -> Polynomial:
    x = var(X(1))
    return sum(
        (comb(n, k) * comb(n + k, k) * (-1) ** (n - k) * (1 + x) ** k for k in range(n + 1)),
        ZERO,
    )


def delannoy_rhs(n: int) -> Polynomial:
    x = var(X(1))
    return sum((comb(n, k) * comb(n + k, k) * x**k for k in range(n + 1)), ZERO)


def verify_symbolic(
    inst: IdentityInstance,
    lhs: Polynomial | None = None,
    rhs: Polynomial | None = None,
) -> VerifyReport:
    """Compare both sides as polynomials.

    ``lhs``/``rhs`` override the built sides (used for negative controls).
    """
    lhs = multinomial_lhs(inst) if lhs is None else lhs
    rhs = multinomial_rhs(inst) if rhs is None else rhs
    diff = lhs - rhs
    return VerifyReport(equal=diff.is_zero(), mode=SYMBOLIC, difference=diff)


def _scalar_values(inst: IdentityInstance, point: Mapping[Var, Fraction]):
    alpha = inst.alpha if inst.alpha is not None else point[ALPHA]
    beta = inst.beta if inst.beta is not None else point[BETA]
    m = range(1, inst.m + 1)
    xs = inst.x if inst.x is not None else [point[X(i)] for i in m]
    ys = inst.y if inst.y is not None else [point[Y(i)] for i in m]
    return _as_int(alpha), _as_int(beta), [_narrow(v) for v in xs], [_narrow(v) for v in ys]


def _as_int(value) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise ValueError(f"alpha and beta must be integers for numeric evaluation, got {value}")
    return value.numerator


def _narrow(value):
    # plain ints are several times faster than Fraction in the inner loop
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def _prefix_falling(x: int, t: int) -> list[int]:
    """[x^(0), x^(1), ..., x^(t)] with x^(j) the falling factorial of length j."""
    out = [1]
    for j in range(t):
        out.append(out[-1] * (x - j))
    return out


def _power_table(bases, limits):
    table = []
    for b, top in zip(bases, limits):
        row = [1]
        for _ in range(top):
            row.append(row[-1] * b)
        table.append(row)
    return table


class _NumericPlan:
    """Per-k constants shared by every evaluation of one instance."""

    def __init__(self, n: tuple[int, ...]):
        self.n = n
        self.total = norm(n)
        self.rows = []
        for k in k_vectors(n):
            rest = tuple(ni - ki for ni, ki in zip(n, k))
            sign = -1 if (self.total - sum(k)) % 2 else 1
            den_rest = prod(factorial(v) for v in rest)
            den_k = prod(factorial(v) for v in k)
            self.rows.append((k, rest, sum(k), sum(rest), den_rest, den_k, sign))

    def _beta_table(self, beta: int) -> list[int]:
        # falling factorial of beta + j with length j, for j = 0..|n|
        return [falling_factorial(beta + j, j) for j in range(self.total + 1)]

    def lhs(self, alpha, beta, xs, ys):
        top = _prefix_falling(beta - alpha + self.total, self.total)
        tb = self._beta_table(beta)
        pxy = _power_table([a + b for a, b in zip(xs, ys)], self.n)
        py = _power_table(ys, self.n)
        acc = 0
        for k, rest, sk, sr, den_rest, den_k, sign in self.rows:
            term = (top[sr] // den_rest) * (tb[sk] // den_k)
            if not term:
                continue
            for i, (ki, ri) in enumerate(zip(k, rest)):
                term = term * pxy[i][ki] * py[i][ri]
            acc = acc + term if sign > 0 else acc - term
        return Fraction(acc)

    def rhs(self, alpha, beta, xs, ys):
        ta = _prefix_falling(alpha, self.total)
        tb = self._beta_table(beta)
        px = _power_table(xs, self.n)
        py = _power_table(ys, self.n)
        acc = 0
        for k, rest, sk, sr, den_rest, den_k, _sign in self.rows:
            term = (ta[sr] // den_rest) * (tb[sk] // den_k)
            if not term:
                continue
            for i, (ki, ri) in enumerate(zip(k, rest)):
                term = term * px[i][ki] * py[i][ri]
            acc = acc + term
        return Fraction(acc)


def multinomial_lhs_value(inst: IdentityInstance, point: Mapping[Var, Fraction]) -> Fraction:
    """Evaluate the left side numerically straight from the summation formula."""
    return _NumericPlan(inst.n).lhs(*_scalar_values(inst, point))


def multinomial_rhs_value(inst: IdentityInstance, point: Mapping[Var, Fraction]) -> Fraction:
    return _NumericPlan(inst.n).rhs(*_scalar_values(inst, point))


def verify_random(
    inst: IdentityInstance,
    trials: int = 1000,
    seed: int = 0,
    value_range: int = 1000,
    lhs: Polynomial | None = None,
    rhs: Polynomial | None = None,
) -> VerifyReport:
    """Randomized identity test at integer points drawn from [-range, range].

    Without overrides each side is evaluated numerically from its formula
    (no polynomial expansion). An override polynomial is evaluated instead
    of the corresponding formula. Stops at the first disagreeing point; the
    report's ``difference`` is then the constant lhs - rhs at that point.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if value_range < 0:
        raise ValueError("range must be >= 0")
    plan = _NumericPlan(inst.n)

    def side(override, formula):
        if override is not None:
            return override.evaluate
        return lambda pt: formula(plan, *_scalar_values(inst, pt))

    left = side(lhs, _NumericPlan.lhs)
    right = side(rhs, _NumericPlan.rhs)
    rng = random.Random(seed)
    variables = inst.symbolic_variables()
    for trial in range(1, trials + 1):
        point = {v: Fraction(rng.randint(-value_range, value_range)) for v in variables}
        lv, rv = left(point), right(point)
        if lv != rv:
            return VerifyReport(
                equal=False, mode=RANDOMIZED, difference=const(lv - rv), trials=trial, witness=point
            )
    return VerifyReport(equal=True, mode=RANDOMIZED, difference=ZERO, trials=trials)


def _pair_report(pairs: Sequence[tuple[Polynomial, Polynomial]]) -> VerifyReport:
    for a, b in pairs:
        diff = a - b
        if not diff.is_zero():
            return VerifyReport(equal=False, mode=SYMBOLIC, difference=diff)
    return VerifyReport(equal=True, mode=SYMBOLIC, difference=ZERO)


def check_reduction_to_binomial(n: int, alpha=None, beta=None, x=None, y=None) -> VerifyReport:
    """The m=1 multinomial sides must coincide with the binomial sides.

    Both left sides and both right sides are compared; the reported
    difference is the first nonzero one (left pair first).
    """
    inst = IdentityInstance(
        (n,),
        alpha=alpha,
        beta=beta,
        x=None if x is None else (x,),
        y=None if y is None else (y,),
    )
    return _pair_report(
        [
            (multinomial_lhs(inst), binomial_lhs(n, alpha, beta, x, y)),
            (multinomial_rhs(inst), binomial_rhs(n, alpha, beta, x, y)),
        ]
    )


def check_reduction_to_delannoy(n: int) -> VerifyReport:
    """The binomial sides at alpha = beta = n, y = 1 must equal the Delannoy sides."""
    return _pair_report(
        [
            (binomial_lhs(n, alpha=n, beta=n, y=1), delannoy_lhs(n)),
            (binomial_rhs(n, alpha=n, beta=n, y=1), delannoy_rhs(n)),
        ]
    )
