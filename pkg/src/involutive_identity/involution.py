"""Sign-reversing involution on configurations and its audit.

The map finds the first y-weighted position inside the first segment and
toggles its circle. Toggling changes the number of circles by one (so the
sign flips) and leaves every mark alone (so the weight is unchanged).
Configurations with no y-weighted letter in the first segment are fixed;
they carry no circles and their weights add up to the right-hand side.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import multinomial
from .configspace import (
    DEFAULT_MAX_CONFIGS,
    ConfigParams,
    Configuration,
    enumerate_configurations,
    require_valid,
    validate,
    weight_key,
)
from .identity import IdentityInstance, k_vectors, multinomial_lhs, multinomial_rhs
from .multipoly import Polynomial, canonical_string

FIXED = "fixed"
PAIRED = "paired"

CHECKS = ("involutive", "sign_reversal", "weight_preserved", "fixed_characterization", "sums_match")


class InvolutionError(RuntimeError):
    """The map produced an invalid partner; this is a bug, not bad input."""


@dataclass(frozen=True)
class InvolutionOutcome:
    kind: str
    partner: Configuration | None = None
    toggled_position: int | None = None


def _first_y(c: Configuration) -> int | None:
    for pos in range(1, c.params.first_segment + 1):
        if c.marks[pos - 1][0] == "y":
            return pos
    return None


def first_y_position(c: Configuration) -> int | None:
    """Smallest position p <= F whose mark is some y_i, circled or not."""
    require_valid(c)
    return _first_y(c)


def _apply(c: Configuration) -> InvolutionOutcome:
    pos = _first_y(c)
    if pos is None:
        return InvolutionOutcome(FIXED)
    partner = c.toggled(pos)
    problems = validate(partner)
    if problems:
        raise InvolutionError(f"partner of {c.to_json()} is invalid: {problems}")
    return InvolutionOutcome(PAIRED, partner, pos)


def apply(c: Configuration) -> InvolutionOutcome:
    require_valid(c)
    return _apply(c)


def is_fixed(c: Configuration) -> bool:
    require_valid(c)
    return _first_y(c) is None


def fixed_points(params: ConfigParams, max_configs: int = DEFAULT_MAX_CONFIGS):
    for c in enumerate_configurations(params, max_configs=max_configs):
        if _first_y(c) is None:
            yield c


def fixed_point_sum(params: ConfigParams, max_configs: int = DEFAULT_MAX_CONFIGS) -> Polynomial:
    acc: Counter = Counter()
    for c in fixed_points(params, max_configs):
        acc[weight_key(c.marks)] += 1
    return Polynomial({mono: Fraction(v) for mono, v in acc.items()})


def fixed_point_count(params: ConfigParams) -> int:
    """Closed-form number of fixed points.

    A fixed point has k = n and no y in the first segment; choosing which
    letters are y-weighted (placed among the last alpha positions) and then
    arranging the a's and x-weighted b's gives
    sum_k C(alpha, n-k) C(beta+|k|, k).
    """
    total = 0
    for k in k_vectors(params.n):
        rest = tuple(ni - ki for ni, ki in zip(params.n, k))
        total += multinomial(params.alpha, rest) * multinomial(params.beta + sum(k), k)
    return total


def instance_of(params: ConfigParams) -> IdentityInstance:
    """Identity instance with the params' alpha and beta and symbolic x, y."""
    return IdentityInstance(params.n, alpha=params.alpha, beta=params.beta)


@dataclass
class AuditReport:
    instance: ConfigParams
    checks: dict[str, bool] = field(default_factory=lambda: dict.fromkeys(CHECKS, True))
    counterexample: dict | None = None
    failure: str | None = None
    configurations: int = 0
    fixed_points: int = 0
    pairs: int = 0
    signed_total: Polynomial | None = None
    fixed_sum: Polynomial | None = None
    lhs: Polynomial | None = None
    rhs: Polynomial | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def fail(self, check: str, c: Configuration | None, why: str) -> None:
        self.checks[check] = False
        if self.counterexample is None and self.failure is None:
            self.counterexample = None if c is None else c.to_json()
            self.failure = f"{check}: {why}"

    def to_json(self) -> dict:
        def show(p):
            return None if p is None else canonical_string(p)

        out = {
            "instance": self.instance.to_json(),
            "checks": dict(self.checks),
            "totals": {
                "configurations": self.configurations,
                "fixed_points": self.fixed_points,
                "pairs": self.pairs,
            },
            "sums": {
                "lhs": show(self.lhs),
                "rhs": show(self.rhs),
                "signed_total": show(self.signed_total),
                "fixed_sum": show(self.fixed_sum),
            },
            "counterexample": self.counterexample,
        }
        if self.failure is not None:
            out["failure"] = self.failure
        return out


def audit(params: ConfigParams, max_configs: int = DEFAULT_MAX_CONFIGS) -> AuditReport:
    """Enumerate the space once and check every claimed property.

    The first counterexample in enumeration order is kept.
    """
    report = AuditReport(params)
    signed: Counter = Counter()
    fixed: Counter = Counter()
    paired = even_paired = 0
    for c in enumerate_configurations(params, max_configs=max_configs):
        report.configurations += 1
        mono = weight_key(c.marks)
        s = -1 if len(c.circled) % 2 else 1
        signed[mono] += s
        outcome = _apply(c)
        if outcome.kind == FIXED:
            report.fixed_points += 1
            fixed[mono] += 1
            if c.circled or s != 1:
                report.fail("fixed_characterization", c, "fixed point carries circles")
            continue
        partner = outcome.partner
        paired += 1
        if s == 1:
            even_paired += 1
        back = _apply(partner)
        if back.kind != PAIRED or back.partner != c or partner == c:
            report.fail("involutive", c, "applying the map twice does not return the input")
        if (-1 if len(partner.circled) % 2 else 1) != -s:
            report.fail("sign_reversal", c, "partner has the same sign")
        if weight_key(partner.marks) != mono:
            report.fail("weight_preserved", c, "partner weight differs")
    # a perfect matching splits the paired part evenly between the two signs
    report.pairs = even_paired
    if paired != 2 * even_paired or 2 * report.pairs + report.fixed_points != report.configurations:
        report.fail("involutive", None, "paired configurations do not form a perfect matching")

    report.signed_total = Polynomial({mono: v for mono, v in signed.items()})
    report.fixed_sum = Polynomial({mono: v for mono, v in fixed.items()})
    inst = instance_of(params)
    report.lhs = multinomial_lhs(inst)
    report.rhs = multinomial_rhs(inst)
    if report.signed_total != report.lhs:
        report.fail("sums_match", None, "signed total differs from the left-hand side")
    if report.fixed_sum != report.rhs:
        report.fail("sums_match", None, "fixed-point sum differs from the right-hand side")
    if report.signed_total != report.fixed_sum:
        report.fail("sums_match", None, "paired weights do not cancel")
    return report
