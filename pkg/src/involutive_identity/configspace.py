"""Weighted words ("configurations") that model the signed left-hand sum.

For parameters (n, alpha, beta) a configuration is a word of length
L = beta + |n| over the letters ``a``, ``b1`` .. ``bm``:

* some b's in the first segment (positions 1..F, F = beta - alpha + |n|)
  are circled and weighted y_i; there are n_i - k_i circled ``b_i``;
* every other position holds one of beta ``a``'s (weight 1) or one of the
  k_i uncircled ``b_i``'s, each weighted x_i or y_i. Uncircled letters may
  sit anywhere in the word, first segment included.

Positions are 1-based throughout, JSON included. Letters and marks are kept
as their JSON strings ("a", "b2"; "1", "x2", "y2").
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .arith import multinomial, norm
from .identity import k_vectors
from .multipoly import Kind, Polynomial, Var

DEFAULT_MAX_CONFIGS = 10_000_000


class ConfigError(ValueError):
    """Bad parameters, or a configuration that violates the construction."""


class CapExceededError(ConfigError):
    pass


@dataclass(frozen=True)
class ConfigParams:
    n: tuple[int, ...]
    alpha: int
    beta: int
    allow_zero_alpha: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        if not self.n:
            raise ConfigError("n must have at least one entry")
        if any(v < 0 for v in self.n):
            raise ConfigError(f"n must be nonnegative, got {self.n}")
        if self.beta < 1:
            raise ConfigError(f"beta must be >= 1, got {self.beta}")
        low = 0 if self.allow_zero_alpha else 1
        if self.alpha < low:
            raise ConfigError(f"alpha must be >= {low}, got {self.alpha}")
        if self.beta < self.alpha:
            raise ConfigError(f"beta >= alpha is required, got alpha={self.alpha}, beta={self.beta}")

    @property
    def m(self) -> int:
        return len(self.n)

    @property
    def length(self) -> int:
        return self.beta + norm(self.n)

    @property
    def first_segment(self) -> int:
        return self.beta - self.alpha + norm(self.n)

    def to_json(self) -> dict:
        return {"m": self.m, "n": list(self.n), "alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class Configuration:
    params: ConfigParams
    letters: tuple[str, ...]
    marks: tuple[str, ...]
    circled: frozenset[int]

    def to_json(self) -> dict:
        return {
            **self.params.to_json(),
            "letters": list(self.letters),
            "marks": list(self.marks),
            "circled": sorted(self.circled),
        }

    def toggled(self, position: int) -> "Configuration":
        return Configuration(self.params, self.letters, self.marks, self.circled ^ {position})


def config_from_json(data: dict | str, allow_zero_alpha: bool = False) -> Configuration:
    """Build a Configuration from its JSON object (no validation)."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        params = ConfigParams(
            tuple(data["n"]), int(data["alpha"]), int(data["beta"]), allow_zero_alpha
        )
        if "m" in data and int(data["m"]) != params.m:
            raise ConfigError(f"m={data['m']} does not match len(n)={params.m}")
        return Configuration(
            params,
            tuple(str(s) for s in data["letters"]),
            tuple(str(s) for s in data["marks"]),
            frozenset(int(p) for p in data["circled"]),
        )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed configuration JSON: {exc}") from exc


def _letter_index(letter: str) -> int | None:
    """0 for "a", i for "bi", None if malformed."""
    if letter == "a":
        return 0
    if letter.startswith("b") and letter[1:].isdigit():
        return int(letter[1:])
    return None


def validate(c: Configuration) -> list[str]:
    """Every violated construction rule, as messages naming the positions."""
    p = c.params
    problems = []
    if len(c.letters) != p.length:
        problems.append(f"word length {len(c.letters)} != beta + |n| = {p.length}")
    if len(c.marks) != len(c.letters):
        problems.append(f"{len(c.marks)} marks for {len(c.letters)} letters")
    counts: Counter = Counter()
    for pos, (letter, mark) in enumerate(zip(c.letters, c.marks), start=1):
        i = _letter_index(letter)
        if i is None or i > p.m:
            problems.append(f"position {pos}: unknown letter {letter!r}")
            continue
        counts[i] += 1
        allowed = ("1",) if i == 0 else (f"x{i}", f"y{i}")
        if mark not in allowed:
            problems.append(f"position {pos}: mark incompatible with letter ({letter} marked {mark})")
    if counts[0] != p.beta:
        problems.append(f"{counts[0]} letters a, expected beta = {p.beta}")
    for i, ni in enumerate(p.n, start=1):
        if counts[i] != ni:
            problems.append(f"{counts[i]} letters b{i}, expected n{i} = {ni}")
    for pos in sorted(c.circled):
        if not 1 <= pos <= len(c.letters):
            problems.append(f"position {pos}: circled position out of range")
            continue
        if pos > p.first_segment:
            problems.append(
                f"position {pos}: circled outside first segment (F = {p.first_segment})"
            )
        letter = c.letters[pos - 1]
        if letter == "a":
            problems.append(f"position {pos}: circled letter a")
        elif pos <= len(c.marks) and c.marks[pos - 1] != "y" + letter[1:]:
            problems.append(f"position {pos}: circled letter not weighted y")
    return problems


def require_valid(c: Configuration) -> None:
    problems = validate(c)
    if problems:
        raise ConfigError("invalid configuration: " + "; ".join(problems))


def _k_unchecked(c: Configuration) -> tuple[int, ...]:
    circled = Counter(int(c.letters[pos - 1][1:]) for pos in c.circled)
    return tuple(ni - circled[i] for i, ni in enumerate(c.params.n, start=1))


def k_of(c: Configuration) -> tuple[int, ...]:
    """k_i = n_i minus the number of circled b_i."""
    require_valid(c)
    return _k_unchecked(c)


def sign(c: Configuration) -> int:
    require_valid(c)
    return -1 if len(c.circled) % 2 else 1


def weight_key(marks: Iterable[str]) -> tuple:
    """Monomial (sorted (Var, exponent) pairs) of the product of the marks."""
    exps = Counter(marks)
    exps.pop("1", None)
    return tuple(
        sorted((Var(Kind.X if m[0] == "x" else Kind.Y, int(m[1:])), e) for m, e in exps.items())
    )


def weight(c: Configuration) -> Polynomial:
    """Product of the per-position weights, as a one-term polynomial."""
    require_valid(c)
    return Polynomial({weight_key(c.marks): 1})


def count(params: ConfigParams, k: Sequence[int] | None = None) -> int:
    """Closed-form number of configurations, optionally for one k."""
    ks = k_vectors(params.n) if k is None else [_check_k(params, k)]
    F = params.first_segment
    total = 0
    for kv in ks:
        rest = tuple(ni - ki for ni, ki in zip(params.n, kv))
        total += multinomial(F, rest) * multinomial(params.beta + sum(kv), kv) * 2 ** sum(kv)
    return total


def _check_k(params: ConfigParams, k: Sequence[int]) -> tuple[int, ...]:
    k = tuple(int(v) for v in k)
    if len(k) != params.m or any(not 0 <= ki <= ni for ki, ni in zip(k, params.n)):
        raise ConfigError(f"k filter {k} must satisfy 0 <= k_i <= n_i for n = {params.n}")
    return k


def _place(slots: Sequence[int], counts: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Choose disjoint position subsets of the given sizes, one per letter type, lex order."""
    if not counts:
        yield []
        return
    for chosen in itertools.combinations(slots, counts[0]):
        taken = set(chosen)
        remaining = [s for s in slots if s not in taken]
        for tail in _place(remaining, counts[1:]):
            yield [chosen, *tail]


def enumerate_configurations(
    params: ConfigParams,
    k_filter: Sequence[int] | None = None,
    max_configs: int = DEFAULT_MAX_CONFIGS,
) -> Iterator[Configuration]:
    """Stream every configuration exactly once, in a fixed order.

    Order: k ascending (lex); circled placements (lex per letter type);
    uncircled b placements (lex per letter type); marks with x before y,
    the leftmost uncircled b varying slowest.
    """
    total = count(params, k_filter)
    if total > max_configs:
        raise CapExceededError(f"{total} configurations exceed the cap of {max_configs}")
    ks = k_vectors(params.n) if k_filter is None else [_check_k(params, k_filter)]
    L, F = params.length, params.first_segment
    for k in ks:
        rest = [ni - ki for ni, ki in zip(params.n, k)]
        for circ in _place(range(1, F + 1), rest):
            circled = frozenset(pos for group in circ for pos in group)
            free = [pos for pos in range(1, L + 1) if pos not in circled]
            base_letters = ["a"] * L
            base_marks = ["1"] * L
            for i, group in enumerate(circ, start=1):
                for pos in group:
                    base_letters[pos - 1] = f"b{i}"
                    base_marks[pos - 1] = f"y{i}"
            for placed in _place(free, k):
                letters = list(base_letters)
                b_positions = []
                for i, group in enumerate(placed, start=1):
                    for pos in group:
                        letters[pos - 1] = f"b{i}"
                        b_positions.append(pos)
                b_positions.sort()
                letters_t = tuple(letters)
                for choice in itertools.product("xy", repeat=len(b_positions)):
                    marks = list(base_marks)
                    for pos, kind in zip(b_positions, choice):
                        marks[pos - 1] = kind + letters[pos - 1][1:]
                    yield Configuration(params, letters_t, tuple(marks), circled)


def signed_sum(params: ConfigParams, k: Sequence[int] | None = None, max_configs: int = DEFAULT_MAX_CONFIGS) -> Polynomial:
    """Sum of sign(c) * weight(c) over the configurations (of one k, if given)."""
    acc: Counter = Counter()
    for c in enumerate_configurations(params, k, max_configs):
        acc[weight_key(c.marks)] += -1 if len(c.circled) % 2 else 1
    return Polynomial({mono: Fraction(v) for mono, v in acc.items()})


def weight_sum(params: ConfigParams, k: Sequence[int], max_configs: int = DEFAULT_MAX_CONFIGS) -> tuple[Polynomial, int]:
    """Unsigned weight sum for a fixed k, together with the common sign of that class."""
    k = _check_k(params, k)
    s = -1 if (norm(params.n) - sum(k)) % 2 else 1
    return signed_sum(params, k, max_configs) * s, s


def read_jsonl(lines: Iterable[str], allow_zero_alpha: bool = False) -> Iterator[Configuration]:
    """Parse and validate configurations, one JSON object per non-blank line.

    Raises ConfigError on the first invalid line.
    """
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            c = config_from_json(line, allow_zero_alpha)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"line {lineno}: not JSON ({exc})") from exc
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
        problems = validate(c)
        if problems:
            raise ConfigError(f"line {lineno}: " + "; ".join(problems))
        yield c
