import pytest

from involutive_identity.configspace import (
    ConfigError,
    ConfigParams,
    Configuration,
    enumerate_configurations,
    k_of,
    sign,
    weight,
)
from involutive_identity.identity import IdentityInstance, multinomial_rhs
from involutive_identity.involution import (
    CHECKS,
    FIXED,
    PAIRED,
    apply,
    audit,
    first_y_position,
    fixed_point_count,
    fixed_point_sum,
    fixed_points,
    is_fixed,
)
from involutive_identity.multipoly import ONE, X, Y, var

from oracles import brute_force_configurations, is_fixed_brute
from test_configspace import FIGURE, LEFT, RIGHT

INSTANCES = [
    ((1,), 1, 1),
    ((2,), 1, 2),
    ((3,), 2, 3),
    ((4,), 3, 3),
    ((1, 1), 1, 2),
    ((2, 1), 2, 2),
]

TINY = ConfigParams((1,), 1, 1)


def word(letters, marks, circled=(), params=TINY):
    return Configuration(params, tuple(letters), tuple(marks), frozenset(circled))


def test_first_y_position():
    assert first_y_position(LEFT) == 4
    assert first_y_position(word(["b1", "a"], ["y1", "1"])) == 1
    all_x = Configuration(FIGURE, LEFT.letters, tuple(m.replace("y", "x") for m in LEFT.marks), frozenset())
    assert first_y_position(all_x) is None


def test_figure_pair():
    left = apply(LEFT)
    assert left.kind == PAIRED and left.toggled_position == 4
    assert left.partner == RIGHT
    right = apply(RIGHT)
    assert right.kind == PAIRED and right.partner == LEFT
    assert not is_fixed(LEFT)


def test_fixed_examples():
    trailing_y = word(["a", "b1"], ["1", "y1"])
    assert apply(trailing_y).kind == FIXED and apply(trailing_y).partner is None
    assert is_fixed(trailing_y)
    assert is_fixed(word(["b1", "a"], ["x1", "1"]))


def test_invalid_input_rejected():
    bad = word(["a", "b1"], ["1", "y1"], circled=[2])
    with pytest.raises(ConfigError):
        apply(bad)
    with pytest.raises(ConfigError):
        first_y_position(bad)


@pytest.mark.parametrize("n, alpha, beta", INSTANCES)
def test_involution_properties(n, alpha, beta):
    params = ConfigParams(n, alpha, beta)
    seen_partners = set()
    for c in enumerate_configurations(params):
        out = apply(c)
        if out.kind == FIXED:
            assert is_fixed(c)
            assert not c.circled and sign(c) == 1 and k_of(c) == n
            continue
        p = out.partner
        assert p != c
        assert apply(p).partner == c
        assert sign(p) == -sign(c)
        assert weight(p) == weight(c)
        assert p.letters == c.letters and p.marks == c.marks
        assert p.circled ^ c.circled == {out.toggled_position}
        seen_partners.add(p)
    # the partner map is a bijection on the non-fixed part
    non_fixed = sum(1 for c in enumerate_configurations(params) if not is_fixed(c))
    assert len(seen_partners) == non_fixed


@pytest.mark.parametrize("n, alpha, beta", INSTANCES + [((2, 2), 2, 4)])
def test_fixed_points_match_brute_force(n, alpha, beta):
    params = ConfigParams(n, alpha, beta)
    oracle = sum(1 for _w, marks, _c in brute_force_configurations(n, alpha, beta) if is_fixed_brute(marks, n, alpha, beta))
    assert sum(1 for _ in fixed_points(params)) == oracle
    assert fixed_point_count(params) == oracle


@pytest.mark.parametrize("n, alpha, beta", INSTANCES)
def test_fixed_point_sum_is_rhs(n, alpha, beta):
    params = ConfigParams(n, alpha, beta)
    assert fixed_point_sum(params) == multinomial_rhs(IdentityInstance(n, alpha=alpha, beta=beta))


def test_fixed_point_sum_examples():
    assert fixed_point_sum(TINY) == 2 * var(X(1)) + var(Y(1))
    assert fixed_point_sum(ConfigParams((0,), 1, 2)) == ONE
    assert fixed_point_count(FIGURE) == 930


def test_audit_tiny():
    report = audit(TINY)
    assert report.passed
    assert (report.configurations, report.fixed_points, report.pairs) == (5, 3, 1)
    assert audit(ConfigParams((0, 0), 1, 1)).to_json()["totals"] == {
        "configurations": 1,
        "fixed_points": 1,
        "pairs": 0,
    }


def test_audit_figure_instance():
    report = audit(FIGURE)
    data = report.to_json()
    assert list(data) == ["instance", "checks", "totals", "sums", "counterexample"]
    assert list(data["checks"]) == list(CHECKS) and all(data["checks"].values())
    # 23490 = closed form = stream = permutation oracle; 930 fixed points
    assert data["totals"] == {"configurations": 23490, "fixed_points": 930, "pairs": 11280}
    assert data["sums"]["signed_total"] == data["sums"]["lhs"]
    assert data["sums"]["fixed_sum"] == data["sums"]["rhs"]
    assert data["counterexample"] is None


def test_audit_reports_counterexample(monkeypatch):
    import involutive_identity.involution as inv

    real = inv._first_y

    def broken(c):
        # prefer the first uncircled y; not self-inverse once a circle sits before it
        for q in range(1, c.params.first_segment + 1):
            if c.marks[q - 1][0] == "y" and q not in c.circled:
                return q
        return real(c)

    monkeypatch.setattr(inv, "_first_y", broken)
    report = inv.audit(ConfigParams((2,), 1, 2))
    assert not report.passed
    assert report.checks["involutive"] is False
    assert report.counterexample is not None
    assert report.to_json()["failure"].startswith("involutive")
