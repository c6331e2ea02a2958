import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxksub.core import (
    Assignment,
    ConfigError,
    FunctionObjective,
    GroundSet,
    GroupSize,
    IndividualSize,
    InfeasibleConstraintError,
    ModularObjective,
    PreconditionError,
    TotalSize,
    is_feasible,
    marginal_gain,
    slack,
)


def test_marginal_gain_modular():
    f = ModularObjective([1, 2, 3])
    assert marginal_gain(f, Assignment.empty(3, 1), 2, 1) == 3


def test_marginal_gain_coverage_fixture_matches_two_evals(coverage1):
    x = Assignment.empty(6, 2)
    expected = coverage1((1, 0, 0, 0, 0, 0)) - coverage1((0,) * 6)
    assert marginal_gain(coverage1, x, 0, 1) == expected
    assert expected > 0


def test_marginal_gain_rejects_assigned_element():
    f = ModularObjective([1, 2, 3])
    with pytest.raises(PreconditionError):
        marginal_gain(f, (1, 0, 0), 0, 1)
    with pytest.raises(PreconditionError):
        marginal_gain(f, (0, 0, 0), 0, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 500), st.data())
def test_marginal_gain_nonnegative_and_additive(seed, data):
    from approxksub.objectives import random_coverage

    f = random_coverage(5, 2, seed=seed)
    labels = tuple(data.draw(st.lists(st.integers(0, 2), min_size=5, max_size=5)))
    free = [e for e, v in enumerate(labels) if v == 0]
    if not free:
        return
    e = data.draw(st.sampled_from(free))
    i = data.draw(st.integers(1, 2))
    g = marginal_gain(f, labels, e, i)
    assert g >= 0
    y = list(labels)
    y[e] = i
    assert abs(f(tuple(y)) - (f(labels) + g)) <= 1e-12 * max(1.0, abs(f(tuple(y))))


def test_assignment_rejects_out_of_range_labels():
    with pytest.raises(PreconditionError):
        Assignment((0, 3), 2)
    with pytest.raises(PreconditionError):
        Assignment((-1, 0), 2)


def test_assignment_supports():
    x = Assignment.from_subsets(5, [[0, 3], [4]])
    assert x.labels == (1, 0, 0, 1, 2)
    assert x.support() == [0, 3, 4]
    assert x.support_of(1) == [0, 3]
    assert x.size() == 3 and x.counts() == [2, 1]
    assert Assignment((1, 0, 0, 0, 0), 2).precedes(x)
    assert not Assignment((2, 0, 0, 0, 0), 2).precedes(x)
    with pytest.raises(PreconditionError):
        Assignment.from_subsets(3, [[0], [0]])


def test_ground_set_validation():
    with pytest.raises(PreconditionError):
        GroundSet(0, 1)
    with pytest.raises(PreconditionError):
        GroundSet(3, 0)
    assert GroundSet(3, 2).empty().labels == (0, 0, 0)


def test_feasibility_examples():
    assert is_feasible(TotalSize(2, 2), Assignment((1, 2, 0), 2))
    assert not is_feasible(IndividualSize([1, 1]), Assignment((1, 1, 0), 2))
    g = GroupSize(3, [[1, 2], [3]], [2, 1])
    assert is_feasible(g, Assignment((1, 2, 3, 0), 3))
    assert not is_feasible(g, Assignment((1, 2, 3, 3), 3))


def test_constraint_validation():
    with pytest.raises(ConfigError):
        GroupSize(3, [[1], [3]], [1, 1])
    with pytest.raises(ConfigError):
        GroupSize(2, [[1, 2], [2]], [1, 1])
    with pytest.raises(ConfigError):
        IndividualSize([1, 0])
    with pytest.raises(InfeasibleConstraintError):
        TotalSize(2, 5).check(GroundSet(3, 2))
    assert TotalSize(2, 3) == GroupSize(2, [[1, 2]], [3])


def test_eval_counter_counts_every_call():
    calls = []

    def fn(labels):
        calls.append(labels)
        return float(sum(labels))

    f = FunctionObjective(fn, 3, 2)
    for x in [(0, 0, 0), (1, 0, 0), (1, 0, 0), (2, 2, 1)]:
        f(x)
    marginal_gain(f, (0, 1, 0), 0, 2)
    assert f.eval_count == len(calls) == 6
    f.reset_count()
    assert f.eval_count == 0


def test_eval_counter_is_thread_safe():
    f = ModularObjective([1.0] * 4)

    def work():
        for _ in range(2000):
            f((1, 0, 1, 0))

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert f.eval_count == 8000


def test_normalized_objectives():
    assert ModularObjective([[1, 2], [3, 4]])((0, 0)) == 0
    assert ModularObjective([[1, 2], [3, 4]])((2, 1)) == 5


def test_wrong_length_rejected():
    with pytest.raises(PreconditionError):
        ModularObjective([1, 2])((0, 0, 0))


def test_slack_floor():
    assert slack(0.0) == pytest.approx(1e-15)
    assert slack(-100.0, 3.0) == pytest.approx(1e-7)
