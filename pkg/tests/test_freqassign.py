import pytest
from hypothesis import given, settings, strategies as st

from oracles import constraint_violations, grid_best_delta
from xtalk.crosstalk import Coloring
from xtalk.device import FrequencyPartition
from xtalk.freqassign import assign_idle, check_assignment, color_order, feasible, smt_find
from xtalk.exceptions import InvalidArgument

ALPHA = -0.2
REGION = (6.5, 7.5)
TOL = 1e-3


def uniform(n):
    return Coloring.from_mapping({i: i for i in range(n)})


def test_single_colour_sits_at_region_top():
    fa = smt_find(uniform(1), ALPHA, REGION)
    assert fa.omega_of_color == {0: 7.5}
    assert fa.delta == pytest.approx(1.0)


def test_empty_colouring():
    fa = smt_find(Coloring.from_mapping({}), ALPHA, REGION)
    assert fa.omega_of_color == {} and fa.delta == pytest.approx(1.0)


# hand-derived optima for width 1 GHz and |alpha| = 0.2:
#   2 colours: gap D needs D >= delta and D - 0.2 >= delta -> delta = 0.8
#   3 colours all "far": 2 (0.2 + delta) <= 1 -> 0.3
#   4 colours all far: 3 (0.2 + delta) <= 1 -> 0.1333; near pairs cap delta at 0.1
#   5, 6 colours: near pairs (gap 0.1) separated by far gaps of 0.3 -> 0.1
@pytest.mark.parametrize("n,expected", [(2, 0.8), (3, 0.3), (4, 0.4 / 3), (5, 0.1), (6, 0.1)])
def test_optimal_separation(n, expected):
    fa = smt_find(uniform(n), ALPHA, REGION, TOL)
    assert expected - TOL - 1e-9 <= fa.delta <= expected + 1e-9
    assert constraint_violations(list(fa.omega_of_color.values()), fa.delta, ALPHA) == []


def test_two_colours_span_region():
    fa = smt_find(uniform(2), ALPHA, REGION, TOL)
    assert sorted(fa.omega_of_color.values()) == pytest.approx([6.5, 7.5], abs=TOL)


def test_idle_frequencies_for_mesh():
    col = Coloring.from_mapping({0: 0, 1: 1, 2: 0, 3: 1})
    fa = assign_idle(col, FrequencyPartition(), ALPHA)
    assert sorted(fa.omega_of_color.values()) == pytest.approx([5.0, 6.0], abs=TOL)
    assert fa.delta == pytest.approx(0.8, abs=TOL)


def test_single_parking_value_for_edgeless_device():
    fa = assign_idle(Coloring.from_mapping({0: 0, 1: 0}), FrequencyPartition(), ALPHA)
    assert list(fa.omega_of_color.values()) == [6.0]


def test_frequent_colours_get_higher_frequencies():
    col = Coloring.from_mapping({0: 1, 1: 1, 2: 1, 3: 0, 4: 2, 5: 2})
    assert color_order(col) == [1, 2, 0]
    fa = smt_find(col, ALPHA, REGION)
    w = fa.omega_of_color
    assert w[1] > w[2] > w[0]
    assert w[1] == pytest.approx(7.5)
    assert check_assignment(fa, ALPHA, col.multiplicity) == []


def test_feasible_boundaries():
    assert feasible(2, 0.8, ALPHA, 0.0, 1.0) == pytest.approx([0.0, 1.0])
    assert feasible(2, 0.81, ALPHA, 0.0, 1.0) is None
    assert feasible(3, 0.0, ALPHA, 0.0, 1.0) == pytest.approx([0.0, 0.5, 1.0])
    with pytest.raises(InvalidArgument):
        feasible(0, 0.1, ALPHA, 0, 1)
    with pytest.raises(InvalidArgument):
        feasible(2, -0.1, ALPHA, 0, 1)


def test_check_assignment_reports_problems():
    from xtalk.freqassign import FrequencyAssignment

    bad = FrequencyAssignment({0: 7.0, 1: 7.2, 2: 8.0}, 0.1, REGION)
    problems = check_assignment(bad, ALPHA, {0: 2, 1: 1, 2: 1})
    assert any("outside" in p for p in problems)
    assert any("closer than delta" in p for p in problems)  # 7.2 + alpha lands on 7.0
    assert any("sits lower" in p for p in problems)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_grid_oracle_small(n):
    fa = smt_find(uniform(n), ALPHA, REGION, TOL)
    best = grid_best_delta(n, ALPHA, 1.0)
    assert abs(fa.delta - best) <= TOL + 0.001 + 1e-9


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(1, 8),
    alpha=st.floats(-0.35, -0.05),
    width=st.floats(0.3, 1.5),
)
def test_solution_satisfies_constraints(n, alpha, width):
    fa = smt_find(uniform(n), alpha, (6.5, 6.5 + width), TOL)
    assert check_assignment(fa, alpha) == []
    assert constraint_violations(list(fa.omega_of_color.values()), fa.delta, alpha) == []
    # tightness: anything clearly above delta + tolerance is infeasible
    if n > 1 and fa.delta + 1.01 * TOL < width:
        assert feasible(n, fa.delta + 1.01 * TOL, alpha, 6.5, 6.5 + width) is None


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 9), alpha=st.floats(-0.35, -0.05))
def test_more_colours_never_widen_separation(n, alpha):
    a = smt_find(uniform(n), alpha, REGION, TOL).delta
    b = smt_find(uniform(n + 1), alpha, REGION, TOL).delta
    assert b <= a + TOL


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 6), delta=st.floats(0.0, 0.5), alpha=st.floats(-0.3, -0.1))
def test_feasibility_is_monotone(n, delta, alpha):
    if feasible(n, delta, alpha, 0.0, 1.0) is not None:
        assert feasible(n, delta / 2, alpha, 0.0, 1.0) is not None


def test_empty_region_rejected():
    with pytest.raises(InvalidArgument):
        smt_find(uniform(2), ALPHA, (7.5, 6.5))
