from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from condcoh.ratlp import LinearSystem, optimize, solve_feasibility, verify_certificate

from oracles import vertices

small = st.integers(-3, 3)


@st.composite
def boxed_systems(draw):
    n = draw(st.integers(1, 3))
    eq = [([draw(small) for _ in range(n)], draw(small)) for _ in range(draw(st.integers(0, 2)))]
    le = [([draw(small) for _ in range(n)], draw(small)) for _ in range(draw(st.integers(0, 2)))]
    # a box keeps everything bounded, so a nonempty region has a vertex
    le += [([int(i == j) for i in range(n)], 4) for j in range(n)]
    return LinearSystem(n, eq=eq, le=le)


@settings(max_examples=150)
@given(boxed_systems())
def test_feasibility_matches_vertex_enumeration(sys):
    verts = vertices(sys.n_vars, sys.eq, sys.le)
    res = solve_feasibility(sys)
    assert res.feasible == bool(verts)
    if res.feasible:
        assert sys.residuals_ok(res.point)
    else:
        assert verify_certificate(sys, res.certificate)


@settings(max_examples=150)
@given(boxed_systems(), st.lists(small, min_size=3, max_size=3), st.sampled_from(["min", "max"]))
def test_optimum_matches_best_vertex(sys, c, direction):
    c = c[: sys.n_vars]
    verts = vertices(sys.n_vars, sys.eq, sys.le)
    res = optimize(c, direction, sys)
    if not verts:
        assert res.status == "infeasible"
        return
    vals = [sum(F(a) * v for a, v in zip(c, x)) for x in verts]
    assert res.status == "optimal"
    assert res.value == (min(vals) if direction == "min" else max(vals))
    assert sys.residuals_ok(res.point)


def test_unbounded_returns_ray():
    sys = LinearSystem(2, le=[([1, -1], 1)])
    res = optimize([1, 0], "max", sys)
    assert res.status == "unbounded"
    assert res.ray[0] > 0 and res.ray[0] - res.ray[1] <= 0


def test_free_variables():
    sys = LinearSystem(2, eq=[([1, 1], -3)], nonneg=[False, True])
    res = optimize([0, 1], "min", sys)
    assert res.status == "optimal" and res.point == [F(-3), F(0)]


def test_certificate_for_simple_contradiction():
    sys = LinearSystem(1, eq=[([1], 2)], le=[([1], 1)])
    res = solve_feasibility(sys)
    assert res.status == "infeasible"
    assert verify_certificate(sys, res.certificate)
    assert not verify_certificate(sys, [F(0), F(0)])


def test_degenerate_cycling_example():
    # Beale's classic cycling problem; Bland's rule must terminate.
    sys = LinearSystem(
        4,
        le=[
            ([F(1, 4), -8, -1, 9], 0),
            ([F(1, 2), -12, F(-1, 2), 3], 0),
            ([0, 0, 1, 0], 1),
        ],
    )
    res = optimize([F(-3, 4), 20, F(-1, 2), 6], "min", sys)
    assert res.status == "optimal" and res.value == F(-5, 4)


def test_validation():
    with pytest.raises(ValueError):
        LinearSystem(2, eq=[([1], 1)])
    with pytest.raises(ValueError):
        optimize([1], "sideways", LinearSystem(1))
