from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from midpoint_ellipse.geometry import (
    DecisionState,
    EllipseSpec,
    GridStep,
    InvalidEllipseError,
    InvalidStepError,
    Mode,
    Region,
    RegionError,
    decision_residual,
    eval_implicit,
    grid_point,
    initial_p1,
    initial_p2,
    last_row,
    midpoint,
    region_transition,
    step_r1,
    step_r2,
    to_rational,
)

SPEC = EllipseSpec(8, 6)
STEPS = {
    "float": lambda h: GridStep(float(Fraction(h))),
    "exact": lambda h: GridStep(Fraction(h), Mode.EXACT),
}


def state_at(spec, step, x, y, p, region):
    h = to_rational(step.h)
    i = Fraction(x) / h
    j = (to_rational(spec.b) - Fraction(y)) / h
    assert i.denominator == 1 and j.denominator == 1
    p = Fraction(p) if step.is_exact else float(Fraction(p))
    return DecisionState(grid_point(spec, step, int(i), int(j)), region, p)


def close(got, want, step, tol=1e-9):
    if step.is_exact:
        return got == Fraction(want)
    return abs(got - float(Fraction(want))) <= tol


@pytest.mark.parametrize("x,y,want", [(0, 6, 0), (0, 0, -2304), (7, 3, 36)])
def test_eval_implicit_examples(x, y, want):
    assert eval_implicit(SPEC, x, y) == want


def test_eval_implicit_exact_inputs_stay_exact():
    v = eval_implicit(SPEC, Fraction(13, 2), Fraction(7, 2))
    assert isinstance(v, Fraction)
    assert v == 36 * Fraction(169, 4) + 64 * Fraction(49, 4) - 2304


@pytest.mark.parametrize("mode", STEPS)
@pytest.mark.parametrize("h,want", [("1", -332), ("1/2", -179), ("1/10", "-37.88")])
def test_initial_p1_matches_tables(mode, h, want):
    step = STEPS[mode](h)
    st0 = initial_p1(SPEC, step)
    assert (st0.point.x, st0.point.y) == (0, 6)
    assert st0.region is Region.R1
    assert close(st0.p, want, step)


@pytest.mark.parametrize("mode", STEPS)
@pytest.mark.parametrize("h,before,after", [
    ("1", (0, 6, -332), (1, 6, -224)),
    ("1", (3, 6, 208), (4, 5, -108)),
    ("1/2", (2, 6, 37), ("2.5", "5.5", -216)),
])
def test_step_r1_examples(mode, h, before, after):
    step = STEPS[mode](h)
    nxt = step_r1(SPEC, step, state_at(SPEC, step, *before, Region.R1))
    assert close(nxt.point.x, after[0], step)
    assert close(nxt.point.y, after[1], step)
    assert close(nxt.p, after[2], step)
    assert nxt.region is Region.R1


@pytest.mark.parametrize("mode", STEPS)
@pytest.mark.parametrize("h,point,want", [
    ("1", (7, 3), -23),
    ("1/2", ("6.5", 3), "-263.75"),
    ("1/10", ("6.5", "3.5"), "-19.67"),
])
def test_initial_p2_matches_tables(mode, h, point, want):
    step = STEPS[mode](h)
    pt = state_at(SPEC, step, *point, 0, Region.R2).point
    assert close(initial_p2(SPEC, step, pt).p, want, step)


@pytest.mark.parametrize("mode", STEPS)
@pytest.mark.parametrize("h,before,after", [
    ("1", (7, 3, -23), (8, 2, 361)),
    ("1", (8, 2, 361), (8, 1, 297)),
    ("1/10", ("6.8", "3.2", "0.25"), ("6.8", "3.1", "-38.79")),
])
def test_step_r2_examples(mode, h, before, after):
    step = STEPS[mode](h)
    nxt = step_r2(SPEC, step, state_at(SPEC, step, *before, Region.R2))
    assert close(nxt.point.x, after[0], step)
    assert close(nxt.point.y, after[1], step)
    assert close(nxt.p, after[2], step)


def test_steps_reject_wrong_region():
    step = GridStep(1)
    s1 = initial_p1(SPEC, step)
    with pytest.raises(RegionError):
        step_r2(SPEC, step, s1)
    s2 = initial_p2(SPEC, step, s1.point)
    with pytest.raises(RegionError):
        step_r1(SPEC, step, s2)


@pytest.mark.parametrize("x,y,want", [(7, 3, True), (0, 6, False)])
def test_region_transition_examples(x, y, want):
    assert region_transition(SPEC, grid_point(SPEC, GridStep(1), x, 6 - y)) is want


@pytest.mark.parametrize("mode", STEPS)
def test_region_transition_equality_row_stays_in_r1(mode):
    # 2b²x = 2a²y = 460.8 at (6.4, 3.6)
    step = STEPS[mode]("1/10")
    pt = grid_point(SPEC, step, 64, 24)
    assert region_transition(SPEC, pt) is False
    assert region_transition(SPEC, grid_point(SPEC, step, 65, 25)) is True


def test_grid_point_derived_not_accumulated():
    step = GridStep(0.1)
    pt = grid_point(SPEC, step, 37, 23)
    assert pt.x == 37 * 0.1
    assert pt.y == 6 - 23 * 0.1
    assert grid_point(SPEC, step, 0, 60).y == 0.0


def test_last_row():
    assert last_row(SPEC, GridStep(0.1)) == 60
    assert last_row(SPEC, GridStep.exact(1, 10)) == 60
    assert last_row(EllipseSpec(8, 5.5), GridStep(1)) == 5
    assert last_row(EllipseSpec(8, 6), GridStep.exact(4, 1)) == 1


@pytest.mark.parametrize("a,b,needle", [
    (0, -1, "a must be positive"),
    (8, 0, "b must be positive"),
    (6, 8, "a > b"),
    (6, 6, "a > b"),
    (float("inf"), 1, "finite"),
    ("8", 6, "real number"),
])
def test_ellipse_validation(a, b, needle):
    with pytest.raises(InvalidEllipseError, match=needle):
        EllipseSpec(a, b)


def test_step_validation():
    with pytest.raises(InvalidStepError, match="positive"):
        GridStep(0)
    with pytest.raises(InvalidStepError, match="positive"):
        GridStep(-0.5)
    with pytest.raises(InvalidStepError, match="lowest terms"):
        GridStep.exact(2, 20)
    with pytest.raises(InvalidStepError, match="denominator must be positive"):
        GridStep.exact(1, 0)
    with pytest.raises(InvalidStepError, match="semi-minor"):
        initial_p1(SPEC, GridStep(6.5))
    assert GridStep.exact(1, 10).h == Fraction(1, 10)
    assert GridStep(0.1, Mode.EXACT).h == Fraction(1, 10)
    assert (GridStep.exact(3, 4).numerator, GridStep.exact(3, 4).denominator) == (3, 4)


def test_midpoints():
    step = GridStep.exact(1, 2)
    s1 = initial_p1(SPEC, step)
    assert midpoint(step, s1) == (Fraction(1, 2), Fraction(23, 4))
    s2 = initial_p2(SPEC, step, s1.point)
    assert midpoint(step, s2) == (Fraction(1, 4), Fraction(11, 2))


# -- properties ---------------------------------------------------------------

def _classical_p1(a, b):
    return Fraction(4 * b * b + a * a, 4) - a * a * b


rationals = st.fractions(min_value=Fraction(1, 4), max_value=40, max_denominator=20)


@st.composite
def exact_problems(draw):
    b = draw(rationals)
    a = b + draw(st.fractions(min_value=Fraction(1, 20), max_value=30, max_denominator=20))
    q = draw(st.integers(1, 12))
    p = draw(st.integers(1, max(1, int(b * q))))
    from math import gcd
    g = gcd(p, q)
    step = GridStep.exact(p // g, q // g)
    if step.h > b:
        step = GridStep.exact(b.numerator, b.denominator)
    return EllipseSpec(a, b), step


@given(exact_problems())
def test_initial_p1_is_midpoint_value(problem):
    spec, step = problem
    s = initial_p1(spec, step)
    h = step.h
    assert s.p == eval_implicit(spec, h, spec.b - h / 2)
    assert decision_residual(spec, step, s) == 0


@given(st.integers(2, 400), st.integers(1, 399))
def test_initial_p1_classical_at_unit_step(a, b):
    if a <= b:
        a, b = b + 1, a
    spec = EllipseSpec(a, b)
    assert initial_p1(spec, GridStep.exact(1)).p == _classical_p1(a, b)
    assert initial_p1(spec, GridStep(1)).p == float(_classical_p1(a, b))


@given(st.floats(0.01, 1e3), st.floats(1e-3, 1.0))
def test_sign_classification(b, frac):
    a = b * (1 + frac)
    spec = EllipseSpec(a, b)
    assert eval_implicit(spec, 0, 0) < 0
    for x, y in ((a, 0), (-a, 0), (0, b), (0, -b)):
        assert abs(eval_implicit(spec, x, y)) <= 1e-12 * a * a * b * b
    assert eval_implicit(spec, a + 1, b + 1) > 0


@settings(max_examples=200)
@given(exact_problems(), st.data())
def test_single_steps_keep_direct_equivalence(problem, data):
    spec, step = problem
    bottom = last_row(spec, step)
    i = data.draw(st.integers(0, 50))
    j = data.draw(st.integers(0, bottom))
    pt = grid_point(spec, step, i, j)
    for region, stepper, seed in (
        (Region.R1, step_r1, lambda p: DecisionState(p, Region.R1, eval_implicit(spec, p.x + step.h, p.y - step.h / 2))),
        (Region.R2, step_r2, lambda p: initial_p2(spec, step, p)),
    ):
        nxt = stepper(spec, step, seed(pt))
        assert decision_residual(spec, step, nxt) == 0
        di, dj = nxt.point.i - pt.i, nxt.point.j - pt.j
        if region is Region.R1:
            assert di == 1 and dj in (0, 1)
        else:
            assert dj == 1 and di in (0, 1)
