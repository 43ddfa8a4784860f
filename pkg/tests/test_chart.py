import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fstruct.chart import ChartManifold, coordinate_frame, lie_bracket

C = ChartManifold(("x", "y", "z"), ("x",))


def V(*comps):
    return C.vector(comps)


def test_frame_fields_commute():
    frame = coordinate_frame(C)
    for a in frame:
        for b in frame:
            assert lie_bracket(a, b).is_zero()


def test_bracket_examples():
    assert lie_bracket(V("0", "-1/x", "0"), V("-x", "0", "0")) == V("0", "1/x", "0")
    assert lie_bracket(V("1", "0", "0"), V("0", "x^2", "0")) == V("0", "2*x", "0")
    assert lie_bracket(V("y", "0", "0"), V("0", "1", "0")) == V("-1", "0", "0")


def test_directional_derivative():
    assert V("1", "x", "0").derive(C.expr("x*y")) == C.expr("y + x^2")


def test_chart_validation():
    with pytest.raises(ValueError):
        ChartManifold(("x", "x"))
    with pytest.raises(ValueError):
        ChartManifold(())
    with pytest.raises(ValueError):
        ChartManifold(("x",), ("x - x",))


def test_sample_points_avoid_constraints():
    pts = C.sample_points(5, seed=3, extra=[C.expr("1/(y-1)")])
    assert len(pts) == 5
    for p in pts:
        assert p[0] != 0 and p[1] != 1


def test_vector_field_string():
    assert str(V("1", "0", "1/x")) == "d_x + (1/x)*d_z"
    assert str(V("0", "0", "0")) == "0"


_entry = st.sampled_from(["0", "1", "x", "y", "z", "x*y", "1/x", "y^2 - z", "z/x", "-3"])
fields = st.tuples(_entry, _entry, _entry).map(lambda t: V(*t))


@settings(max_examples=60, deadline=None)
@given(fields, fields, fields, _entry)
def test_bracket_identities(X, Y, Z, f):
    f = C.expr(f)
    assert lie_bracket(X, Y) == -lie_bracket(Y, X)
    jac = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
           + lie_bracket(Z, lie_bracket(X, Y)))
    assert jac.is_zero()
    # Leibniz: [X, fY] = X(f) Y + f [X, Y]
    assert lie_bracket(X, f * Y) == X.derive(f) * Y + f * lie_bracket(X, Y)
