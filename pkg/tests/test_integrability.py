import pytest

from fstruct.chart import ChartManifold
from fstruct.checks import InconsistencyError
from fstruct.fstructure import Distribution
from fstruct.generator import non_involutive_instance
from fstruct.integrability import (_decide, Criterion, analyze, classify, decide_Dl, decide_Dm,
                                   frobenius_crosscheck)

ALL_TRUE = {"Dl_integrable": True, "Dm_integrable": True, "partially": True,
            "completely": True, "integrable": True}


def test_example_flags(examples):
    for k in (1, 2, 3):
        rep = analyze(examples[k][1])
        assert rep.flags() == ALL_TRUE, k
        assert rep.consistency_ok
    rep = analyze(examples[4][1])
    assert rep.flags() == {"Dl_integrable": True, "Dm_integrable": True, "partially": False,
                           "completely": False, "integrable": False}
    assert rep.consistency_ok


def test_example_4_witness(examples):
    S = examples[4][1]
    rep = analyze(S)
    full = rep.decisions[-1]
    assert full.notion == "integrable"
    direct = full.criteria[0]
    assert direct.verdict is False
    assert direct.witness == (0, 1)
    assert direct.residual is not None


def test_negative_control_all_seven_false():
    S = non_involutive_instance().S
    d = decide_Dl(S)
    assert len(d.criteria) == 7
    assert all(c.verdict is False for c in d.criteria)
    assert frobenius_crosscheck(S.Dl) is False
    assert decide_Dm(S).verdict is True
    rep = analyze(S)
    assert rep.consistency_ok
    assert not rep.partially_integrable and not rep.F_integrable


def test_strict_disagreement_raises():
    crits = [Criterion("a", True), Criterion("b", False)]
    with pytest.raises(InconsistencyError) as info:
        _decide("Dl", crits, strict=True)
    assert info.value.payload.consistent is False
    assert _decide("Dl", crits, strict=False).consistent is False


def test_frobenius_examples():
    C = ChartManifold(("x", "y", "z"))
    D = Distribution(C, (C.vector(["1", "0", "y"]), C.vector(["0", "1", "0"])))
    assert frobenius_crosscheck(D) is False
    D = Distribution(C, (C.vector(["1", "0", "y"]), C.vector(["0", "1", "x"])))
    assert frobenius_crosscheck(D) is True
    with pytest.raises(ValueError):
        frobenius_crosscheck(Distribution(C, (C.vector(["1", "0", "0"]), C.vector(["2", "0", "0"]))))


@pytest.mark.parametrize("params, case", [
    ((0, 1, 3), 1),
    ((0, -1, 3), 2),
    ((0, "1/4", 3), 3),
    ((0, 1, 5), 4),
    ((0, -1, 5), 5),
    ((1, 0, 4), 6),
    ((1, 0, 7), 6),
    ((0, -1, 4), 7),
    ((0, 1, 7), 7),
    ((0, 1, 6), 8),
    ((0, 1, 4), 8),
    ((0, 1, 66), 9),
    ((0, 1, 18), 9),
])
def test_classification_cases(params, case):
    assert classify(*params).case == case


def test_classification_labels_and_generic():
    assert classify(0, 1, 3).label == "F^3+F=0"
    assert classify(1, -2, 3).label == "generic"
    assert classify(1, -2, 3).case is None
    assert classify(1, 0, 5).label == "F^{K+1}+F=0 with K=5"
    assert set(classify(0, 1, 5).matches) == {4, 7}
    with pytest.raises(ValueError):
        classify(0, 1, 2)


def test_first_match_wins():
    c = classify(0, 1, 11)
    assert c.case == 7
    assert c.matches == (7, 9)
