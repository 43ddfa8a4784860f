"""End-to-end acceptance checks, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from conftest import load_golden
from fstruct.cr import build_H, check_cr
from fstruct.expr import parse_expr, parse_tree
from fstruct.fstructure import (check_decomposition, check_projector_identities, verify_fhat,
                                verify_structure_equation)
from fstruct.generator import fuzz_specs, generate_instance, non_involutive_instance
from fstruct.integrability import (analyze, classify, decide_Dl, frobenius_crosscheck)
from fstruct.manifest import Manifest, builtin_example, builtin_manifest_data
from fstruct.nijenhuis import nijenhuis_identity_suite, nijenhuis_of
from fstruct.report import manifest_report
from fstruct.tensor import TensorField11

ALL_TRUE = {"Dl_integrable": True, "Dm_integrable": True, "partially": True,
            "completely": True, "integrable": True}
FUZZ_PER_KIND = 100


@pytest.fixture(scope="module")
def instances():
    """(label, structure, Fhat or None) for the examples, the fuzz set and the negative control."""
    out = []
    for k in (1, 2, 3, 4):
        m = builtin_example(k)
        out.append((f"example {k}", m.structure(), m.Fhat))
    start = time.perf_counter()
    for position_dependent, seed in ((False, 2024), (True, 2025)):
        for spec in fuzz_specs(FUZZ_PER_KIND, seed=seed, position_dependent=position_dependent):
            inst = generate_instance(spec)
            out.append((f"fuzz {spec}", inst.S, inst.Fhat))
    neg = non_involutive_instance()
    out.append(("negative control", neg.S, neg.Fhat))
    return out, time.perf_counter() - start


@pytest.fixture(scope="module")
def reports(instances):
    return [(label, S, analyze(S, strict=False)) for label, S, _ in instances[0]]


def test_criterion_1_example_1():
    start = time.perf_counter()
    rep = manifest_report(builtin_example(1))
    elapsed = time.perf_counter() - start
    assert rep["rank"] == 2
    assert rep["l"] == [["1", "0"], ["0", "1"]]
    assert rep["m"] == [["0", "0"], ["0", "0"]]
    assert rep["nijenhuis"] == {"x,y": ["0", "0"]}
    assert rep["flags"] == ALL_TRUE
    assert rep == load_golden(1)
    assert elapsed < 1.0


def test_criterion_2_example_2():
    m = builtin_example(2)
    S = m.structure()
    assert S.l == TensorField11.identity(S.chart)
    assert m.Fhat == TensorField11.from_rows(S.chart, [["0", "1"], ["-1", "0"]])
    # oracle: direct 2x2 multiplication
    a, b, c, d = 0, 1, -1, 0
    assert [[a * a + b * c, a * b + b * d], [c * a + d * c, c * b + d * d]] == [[-1, 0], [0, -1]]
    assert m.Fhat @ m.Fhat == -TensorField11.identity(S.chart)
    assert verify_fhat(S, m.Fhat).passed
    assert build_H(S, m.Fhat).complex_dim == 1
    assert check_cr(S, m.Fhat)
    assert analyze(S).flags() == ALL_TRUE
    assert manifest_report(m) == load_golden(2)


def test_criterion_3_example_3():
    m = builtin_example(3)
    assert verify_structure_equation(m.F, 1, 1, 5)
    S = m.structure()
    C = S.chart
    assert S.l == TensorField11.from_rows(C, [[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert S.m == TensorField11.from_rows(C, [[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert [v.to_strings() for v in S.Dl.basis] == [["1", "0", "0"], ["0", "0", "1"]]
    assert [v.to_strings() for v in S.Dm.basis] == [["0", "1", "0"]]
    N = nijenhuis_of(S.F)
    assert len(N.entries) == 3 and N.is_zero()
    assert analyze(S).flags() == ALL_TRUE
    assert manifest_report(m) == load_golden(3)


def test_criterion_4_example_4():
    m = builtin_example(4)
    assert verify_structure_equation(m.F, -1, 1, 5)
    S = m.structure()
    assert S.l == TensorField11.identity(S.chart)
    assert S.m.is_zero()
    assert analyze(S).flags() == {"Dl_integrable": True, "Dm_integrable": True, "partially": False,
                                  "completely": False, "integrable": False}
    witness = nijenhuis_of(S.F)[(2, 3)]
    golden = load_golden(4)
    recorded = S.chart.vector(golden["nijenhuis"]["z,t"])
    assert witness == recorded
    assert any(witness == S.chart.vector(["0", f"{c}/x", "0", "0"]) for c in (1, -1))
    assert manifest_report(m) == golden


def test_criterion_5_unconditional_identities(instances):
    items, build_time = instances
    fuzz_count = sum(label.startswith("fuzz") for label, _, _ in items)
    assert fuzz_count >= 200
    assert all(S.n <= 6 and S.K in (3, 4, 5) for label, S, _ in items if label.startswith("fuzz"))
    kinds = {S.F.is_constant() for label, S, _ in items if label.startswith("fuzz")}
    assert kinds == {True, False}
    start = time.perf_counter()
    failures = []
    for label, S, Fhat in items:
        suites = [check_projector_identities(S), check_decomposition(S), nijenhuis_identity_suite(S)]
        assert len(suites[0]) == 6 and len(suites[2]) == 11
        if Fhat is not None:
            suites.append(verify_fhat(S, Fhat))
        for s in suites:
            failures.extend((label, s.name, c.name) for c in s.failures)
    elapsed = build_time + time.perf_counter() - start
    print(f"identity suites on {len(items)} instances: {elapsed:.1f} s")
    assert failures == []
    assert elapsed < 60.0


def test_criterion_6_equivalent_criteria_agree(reports):
    bad = [(label, d.notion) for label, _, rep in reports for d in rep.decisions if not d.consistent]
    assert bad == []
    assert all(rep.consistency_ok for _, _, rep in reports)
    notions = [d.notion for d in reports[0][2].decisions]
    assert notions == ["Dl", "Dm", "both", "partial", "complete", "integrable"]
    assert [len(d.criteria) for d in reports[0][2].decisions][:2] == [7, 4]


def test_criterion_7_frobenius(reports):
    for label, S, rep in reports:
        assert frobenius_crosscheck(S.Dl) == rep.Dl_integrable, label
        assert frobenius_crosscheck(S.Dm) == rep.Dm_integrable, label


def test_criterion_8_negative_control(reports):
    negatives = [(label, S) for label, S, rep in reports if not rep.Dl_integrable]
    assert any(label == "negative control" for label, _ in negatives)
    for label, S in negatives:
        d = decide_Dl(S, strict=False)
        assert all(c.verdict is False for c in d.criteria), label
        # span-membership oracle: some bracket of D_l basis fields leaves D_l
        B = S.Dl.basis
        assert any(not S.Dl.contains(B[i].bracket(B[j]))
                   for i in range(len(B)) for j in range(i + 1, len(B))), label


def test_criterion_9_classification():
    expected = {
        (0, 1, 3): 1, (0, -1, 3): 2, (0, 1, 5): 4, (0, -1, 5): 5,
        (1, 0, 3): 6, (1, 0, 4): 6, (1, 0, 6): 6,
        (0, -1, 4): 7, (0, 1, 7): 7, (0, -1, 6): 7,
        (0, 1, 4): 8, (0, 1, 6): 8, (0, 1, 18): 9, (0, 1, 66): 9,
        (0, Fraction(1, 4), 3): 3, (0, 2, 3): 3,
    }
    for params, case in expected.items():
        assert classify(*params).case == case, params
    assert classify(1, -2, 3).label == "generic"
    assert classify(0, 1, 3).label == "F^3+F=0"
    assert classify(0, -1, 3).label == "F^3-F=0"
    assert classify(0, 1, 5).label == "F^5+F=0"
    assert classify(0, -1, 5).label == "F^5-F=0"


# -- expression kernel ------------------------------------------------------

GENS = ("x", "y", "z")


def _random_source(rng, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(GENS) if rng.random() < 0.6 else str(rng.randint(-4, 4))
    kind = rng.randrange(4)
    a = _random_source(rng, depth - 1)
    if kind == 0:
        return f"({a})^{rng.randint(0, 3)}"
    if kind == 1:
        return f"({a})/({rng.choice(GENS)} + {rng.randint(1, 3)})"
    b = _random_source(rng, depth - 1)
    return f"({a} {rng.choice('+-*')} {b})"


def test_criterion_10_expression_kernel():
    rng = random.Random(10)
    checks = 0
    for _ in range(250):
        # canonical form: two spellings of one function agree exactly
        a, b = _random_source(rng), _random_source(rng)
        s1, s2 = parse_expr(f"({a})*({b}) - ({b})", GENS), parse_expr(f"(({a}) - 1)*({b})", GENS)
        assert s1 == s2 and str(s1) == str(s2)
        checks += 1
        # field axioms
        A, B, Cc = (parse_expr(_random_source(rng), GENS) for _ in range(3))
        assert A * (B + Cc) == A * B + A * Cc and (A + B) - B == A
        if not A.is_zero():
            assert (B / A) * A == B
        checks += 1
        # product rule
        v = rng.choice(GENS)
        assert (A * B).diff(v) == A.diff(v) * B + A * B.diff(v)
        checks += 1
        # evaluation against the raw parse tree
        src = _random_source(rng)
        pt = {g: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for g in GENS}
        try:
            want = parse_tree(src).evaluate(pt)
        except ZeroDivisionError:
            want = None
        if want is not None:
            assert parse_expr(src, GENS).evaluate(pt) == want
        checks += 1
    assert checks == 1000
    for k in (1, 2, 3, 4):
        data = builtin_manifest_data(k)
        m = Manifest.from_dict(data)
        again = Manifest.from_dict(json.loads(json.dumps(m.to_dict())))
        assert again.to_dict() == m.to_dict()
        assert again.F == m.F
        for row in m.F.rows:
            for e in row:
                assert str(parse_expr(str(e), m.chart.vars)) == str(e)
