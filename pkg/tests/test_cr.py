import pytest

from fstruct.chart import ChartManifold
from fstruct.cr import (ComplexExpr, ComplexFrameBundle, ComplexVectorField, build_H, check_cr,
                        check_disjointness, check_involutive, complex_bracket,
                        complex_structure_identities, cr_analysis, eigen_check)
from fstruct.fstructure import FStructure
from fstruct.generator import (GeneratorSpec, _rotation_block, block_matrix, conjugate, default_chart,
                               generate_instance, shear_conjugator)
from fstruct.nijenhuis import nijenhuis_of
from fstruct.tensor import TensorField11


def cvf(chart, re, im):
    return ComplexVectorField(chart.vector(re), chart.vector(im))


def test_complex_arithmetic():
    C = ChartManifold(("x",))
    a = ComplexExpr(C.expr("x"), C.expr("1"))
    b = ComplexExpr(C.expr("2"), C.expr("-x"))
    assert (a * b) == ComplexExpr(C.expr("3*x"), C.expr("2 - x^2"))
    assert (a * b) / b == a
    assert (a * a.conjugate()).im.is_zero()
    assert (a - a) == 0


def test_example_2_bundle(examples):
    m, S = examples[2]
    H = build_H(S, m.Fhat)
    assert H.complex_dim == 1
    assert H.basis[0].to_strings() == ["1", "j*(1)"]
    assert check_disjointness(H)
    assert check_involutive(H)
    assert eigen_check(H, m.Fhat)
    assert check_cr(S, m.Fhat)
    assert complex_structure_identities(S, m.Fhat).passed


def test_other_family_member(examples):
    S = examples[2][1]
    Fh = TensorField11.from_rows(S.chart, [["1", "1"], ["-2", "-1"]])
    H = build_H(S, Fh)
    assert H.complex_dim == 1
    assert check_disjointness(H) and check_cr(S, Fh)


def test_rejects_unverified_fhat(examples):
    S = examples[2][1]
    with pytest.raises(ValueError):
        build_H(S, TensorField11.identity(S.chart))


def test_rejects_odd_rank():
    spec = GeneratorSpec(3, 3, 1, -2, kernel_dim=0)
    S = generate_instance(spec).S
    assert S.r == 3
    with pytest.raises(ValueError):
        build_H(S, TensorField11.zero(S.chart))


def test_zero_structure_gives_empty_bundle():
    C = ChartManifold(("x", "y"))
    S = FStructure.from_matrix(TensorField11.zero(C), 0, 1, 3, allow_zero=True)
    Z = TensorField11.zero(C)
    H = build_H(S, Z)
    assert H.complex_dim == 0
    assert check_disjointness(H) and check_involutive(H)
    assert check_cr(S, Z)


def test_real_field_breaks_disjointness():
    C = ChartManifold(("x", "y"))
    H = ComplexFrameBundle(C, (cvf(C, ["1", "0"], ["0", "0"]),))
    assert not check_disjointness(H)


def test_non_involutive_bundle():
    C = ChartManifold(("x", "y", "z"))
    # d_x + j y d_z and d_y: their bracket is -j d_z
    P = cvf(C, ["1", "0", "0"], ["0", "0", "y"])
    Q = cvf(C, ["0", "1", "0"], ["0", "0", "0"])
    H = ComplexFrameBundle(C, (P, Q))
    assert complex_bracket(P, Q).to_strings() == ["0", "0", "j*(-1)"]
    assert not check_involutive(H)
    assert not check_involutive(H.conjugate())


def test_integrable_position_dependent_fhat():
    # a shear whose coefficient depends only on its column variable is the
    # Jacobian of a coordinate change, so Fhat stays integrable
    spec = GeneratorSpec(4, 3, 0, 1, kernel_dim=0)
    chart = default_chart(4)
    P, P_inv = shear_conjugator(chart, [(0, 2, "x3^2")])
    F = conjugate(chart, block_matrix(spec), P, P_inv)
    S = FStructure.from_matrix(F, 0, 1, 3)
    Fhat = conjugate(chart, _rotation_block(4, 4), P, P_inv)
    assert not Fhat.is_constant()
    assert nijenhuis_of(Fhat).is_zero()
    res = cr_analysis(S, Fhat)
    assert res.fhat_integrable and res.involutive and res.is_cr


def test_generated_fhat_properties():
    for seed in range(6):
        inst = generate_instance(GeneratorSpec(4, 3, 0, 1, kernel_dim=2, conjugation="unimodular", seed=seed))
        res = cr_analysis(inst.S, inst.Fhat)
        assert res.complex_dim == 1
        assert res.disjoint and res.eigen
        assert res.fhat.passed
