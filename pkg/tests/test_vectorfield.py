from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from qheis import group, vectorfield as vfm
from qheis.vectorfield import COORDS, Poly, PolyVectorField

SYMBOLS = sp.symbols(" ".join(COORDS))


def to_sympy(vf: PolyVectorField):
    out = []
    for name in COORDS:
        poly = vf[name]
        expr = sp.Integer(0)
        for mono, coef in poly.terms.items():
            term = sp.Rational(coef.numerator, coef.denominator)
            for sym, power in zip(SYMBOLS, mono):
                term *= sym**power
            expr += term
        out.append(sp.expand(expr))
    return out


def sympy_bracket(v, w):
    V, W = to_sympy(v), to_sympy(w)
    return [
        sp.expand(sum(V[j] * sp.diff(W[i], SYMBOLS[j]) - W[j] * sp.diff(V[i], SYMBOLS[j]) for j in range(7)))
        for i in range(7)
    ]


def test_poly_arithmetic():
    x, y = Poly.var("b1"), Poly.var("b2")
    p = (x + 1) * (x - 1)
    assert p == x * x - 1
    assert p.degree() == 2
    assert p.diff("b1") == 2 * x
    assert (x * y).diff("b2") == x
    assert (x - x).is_zero()
    assert p([0, 0, 0, 3, 0, 0, 0]) == 8
    assert Poly.const(Fraction(1, 3)) * 3 == Poly.const(1)


def test_poly_coefficients_are_exact():
    assert Poly.const(2.0) == Poly.const(2)
    with pytest.raises(TypeError):
        Poly.const(0.1)


def test_partial_and_apply():
    vf = PolyVectorField.partial("b3")
    assert vf.apply(Poly.var("b3") * Poly.var("b3")) == 2 * Poly.var("b3")
    assert vf["b3"] == Poly.const(1)
    assert vf["a2"].is_zero()


@pytest.mark.parametrize("i", range(7))
@pytest.mark.parametrize("j", range(7))
def test_frame_brackets_match_sympy(i, j):
    frame = vfm.frame_fields()
    assert to_sympy(vfm.bracket(frame[i], frame[j])) == sympy_bracket(frame[i], frame[j])


def test_frame_bracket_values():
    e = vfm.frame_fields()
    assert vfm.bracket(e[0], e[1]) == e[4] * -2
    assert vfm.bracket(e[0], e[2]) == e[5] * -2
    assert vfm.bracket(e[0], e[3]) == e[6] * -2
    assert vfm.bracket(e[1], e[2]) == e[6] * 2
    assert vfm.bracket(e[1], e[3]) == e[5] * -2
    assert vfm.bracket(e[2], e[3]) == e[4] * 2
    assert vfm.bracket(e[0], e[4]).is_zero()


def test_frame_fields_agree_with_group_frame(rng):
    e = vfm.frame_fields()
    for _ in range(20):
        x = rng.normal(size=7)
        numeric = np.array([vfm.evaluate(f, x) for f in e])
        np.testing.assert_allclose(numeric, group.frame(group.GroupElement.from_array(x)), atol=1e-14)


def test_decompose_recompose_roundtrip():
    b2, b3, b4 = (Poly.var(n) for n in ("b2", "b3", "b4"))
    t4 = PolyVectorField.from_components(b1=1, a2=-b2, a3=-b3, a4=-b4)
    coeffs = vfm.frame_decompose(t4)
    assert coeffs[0] == Poly.const(1)
    assert coeffs[4] == -2 * b2
    assert coeffs[5] == -2 * b3
    assert coeffs[6] == -2 * b4
    assert vfm.recompose(coeffs) == t4


def test_bracket_antisymmetry_and_jacobi():
    e = vfm.frame_fields()
    s = PolyVectorField.from_components(b1=Poly.var("b2"), b2=-Poly.var("b1"))
    for x in (e[0], e[2], s):
        for y in (e[1], e[3], s):
            assert vfm.bracket(x, y) == -vfm.bracket(y, x)
    x, y, z = e[0], e[1], s
    jac = vfm.bracket(x, vfm.bracket(y, z)) + vfm.bracket(y, vfm.bracket(z, x)) + vfm.bracket(z, vfm.bracket(x, y))
    assert jac.is_zero()


def test_non_symmetry_is_rejected():
    # a dilation of the b coordinates alone is not an isometry
    b = {n: Poly.var(n) for n in ("b1", "b2", "b3", "b4")}
    report = vfm.is_infinitesimal_symmetry(PolyVectorField.from_components(**b))
    assert not (report.distribution_preserved and report.metric_preserved)
    assert report.nonzero_residuals > 0


def test_left_invariant_field_is_not_a_symmetry():
    report = vfm.is_infinitesimal_symmetry(vfm.frame_fields()[0])
    assert not report.distribution_preserved
