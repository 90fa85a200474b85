import math

import numpy as np
import pytest

from qheis import geodesic, group, quaternion as quat, symmetry, vectorfield as vfm
from qheis.group import GroupElement
from qheis.symmetry import RotationPair

NAMES = symmetry.GENERATOR_NAMES


def unit(rng):
    q = rng.normal(size=4)
    return q / np.linalg.norm(q)


@pytest.mark.parametrize("name", NAMES)
def test_generators_are_exact_symmetries(name):
    report = vfm.is_infinitesimal_symmetry(symmetry.generator(name))
    assert report.distribution_preserved and report.metric_preserved
    assert report.nonzero_residuals == 0


@pytest.mark.parametrize("name", symmetry.TRANSLATIONS)
def test_translations_commute_with_frame(name):
    t = symmetry.generator(name)
    assert all(vfm.bracket(t, e).is_zero() for e in vfm.frame_fields())


def test_translations_are_right_invariant(rng):
    step = 1e-6
    for k, name in enumerate(symmetry.TRANSLATIONS):
        basis = np.zeros(7)
        basis[k] = 1.0
        for _ in range(5):
            g = GroupElement.from_array(rng.normal(size=7))
            plus = group.multiply(GroupElement.from_array(step * basis), g).to_array()
            minus = group.multiply(GroupElement.from_array(-step * basis), g).to_array()
            np.testing.assert_allclose(
                (plus - minus) / (2 * step), vfm.evaluate(symmetry.generator(name), g.to_array()), atol=1e-7
            )


def test_rotation_algebra_relations():
    s = {n: symmetry.generator(n) for n in symmetry.ROTATIONS}
    br = vfm.bracket
    for x, y, z in (("s1", "s2", "s3"), ("s2", "s3", "s1"), ("s3", "s1", "s2"),
                    ("s4", "s5", "s6"), ("s5", "s6", "s4"), ("s6", "s4", "s5")):
        assert br(s[x], s[y]) == s[z] * 2
    for x in ("s1", "s2", "s3"):
        for y in ("s4", "s5", "s6"):
            assert br(s[x], s[y]).is_zero()


def test_unknown_generator():
    with pytest.raises(KeyError):
        symmetry.generator("s7")


def test_rotation_pair_requires_unit_quaternions():
    with pytest.raises(ValueError):
        RotationPair(c=[2, 0, 0, 0])
    assert RotationPair().is_pure_d
    assert not RotationPair(c=[0, 1, 0, 0]).is_pure_d


def test_rotations_are_automorphisms(rng):
    for _ in range(100):
        r = RotationPair(unit(rng), unit(rng))
        g, h = (GroupElement.from_array(rng.normal(size=7)) for _ in range(2))
        lhs = symmetry.act_point(r, group.multiply(g, h))
        rhs = group.multiply(symmetry.act_point(r, g), symmetry.act_point(r, h))
        assert lhs.allclose(rhs, atol=1e-12)


@pytest.mark.parametrize("k", range(6))
def test_flow_generates_rotation_field(k, rng):
    coeffs = np.zeros(6)
    coeffs[k] = 1.0
    step = 1e-5
    field_ = symmetry.generator(symmetry.ROTATIONS[k])
    for _ in range(5):
        p = GroupElement.from_array(rng.normal(size=7))
        plus = symmetry.act_point(RotationPair.flow(coeffs, step), p).to_array()
        minus = symmetry.act_point(RotationPair.flow(coeffs, -step), p).to_array()
        np.testing.assert_allclose((plus - minus) / (2 * step), vfm.evaluate(field_, p.to_array()), atol=1e-8)


def test_act_geodesic_maps_curves_pointwise(rng):
    gp = geodesic.params_from_covector(rng.normal(size=4), rng.normal(size=3))
    r = RotationPair(unit(rng), unit(rng))
    image = symmetry.act_geodesic(r, gp)
    assert image.C == pytest.approx(gp.C, rel=1e-14)
    assert image.D == pytest.approx(gp.D, rel=1e-14)
    for t in np.linspace(0, 5, 11):
        expected = symmetry.act_point(r, geodesic.point(gp, t))
        assert geodesic.point(image, t).allclose(expected, atol=1e-12)


def test_act_geodesic_rejects_degenerate():
    with pytest.raises(ValueError):
        symmetry.act_geodesic(RotationPair(), geodesic.params_from_covector([1, 0, 0, 0], [0, 0, 0]))


def test_canonicalize(rng):
    gp = geodesic.params_from_covector(rng.normal(size=4), rng.normal(size=3))
    canon, r = symmetry.canonicalize(gp)
    assert r.is_pure_d
    np.testing.assert_allclose(canon.u, [math.sqrt(gp.D), 0, 0, 0], atol=1e-14)
    assert abs(canon.v[0]) < 1e-14
    np.testing.assert_allclose(canon.w, gp.w, atol=1e-13)
    assert canon.C == pytest.approx(gp.C)


def test_reference_orbits_match_general_action(rng):
    ref = geodesic.reference_params()
    q = rng.normal(size=3)
    for s in np.linspace(-2, 2, 7):
        gc = symmetry.act_geodesic(RotationPair.flow([*q, 0, 0, 0], s), ref)
        gd = symmetry.act_geodesic(RotationPair.flow([0, 0, 0, *q], s), ref)
        for t in np.linspace(0, 2 * math.pi, 7):
            assert geodesic.point(gc, t).allclose(symmetry.orbit_c_reference(q, s, t), atol=1e-12)
            assert geodesic.point(gd, t).allclose(symmetry.orbit_d_reference(q, s, t), atol=1e-12)


def test_reference_orbit_at_half_turn():
    # rotating the reference geodesic by s = pi about the first d-axis reflects its b-part
    for t in np.linspace(0, 2 * math.pi, 9):
        p = symmetry.orbit_d_reference([1, 0, 0], math.pi, t)
        np.testing.assert_allclose(p.b, [-math.sin(t), math.cos(t) - 1, 0, 0], atol=1e-15)


def test_reference_orbit_rejects_zero_axis():
    with pytest.raises(ValueError):
        symmetry.orbit_c_reference([0, 0, 0], 1.0, 1.0)
    with pytest.raises(ValueError):
        symmetry.orbit_d_reference([0, 0, 0], 1.0, 1.0)


def test_c_rotation_conjugates_w(rng):
    gp = geodesic.params_from_covector(rng.normal(size=4), rng.normal(size=3))
    r = RotationPair(c=unit(rng))
    image = symmetry.act_geodesic(r, gp)
    expected = quat.imaginary_part(quat.mul(quat.mul(r.c, quat.from_imaginary(gp.w)), quat.conj(r.c)))
    np.testing.assert_allclose(image.w, expected, atol=1e-12)
