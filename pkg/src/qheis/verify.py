"""Randomized invariant suites, one per module, behind ``qheis verify``.

Each check measures a residual and compares it with a tolerance; the run is
deterministic for a given seed.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate as sp_integrate

from . import cutlocus, geodesic, group, integrator, quaternion as quat, symmetry, vectorfield
from .group import GroupElement
from .vectorfield import bracket


@dataclass
class Check:
    module: str
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)


@dataclass
class Report:
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "meta": {"seed": self.seed, "passed": self.passed, "n_checks": len(self.checks)},
            "checks": [{**asdict(c), "passed": c.passed} for c in self.checks],
        }


def sample_parameters(rng: np.random.Generator, n: int, C_range=(0.1, 10.0), D_range=(0.25, 4.0)):
    """Random ``(h0, c567)`` batches with ``C`` and ``D`` uniform in the given ranges."""
    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    c567 = dirs * rng.uniform(*C_range, size=n)[:, None]
    hd = rng.normal(size=(n, 4))
    hd /= np.linalg.norm(hd, axis=1, keepdims=True)
    h0 = hd * np.sqrt(rng.uniform(*D_range, size=n))[:, None]
    return h0, c567


def random_element(rng: np.random.Generator) -> GroupElement:
    return GroupElement(b=rng.normal(size=4), a=rng.normal(size=3))


def random_unit(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    return q / np.linalg.norm(q)


def _max(values) -> float:
    values = list(values)
    return float(max(values)) if values else 0.0


def quaternion_suite(rng):
    p = rng.normal(size=(1000, 4))
    q = rng.normal(size=(1000, 4))
    pq = quat.mul(p, q)
    hom = _max(
        np.max(np.abs(quat.to_matrix(x) - quat.to_matrix(a) @ quat.to_matrix(b))) / (1 + quat.norm(a) * quat.norm(b))
        for x, a, b in zip(pq, p, q)
    )
    yield "matrix representation is multiplicative", hom, 1e-14
    rel = np.abs(quat.norm(pq) - quat.norm(p) * quat.norm(q)) / (quat.norm(p) * quat.norm(q))
    yield "norm is multiplicative", float(rel.max()), 1e-12
    inner = np.abs(quat.mul(quat.conj(p), q)[:, 0] - np.sum(p * q, axis=1))
    yield "Re(conj(p) q) is the inner product", float(inner.max()), 1e-13
    e = quat.exp_imaginary(quat.from_imaginary(rng.normal(size=(1000, 3)) * 3))
    yield "exp_imaginary is unit", float(np.abs(quat.norm(e) - 1).max()), 1e-14


def group_suite(rng):
    err = 0.0
    for _ in range(1000):
        g, h = random_element(rng), random_element(rng)
        err = max(err, np.abs(group.multiply(g, h).to_array() - group.multiply_via_matrices(g, h).to_array()).max())
    yield "group law equals matrix exp/log composition", err, 1e-13
    err = 0.0
    for _ in range(1000):
        g, h, k = random_element(rng), random_element(rng), random_element(rng)
        lhs = group.multiply(group.multiply(g, h), k)
        rhs = group.multiply(g, group.multiply(h, k))
        err = max(err, np.abs(lhs.to_array() - rhs.to_array()).max())
    yield "associativity", err, 1e-13
    bad = sum(not rel.matches for rel in group.bracket_table())
    yield "frame bracket table (count of mismatches)", float(bad), 0.0
    frame = vectorfield.frame_fields()
    nonzero = sum(not bracket(symmetry.generator(t), e).is_zero() for t in symmetry.TRANSLATIONS for e in frame)
    yield "translations commute with the frame (nonzero brackets)", float(nonzero), 0.0
    err = err_poly = err_gram = 0.0
    step = 1e-6
    for _ in range(20):
        g = random_element(rng)
        numeric = np.zeros((4, 7))
        for i in range(4):
            eps = np.zeros(4)
            eps[i] = step
            plus = group.multiply(g, GroupElement(b=eps)).to_array()
            minus = group.multiply(g, GroupElement(b=-eps)).to_array()
            numeric[i] = (plus - minus) / (2 * step)
        err = max(err, np.abs(numeric - group.frame(g)[:4]).max())
        poly = np.array([vectorfield.evaluate(e, g.to_array()) for e in frame])
        err_poly = max(err_poly, np.abs(poly - group.frame(g)).max())
        err_gram = max(err_gram, np.abs(group.metric_gram(g) - np.eye(4)).max())
    yield "frame is left-invariant", err, 1e-7
    yield "polynomial frame equals the group-law frame", err_poly, 1e-14
    yield "frame is orthonormal", err_gram, 1e-15


def vectorfield_suite(rng):
    bad = 0
    for name in symmetry.GENERATOR_NAMES:
        rep = vectorfield.is_infinitesimal_symmetry(symmetry.generator(name))
        bad += (not rep.metric_preserved) + rep.nonzero_residuals
    yield "generators are infinitesimal symmetries (failures)", float(bad), 0.0
    s = {n: symmetry.generator(n) for n in symmetry.ROTATIONS}
    relations = [
        (bracket(s["s1"], s["s2"]), 2 * s["s3"]),
        (bracket(s["s1"], s["s3"]), -2 * s["s2"]),
        (bracket(s["s2"], s["s3"]), 2 * s["s1"]),
        (bracket(s["s4"], s["s5"]), 2 * s["s6"]),
        (bracket(s["s4"], s["s6"]), -2 * s["s5"]),
        (bracket(s["s5"], s["s6"]), 2 * s["s4"]),
    ]
    relations += [(bracket(s[x], s[y]), vectorfield.PolyVectorField()) for x in ("s1", "s2", "s3") for y in ("s4", "s5", "s6")]
    yield "sp(1) + sp(1) relations (failures)", float(sum(a != b for a, b in relations)), 0.0
    fields = [_random_field(rng) for _ in range(30)]
    bad = 0
    for x, y, z in zip(fields[::3], fields[1::3], fields[2::3]):
        bad += not (bracket(x, y) + bracket(y, x)).is_zero()
        bad += not (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero()
    yield "antisymmetry and Jacobi (failures)", float(bad), 0.0


def _random_field(rng) -> vectorfield.PolyVectorField:
    coeffs = []
    for _ in range(7):
        terms = {}
        for _ in range(3):
            mono = [0] * 7
            for _ in range(int(rng.integers(0, 3))):
                mono[int(rng.integers(0, 7))] += 1
            terms[tuple(mono)] = int(rng.integers(-3, 4))
        coeffs.append(vectorfield.Poly(terms))
    return vectorfield.PolyVectorField(tuple(coeffs))


def symmetry_suite(rng):
    err = 0.0
    for _ in range(100):
        r = symmetry.RotationPair(random_unit(rng), random_unit(rng))
        g, h = random_element(rng), random_element(rng)
        lhs = symmetry.act_point(r, group.multiply(g, h))
        rhs = group.multiply(symmetry.act_point(r, g), symmetry.act_point(r, h))
        err = max(err, np.abs(lhs.to_array() - rhs.to_array()).max())
    yield "rotations are group automorphisms", err, 1e-12
    h0s, cs = sample_parameters(rng, 200)
    err_d = err_c = err_m = 0.0
    for h0, c in zip(h0s, cs):
        gp = geodesic.params_from_covector(h0, c)
        rd = symmetry.RotationPair(d=random_unit(rng))
        gd = symmetry.act_geodesic(rd, gp)
        err_d = max(err_d, np.abs(gd.w - gp.w).max())
        T = cutlocus.maxwell_time(gp)
        err_m = max(err_m, np.abs(geodesic.point(gd, T).to_array() - geodesic.point(gp, T).to_array()).max())
        rc = symmetry.RotationPair(c=random_unit(rng))
        gc = symmetry.act_geodesic(rc, gp)
        expected = quat.imaginary_part(quat.mul(quat.mul(rc.c, quat.from_imaginary(gp.w)), quat.conj(rc.c)))
        err_c = max(err_c, np.abs(gc.w - expected).max())
    yield "pure-d rotations fix w", err_d, 1e-12
    yield "pure-c rotations conjugate w", err_c, 1e-12
    yield "pure-d orbit meets at the Maxwell time", err_m, 1e-11
    ref = geodesic.reference_params()
    err = 0.0
    q = rng.normal(size=3)
    for s in np.linspace(-3, 3, 20):
        for t in np.linspace(0, 4 * math.pi, 20):
            gc = symmetry.act_geodesic(symmetry.RotationPair.flow([*q, 0, 0, 0], s), ref)
            gd = symmetry.act_geodesic(symmetry.RotationPair.flow([0, 0, 0, *q], s), ref)
            err = max(err, np.abs(geodesic.point(gc, t).to_array() - symmetry.orbit_c_reference(q, s, t).to_array()).max())
            err = max(err, np.abs(geodesic.point(gd, t).to_array() - symmetry.orbit_d_reference(q, s, t).to_array()).max())
    yield "reference orbit formulas match the general action", err, 1e-9
    err = 0.0
    step = 1e-5
    for k in range(6):
        coeffs = np.zeros(6)
        coeffs[k] = 1.0
        field_ = symmetry.generator(symmetry.ROTATIONS[k])
        for _ in range(10):
            p = random_element(rng)
            plus = symmetry.act_point(symmetry.RotationPair.flow(coeffs, step), p).to_array()
            minus = symmetry.act_point(symmetry.RotationPair.flow(coeffs, -step), p).to_array()
            err = max(err, np.abs((plus - minus) / (2 * step) - vectorfield.evaluate(field_, p.to_array())).max())
    yield "finite rotations differentiate to s1..s6", err, 1e-6


def geodesic_suite(rng):
    h0s, cs = sample_parameters(rng, 1000)
    err = 0.0
    for h0, c in zip(h0s, cs):
        gp = geodesic.params_from_covector(h0, c)
        expected = -gp.D / gp.C * gp.c567
        err = max(err, np.abs(gp.w - expected).max() / np.abs(expected).max())
    yield "wedge w equals -(D/C) C567", err, 1e-11
    err_ode = err_vert = err_speed = err_q = err_e = 0.0
    step = 1e-5
    for h0, c in zip(h0s[:100], cs[:100]):
        gp = geodesic.params_from_covector(h0, c)
        t = rng.uniform(0, 2 * cutlocus.maxwell_time(gp))
        x = geodesic.points(gp, [t - step, t, t + step])
        h = geodesic.vertical(gp, [t - step, t, t + step])
        dx = (x[2] - x[0]) / (2 * step)
        dh = (h[2] - h[0]) / (2 * step)
        scale = 1.0 + np.abs(x[1]).max()
        err_ode = max(err_ode, np.abs(dx[3:] - h[1]).max() / scale,
                      np.abs(dx[:3] - geodesic.adjoint_block(h[1]) @ x[1][3:]).max() / scale)
        err_vert = max(err_vert, np.abs(dh - geodesic.omega(c) @ h[1]).max())
        err_speed = max(err_speed, abs(np.linalg.norm(dx[3:]) - math.sqrt(gp.D)))
        qp = geodesic.quotient_curve(gp, t)
        err_q = max(err_q, abs(qp.b_d - np.sum(x[1][3:] ** 2)) / (1 + qp.b_d))
        T = rng.uniform(0, 10)
        quad, _ = sp_integrate.quad(lambda s: 0.5 * np.sum(geodesic.vertical(gp, s) ** 2), 0, T, limit=200)
        err_e = max(err_e, abs(quad - geodesic.energy(gp, T)) / (1 + quad))
    yield "closed form solves the base system", err_ode, 1e-6
    yield "closed form solves the vertical system", err_vert, 1e-6
    yield "constant speed sqrt(D)", err_speed, 1e-6
    yield "quotient coordinate equals |b|^2", err_q, 1e-11
    yield "energy equals D T / 2", err_e, 1e-10
    ts = rng.uniform(0, 100, size=1000)
    err = 0.0
    for h0, c in zip(h0s, cs):
        gp = geodesic.params_from_covector(h0, c)
        h = geodesic.vertical(gp, ts)
        err = max(err, np.abs(np.sum(h * h, axis=1) - gp.D).max() / gp.D)
    yield "vertical solution is a circle of radius sqrt(D)", err, 1e-12


def cutlocus_suite(rng):
    tau = np.arange(0.0, 20.0 + 5e-4, 1e-3)
    diff = np.abs(cutlocus.jacobian_expanded(tau) - cutlocus.jacobian_factored(tau)) / (1 + tau**4)
    yield "expanded Jacobian equals factored form (scaled)", float(diff.max()), 1e-9
    root = cutlocus.first_conjugate_tau(1e-10)
    yield "first conjugate tau is 2 pi", abs(root.root - 2 * math.pi), 1e-10
    f_vals = abs(float(cutlocus.conjugate_factor(math.pi)) + 4) + abs(float(cutlocus.conjugate_factor(3 * math.pi)) + 4)
    yield "f(pi) = f(3 pi) = -4", f_vals, 1e-14
    x = rng.uniform(-20, 20, size=1000)
    yield "f is even", float(np.abs(cutlocus.conjugate_factor(x) - cutlocus.conjugate_factor(-x)).max()), 0.0
    h0s, cs = sample_parameters(rng, 100)
    err = 0.0
    for h0, c in zip(h0s, cs):
        gp = geodesic.params_from_covector(h0, c)
        p = geodesic.point(gp, cutlocus.maxwell_time(gp))
        err = max(err, np.abs(p.to_array() - cutlocus.maxwell_point(gp).to_array()).max())
    yield "geodesic reaches the Maxwell point", err, 1e-11
    err = 0.0
    for c in rng.normal(size=(20, 3)):
        t = rng.uniform(0.5, 12)
        C = np.linalg.norm(c)
        det = cutlocus.quotient_jacobian_det(c, t)
        ref = cutlocus.jacobian_factored(t) / C**11
        err = max(err, abs(det - ref) / (1 + abs(ref)))
    yield "factored Jacobian matches the quotient-map determinant", err, 1e-6


def integrator_suite(rng):
    h0, c = sample_parameters(rng, 10)
    C = np.linalg.norm(c, axis=1)
    T = 4 * math.pi / C
    traj = integrator.integrate(h0, c, T, 20000, record_every=100)
    yield "RK4 matches closed form over two periods", float(integrator.deviations(traj, h0, c).max()), 1e-7
    fib = traj.states[..., 7:]
    K = 0.5 * np.sum(fib[..., :4] ** 2, axis=-1)
    drift = max(np.abs(K - K[0]).max(), np.abs(fib[..., 4:] - fib[0, :, 4:]).max(),
                np.abs(np.linalg.norm(fib[..., :4], axis=-1) - np.linalg.norm(h0, axis=-1)).max())
    yield "conserved quantities drift", float(drift), 1e-10
    e1 = integrator.deviations(integrator.integrate(h0, c, T, 400, 400), h0, c)
    e2 = integrator.deviations(integrator.integrate(h0, c, T, 800, 800), h0, c)
    ratio = e1 / e2
    yield "step halving error ratio distance from [12, 20]", float(np.maximum(12 - ratio, ratio - 20).max().clip(0)), 0.0


SUITES: dict[str, Callable] = {
    "quaternion": quaternion_suite,
    "group": group_suite,
    "vectorfield": vectorfield_suite,
    "symmetry": symmetry_suite,
    "geodesic": geodesic_suite,
    "cutlocus": cutlocus_suite,
    "integrator": integrator_suite,
}


def run(seed: int = 0, tolerance: float | None = None, suites=None) -> Report:
    """Run the selected suites; ``tolerance`` overrides every check's tolerance."""
    report = Report(seed=seed)
    for name in suites or SUITES:
        rng = np.random.default_rng([seed, list(SUITES).index(name)])
        for check_name, residual, tol in SUITES[name](rng):
            report.checks.append(Check(name, check_name, float(residual), float(tol if tolerance is None else tolerance)))
    return report
