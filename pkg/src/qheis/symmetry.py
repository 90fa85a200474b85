"""Symmetries of the sub-Riemannian structure.

Infinitesimally: translations t1..t7 (right-invariant fields) and the
rotations s1..s6 fixing the origin. Finitely: a pair of unit quaternions
``(c, d)`` acts by ``b -> d b conj(c)`` and ``a -> c a conj(c)``.

The flow of ``q1 s1 + q2 s2 + q3 s3`` for time ``s`` is the pair
``c = exp(-s (q1 I + q2 J + q3 K)), d = 1``; the flow of
``q4 s4 + q5 s5 + q6 s6`` is ``c = 1, d = exp(-s (q4 I + q5 J + q6 K))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import quaternion as quat
from .geodesic import GeodesicParams, params_from_covector
from .group import GroupElement
from .vectorfield import Poly, PolyVectorField

UNIT_TOL = 1e-12

_a2, _a3, _a4, _b1, _b2, _b3, _b4 = (Poly.var(n) for n in ("a2", "a3", "a4", "b1", "b2", "b3", "b4"))


def _generators() -> dict[str, PolyVectorField]:
    vf = PolyVectorField.from_components
    return {
        "t1": vf(a2=1),
        "t2": vf(a3=1),
        "t3": vf(a4=1),
        "t4": vf(b1=1, a2=-_b2, a3=-_b3, a4=-_b4),
        "t5": vf(b2=1, a2=_b1, a3=-_b4, a4=_b3),
        "t6": vf(b3=1, a2=_b4, a3=_b1, a4=-_b2),
        "t7": vf(b4=1, a2=-_b3, a3=_b2, a4=_b1),
        "s1": vf(a3=2 * _a4, a4=-2 * _a3, b1=-_b2, b2=_b1, b3=_b4, b4=-_b3),
        "s2": vf(a2=-2 * _a4, a4=2 * _a2, b1=-_b3, b2=-_b4, b3=_b1, b4=_b2),
        "s3": vf(a2=2 * _a3, a3=-2 * _a2, b1=-_b4, b2=_b3, b3=-_b2, b4=_b1),
        "s4": vf(b1=_b2, b2=-_b1, b3=_b4, b4=-_b3),
        "s5": vf(b1=_b3, b2=-_b4, b3=-_b1, b4=_b2),
        "s6": vf(b1=_b4, b2=_b3, b3=-_b2, b4=-_b1),
    }


GENERATOR_NAMES = tuple(_generators())
TRANSLATIONS = GENERATOR_NAMES[:7]
ROTATIONS = GENERATOR_NAMES[7:]


def generator(name: str) -> PolyVectorField:
    try:
        return _generators()[name]
    except KeyError:
        raise KeyError(f"unknown generator {name!r}; expected one of {GENERATOR_NAMES}") from None


@dataclass(frozen=True, eq=False)
class RotationPair:
    c: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0, 0.0]))
    d: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0, 0.0]))

    def __post_init__(self):
        for name in ("c", "d"):
            q = np.array(getattr(self, name), dtype=float).reshape(4)
            if abs(np.linalg.norm(q) - 1.0) > UNIT_TOL:
                raise ValueError(f"{name} must be a unit quaternion, |{name}| = {np.linalg.norm(q)!r}")
            q.flags.writeable = False
            object.__setattr__(self, name, q)

    @classmethod
    def flow(cls, coefficients: Sequence[float], s: float) -> "RotationPair":
        """Time-``s`` flow of ``sum_i coefficients[i] * s_{i+1}`` (six coefficients)."""
        q = np.asarray(coefficients, dtype=float).reshape(6)
        return cls(
            c=quat.exp_imaginary(quat.from_imaginary(-s * q[:3])),
            d=quat.exp_imaginary(quat.from_imaginary(-s * q[3:])),
        )

    @property
    def is_pure_d(self) -> bool:
        return bool(np.allclose(self.c, [1.0, 0.0, 0.0, 0.0], rtol=0.0, atol=UNIT_TOL))


def act_point(r: RotationPair, p: GroupElement) -> GroupElement:
    b = quat.mul(quat.mul(r.d, p.b), quat.conj(r.c))
    a = quat.mul(quat.mul(r.c, quat.from_imaginary(p.a)), quat.conj(r.c))
    return GroupElement(b=b, a=quat.imaginary_part(a))


def act_geodesic(r: RotationPair, gp: GeodesicParams) -> GeodesicParams:
    """Image of a geodesic from the origin under the rotation ``r``.

    ``u -> d u conj(c)`` and ``gamma -> c gamma conj(c)``; ``v`` and ``w``
    follow from these, with ``v -> d v conj(c)`` and ``w -> c w conj(c)``.
    """
    if gp.degenerate:
        raise ValueError("act_geodesic needs a non-degenerate geodesic (C > 0)")
    u = quat.mul(quat.mul(r.d, gp.u), quat.conj(r.c))
    gamma = quat.mul(quat.mul(r.c, gp.gamma), quat.conj(r.c))
    return params_from_covector(u, quat.imaginary_part(gamma))


def canonicalize(gp: GeodesicParams) -> tuple[GeodesicParams, RotationPair]:
    """Rotate by ``d = conj(u)/|u|`` so that ``u`` becomes ``(sqrt(D), 0, 0, 0)``.

    ``v`` then becomes purely imaginary; ``C``, ``D`` and ``w`` are unchanged.
    Aligning ``v`` with the second basis vector as well is not attempted.
    """
    if gp.degenerate or gp.D == 0.0:
        raise ValueError("canonicalize needs C > 0 and D > 0")
    r = RotationPair(d=quat.conj(gp.u) / np.sqrt(gp.D))
    return act_geodesic(r, gp), r


def _axis(q: Sequence[float]) -> tuple[np.ndarray, float]:
    q = np.asarray(q, dtype=float).reshape(3)
    n = float(np.linalg.norm(q))
    if n == 0.0:
        raise ValueError("rotation axis must be non-zero")
    return q, n


def orbit_c_reference(q: Sequence[float], s: float, t: float) -> GroupElement:
    """Closed-form orbit of the reference geodesic under the flow of q1 s1 + q2 s2 + q3 s3.

    The reference geodesic is ``a = (sin t - t, 0, 0)``, ``b = (sin t, 1 - cos t, 0, 0)``.
    """
    (q1, q2, q3), n = _axis(q)
    st, ct = np.sin(t), np.cos(t)
    tms = t - st
    c2, s2 = np.cos(2 * n * s), np.sin(2 * n * s)
    c1, s1 = np.cos(n * s), np.sin(n * s)
    a = np.array([
        -tms * ((q3**2 + q2**2) * c2 + q1**2),
        tms * (q1 * q2 * c2 + q3 * n * s2 - q1 * q2),
        -tms * (-q1 * q3 * c2 + q2 * n * s2 + q1 * q3),
    ]) / n**2
    b = np.array([
        q1 * (ct - 1) * s1 + st * c1 * n,
        -n * (ct - 1) * c1 + s1 * st * q1,
        s1 * (st * q2 + q3 * ct - q3),
        s1 * (st * q3 - q2 * ct + q2),
    ]) / n
    return GroupElement(b=b, a=a)


def orbit_d_reference(q: Sequence[float], s: float, t: float) -> GroupElement:
    """Closed-form orbit of the reference geodesic under the flow of q4 s4 + q5 s5 + q6 s6."""
    (q4, q5, q6), n = _axis(q)
    st, ct = np.sin(t), np.cos(t)
    c1, s1 = np.cos(n * s), np.sin(n * s)
    b = np.array([
        -q4 * (ct - 1) * s1 + st * c1 * n,
        -n * (ct - 1) * c1 - s1 * st * q4,
        -s1 * (st * q5 - q6 * ct + q6),
        -s1 * (q5 * ct + st * q6 - q5),
    ]) / n
    return GroupElement(b=b, a=np.array([st - t, 0.0, 0.0]))
