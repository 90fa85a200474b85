"""Normal geodesics from the origin in closed form.

A geodesic is fixed by the initial horizontal covector ``h0 = (h1..h4)`` and
the constant vertical covector ``c567 = (C5, C6, C7)``. With
``gamma = C5 I + C6 J + C7 K`` and ``C = |gamma|`` the vertical system
``h' = Omega h`` is right multiplication by ``gamma``, so

    h(t) = cos(Ct) u + sin(Ct) v,            u = h0, v = h0 gamma / C
    b(t) = sin(Ct)/C u + (1 - cos(Ct))/C v
    a(t) = (Ct - sin(Ct))/C^2 w,             w = -(D/C) gamma, D = |h0|^2

For ``C = 0`` the geodesic is the straight line ``b = t h0``, ``a = 0``.

Array helpers (:func:`closed_form`, :func:`omega`, :func:`adjoint_block`)
broadcast over leading axes so many geodesics can be evaluated at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import quaternion as quat
from .group import GroupElement

DEGENERACY_RTOL = 1e-12


def omega(c567) -> np.ndarray:
    """Antisymmetric 4x4 generator of the vertical system; broadcasts."""
    c = np.asarray(c567, dtype=float)
    C5, C6, C7 = np.moveaxis(c, -1, 0)
    z = np.zeros_like(C5)
    rows = [
        [z, -C5, -C6, -C7],
        [C5, z, C7, -C6],
        [C6, -C7, z, C5],
        [C7, C6, -C5, z],
    ]
    return np.moveaxis(np.array(rows), (0, 1), (-2, -1))


def adjoint_block(h) -> np.ndarray:
    """The 3x4 matrix A(h) with ``a' = A(h) b`` along horizontal curves; broadcasts."""
    h = np.asarray(h, dtype=float)
    h1, h2, h3, h4 = np.moveaxis(h, -1, 0)
    rows = [
        [-h2, h1, h4, -h3],
        [-h3, -h4, h1, h2],
        [-h4, h3, -h2, h1],
    ]
    return np.moveaxis(np.array(rows), (0, 1), (-2, -1))


def wedge_w(u, v) -> np.ndarray:
    """Vertical direction ``w`` from the wedge components of ``u ^ v``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u1, u2, u3, u4 = np.moveaxis(u, -1, 0)
    v1, v2, v3, v4 = np.moveaxis(v, -1, 0)
    return np.stack(
        [
            -u1 * v2 + u2 * v1 + u3 * v4 - u4 * v3,
            -u1 * v3 - u2 * v4 + u3 * v1 + u4 * v2,
            -u1 * v4 + u2 * v3 - u3 * v2 + u4 * v1,
        ],
        axis=-1,
    )


def _one_minus_cos(x):
    return 2.0 * np.sin(0.5 * x) ** 2


def _x_minus_sin(x):
    x = np.asarray(x, dtype=float)
    x2 = x * x
    series = x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    return np.where(np.abs(x) < 1e-2, series, x - np.sin(x))


def _is_degenerate(C, h0):
    return C < DEGENERACY_RTOL * (1.0 + np.linalg.norm(h0, axis=-1))


def closed_form(h0, c567, t):
    """Closed-form state at time ``t``.

    Returns ``(base, h)`` where ``base`` has trailing axis 7 in the order
    ``(a2, a3, a4, b1, b2, b3, b4)`` and ``h`` has trailing axis 4. The
    leading axes of ``h0``, ``c567`` and ``t`` broadcast together.
    """
    h0 = np.asarray(h0, dtype=float)
    c567 = np.asarray(c567, dtype=float)
    t = np.asarray(t, dtype=float)
    C = np.linalg.norm(c567, axis=-1)
    deg = _is_degenerate(C, h0)
    Cs = np.where(deg, 1.0, C)
    v = quat.mul(h0, quat.from_imaginary(c567)) / Cs[..., None]
    v = np.where(deg[..., None], 0.0, v)
    w = wedge_w(h0, v)

    x = Cs * t
    cos, sin = np.cos(x)[..., None], np.sin(x)[..., None]
    h = np.where(deg[..., None], h0 + 0.0 * cos, cos * h0 + sin * v)
    b_curved = (sin * h0 + _one_minus_cos(x)[..., None] * v) / Cs[..., None]
    b = np.where(deg[..., None], t[..., None] * h0, b_curved)
    a = np.where(deg[..., None], 0.0, (_x_minus_sin(x) / Cs**2)[..., None] * w)
    return np.concatenate([a, b], axis=-1), h


@dataclass(frozen=True, eq=False)
class GeodesicParams:
    h0: np.ndarray
    c567: np.ndarray
    C: float
    D: float
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    degenerate: bool

    def __repr__(self) -> str:
        return (
            f"GeodesicParams(h0={self.h0.tolist()}, c567={self.c567.tolist()}, "
            f"C={self.C:.17g}, D={self.D:.17g}, degenerate={self.degenerate})"
        )

    @property
    def gamma(self) -> np.ndarray:
        """The vertical constants as the imaginary quaternion C5 I + C6 J + C7 K."""
        return quat.from_imaginary(self.c567)


def params_from_covector(h0, c567) -> GeodesicParams:
    h0 = np.array(h0, dtype=float).reshape(4)
    c567 = np.array(c567, dtype=float).reshape(3)
    C = float(np.linalg.norm(c567))
    D = float(h0 @ h0)
    degenerate = bool(_is_degenerate(C, h0))
    if degenerate:
        v = np.zeros(4)
        w = np.zeros(3)
    else:
        v = omega(c567) @ h0 / C
        w = wedge_w(h0, v)
    for arr in (h0, c567, v, w):
        arr.flags.writeable = False
    return GeodesicParams(h0, c567, C, D, h0, v, w, degenerate)


class PaperConstantVectors(NamedTuple):
    u: np.ndarray
    v: np.ndarray
    D: float


def paper_constant_vectors(constants: Sequence[float]) -> PaperConstantVectors:
    """Circle vectors ``u, v`` and level ``D`` from integration constants C1..C7.

    Uses the generic formulas when ``(C5, C6) != 0`` and the special ones
    otherwise. In the special branch ``v`` is the correct companion of ``u``
    only for ``C7 > 0``; for ``C7 < 0`` it has the opposite sign.
    """
    C1, C2, C3, C4, C5, C6, C7 = (float(c) for c in constants)
    C = np.sqrt(C5 * C5 + C6 * C6 + C7 * C7)
    if C == 0.0:
        raise ValueError("C5, C6, C7 must not all vanish")
    s = C5 * C5 + C6 * C6
    if s > 0.0:
        u = np.array([
            (C6 * C7 * C1 + C5 * C * C2 - C5 * C7 * C3 + C6 * C * C4) / s,
            C1,
            C3,
            (C5 * C7 * C1 - C6 * C * C2 + C6 * C7 * C3 + C5 * C * C4) / s,
        ])
        v = np.array([
            -(C * C5 * C1 - C6 * C7 * C2 + C * C6 * C3 + C4 * C5 * C7) / s,
            C2,
            C4,
            (C * C6 * C1 + C2 * C5 * C7 - C * C5 * C3 + C4 * C6 * C7) / s,
        ])
        D = (2.0 * C7 * (C1 * C4 - C2 * C3) * C + (C1**2 + C2**2 + C3**2 + C4**2) * C**2) / s
    else:
        u = np.array([C4, -C2, C1, C3])
        v = np.array([-C3, C1, C2, C4])
        D = C1**2 + C2**2 + C3**2 + C4**2
    return PaperConstantVectors(u, v, float(D))


def params_from_paper_constants(constants: Sequence[float]) -> GeodesicParams:
    """Geodesic with ``h0 = u`` built from the constants C1..C7."""
    constants = list(constants)
    if len(constants) != 7:
        raise ValueError(f"expected 7 constants C1..C7, got {len(constants)}")
    vecs = paper_constant_vectors(constants)
    return params_from_covector(vecs.u, constants[4:])


def reference_params() -> GeodesicParams:
    """Arc-length geodesic with u = 1, v = I, w = -I (constants C2 = C5 = 1)."""
    return params_from_covector([1.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0])


def vertical(gp: GeodesicParams, t) -> np.ndarray:
    """Horizontal covector h(t) = optimal control; shape ``t.shape + (4,)``."""
    _, h = closed_form(gp.h0, gp.c567, t)
    return h


def point(gp: GeodesicParams, t: float) -> GroupElement:
    base, _ = closed_form(gp.h0, gp.c567, float(t))
    return GroupElement.from_array(base)


def points(gp: GeodesicParams, ts) -> np.ndarray:
    """Geodesic sampled at ``ts``; rows in a-first coordinate order."""
    base, _ = closed_form(gp.h0, gp.c567, np.asarray(ts, dtype=float))
    return base


def energy(gp: GeodesicParams, T: float) -> float:
    """``1/2 * integral_0^T |h|^2 dt``; the speed is constant so this is D T / 2."""
    if T < 0:
        raise ValueError(f"T must be non-negative, got {T}")
    return gp.D * T / 2.0


class QuotientPoint(NamedTuple):
    b_d: float
    a: np.ndarray
    b_d_literal: float


def quotient_curve(gp: GeodesicParams, t: float) -> QuotientPoint:
    """Image of the geodesic in H / SO(3)_d: ``(|b|^2, a2, a3, a4)``.

    ``b_d_literal`` is the alternative prefactor ``2 D^2 / C^2 (1 - cos Ct)``,
    which coincides with ``|b|^2`` only for ``D = 1``.
    """
    if gp.degenerate:
        raise ValueError("quotient curve needs a non-degenerate geodesic (C > 0)")
    x = gp.C * t
    omc = float(_one_minus_cos(x))
    base, _ = closed_form(gp.h0, gp.c567, float(t))
    return QuotientPoint(
        b_d=2.0 * gp.D / gp.C**2 * omc,
        a=base[:3],
        b_d_literal=2.0 * gp.D**2 / gp.C**2 * omc,
    )
