"""Maxwell time, conjugate time and cut time of geodesics from the origin.

Conjugate times are zeros of the Jacobian of the quotient exponential map

    (C5, C6, C7, tau) -> (2 (1 - cos tau) / C^2, -(tau - sin tau) (C5, C6, C7) / C^3)

on the level D = 1, with ``tau = C t``. Its determinant is
``J(tau) / C^11`` where ``J(tau) = -4 (tau - sin tau)^2 f(tau)`` and
``f(tau) = tau sin tau + 2 cos tau - 2``. Roots are located on ``f``, which
crosses zero transversally, never on ``J``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geodesic import GeodesicParams
from .group import GroupElement

TAU_MIN = 1e-3
OMITTED_PREFACTOR = "C**-11"


def maxwell_time(gp: GeodesicParams) -> float:
    if gp.degenerate:
        raise ValueError("Maxwell time is undefined for a degenerate geodesic (C = 0)")
    return 2.0 * math.pi / gp.C


def maxwell_point(gp: GeodesicParams) -> GroupElement:
    """Common endpoint at time 2 pi / C of the SO(3)_d orbit of ``gp``."""
    if gp.degenerate:
        raise ValueError("Maxwell point is undefined for a degenerate geodesic (C = 0)")
    return GroupElement(b=np.zeros(4), a=-2.0 * math.pi * gp.D / gp.C**3 * gp.c567)


def cut_time(gp: GeodesicParams) -> float:
    """Cut time 2 pi / C; infinite for straight-line geodesics."""
    if gp.degenerate:
        return math.inf
    return maxwell_time(gp)


def conjugate_factor(tau):
    """``f(tau) = tau sin tau + 2 cos tau - 2``, the factor carrying the conjugate times."""
    tau = np.asarray(tau, dtype=float)
    return tau * np.sin(tau) + 2.0 * np.cos(tau) - 2.0


def jacobian_factored(tau):
    tau = np.asarray(tau, dtype=float)
    return -4.0 * (tau - np.sin(tau)) ** 2 * conjugate_factor(tau)


def jacobian_expanded(tau):
    """Term-by-term trigonometric expansion of ``J``.

    The overall sign follows the determinant of :func:`quotient_map` with
    outputs ordered ``(b_d, a2, a3, a4)`` and inputs ``(C5, C6, C7, tau)``.
    """
    t = np.asarray(tau, dtype=float)
    s, c = np.sin(t), np.cos(t)
    return -(
        4 * t**3 * s
        + 8 * t**2 * c**2
        - 4 * t * c**2 * s
        + 8 * t**2 * c
        - 16 * t * c * s
        - 16 * t**2
        - 8 * c**3
        + 20 * t * s
        + 8 * c**2
        + 8 * c
        - 8
    )


def quotient_map(c567, tau: float) -> np.ndarray:
    """Quotient exponential map at level D = 1: ``(b_d, a2, a3, a4)``."""
    c = np.asarray(c567, dtype=float)
    C = float(np.linalg.norm(c))
    return np.concatenate([[2.0 * (1.0 - math.cos(tau)) / C**2], -(tau - math.sin(tau)) / C**3 * c])


def quotient_jacobian_det(c567, tau: float, step: float = 1e-5) -> float:
    """Determinant of the Jacobian of :func:`quotient_map` by central differences."""
    x0 = np.concatenate([np.asarray(c567, dtype=float), [tau]])
    cols = []
    for k in range(4):
        dx = np.zeros(4)
        dx[k] = step
        fp = quotient_map((x0 + dx)[:3], (x0 + dx)[3])
        fm = quotient_map((x0 - dx)[:3], (x0 - dx)[3])
        cols.append((fp - fm) / (2 * step))
    return float(np.linalg.det(np.column_stack(cols)))


@dataclass(frozen=True)
class RootReport:
    interval: tuple[float, float]
    root: float
    residual: float
    multiplicity_hint: int


def bisect_secant(func: Callable[[float], float], lo: float, hi: float, tolerance: float) -> RootReport:
    """Root of ``func`` in a sign-change bracket ``[lo, hi]``.

    Bisection shrinks the bracket below ``tolerance``; one secant step
    inside the final bracket refines the estimate.
    """
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    f_lo, f_hi = float(func(lo)), float(func(hi))
    if f_lo == 0.0:
        return _report(func, (lo, hi), lo)
    if f_hi == 0.0:
        return _report(func, (lo, hi), hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    a, b, fa, fb = lo, hi, f_lo, f_hi
    for _ in range(200):
        if b - a <= 0.25 * tolerance:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = float(func(m))
        if fm == 0.0:
            return _report(func, (lo, hi), m)
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    x = b - fb * (b - a) / (fb - fa)
    if not a <= x <= b:
        x = 0.5 * (a + b)
    return _report(func, (lo, hi), x)


def _report(func, interval, x) -> RootReport:
    h = 1e-6 * max(1.0, abs(x))
    slope = (float(func(x + h)) - float(func(x - h))) / (2 * h)
    return RootReport(
        interval=(float(interval[0]), float(interval[1])),
        root=float(x),
        residual=float(func(x)),
        multiplicity_hint=1 if abs(slope) > 1e-6 else 2,
    )


def find_roots(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tolerance: float = 1e-12,
    grid_step: float = 1e-2,
) -> list[RootReport]:
    """All sign-change roots of ``func`` in ``[lo, hi]`` found on a uniform grid."""
    n = max(1, int(math.ceil((hi - lo) / grid_step)))
    grid = np.linspace(lo, hi, n + 1)
    values = np.array([float(func(x)) for x in grid])
    roots = []
    for k in range(n):
        if values[k] == 0.0:
            roots.append(_report(func, (grid[k], grid[k]), grid[k]))
        elif values[k] * values[k + 1] < 0.0:
            roots.append(bisect_secant(func, grid[k], grid[k + 1], tolerance))
    if values[-1] == 0.0:
        roots.append(_report(func, (grid[-1], grid[-1]), grid[-1]))
    return roots


def jacobian_roots(lo: float, hi: float, tolerance: float = 1e-12, tau_min: float = TAU_MIN) -> list[RootReport]:
    """Zeros of ``J`` in ``[max(lo, tau_min), hi]``; away from 0 these are the zeros of ``f``."""
    return find_roots(lambda x: float(conjugate_factor(x)), max(lo, tau_min), hi, tolerance)


def first_conjugate_tau(tolerance: float = 1e-10, tau_min: float = TAU_MIN, tau_max: float = 4 * math.pi) -> RootReport:
    """Smallest zero of ``J`` beyond ``tau_min``."""
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    roots = jacobian_roots(tau_min, tau_max, tolerance, tau_min)
    if not roots:
        raise ValueError(f"no conjugate time in [{tau_min}, {tau_max}]")
    return roots[0]
