"""Fixed-step RK4 for the 14-dimensional Pontryagin system.

State layout (trailing axis of length 14)::

    [a2, a3, a4, b1, b2, b3, b4, h1, h2, h3, h4, h5, h6, h7]

Every function broadcasts over leading axes, so a batch of geodesics is
integrated in one pass.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geodesic import GeodesicParams, adjoint_block, closed_form, omega

BASE = slice(0, 7)
A_PART = slice(0, 3)
B_PART = slice(3, 7)
H_PART = slice(7, 11)
C_PART = slice(11, 14)


def rhs(state) -> np.ndarray:
    """Vector field of the Pontryagin system: b' = h, a' = A(h) b, h' = Omega(h5..7) h."""
    state = np.asarray(state, dtype=float)
    h = state[..., H_PART]
    b = state[..., B_PART]
    out = np.zeros_like(state)
    out[..., A_PART] = np.einsum("...ij,...j->...i", adjoint_block(h), b)
    out[..., B_PART] = h
    out[..., H_PART] = np.einsum("...ij,...j->...i", omega(state[..., C_PART]), h)
    return out


def initial_state(h0, c567) -> np.ndarray:
    h0 = np.asarray(h0, dtype=float)
    c567 = np.asarray(c567, dtype=float)
    shape = np.broadcast_shapes(h0.shape[:-1], c567.shape[:-1])
    state = np.zeros(shape + (14,))
    state[..., H_PART] = h0
    state[..., C_PART] = c567
    return state


@dataclass(frozen=True)
class Trajectory:
    """Recorded samples: ``t`` has shape (n,) or (n, batch...), ``states`` (n, batch..., 14)."""

    t: np.ndarray
    states: np.ndarray

    @property
    def base(self) -> np.ndarray:
        return self.states[..., BASE]

    @property
    def fiber(self) -> np.ndarray:
        return self.states[..., 7:]

    def __len__(self) -> int:
        return len(self.states)


def integrate(h0, c567, T, steps: int, record_every: int = 1) -> Trajectory:
    """Classical RK4 from the origin over ``[0, T]`` in ``steps`` equal steps.

    ``T`` may be an array matching the batch shape of ``h0``/``c567``. Every
    ``record_every``-th state is kept (the final state always is).
    """
    if int(steps) != steps or steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps}")
    if record_every < 1:
        raise ValueError(f"record_every must be >= 1, got {record_every}")
    T = np.asarray(T, dtype=float)
    if np.any(T < 0):
        raise ValueError("T must be non-negative")
    y = initial_state(h0, c567)
    dt = (T / steps)[..., None] * np.ones(y.shape[:-1] + (1,))
    ts, ys = [np.zeros(dt.shape[:-1])], [y.copy()]
    if np.all(T == 0):
        return Trajectory(np.array(ts), np.array(ys))
    for k in range(1, steps + 1):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if k % record_every == 0 or k == steps:
            ts.append(k * dt[..., 0])
            ys.append(y.copy())
    return Trajectory(np.array(ts), np.array(ys))


def closed_form_states(h0, c567, t) -> np.ndarray:
    """Exact states in the integrator layout, for comparison."""
    base, h = closed_form(h0, c567, t)
    c = np.broadcast_to(np.asarray(c567, dtype=float), h.shape[:-1] + (3,))
    return np.concatenate([base, h, c], axis=-1)


def deviations(traj: Trajectory, h0, c567) -> np.ndarray:
    """Max-norm deviation from the closed form over the recorded samples, per batch member."""
    exact = closed_form_states(h0, c567, traj.t)
    return np.max(np.abs(traj.states - exact), axis=(0, -1))


def max_deviation(gp: GeodesicParams, T: float, steps: int, record_every: int = 1) -> float:
    traj = integrate(gp.h0, gp.c567, T, steps, record_every)
    return float(deviations(traj, gp.h0, gp.c567))
