"""Quaternion arithmetic in (1, I, J, K) component order.

The array functions accept anything broadcastable to shape ``(..., 4)`` and
return numpy arrays, so they work equally on single quaternions and on
stacks of them. :class:`Quaternion` is a thin value wrapper for code that
reads better with operators.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_quat(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape[-1] != 4:
        raise ValueError(f"quaternion needs 4 components, got shape {q.shape}")
    return q


def mul(p, q) -> np.ndarray:
    """Hamilton product ``p * q`` with I*J = K."""
    p = as_quat(p)
    q = as_quat(q)
    p1, p2, p3, p4 = np.moveaxis(p, -1, 0)
    q1, q2, q3, q4 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            p1 * q1 - p2 * q2 - p3 * q3 - p4 * q4,
            p1 * q2 + p2 * q1 + p3 * q4 - p4 * q3,
            p1 * q3 - p2 * q4 + p3 * q1 + p4 * q2,
            p1 * q4 + p2 * q3 - p3 * q2 + p4 * q1,
        ],
        axis=-1,
    )


def conj(q) -> np.ndarray:
    q = as_quat(q)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def im(q) -> np.ndarray:
    q = as_quat(q)
    return q * np.array([0.0, 1.0, 1.0, 1.0])


def norm(q):
    # hypot avoids underflow/overflow of the squared components
    return np.hypot.reduce(as_quat(q), axis=-1)


def from_imaginary(v) -> np.ndarray:
    """Embed a 3-vector (x, y, z) as the quaternion xI + yJ + zK."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 3:
        raise ValueError(f"imaginary part needs 3 components, got shape {v.shape}")
    return np.concatenate([np.zeros(v.shape[:-1] + (1,)), v], axis=-1)


def imaginary_part(q) -> np.ndarray:
    """The (I, J, K) coefficients of ``q`` as a 3-vector."""
    return as_quat(q)[..., 1:]


def to_matrix(q) -> np.ndarray:
    """Real 4x4 matrix of left multiplication by ``q``.

    First column is ``q`` itself; ``to_matrix(p) @ q == mul(p, q)``.
    """
    q1, q2, q3, q4 = as_quat(q)
    return np.array(
        [
            [q1, -q2, -q3, -q4],
            [q2, q1, -q4, q3],
            [q3, q4, q1, -q2],
            [q4, -q3, q2, q1],
        ]
    )


def exp_imaginary(w) -> np.ndarray:
    """Exponential of a purely imaginary quaternion.

    Returns ``cos|w| + sin|w| * w/|w|``, a unit quaternion.
    """
    w = as_quat(w)
    if np.any(np.abs(w[..., 0]) > 0.0):
        raise ValueError("exp_imaginary expects a purely imaginary quaternion")
    theta = norm(w)
    # sin(x)/x via numpy's sinc, which is exact at 0
    scale = np.asarray(np.sinc(theta / np.pi))
    out = w * scale[..., None]
    out[..., 0] = np.cos(theta)
    return out


@dataclass(frozen=True)
class Quaternion:
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0
    q4: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        return cls(*(float(x) for x in as_quat(arr)))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.q1, self.q2, self.q3, self.q4], dtype=dtype)

    def to_array(self) -> np.ndarray:
        return np.array([self.q1, self.q2, self.q3, self.q4])

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion.from_array(mul(self.to_array(), other.to_array()))
        return Quaternion.from_array(self.to_array() * float(other))

    def __rmul__(self, other):
        return Quaternion.from_array(self.to_array() * float(other))

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion.from_array(self.to_array() + other.to_array())

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion.from_array(self.to_array() - other.to_array())

    def __neg__(self) -> "Quaternion":
        return Quaternion.from_array(-self.to_array())

    def conj(self) -> "Quaternion":
        return Quaternion(self.q1, -self.q2, -self.q3, -self.q4)

    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.q2, self.q3, self.q4)

    def norm(self) -> float:
        return float(norm(self.to_array()))

    def to_matrix(self) -> np.ndarray:
        return to_matrix(self.to_array())


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
