"""The quaternionic Heisenberg group H ~ R^7.

Elements are pairs ``(b, a)``: ``b`` a quaternion (horizontal block) and ``a``
the imaginary quaternion ``a2 I + a3 J + a4 K`` (vertical block). Serialized
vectors use the order ``(a2, a3, a4, b1, b2, b3, b4)``.

The group law has an independent realization as unipotent 12x12 real
matrices (3x3 quaternionic blocks, each block the left-multiplication
matrix of its entry); :func:`matrix_exp` and :func:`matrix_log` are the exact
polynomials for a nilpotent of order three.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import quaternion as quat
from .vectorfield import PolyVectorField, bracket, frame_decompose, frame_fields

UNIPOTENT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GroupElement:
    b: np.ndarray = field(default_factory=lambda: np.zeros(4))
    a: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        b = np.array(self.b, dtype=float).reshape(4)
        a = np.array(self.a, dtype=float).reshape(3)
        b.flags.writeable = False
        a.flags.writeable = False
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @classmethod
    def from_array(cls, x) -> "GroupElement":
        """Inverse of :meth:`to_array` (a-first order)."""
        x = np.asarray(x, dtype=float)
        if x.shape != (7,):
            raise ValueError(f"expected 7 coordinates, got shape {x.shape}")
        return cls(b=x[3:], a=x[:3])

    def to_array(self) -> np.ndarray:
        return np.concatenate([self.a, self.b])

    def allclose(self, other: "GroupElement", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.to_array(), other.to_array(), rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"GroupElement(b={self.b.tolist()}, a={self.a.tolist()})"


def identity() -> GroupElement:
    return GroupElement()


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """``(b, a) * (d, c) = (b + d, a + c - Im(conj(b) d))``."""
    cross = quat.imaginary_part(quat.mul(quat.conj(g.b), h.b))
    return GroupElement(b=g.b + h.b, a=g.a + h.a - cross)


def inverse(g: GroupElement) -> GroupElement:
    # conj(b) b is real, so the correction term vanishes
    return GroupElement(b=-g.b, a=-g.a)


def _block(M: np.ndarray, i: int, j: int) -> np.ndarray:
    return M[4 * i : 4 * i + 4, 4 * j : 4 * j + 4]


def algebra_matrix(g: GroupElement) -> np.ndarray:
    """12x12 real form of the strictly lower-triangular quaternionic matrix

    ``[[0, 0, 0], [b, 0, 0], [Im(a), -conj(b), 0]]``.
    """
    X = np.zeros((12, 12))
    _block(X, 1, 0)[:] = quat.to_matrix(g.b)
    _block(X, 2, 0)[:] = quat.to_matrix(quat.from_imaginary(g.a))
    _block(X, 2, 1)[:] = quat.to_matrix(-quat.conj(g.b))
    return X


def matrix_exp(g: GroupElement) -> np.ndarray:
    X = algebra_matrix(g)
    return np.eye(12) + X + X @ X / 2.0


def matrix_log(M: np.ndarray) -> GroupElement:
    """Exact logarithm of a unipotent matrix produced by :func:`matrix_exp`.

    Raises ``ValueError`` when ``M - I`` is not nilpotent of order three or
    when the logarithm is not of the Heisenberg block form.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (12, 12):
        raise ValueError(f"expected a 12x12 matrix, got {M.shape}")
    N = M - np.eye(12)
    if np.max(np.abs(N @ N @ N)) > UNIPOTENT_TOL:
        raise ValueError("matrix is not unipotent: (M - I)^3 != 0")
    L = N - N @ N / 2.0
    b = _block(L, 1, 0)[:, 0].copy()
    a_quat = _block(L, 2, 0)[:, 0]
    g = GroupElement(b=b, a=a_quat[1:])
    scale = 1.0 + np.max(np.abs(L))
    if abs(a_quat[0]) > UNIPOTENT_TOL * scale or np.max(np.abs(L - algebra_matrix(g))) > UNIPOTENT_TOL * scale:
        raise ValueError("logarithm is not a Heisenberg algebra element")
    return g


def multiply_via_matrices(g: GroupElement, h: GroupElement) -> GroupElement:
    return matrix_log(matrix_exp(g) @ matrix_exp(h))


_BASIS = np.eye(4)


def frame(p: GroupElement) -> np.ndarray:
    """Values of e1..e7 at ``p`` as rows of a 7x7 array (a-first columns).

    ``e_i`` for i <= 4 is the derivative of ``p * (t eps_i, 0)`` at t = 0;
    e5..e7 are the vertical coordinate fields.
    """
    out = np.zeros((7, 7))
    vertical = -quat.imaginary_part(quat.mul(quat.conj(p.b), _BASIS))
    out[:4, :3] = vertical
    out[:4, 3:] = _BASIS
    out[4:, :3] = np.eye(3)
    return out


def metric_gram(p: GroupElement) -> np.ndarray:
    """Gram matrix of e1..e4 at ``p`` under db1^2 + ... + db4^2."""
    hor = frame(p)[:4, 3:]
    return hor @ hor.T


# [e_i, e_j] for i < j (1-based), as {k: coefficient of e_k}
EXPECTED_BRACKETS: dict[tuple[int, int], dict[int, Fraction]] = {
    (1, 2): {5: Fraction(-2)},
    (1, 3): {6: Fraction(-2)},
    (1, 4): {7: Fraction(-2)},
    (2, 3): {7: Fraction(2)},
    (2, 4): {6: Fraction(-2)},
    (3, 4): {5: Fraction(2)},
}


@dataclass(frozen=True)
class BracketRelation:
    i: int
    j: int
    computed: dict[int, Fraction]
    expected: dict[int, Fraction]

    @property
    def matches(self) -> bool:
        return self.computed == self.expected


def _constant_combination(vf: PolyVectorField) -> dict[int, Fraction]:
    out = {}
    for k, c in enumerate(frame_decompose(vf), start=1):
        if c.is_zero():
            continue
        if c.degree() > 0:
            raise ValueError(f"bracket has non-constant frame coefficient {c}")
        (value,) = c.terms.values()
        out[k] = value
    return out


def bracket_table() -> list[BracketRelation]:
    """All 21 brackets [e_i, e_j], i < j, computed exactly from the frame."""
    fields = frame_fields()
    table = []
    for i in range(1, 8):
        for j in range(i + 1, 8):
            computed = _constant_combination(bracket(fields[i - 1], fields[j - 1]))
            table.append(BracketRelation(i, j, computed, EXPECTED_BRACKETS.get((i, j), {})))
    return table
