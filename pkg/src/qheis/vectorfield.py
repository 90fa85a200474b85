"""Exact polynomial vector fields on R^7.

Coordinates are ordered ``(a2, a3, a4, b1, b2, b3, b4)`` everywhere: in
monomial exponent tuples, in coefficient tuples and in evaluated vectors.
Coefficients are :class:`fractions.Fraction`, so "identically zero" is an
exact test rather than a tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

import numpy as np

COORDS = ("a2", "a3", "a4", "b1", "b2", "b3", "b4")
NVARS = len(COORDS)
_INDEX = {name: i for i, name in enumerate(COORDS)}

Monomial = tuple[int, ...]


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, float) and c.is_integer():
        return Fraction(int(c))
    raise TypeError(f"exact coefficient required, got {c!r}")


class Poly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != NVARS:
                raise ValueError(f"monomial {mono} must have {NVARS} exponents")
            c = _to_fraction(c)
            if c:
                clean[tuple(mono)] = clean.get(tuple(mono), Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0,) * NVARS: c})

    @classmethod
    def var(cls, name: str | int) -> "Poly":
        i = _INDEX[name] if isinstance(name, str) else name
        mono = [0] * NVARS
        mono[i] = 1
        return cls({tuple(mono): 1})

    @staticmethod
    def lift(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def __add__(self, other) -> "Poly":
        other = Poly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.lift(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _to_fraction(other)
            return Poly({m: c * v for m, v in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def diff(self, var: str | int) -> "Poly":
        i = _INDEX[var] if isinstance(var, str) else var
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                dm = list(m)
                dm[i] -= 1
                out[tuple(dm)] = c * m[i]
        return Poly(out)

    def __call__(self, point) -> float:
        x = np.asarray(point, dtype=float)
        total = 0.0
        for m, c in self.terms.items():
            term = float(c)
            for xi, e in zip(x, m):
                if e:
                    term *= xi**e
            total += term
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), m), reverse=False):
            c = self.terms[m]
            factors = []
            for name, e in zip(COORDS, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True, eq=False)
class PolyVectorField:
    """Vector field ``sum_k coeffs[k] * d/dx_k`` with polynomial coefficients."""

    coeffs: tuple[Poly, ...] = field(default_factory=lambda: tuple(Poly() for _ in COORDS))

    def __post_init__(self):
        if len(self.coeffs) != NVARS:
            raise ValueError(f"need {NVARS} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Poly.lift(c) for c in self.coeffs))

    @classmethod
    def from_components(cls, **components) -> "PolyVectorField":
        """Build a field from keyword coefficients, e.g. ``from_components(b1=1, a2=b2)``."""
        unknown = set(components) - set(COORDS)
        if unknown:
            raise KeyError(f"unknown coordinates {sorted(unknown)}")
        return cls(tuple(Poly.lift(components.get(name, 0)) for name in COORDS))

    @classmethod
    def partial(cls, name: str) -> "PolyVectorField":
        return cls.from_components(**{name: 1})

    def __getitem__(self, name: str) -> Poly:
        return self.coeffs[_INDEX[name]]

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(tuple(p + q for p, q in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(tuple(-p for p in self.coeffs))

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return self + (-other)

    def __mul__(self, scalar) -> "PolyVectorField":
        return PolyVectorField(tuple(p * scalar for p in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return all(p == q for p, q in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.coeffs)

    def apply(self, f: Poly) -> Poly:
        """Directional derivative of the polynomial ``f`` along this field."""
        out = Poly()
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                out = out + c * f.diff(k)
        return out

    def degree(self) -> int:
        return max(p.degree() for p in self.coeffs)

    def __repr__(self) -> str:
        parts = [f"({c})*d{name}" for name, c in zip(COORDS, self.coeffs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def evaluate(vf: PolyVectorField, point) -> np.ndarray:
    """Value of ``vf`` at ``point`` (a-first order), as a float 7-vector."""
    return np.array([c(point) for c in vf.coeffs])


def bracket(v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
    """Lie bracket ``[v, w] = v(w) - w(v)``, computed exactly."""
    return PolyVectorField(tuple(v.apply(wk) - w.apply(vk) for vk, wk in zip(v.coeffs, w.coeffs)))


_a2, _a3, _a4, _b1, _b2, _b3, _b4 = (Poly.var(n) for n in COORDS)


def frame_fields() -> tuple[PolyVectorField, ...]:
    """Left-invariant frame e1..e7; e1..e4 span the horizontal distribution."""
    vf = PolyVectorField.from_components
    return (
        vf(b1=1, a2=_b2, a3=_b3, a4=_b4),
        vf(b2=1, a2=-_b1, a3=_b4, a4=-_b3),
        vf(b3=1, a2=-_b4, a3=-_b1, a4=_b2),
        vf(b4=1, a2=_b3, a3=-_b2, a4=-_b1),
        vf(a2=1),
        vf(a3=1),
        vf(a4=1),
    )


def frame_decompose(vf: PolyVectorField) -> tuple[Poly, ...]:
    """Coefficients ``c1..c7`` with ``vf = sum_i c_i e_i`` as polynomials."""
    frame = frame_fields()
    horizontal = [vf[name] for name in ("b1", "b2", "b3", "b4")]
    vertical = []
    for name in ("a2", "a3", "a4"):
        c = vf[name]
        for ci, ei in zip(horizontal, frame[:4]):
            c = c - ci * ei[name]
        vertical.append(c)
    return tuple(horizontal + vertical)


def recompose(coeffs: Iterable[Poly]) -> PolyVectorField:
    out = PolyVectorField()
    for c, e in zip(coeffs, frame_fields()):
        out = out + PolyVectorField(tuple(c * ek for ek in e.coeffs))
    return out


@dataclass(frozen=True)
class SymmetryReport:
    distribution_preserved: bool
    metric_preserved: bool
    # vertical_residuals[i][k]: e_{5+k} coefficient of [vf, e_{i+1}]
    vertical_residuals: tuple[tuple[Poly, ...], ...]
    # metric_residuals[i][j] = M_ij + M_ji, M_ij the e_j coefficient of [vf, e_i]
    metric_residuals: tuple[tuple[Poly, ...], ...]

    @property
    def nonzero_residuals(self) -> int:
        polys = [p for row in self.vertical_residuals for p in row]
        polys += [p for row in self.metric_residuals for p in row]
        return sum(not p.is_zero() for p in polys)


def is_infinitesimal_symmetry(vf: PolyVectorField) -> SymmetryReport:
    """Check that the flow of ``vf`` preserves the distribution and the metric.

    The distribution is preserved iff each ``[vf, e_i]`` (i <= 4) has no
    vertical component. Since e1..e4 are orthonormal, the Lie derivative of
    the metric on the frame is ``-(M + M^T)``, so the metric is preserved iff
    that matrix vanishes identically.
    """
    frame = frame_fields()
    decomposed = [frame_decompose(bracket(vf, e)) for e in frame[:4]]
    vertical = tuple(tuple(c[4:]) for c in decomposed)
    M = [c[:4] for c in decomposed]
    metric = tuple(tuple(M[i][j] + M[j][i] for j in range(4)) for i in range(4))
    dist_ok = all(p.is_zero() for row in vertical for p in row)
    metric_ok = dist_ok and all(p.is_zero() for row in metric for p in row)
    return SymmetryReport(dist_ok, metric_ok, vertical, metric)
