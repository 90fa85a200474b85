"""Sub-Riemannian geometry of the 7-dimensional quaternionic Heisenberg group.

Modules: ``quaternion`` (algebra), ``group`` (group law, frame),
``vectorfield`` (exact polynomial fields), ``symmetry`` (generators and
rotation actions), ``geodesic`` (closed-form geodesics), ``cutlocus``
(Maxwell, conjugate and cut times), ``integrator`` (RK4 oracle), ``cli``.
"""
from .geodesic import GeodesicParams, params_from_covector, params_from_paper_constants, point, vertical
from .group import GroupElement, inverse, multiply

__all__ = [
    "GeodesicParams",
    "GroupElement",
    "inverse",
    "multiply",
    "params_from_covector",
    "params_from_paper_constants",
    "point",
    "vertical",
]
__version__ = "0.1.0"
