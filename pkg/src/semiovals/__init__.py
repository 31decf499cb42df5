"""Semiovals and 2-blocking sets inside the Hermitian curve of PG(2,q^2)."""

__version__ = "0.1.0"

from .gf import Field, build_field, field_for_q
from .plane import Plane, PointSet, ProjLine, ProjPoint

__all__ = [
    "Field",
    "build_field",
    "field_for_q",
    "Plane",
    "PointSet",
    "ProjPoint",
    "ProjLine",
    "__version__",
]
