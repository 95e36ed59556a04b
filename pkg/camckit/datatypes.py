"""Module containing datatypes used in other modules"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

import numpy as np

from camckit.errors import DomainError, GridTooSmall

__author__ = "camc-kit developers"
__license__ = "MIT"


class FamilyKind(Enum):
    """The three non-rotational anisotropic minimal families"""

    TYPE_I = "type1"
    TYPE_II = "type2"
    TYPE_III = "type3"


class JetMode(Enum):
    """How a parametric surface produces its derivatives"""

    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "fd"


class OdeMode(Enum):
    """Which third equation closes the cyclic ODE system"""

    ANISOTROPIC = "anisotropic"
    ISOTROPIC = "isotropic"


@dataclass(frozen=True)
class Interval:
    """
    A real interval, each end open or closed. Infinite ends are always open.
    """

    lower: float
    upper: float
    lower_open: bool = True
    upper_open: bool = True

    def contains(self, value: Any) -> Any:
        """Elementwise membership test, works on scalars and arrays."""
        value = np.asarray(value, dtype=float)
        above = value > self.lower if self.lower_open else value >= self.lower
        below = value < self.upper if self.upper_open else value <= self.upper
        result = np.logical_and(above, below)
        return bool(result) if result.ndim == 0 else result

    def shrink(self, margin: float) -> "Interval":
        """Returns the interval inset by margin at its finite ends."""
        lower = self.lower + margin if math.isfinite(self.lower) else self.lower
        upper = self.upper - margin if math.isfinite(self.upper) else self.upper
        if lower >= upper:
            raise DomainError(f"Margin {margin} leaves nothing of {self}")
        return Interval(lower, upper, self.lower_open, self.upper_open)

    def __str__(self) -> str:
        left = "(" if self.lower_open else "["
        right = ")" if self.upper_open else "]"
        return f"{left}{self.lower}, {self.upper}{right}"


@dataclass(frozen=True)
class GridSpec:  # pylint: disable=too-many-instance-attributes
    """
    A rectangular sampling grid in the (s, theta) parameter plane.

    Analysis uses midpoint nodes (cell centres), mesh export uses the
    cell corners with theta wrapped around.
    """

    s_min: float
    s_max: float
    n_s: int
    n_theta: int
    margin: float = 0.0
    theta_min: float = 0.0
    theta_max: float = 2.0 * math.pi

    def __post_init__(self) -> None:
        if not self.s_min < self.s_max:
            raise DomainError(f"Grid needs s_min < s_max, got {self.s_min}, {self.s_max}")
        if not self.theta_min < self.theta_max:
            raise DomainError("Grid needs theta_min < theta_max")
        if self.n_s < 2:
            raise GridTooSmall(f"Grid needs n_s >= 2, got {self.n_s}")
        if self.n_theta < 8:
            raise GridTooSmall(f"Grid needs n_theta >= 8, got {self.n_theta}")
        if self.margin < 0:
            raise DomainError(f"Grid margin must be non-negative, got {self.margin}")

    @property
    def ds(self) -> float:
        """Cell width along s"""
        return (self.s_max - self.s_min) / self.n_s

    @property
    def dtheta(self) -> float:
        """Cell width along theta"""
        return (self.theta_max - self.theta_min) / self.n_theta

    def s_nodes(self) -> np.ndarray:
        """Midpoint nodes along s"""
        return self.s_min + (np.arange(self.n_s) + 0.5) * self.ds

    def theta_nodes(self) -> np.ndarray:
        """Midpoint nodes along theta"""
        return self.theta_min + (np.arange(self.n_theta) + 0.5) * self.dtheta

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Midpoint nodes as an (n_s, n_theta) pair of arrays"""
        return np.meshgrid(self.s_nodes(), self.theta_nodes(), indexing="ij")

    def check_within(self, interval: Interval) -> None:
        """Raises DomainError unless [s_min, s_max] fits inside interval
        shrunk by the grid margin."""
        inner = interval.shrink(self.margin) if self.margin > 0 else interval
        if not (inner.contains(self.s_min) and inner.contains(self.s_max)):
            raise DomainError(
                f"Grid s-range [{self.s_min}, {self.s_max}] is not inside {inner}"
            )

    @classmethod
    def inside(
        cls, interval: Interval, n_s: int, n_theta: int, margin: float = 1e-3
    ) -> "GridSpec":
        """Creates a grid filling a bounded interval minus the margin"""
        if not (math.isfinite(interval.lower) and math.isfinite(interval.upper)):
            raise DomainError(f"Cannot fill the unbounded interval {interval}")
        return cls(interval.lower + margin, interval.upper - margin, n_s, n_theta, margin=0.0)

    def as_dict(self) -> Dict[str, Any]:
        """JSON-compatible description"""
        return {
            "s_min": self.s_min,
            "s_max": self.s_max,
            "n_s": self.n_s,
            "n_theta": self.n_theta,
            "margin": self.margin,
            "theta_min": self.theta_min,
            "theta_max": self.theta_max,
        }


@dataclass
class MeshExport:
    """
    A triangle mesh, faces counter-clockwise with respect to Xs x Xtheta
    """

    vertices: List[Tuple[float, float, float]]
    faces: List[Tuple[int, int, int]]
    provenance: Dict[str, Any] = field(default_factory=dict)

    def check(self, area_tol: float = 1e-12) -> None:
        """Asserts the index range and the absence of degenerate faces."""
        count = len(self.vertices)
        points = np.asarray(self.vertices, dtype=float)
        for face in self.faces:
            assert all(0 <= index < count for index in face), f"Bad face {face}"
            p, q, r = points[list(face)]
            area = 0.5 * float(np.linalg.norm(np.cross(q - p, r - p)))
            assert area > area_tol, f"Degenerate face {face}"
