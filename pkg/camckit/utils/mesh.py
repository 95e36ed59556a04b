"""Module for tessellating parametric surfaces into triangle meshes"""

import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from camckit.datatypes import GridSpec, MeshExport
from camckit.surface import ParametricSurface

__author__ = "camc-kit developers"
__license__ = "MIT"

AREA_TOL = 1e-12


def tessellate(
    surface: ParametricSurface,
    grid: GridSpec,
    provenance: Optional[Dict[str, Any]] = None,
) -> MeshExport:
    """
    Samples the surface at the grid corners and splits every cell into two
    triangles, counter-clockwise with respect to Xs x Xtheta.

    A full theta period is closed up by stitching the last column to the
    first. Triangles of area below AREA_TOL are left out.
    """
    closed = math.isclose(grid.theta_max - grid.theta_min, 2.0 * math.pi, rel_tol=1e-12)
    s = np.linspace(grid.s_min, grid.s_max, grid.n_s)
    if closed:
        theta = grid.theta_min + np.arange(grid.n_theta) * grid.dtheta
    else:
        theta = np.linspace(grid.theta_min, grid.theta_max, grid.n_theta)
    s_mesh, theta_mesh = np.meshgrid(s, theta, indexing="ij")
    points = surface(s_mesh, theta_mesh).reshape(-1, 3)

    columns = grid.n_theta if closed else grid.n_theta - 1

    def index(i: int, j: int) -> int:
        return i * grid.n_theta + j % grid.n_theta

    faces: List[Tuple[int, int, int]] = []
    for i in range(grid.n_s - 1):
        for j in range(columns):
            for face in (
                (index(i, j), index(i + 1, j), index(i + 1, j + 1)),
                (index(i, j), index(i + 1, j + 1), index(i, j + 1)),
            ):
                p, q, r = points[list(face)]
                if 0.5 * np.linalg.norm(np.cross(q - p, r - p)) > AREA_TOL:
                    faces.append(face)

    vertices = [tuple(float(x) for x in point) for point in points]
    return MeshExport(
        vertices=vertices,  # type: ignore[arg-type]
        faces=faces,
        provenance=dict(provenance or {}, grid=grid.as_dict()),
    )
