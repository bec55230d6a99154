"""Shared oracle plumbing: discretized sections and the geometry dispatcher.

A geometry is an explicit immersion phi into the unit sphere whose last
ambient coordinate is constantly 1/sqrt(2) (the image lies on the small
"tropic" sphere), together with enough discrete calculus to evaluate the
second-variation machinery on it.  Flat parametrizations (circle, torus)
use Fourier spectral differentiation; the 2-sphere domains use symbolic
derivatives with Gauss-Legendre x trapezoid quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = ["DiscretizedSection", "build_geometry", "pairwise_sum"]

BUNDLES = ("normal", "tangent", "vertical", "mixed")


def pairwise_sum(values: np.ndarray) -> float:
    """Sum in a fixed pairwise-tree order, bit-reproducible across runs."""
    buf = np.ascontiguousarray(values, dtype=np.float64).ravel()
    n = buf.size
    if n == 0:
        return 0.0
    buf = buf.copy()
    while n > 1:
        half = n // 2
        buf[:half] = buf[:half] + buf[half : 2 * half]
        if n % 2:
            buf[half] = buf[n - 1]
            n = half + 1
        else:
            n = half
    return float(buf[0])


@dataclass
class DiscretizedSection:
    """Sampled vector field along phi, tagged by sub-bundle.

    ``values`` has shape (*grid, ambient_dim).  ``f_values`` carries the
    scalar eigenfunction the section was built from (when there is one),
    ``band`` the largest wavenumber present (flat cases; aliasing guard),
    ``exprs`` the symbolic components (sphere cases).
    """

    values: np.ndarray
    bundle: str
    label: str
    eigenvalue: Optional[float] = None
    f_values: Optional[np.ndarray] = None
    band: int = 0
    exprs: Optional[tuple] = None
    x_components: Optional[tuple] = None  # coordinate components of X for tangent dphi(X)

    def __post_init__(self):
        if self.bundle not in BUNDLES:
            raise ValueError(f"bundle must be one of {BUNDLES}")

    def validate(self, geometry) -> None:
        """Tangency to the target sphere plus the bundle inner-product checks."""
        phi = geometry.phi
        tol = 1e-10
        worst = float(np.max(np.abs(np.sum(self.values * phi, axis=-1))))
        if worst > tol:
            raise ValueError(f"section not tangent to the sphere (max |<V,phi>| = {worst:.2e})")
        eta = geometry.eta
        v_eta = np.sum(self.values * eta, axis=-1)
        v_tan = [np.sum(self.values * df, axis=-1) for df in geometry.frame_images()]
        if self.bundle == "normal":
            resid = self.values - v_eta[..., None] * eta
            worst = float(np.max(np.abs(resid)))
        elif self.bundle == "tangent":
            worst = max(
                float(np.max(np.abs(v_eta))),
                max(float(np.max(np.abs(np.sum(self.values * xi, axis=-1)))) for xi in geometry.vertical_frames())
                if geometry.vertical_frames()
                else 0.0,
            )
        elif self.bundle == "vertical":
            worst = max(
                float(np.max(np.abs(v_eta))),
                max(float(np.max(np.abs(t))) for t in v_tan),
            )
        else:
            worst = 0.0
        if worst > tol:
            raise ValueError(f"bundle tag {self.bundle!r} fails inner-product validation ({worst:.2e})")


def build_geometry(case: str, grid=None, n: Optional[int] = None):
    """Construct an explicit geometry by case tag.

    case = "circle" (with target dimension ``n`` >= 1, default 2),
    "torus" (the l = 1 product torus), "sphere" (2-sphere inclusion,
    ``n`` >= 2, default 3), or "veronese-surface".
    """
    from .flat import FlatGeometry
    from .sphere import SphereGeometry

    if case == "circle":
        return FlatGeometry("circle", grid=grid or 128, n=2 if n is None else n)
    if case == "torus":
        if n is not None and n != 3:
            raise ValueError("the torus case has fixed target dimension n = 3")
        return FlatGeometry("torus", grid=grid or 64)
    if case == "sphere":
        return SphereGeometry("sphere", grid=grid, n=3 if n is None else n)
    if case == "veronese-surface":
        if n is not None:
            raise ValueError("the Veronese surface has fixed target dimension")
        return SphereGeometry("veronese-surface", grid=grid)
    raise ValueError(f"unsupported case {case!r}; choose circle, torus, sphere, veronese-surface")
