"""Sphere-domain geometries: the 2-sphere inclusion and the Veronese surface.

Derivatives are taken symbolically on closed-form parametrizations, so the
only numerical error is quadrature, and the Gauss-Legendre (latitude,
in the variable u = cos theta) x trapezoid (longitude) product rule is
exact on the trigonometric-polynomial integrands these sections produce.
The full fourth-order operator is not evaluated here; only the
integrated-by-parts second-order forms are (the flat cases cover the
operator itself).

Projections are applied numerically: with P the pointwise orthogonal
projection onto the tangent space at phi,

    P(d(P(dV))) = P(d2V) - <dV, phi> dphi

because P kills the phi term and fixes the tangent dphi directions, so the
covariant Laplacian only needs plain first and second derivatives of a
section, which keeps the symbolic expressions small.
"""

from __future__ import annotations

import numpy as np
import sympy as sp

from .geometry import DiscretizedSection, pairwise_sum

__all__ = ["SphereGeometry"]


class SphereGeometry:
    """2-sphere domain immersed in the tropic sphere.

    sphere: psi = (x, y, z)/sqrt2 padded with zeros, target S^n(1/sqrt2), c = 1/2;
    veronese-surface: the five quadratic harmonics scaled to radius 1/sqrt2, c = 3/2.
    Domain metric is c times the round unit metric.
    """

    def __init__(self, kind: str, grid=None, n: int = 3):
        if kind not in ("sphere", "veronese-surface"):
            raise ValueError("kind must be 'sphere' or 'veronese-surface'")
        if grid is None:
            grid = (32, 64)
        if isinstance(grid, int):
            grid = (grid, 2 * grid)
        n_th, n_lon = grid
        if n_th < 16 or n_lon < 32:
            raise ValueError("sphere quadrature needs at least 16 latitude and 32 longitude nodes")
        self.kind = kind
        self.n_th, self.n_lon = int(n_th), int(n_lon)
        self.grid_shape = (self.n_th, self.n_lon)
        self.m = 2

        th, lon = sp.symbols("th lon", real=True)
        self._th, self._lon = th, lon
        x = sp.sin(th) * sp.cos(lon)
        y = sp.sin(th) * sp.sin(lon)
        z = sp.cos(th)
        s2 = sp.sqrt(2)
        if kind == "sphere":
            if n < 2:
                raise ValueError("the 2-sphere inclusion needs target dimension n >= 2")
            self.n = n
            self.c = sp.Rational(1, 2)
            psi = [x / s2, y / s2, z / s2] + [sp.Integer(0)] * (n - 2)
        else:
            self.n = 4
            self.c = sp.Rational(3, 2)
            r = sp.sqrt(sp.Rational(3, 2))
            psi = [
                r * x * y,
                r * x * z,
                r * y * z,
                r * (x**2 - y**2) / 2,
                r * (x**2 + y**2 - 2 * z**2) / (2 * sp.sqrt(3)),
            ]
        self.adim = self.n + 2
        self.phi_sym = sp.Matrix(psi + [1 / s2])
        self.eta_sym = sp.Matrix(psi + [-1 / s2])
        self.psi_sym = sp.Matrix(psi + [sp.Integer(0)])

        # Gauss-Legendre nodes in u = cos(theta); all interior, no poles
        u, w = np.polynomial.legendre.leggauss(self.n_th)
        self.u_nodes, self.w_nodes = u, w
        self.th_nodes = np.arccos(u)
        self.lon_nodes = 2.0 * np.pi * np.arange(self.n_lon) / self.n_lon
        self.TH, self.LON = np.meshgrid(self.th_nodes, self.lon_nodes, indexing="ij")
        self.sin_th = np.sin(self.TH)
        self.cot_th = np.cos(self.TH) / self.sin_th

        self.phi = self._eval_vector(self.phi_sym)
        self.eta = self._eval_vector(self.eta_sym)
        radius = np.abs(np.sqrt(np.sum((self.phi - self._tropic()) ** 2, -1)) - 1.0 / np.sqrt(2.0))
        unit = np.abs(np.sum(self.phi * self.phi, -1) - 1.0)
        if max(radius.max(), unit.max()) > 1e-12:
            raise AssertionError("immersion radius invariants violated")

        self.dphi_th = self._eval_vector(self.phi_sym.diff(th))
        self.dphi_lon = self._eval_vector(self.phi_sym.diff(lon))
        sc = float(sp.sqrt(self.c))
        self._frames = [self.dphi_th / sc, self.dphi_lon / (sc * self.sin_th[..., None])]
        self._vertical = []
        if kind == "sphere":
            for j in range(3, self.n + 1):
                e = np.zeros(self.grid_shape + (self.adim,))
                e[..., j] = 1.0
                self._vertical.append(e)

    def _tropic(self) -> np.ndarray:
        out = np.zeros(self.grid_shape + (self.adim,))
        out[..., -1] = 1.0 / np.sqrt(2.0)
        return out

    # --- evaluation and quadrature -------------------------------------------

    def _eval_scalar(self, expr) -> np.ndarray:
        fn = sp.lambdify((self._th, self._lon), expr, "numpy")
        out = np.asarray(fn(self.TH, self.LON), dtype=float)
        return np.broadcast_to(out, self.grid_shape).copy()

    def _eval_vector(self, mat: sp.Matrix) -> np.ndarray:
        comps = [self._eval_scalar(mat[i]) for i in range(mat.rows)]
        return np.stack(comps, axis=-1)

    def integrate(self, scalar_field: np.ndarray) -> float:
        """Integral against the volume element of g = c * round metric."""
        rows = np.array([pairwise_sum(scalar_field[i]) for i in range(self.n_th)])
        total = pairwise_sum(self.w_nodes * rows)
        return float(self.c) * (2.0 * np.pi / self.n_lon) * total

    def dot(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return np.sum(A * B, axis=-1)

    def project(self, W: np.ndarray) -> np.ndarray:
        return W - self.dot(W, self.phi)[..., None] * self.phi

    def frame_images(self) -> list[np.ndarray]:
        return self._frames

    def vertical_frames(self) -> list[np.ndarray]:
        return self._vertical

    # --- covariant calculus on evaluated derivatives ---------------------------

    def _derivative_stack(self, V: sp.Matrix) -> dict:
        th, lon = self._th, self._lon
        return {
            "th": self._eval_vector(V.diff(th)),
            "thth": self._eval_vector(V.diff(th, 2)),
            "lon": self._eval_vector(V.diff(lon)),
            "lonlon": self._eval_vector(V.diff(lon, 2)),
        }

    def laplacian_from_sym(self, V: sp.Matrix) -> np.ndarray:
        """Rough Laplacian along phi (positive spectrum) via evaluated derivatives."""
        d = self._derivative_stack(V)
        sin2 = (self.sin_th**2)[..., None]
        A = self.project(d["thth"]) - self.dot(d["th"], self.phi)[..., None] * self.dphi_th
        B = self.project(d["lonlon"]) - self.dot(d["lon"], self.phi)[..., None] * self.dphi_lon
        C = self.cot_th[..., None] * self.project(d["th"])
        return -(A + B / sin2 + C) / float(self.c)

    def tension(self) -> np.ndarray:
        th, lon = self._th, self._lon
        phth = self.project(self._eval_vector(self.phi_sym.diff(th, 2)))
        phlon = self.project(self._eval_vector(self.phi_sym.diff(lon, 2)))
        out = phth + phlon / (self.sin_th**2)[..., None] + self.cot_th[..., None] * self.dphi_th
        return out / float(self.c)

    def tension_sym(self) -> sp.Matrix:
        th, lon = self._th, self._lon
        ph = self.phi_sym

        def proj(W):
            return W - W.dot(ph) * ph

        out = proj(ph.diff(th, 2))
        out += proj(ph.diff(lon, 2)) / sp.sin(th) ** 2
        out += sp.cos(th) / sp.sin(th) * proj(ph.diff(th))
        return out / self.c

    def energy_density_psi(self) -> np.ndarray:
        th, lon = self._th, self._lon
        dth = self._eval_vector(self.psi_sym.diff(th))
        dlon = self._eval_vector(self.psi_sym.diff(lon))
        dens = self.dot(dth, dth) + self.dot(dlon, dlon) / self.sin_th**2
        return dens / (2.0 * float(self.c))

    def bitension(self) -> np.ndarray:
        tau_s = self.tension_sym()
        tau = self._eval_vector(tau_s)
        lap_tau = self.laplacian_from_sym(tau_s)
        curv = np.zeros_like(tau)
        norm2 = np.zeros(self.grid_shape)
        for fr in self._frames:
            curv += self.dot(tau, fr)[..., None] * fr
            norm2 += self.dot(fr, fr)
        return -lap_tau - (curv - norm2[..., None] * tau)

    # --- sections -------------------------------------------------------------

    def eigenfunction(self, k: int, tesseral: bool = False):
        """Domain eigenfunction and its eigenvalue k(k+1)/c.

        Zonal Legendre polynomial P_k(cos theta) by default; the tesseral
        degree-1 harmonic sin(theta) cos(lon) when requested (k must be 1).
        """
        if k < 0:
            raise ValueError("k must be nonnegative")
        if tesseral:
            if k != 1:
                raise ValueError("the tesseral sample is only wired for k = 1")
            f = sp.sin(self._th) * sp.cos(self._lon)
        else:
            f = sp.legendre(k, sp.cos(self._th))
        lam = sp.Rational(k * (k + 1), 1) / self.c
        return f, lam

    def _finish(self, V: sp.Matrix, bundle: str, f, lam, label: str) -> DiscretizedSection:
        sec = DiscretizedSection(
            values=self._eval_vector(V),
            bundle=bundle,
            label=label,
            eigenvalue=float(lam),
            f_values=self._eval_scalar(f),
            exprs=tuple(V),
        )
        sec.validate(self)
        return sec

    def section_normal(self, k: int, tesseral: bool = False) -> DiscretizedSection:
        f, lam = self.eigenfunction(k, tesseral)
        V = (f * self.eta_sym).applyfunc(sp.expand)
        return self._finish(V, "normal", f, lam, f"f*eta (lam={float(lam):g})")

    def section_gradient(self, k: int, tesseral: bool = False) -> DiscretizedSection:
        f, lam = self.eigenfunction(k, tesseral)
        th, lon = self._th, self._lon
        V = (f.diff(th) * self.phi_sym.diff(th) + f.diff(lon) * self.phi_sym.diff(lon) / sp.sin(th) ** 2) / self.c
        V = V.applyfunc(lambda e: sp.expand(sp.trigsimp(e)))
        return self._finish(V, "tangent", f, lam, f"dphi(grad f) (lam={float(lam):g})")

    def section_vertical(self, k: int, index: int = 0, tesseral: bool = False) -> DiscretizedSection:
        if not self._vertical:
            raise ValueError("no explicit vertical frame for this geometry")
        f, lam = self.eigenfunction(k, tesseral)
        e = sp.zeros(self.adim, 1)
        e[3 + index] = 1
        return self._finish(f * e, "vertical", f, lam, f"f*e (lam={float(lam):g})")

    # --- quadratic forms --------------------------------------------------------

    def quadform_parts(self, V: DiscretizedSection) -> float:
        """Integrated-by-parts value of (I(V),V) from the symbolic section."""
        if V.exprs is None:
            raise ValueError("sphere-domain sections need symbolic components")
        sym = sp.Matrix(V.exprs)
        lap = self.laplacian_from_sym(sym)
        vals = V.values
        m = self.m
        if V.bundle == "normal":
            w = lap - m * vals
            integrand = self.dot(w, w) - 4 * m * m * self.dot(vals, vals)
        elif V.bundle == "tangent":
            w = lap + (1 - m) * vals
            integrand = self.dot(w, w) - m * m * self.dot(vals, vals)
        elif V.bundle == "vertical":
            integrand = self.dot(lap, lap) - 2 * m * self.dot(lap, vals)
        else:
            raise ValueError("integrated-by-parts forms are bundle-specific; got 'mixed'")
        return self.integrate(integrand)
