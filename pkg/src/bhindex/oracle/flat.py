"""Flat-parametrized geometries: the circle inclusion and the l = 1 product torus.

Both domains are flat tori in the parameter coordinates, so Fourier
spectral differentiation is exact on band-limited data and the full
fourth-order second-variation operator can be evaluated term by term.
Covariant derivatives along phi are ambient derivatives followed by
orthogonal projection onto the sphere tangent space; the target curvature
never appears explicitly because the operator's trace terms already carry
the constant-curvature closed form.
"""

from __future__ import annotations

import numpy as np

from .geometry import DiscretizedSection, pairwise_sum

__all__ = ["FlatGeometry"]


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


class FlatGeometry:
    """Circle inclusion (m = 1, target S^(n+1)) or Clifford torus (l = 1, target S^4).

    circle: phi(t) = (cos t/sqrt2, sin t/sqrt2, 0.., 1/sqrt2), metric scale c = 1/2;
    torus:  phi(u,v) = (cos u/2, sin u/2, cos v/2, sin v/2, 1/sqrt2), c = 1/4.
    """

    def __init__(self, kind: str, grid: int = 64, n: int = 2):
        if kind not in ("circle", "torus"):
            raise ValueError("kind must be 'circle' or 'torus'")
        if not (_is_pow2(grid) and grid >= 16):
            raise ValueError("grid must be a power of two >= 16")
        self.kind = kind
        self.N = grid
        if kind == "circle":
            if n < 1:
                raise ValueError("circle inclusion needs n >= 1")
            self.m = 1
            self.n = n
            self.c = 0.5
        else:
            self.m = 2
            self.n = 3
            self.c = 0.25
        self.adim = self.n + 2
        # aliasing guard for spectral products inside the 4th-order operator
        self.max_band = grid // 8 - 2
        # derivative low-pass: legitimate content never exceeds max_band + 8,
        # and zeroing the empty modes stops k^4 amplification of FFT roundoff
        self.filter_band = grid // 8 + 8
        t = 2.0 * np.pi * np.arange(grid) / grid
        if kind == "circle":
            self.axes = (0,)
            self.grid_shape = (grid,)
            s = 1.0 / np.sqrt(2.0)
            phi = np.zeros((grid, self.adim))
            phi[:, 0] = np.cos(t) * s
            phi[:, 1] = np.sin(t) * s
            phi[:, -1] = s
            eta = phi.copy()
            eta[:, -1] = -s
            self.phi, self.eta = phi, eta
            # constant frame of the vertical bundle: ambient coordinates 2..n
            self._vertical = []
            for j in range(2, self.n + 1):
                e = np.zeros((grid, self.adim))
                e[:, j] = 1.0
                self._vertical.append(e)
        else:
            self.axes = (0, 1)
            self.grid_shape = (grid, grid)
            u, v = np.meshgrid(t, t, indexing="ij")
            phi = np.zeros((grid, grid, 5))
            phi[..., 0] = np.cos(u) / 2
            phi[..., 1] = np.sin(u) / 2
            phi[..., 2] = np.cos(v) / 2
            phi[..., 3] = np.sin(v) / 2
            phi[..., 4] = 1.0 / np.sqrt(2.0)
            eta = phi.copy()
            eta[..., 4] = -1.0 / np.sqrt(2.0)
            self.phi, self.eta = phi, eta
            xi = np.zeros_like(phi)
            xi[..., 0] = np.cos(u) / 2
            xi[..., 1] = np.sin(u) / 2
            xi[..., 2] = -np.cos(v) / 2
            xi[..., 3] = -np.sin(v) / 2
            self._vertical = [np.sqrt(2.0) * xi]
            # shape operator of the unit normal xi, A(X) = -(nabla_X xi)^T
            self.shape_operator = np.diag([-np.sqrt(2.0), np.sqrt(2.0)])
            self.u, self.v = u, v
        self.t = t
        # psi is phi with the constant tropic coordinate dropped (kept as a
        # full-width array so both bundles share one ambient dot product)
        psi = self.phi.copy()
        psi[..., -1] = 0.0
        self.psi = psi
        self._dphi = [self.deriv(self.phi, a) for a in self.axes]
        radius = np.abs(np.sqrt(np.sum(psi * psi, -1)) - 1.0 / np.sqrt(2.0)).max()
        unit = np.abs(np.sum(self.phi * self.phi, -1) - 1.0).max()
        if max(radius, unit) > 1e-12:
            raise AssertionError("immersion radius invariants violated")

    # --- discrete calculus ------------------------------------------------

    def deriv(self, F: np.ndarray, axis: int, order: int = 1) -> np.ndarray:
        """Spectral derivative along a parameter axis (exact on band-limited data)."""
        N = self.N
        k = np.fft.fftfreq(N, d=1.0 / N)
        if order % 2:
            k = k.copy()
            k[N // 2] = 0.0  # odd-order Nyquist mode has no consistent derivative
        mult = (1j * k) ** order
        mult[np.abs(k) > self.filter_band] = 0.0
        shape = [1] * F.ndim
        shape[axis] = N
        coef = np.fft.fft(F, axis=axis)
        # trig-polynomial data: coefficients this far below the peak are FFT
        # roundoff, and wiping them stops k^4 amplification across stages
        peak = np.abs(coef).max()
        if peak > 0.0:
            coef[np.abs(coef) < 1e-13 * peak] = 0.0
        return np.real(np.fft.ifft(coef * mult.reshape(shape), axis=axis))

    def dot(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return np.sum(A * B, axis=-1)

    def project(self, W: np.ndarray) -> np.ndarray:
        return W - self.dot(W, self.phi)[..., None] * self.phi

    def project_psi(self, W: np.ndarray) -> np.ndarray:
        # the small sphere has radius 1/sqrt2, so the projector weight is 2
        return W - 2.0 * self.dot(W, self.psi)[..., None] * self.psi

    def frame_images(self) -> list[np.ndarray]:
        """dphi(X_i) for the orthonormal coordinate frame X_i = d_i / sqrt(c)."""
        return [d / np.sqrt(self.c) for d in self._dphi]

    def vertical_frames(self) -> list[np.ndarray]:
        return self._vertical

    def laplacian(self, V: np.ndarray) -> np.ndarray:
        """Rough Laplacian of the pullback bundle along phi (spectrum >= 0 convention)."""
        out = np.zeros_like(V)
        for a in self.axes:
            out += self.project(self.deriv(self.project(self.deriv(V, a)), a))
        return -out / self.c

    def laplacian_psi(self, W: np.ndarray) -> np.ndarray:
        out = np.zeros_like(W)
        for a in self.axes:
            out += self.project_psi(self.deriv(self.project_psi(self.deriv(W, a)), a))
        return -out / self.c

    def tension(self) -> np.ndarray:
        out = np.zeros_like(self.phi)
        for a in self.axes:
            out += self.project(self.deriv(self.phi, a, order=2))
        return out / self.c

    def energy_density_psi(self) -> np.ndarray:
        out = np.zeros(self.grid_shape)
        for a in self.axes:
            d = self.deriv(self.psi, a)
            out += self.dot(d, d)
        return out / (2.0 * self.c)

    def bitension(self) -> np.ndarray:
        tau = self.tension()
        frames = self.frame_images()
        curv = np.zeros_like(tau)
        norm2 = np.zeros(self.grid_shape)
        for df in frames:
            curv += self.dot(tau, df)[..., None] * df
            norm2 += self.dot(df, df)
        return -self.laplacian(tau) - (curv - norm2[..., None] * tau)

    def integrate(self, scalar_field: np.ndarray) -> float:
        """Integral over the domain, fixed pairwise reduction order."""
        node = (np.sqrt(self.c) if self.m == 1 else self.c) * (2.0 * np.pi / self.N) ** self.m
        return pairwise_sum(scalar_field) * node

    # --- the full second-variation operator --------------------------------

    def second_variation(self, V: np.ndarray) -> np.ndarray:
        """Literal term-by-term evaluation of the fourth-order operator I(V)."""
        sc = np.sqrt(self.c)
        frames = self.frame_images()
        dV = [self.project(self.deriv(V, a)) / sc for a in self.axes]
        tau = self.tension()
        dtau = [self.project(self.deriv(tau, a)) / sc for a in self.axes]
        lapV = self.laplacian(V)

        norm2 = np.zeros(self.grid_shape)
        for df in frames:
            norm2 += self.dot(df, df)

        trV = np.zeros_like(V)  # tr <V, dphi.> dphi.
        for df in frames:
            trV += self.dot(V, df)[..., None] * df

        out = self.laplacian(lapV)
        out += self.laplacian(trV - norm2[..., None] * V)

        dtau_dphi = np.zeros(self.grid_shape)
        for df, dt in zip(frames, dtau):
            dtau_dphi += self.dot(dt, df)
        out += 2.0 * dtau_dphi[..., None] * V

        out += self.dot(tau, tau)[..., None] * V

        for df, dt in zip(frames, dtau):
            out -= 2.0 * self.dot(V, dt)[..., None] * df
        for df, dVa in zip(frames, dV):
            out -= 2.0 * self.dot(tau, dVa)[..., None] * df

        out -= self.dot(tau, V)[..., None] * tau

        for df in frames:
            out += self.dot(df, lapV)[..., None] * df
            out += self.dot(df, trV)[..., None] * df
            out -= 2.0 * norm2[..., None] * self.dot(df, V)[..., None] * df

        dV_dphi = np.zeros(self.grid_shape)
        for df, dVa in zip(frames, dV):
            dV_dphi += self.dot(dVa, df)
        out += 2.0 * dV_dphi[..., None] * tau

        out -= norm2[..., None] * lapV
        out += (norm2 ** 2)[..., None] * V
        return out

    def bilinear(self, V: DiscretizedSection, W: DiscretizedSection) -> float:
        """(I(V), W) with the aliasing guard on both bands."""
        self._check_band(V.band + W.band)
        return self.integrate(self.dot(self.second_variation(V.values), W.values))

    def quadform_full(self, V: DiscretizedSection) -> float:
        return self.bilinear(V, V)

    def quadform_parts(self, V: DiscretizedSection) -> float:
        """Integrated-by-parts value of (I(V),V), bundle-specific second-order form."""
        self._check_band(2 * V.band)
        vals = V.values
        lap = self.laplacian(vals)
        m = self.m
        if V.bundle == "normal":
            integrand = self.dot(lap - m * vals, lap - m * vals) - 4 * m * m * self.dot(vals, vals)
        elif V.bundle == "tangent":
            w = lap + (1 - m) * vals
            integrand = self.dot(w, w) - m * m * self.dot(vals, vals)
        elif V.bundle == "vertical":
            integrand = self.dot(lap, lap) - 2 * m * self.dot(lap, vals)
        else:
            raise ValueError("integrated-by-parts forms are bundle-specific; got 'mixed'")
        return self.integrate(integrand)

    def _check_band(self, band: int) -> None:
        if band > self.max_band:
            raise ValueError(
                f"section bandwidth {band} exceeds the aliasing guard {self.max_band} at grid {self.N}"
            )

    # --- eigenfunctions and sections ---------------------------------------

    def eigenfunction(self, spec) -> tuple[np.ndarray, float, int]:
        """Sampled Laplace eigenfunction, its eigenvalue, and its band.

        circle: spec = k -> cos(k t), eigenvalue 2 k^2;
        torus:  spec = (p, q) -> cos(p u) cos(q v), eigenvalue 4 (p^2 + q^2).
        """
        if self.kind == "circle":
            k = int(spec)
            f = np.cos(k * self.t)
            return f, (k * k) / self.c, k
        p, q = spec
        f = np.cos(p * self.u) * np.cos(q * self.v)
        return f, (p * p + q * q) / self.c, max(abs(p), abs(q))

    def section_normal(self, spec) -> DiscretizedSection:
        f, lam, band = self.eigenfunction(spec)
        sec = DiscretizedSection(
            values=f[..., None] * self.eta,
            bundle="normal",
            label=f"f*eta (lam={lam:g})",
            eigenvalue=lam,
            f_values=f,
            band=band + 1,
        )
        sec.validate(self)
        return sec

    def gradient_components(self, f: np.ndarray) -> list[np.ndarray]:
        """Coordinate components of grad f on the flat domain (metric c * delta)."""
        return [self.deriv(f, a) / self.c for a in self.axes]

    def section_gradient(self, spec) -> DiscretizedSection:
        f, lam, band = self.eigenfunction(spec)
        comps = self.gradient_components(f)
        vals = np.zeros_like(self.phi)
        for Xa, dph in zip(comps, self._dphi):
            vals += Xa[..., None] * dph
        sec = DiscretizedSection(
            values=vals,
            bundle="tangent",
            label=f"dphi(grad f) (lam={lam:g})",
            eigenvalue=lam,
            f_values=f,
            band=band + 1,
            x_components=tuple(comps),
        )
        sec.validate(self)
        return sec

    def section_field(self, comps, label: str = "dphi(X)") -> DiscretizedSection:
        comps = [np.broadcast_to(np.asarray(Xa, dtype=float), self.grid_shape) for Xa in comps]
        vals = np.zeros_like(self.phi)
        for Xa, dph in zip(comps, self._dphi):
            vals += Xa[..., None] * dph
        band = max(self._field_band(Xa) for Xa in comps)
        sec = DiscretizedSection(
            values=vals,
            bundle="tangent",
            label=label,
            band=band + 1,
            x_components=tuple(comps),
        )
        sec.validate(self)
        return sec

    def section_vertical(self, spec, index: int = 0) -> DiscretizedSection:
        if not self._vertical:
            raise ValueError("vertical bundle is trivial for this geometry")
        f, lam, band = self.eigenfunction(spec)
        sec = DiscretizedSection(
            values=f[..., None] * self._vertical[index],
            bundle="vertical",
            label=f"f*xi (lam={lam:g})",
            eigenvalue=lam,
            f_values=f,
            band=band + 1,
        )
        sec.validate(self)
        return sec

    def _field_band(self, F: np.ndarray) -> int:
        band = 0
        for a in self.axes:
            spectrum = np.abs(np.fft.fft(F, axis=a))
            k = np.abs(np.fft.fftfreq(self.N, d=1.0 / self.N))
            mask = spectrum > 1e-9 * (spectrum.max() + 1e-300)
            axes_rest = tuple(i for i in range(F.ndim) if i != a)
            present = mask.any(axis=axes_rest) if axes_rest else mask
            if present.any():
                band = max(band, int(k[present].max()))
        return band

    def random_band_limited(self, rng: np.random.Generator, band: int = 3) -> np.ndarray:
        """Real random scalar field with wavenumbers <= band per axis."""
        f = np.zeros(self.grid_shape)
        if self.kind == "circle":
            for k in range(band + 1):
                a, b = rng.normal(size=2)
                f += a * np.cos(k * self.t) + (b * np.sin(k * self.t) if k else 0.0)
            return f
        for p in range(band + 1):
            for q in range(-band, band + 1):
                if p == 0 and q < 0:
                    continue
                a, b = rng.normal(size=2)
                ang = p * self.u + q * self.v
                f += a * np.cos(ang) + (b * np.sin(ang) if (p, q) != (0, 0) else 0.0)
        return f

    def random_tangent_components(self, rng: np.random.Generator, band: int = 3) -> list[np.ndarray]:
        return [self.random_band_limited(rng, band) for _ in self.axes]

    def random_section(self, rng: np.random.Generator, band: int = 3) -> DiscretizedSection:
        """Random mixed section: normal + tangent + vertical pieces."""
        vals = self.random_band_limited(rng, band)[..., None] * self.eta
        for Xa, dph in zip(self.random_tangent_components(rng, band), self._dphi):
            vals += Xa[..., None] * dph
        for frame in self._vertical:
            vals += self.random_band_limited(rng, band)[..., None] * frame
        sec = DiscretizedSection(values=vals, bundle="mixed", label="random mixed", band=band + 1)
        sec.validate(self)
        return sec
