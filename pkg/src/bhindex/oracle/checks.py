"""Verification batteries: numeric oracle values against the exact layer.

Every check compares an independently computed floating-point quantity
against a closed-form expectation with the rule
|computed - expected| <= tolerance * max(1, |expected|), which reads as a
relative tolerance away from zero and an absolute one at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..quadforms import cross_term, normal_form, tangent_form, vertical_form
from ..serialize import canonical_dumps
from ..spectra import CliffordTorus, TotallyGeodesicInclusion, Veronese
from .geometry import DiscretizedSection, build_geometry

__all__ = [
    "Check",
    "VerificationReport",
    "IdentityResiduals",
    "biharmonicity_residuals",
    "quadform_numeric",
    "full_second_variation",
    "bilinear",
    "identity_residuals",
    "trace_identity_residual",
    "killing_dimension",
    "energy_gradient_residual",
    "run_case_checks",
    "run_identity_suite",
    "CASES",
]

CASES = ("circle", "torus", "sphere", "veronese-surface")


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    computed: float
    expected: float
    tolerance: float
    passed: bool
    kind: str = "equality"  # or "lower-bound"


def make_check(name: str, statement: str, computed: float, expected, tolerance: float) -> Check:
    expected = float(expected)
    passed = abs(computed - expected) <= tolerance * max(1.0, abs(expected))
    return Check(name, statement, float(computed), expected, tolerance, bool(passed))


def make_bound_check(name: str, statement: str, value: float, lower, tolerance: float) -> Check:
    """value must sit at or above lower (up to tolerance slack)."""
    lower = float(lower)
    passed = value >= lower - tolerance * max(1.0, abs(lower))
    return Check(name, statement, float(value), lower, tolerance, bool(passed), kind="lower-bound")


@dataclass
class VerificationReport:
    case: str
    grid: object
    seed: int
    checks: list

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def json_obj(self) -> dict:
        return {
            "case": self.case,
            "grid": self.grid if isinstance(self.grid, int) else list(self.grid),
            "seed": self.seed,
            "all_pass": self.all_pass,
            "checks": [
                {
                    "name": c.name,
                    "statement": c.statement,
                    "kind": c.kind,
                    "computed": c.computed,
                    "expected": c.expected,
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return canonical_dumps(self.json_obj())

    def to_text(self) -> str:
        lines = [f"case {self.case}  grid {self.grid}  seed {self.seed}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            rel = "vs >=" if c.kind == "lower-bound" else "vs"
            lines.append(
                f"  [{mark}] {c.name}: {c.computed:.12g} {rel} {c.expected:.12g} (tol {c.tolerance:g})"
            )
        lines.append(f"result: {'all checks pass' if self.all_pass else f'{len(self.failures())} check(s) FAILED'}")
        return "\n".join(lines)

    def csv_rows(self) -> list:
        rows = [("case", "name", "kind", "computed", "expected", "tolerance", "pass")]
        for c in self.checks:
            rows.append((self.case, c.name, c.kind, repr(c.computed), repr(c.expected), repr(c.tolerance), c.passed))
        return rows


# --- wrappers over the geometry backends -------------------------------------


def biharmonicity_residuals(geometry) -> tuple:
    """(max |e(psi) - m/2|, max |tau(phi) + m eta|, max |tau2(phi)|)."""
    m = geometry.m
    e_res = float(np.abs(geometry.energy_density_psi() - m / 2.0).max())
    tau_res = float(np.abs(geometry.tension() + m * geometry.eta).max())
    tau2_res = float(np.abs(geometry.bitension()).max())
    return e_res, tau_res, tau2_res


def quadform_numeric(geometry, section: DiscretizedSection) -> float:
    """(I(V),V) via the bundle-specific integrated-by-parts form."""
    if section.bundle not in ("normal", "tangent", "vertical"):
        raise ValueError("integrated-by-parts forms are bundle-specific; tag the section accordingly")
    return geometry.quadform_parts(section)


def full_second_variation(geometry, section: DiscretizedSection) -> DiscretizedSection:
    """I(V) evaluated term by term (flat backends only)."""
    if not hasattr(geometry, "second_variation"):
        raise ValueError("the full fourth-order operator is only evaluated on flat parametrizations")
    geometry._check_band(section.band)
    return DiscretizedSection(
        values=geometry.second_variation(section.values),
        bundle="mixed",
        label=f"I({section.label})",
        band=section.band + 8,
    )


def bilinear(geometry, V: DiscretizedSection, W: DiscretizedSection) -> float:
    if not hasattr(geometry, "bilinear"):
        raise ValueError("the full fourth-order operator is only evaluated on flat parametrizations")
    return geometry.bilinear(V, W)


# --- identity battery ----------------------------------------------------------


@dataclass(frozen=True)
class IdentityResiduals:
    yano: float
    bochner: float
    jacobi: float
    decomposition: float
    lie_margin: float  # pointwise min of |L_X g|^2 - (4/m)(div X)^2, must be >= 0


def _div_and_lie(geometry, comps):
    """div X, |L_X g|^2 and <tr grad^2 X, X> for a coordinate-component field on a flat domain."""
    grads = [[geometry.deriv(Xa, b) for b in geometry.axes] for Xa in comps]
    div = sum(grads[a][a] for a in range(len(comps)))
    lie2 = np.zeros(geometry.grid_shape)
    for a in range(len(comps)):
        for b in range(len(comps)):
            lie2 = lie2 + (grads[a][b] + grads[b][a]) ** 2
    rough = np.zeros(geometry.grid_shape)
    for a, Xa in enumerate(comps):
        for b in geometry.axes:
            rough = rough + geometry.deriv(Xa, b, order=2) * Xa
    return div, lie2, rough


def identity_residuals(geometry, comps) -> IdentityResiduals:
    """Residuals of the integral-geometry identities for a tangent field X.

    comps are the coordinate components of X on the flat domain.  The five
    quantities must vanish (margin: stay nonnegative) in exact arithmetic.
    """
    if not hasattr(geometry, "second_variation"):
        raise ValueError("the identity battery runs on flat parametrizations")
    comps = [np.broadcast_to(np.asarray(Xa, dtype=float), geometry.grid_shape) for Xa in comps]
    m = geometry.m
    div, lie2, rough = _div_and_lie(geometry, comps)

    # divergence-theorem identity (flat domain: Ricci term vanishes)
    lhs = geometry.integrate(div**2 - rough)
    rhs = geometry.integrate(0.5 * lie2)
    yano = abs(lhs - rhs) / max(1.0, abs(rhs))

    lie_margin = float((lie2 - (4.0 / m) * div**2).min())

    sec = geometry.section_field(comps)
    V = sec.values

    # Laplacian exchange between the composed map and the immersion
    lap_phi = geometry.laplacian(V)
    lap_psi = geometry.laplacian_psi(V)
    bochner = float(np.abs(lap_phi - lap_psi - 2.0 * div[..., None] * geometry.eta - V).max())

    # curvature-term collapse for tangent sections of the immersion
    tr = np.zeros_like(V)
    for a in geometry.axes:
        dpsi = geometry.deriv(geometry.psi, a)
        tr += geometry.dot(V, dpsi)[..., None] * dpsi
    tr /= geometry.c
    jacobi = float(np.abs(2.0 * tr - 2.0 * V).max())

    # quadratic form of I against the immersion's Jacobi operator
    jac = lap_psi + 2.0 * (1 - m) * V
    rhs2 = geometry.integrate(geometry.dot(jac, jac) + 4.0 * div**2 + 2.0 * m * geometry.dot(jac, V))
    lhs2 = geometry.bilinear(sec, sec)
    decomposition = abs(lhs2 - rhs2) / max(1.0, abs(lhs2))

    return IdentityResiduals(float(yano), bochner, jacobi, float(decomposition), lie_margin)


def trace_identity_residual(geometry) -> float:
    """Torus first-eigenvalue identity: 4 |tr grad dpsi(grad.X,.)|^2 = 32 m^2 f^2 for f = cos u."""
    if geometry.kind != "torus":
        raise ValueError("the trace identity is specific to the torus")
    f = np.cos(geometry.u)
    comps = geometry.gradient_components(f)
    grads = [[geometry.deriv(Xa, b) for b in geometry.axes] for Xa in comps]
    # tr grad dpsi(grad X, .) = (1/c) sum_{a,b} d_b(X^a) P_psi(psi_ab)
    tr = np.zeros_like(geometry.phi)
    for a_i, a in enumerate(geometry.axes):
        for b_i, b in enumerate(geometry.axes):
            hess = geometry.project_psi(geometry.deriv(geometry.deriv(geometry.psi, a), b))
            tr += grads[a_i][b_i][..., None] * hess
    tr /= geometry.c
    lhs = 4.0 * geometry.dot(tr, tr)
    rhs = 32.0 * geometry.m**2 * f**2
    return float(np.abs(lhs - rhs).max() / max(1.0, np.abs(rhs).max()))


def killing_dimension(geometry, band: int = 2, tol: float = 1e-8) -> int:
    """Dimension of the Killing fields among band-limited fields, via SVD of X -> L_X g."""
    if geometry.kind == "circle":
        t = geometry.t
        funcs = [np.ones_like(t)]
        for k in range(1, band + 1):
            funcs += [np.cos(k * t), np.sin(k * t)]
        columns = [[h] for h in funcs]
    else:
        basis1 = [np.ones(geometry.grid_shape)]
        for k in range(1, band + 1):
            basis1 += [np.cos(k * geometry.u), np.sin(k * geometry.u), np.cos(k * geometry.v), np.sin(k * geometry.v)]
        mixed = [np.cos(geometry.u + geometry.v), np.sin(geometry.u + geometry.v)]
        funcs = basis1 + mixed
        zero = np.zeros(geometry.grid_shape)
        columns = [[h, zero] for h in funcs] + [[zero, h] for h in funcs]
    rows = []
    for comps in columns:
        comps = [np.broadcast_to(np.asarray(Xa, dtype=float), geometry.grid_shape) for Xa in comps]
        grads = [[geometry.deriv(Xa, b) for b in geometry.axes] for Xa in comps]
        entries = []
        for a in range(len(comps)):
            for b in range(a, len(comps)):
                entries.append((grads[a][b] + grads[b][a]).ravel())
        rows.append(np.concatenate(entries))
    M = np.stack(rows, axis=1)
    svals = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(svals <= tol * svals[0]))


def energy_gradient_residual(geometry, rng: np.random.Generator, step: float = 1e-4) -> float:
    """First variation of the energy vs central finite differences of E(phi_s)."""
    sec = geometry.random_section(rng, band=2)
    V = sec.values

    def energy(values):
        dens = np.zeros(geometry.grid_shape)
        for a in geometry.axes:
            d = geometry.deriv(values, a)
            dens += geometry.dot(d, d)
        return 0.5 * geometry.integrate(dens / geometry.c)

    def perturbed(s):
        w = geometry.phi + s * V
        return w / np.sqrt(geometry.dot(w, w))[..., None]

    fd = (energy(perturbed(step)) - energy(perturbed(-step))) / (2.0 * step)
    exact = -geometry.integrate(geometry.dot(geometry.tension(), V))
    return abs(fd - exact) / max(1.0, abs(exact))


# --- per-case batteries -----------------------------------------------------------


def _flat_family(geometry):
    if geometry.kind == "circle":
        return TotallyGeodesicInclusion(m=1, n=geometry.n)
    return CliffordTorus(l=1)


def _eigen_battery(geometry, checks, eq_tol, with_full=True):
    """Exact-vs-numeric forms on every eigenvalue <= 20, all bundles."""
    fam = _flat_family(geometry)
    if geometry.kind == "circle":
        specs = [1, 2, 3]  # lam = 2 k^2: 2, 8, 18
        lam_of = lambda s: Fraction(2 * s * s)
    else:
        specs = [(1, 0), (1, 1), (2, 0), (2, 1)]  # lam = 4(p^2+q^2): 4, 8, 16, 20
        lam_of = lambda s: Fraction(4 * (s[0] ** 2 + s[1] ** 2))

    const_normal = geometry.section_normal(0 if geometry.kind == "circle" else (0, 0))
    vol = geometry.integrate(np.ones(geometry.grid_shape))
    q0 = quadform_numeric(geometry, const_normal) / vol
    checks.append(
        make_check(
            "normal lam=0",
            "(I(eta),eta)/vol = -4m^2 for the constant normal section",
            q0,
            normal_form(geometry.m, Fraction(0)).value,
            eq_tol,
        )
    )

    for spec in specs:
        lam = lam_of(spec)
        tag = f"k={spec}" if geometry.kind == "circle" else f"(p,q)={spec}"
        sections = {
            "normal": (geometry.section_normal(spec), normal_form(geometry.m, lam).value),
            "tangent": (geometry.section_gradient(spec), None),
            "vertical": (geometry.section_vertical(spec), vertical_form(fam, lam).value),
        }
        base = tangent_form(fam, lam).value
        if geometry.kind == "torus":
            p, q = spec
            # the closed-form lower bound drops the nonnegative trace term,
            # which equals 128 (p^2-q^2)^2 per unit int f^2 on this torus
            sections["tangent"] = (sections["tangent"][0], base + Fraction(128) * (p * p - q * q) ** 2)
        else:
            sections["tangent"] = (sections["tangent"][0], base)

        f2 = geometry.integrate(sections["normal"][0].f_values ** 2)
        for bundle, (sec, expected) in sections.items():
            numeric = quadform_numeric(geometry, sec) / f2
            checks.append(
                make_check(
                    f"{bundle} {tag}",
                    f"(I(V),V)/int f^2 matches the exact {bundle} form at lam={lam}",
                    numeric,
                    expected,
                    eq_tol,
                )
            )
            if with_full:
                full = geometry.quadform_full(sec) / f2
                checks.append(
                    make_check(
                        f"{bundle} {tag} full-vs-parts",
                        "term-by-term operator integral equals the integrated-by-parts form",
                        full,
                        numeric,
                        eq_tol,
                    )
                )
        if geometry.kind == "circle":
            cr = cross_term(fam, lam).value
            num = geometry.bilinear(sections["normal"][0], sections["tangent"][0]) / f2
            checks.append(
                make_check(
                    f"cross {tag}",
                    "(I(f eta), dphi(grad f))/int f^2 matches the exact mixed term",
                    num,
                    cr,
                    eq_tol,
                )
            )


def _flat_case_checks(geometry, seed, eq_tol):
    rng = np.random.default_rng(seed)
    checks = []
    e_res, tau_res, tau2_res = biharmonicity_residuals(geometry)
    checks.append(make_check("energy density", "e(psi) = m/2 at every node", e_res, 0.0, eq_tol))
    checks.append(make_check("tension", "tau(phi) = -m eta at every node", tau_res, 0.0, eq_tol))
    checks.append(make_check("bitension", "tau2(phi) = 0 at every node (biharmonicity)", tau2_res, 0.0, eq_tol))

    _eigen_battery(geometry, checks, eq_tol)

    if geometry.kind == "circle":
        N1 = geometry.section_normal(1)
        T1 = geometry.section_gradient(1)
        K = 2.0 * N1.values + T1.values
        resid = float(np.abs(geometry.second_variation(K)).max())
        checks.append(
            make_check(
                "first-eigenvalue kernel",
                "I(2 f eta + dphi(grad f)) = 0 at lam1 = 2m",
                resid,
                0.0,
                1e-9,
            )
        )
    else:
        for label, comps in (("du", [1.0, 0.0]), ("dv", [0.0, 1.0])):
            sec = geometry.section_field(
                [np.full(geometry.grid_shape, c) for c in comps], label=f"dphi({label})"
            )
            resid = float(np.abs(geometry.second_variation(sec.values)).max())
            checks.append(
                make_check(
                    f"isometry kernel {label}",
                    "I(dphi(X)) = 0 for the coordinate Killing field",
                    resid,
                    0.0,
                    1e-9,
                )
            )
        resid = float(np.abs(geometry.second_variation(geometry.vertical_frames()[0])).max())
        checks.append(
            make_check("normal-section kernel", "I(xi) = 0 for the constant unit normal", resid, 0.0, 1e-9)
        )
        A = geometry.shape_operator
        fr = geometry.frame_images()
        worst = 0.0
        for i, a in enumerate(geometry.axes):
            dxi = geometry.project(geometry.deriv(geometry.vertical_frames()[0], a)) / np.sqrt(geometry.c)
            for j in range(2):
                num = geometry.integrate(geometry.dot(dxi, fr[j])) / geometry.integrate(
                    np.ones(geometry.grid_shape)
                )
                worst = max(worst, abs(num - (-A[i, j])))
        checks.append(
            make_check("shape operator", "A(X) = -(grad_X xi)^T = sqrt(2) diag(-1, 1)", worst, 0.0, eq_tol)
        )
        checks.append(
            make_check(
                "first-eigenvalue trace identity",
                "4 |tr grad dpsi(grad.X,.)|^2 = 32 m^2 f^2 for f = cos u",
                trace_identity_residual(geometry),
                0.0,
                1e-9,
            )
        )

    # the symmetry pairing doubles the band; stay inside the aliasing guard
    band = 2 if geometry.N < 128 else 3
    worst = 0.0
    for _ in range(3):
        V = geometry.random_section(rng, band=band)
        W = geometry.random_section(rng, band=band)
        worst = max(worst, abs(geometry.bilinear(V, W) - geometry.bilinear(W, V)))
    checks.append(
        make_check("symmetry", "(I(V),W) = (I(W),V) on random band-limited sections", worst, 0.0, 1e-9)
    )

    checks.append(
        make_check(
            "energy gradient",
            "d/ds E(phi_s) at s=0 equals -int <tau, V> (central differences)",
            energy_gradient_residual(geometry, rng),
            0.0,
            1e-4,
        )
    )

    expected_dim = 1 if geometry.kind == "circle" else 2
    checks.append(
        make_check(
            "isometry dimension",
            "SVD rank deficiency of X -> L_X g counts the Killing fields",
            float(killing_dimension(geometry)),
            float(expected_dim),
            0.0,
        )
    )

    fine = type(geometry)(geometry.kind, grid=2 * geometry.N, n=geometry.n)
    spec = 2 if geometry.kind == "circle" else (1, 0)
    coarse_val = _unit_normal_value(geometry, spec)
    fine_val = _unit_normal_value(fine, spec)
    checks.append(
        make_check(
            "grid refinement",
            "doubling the resolution leaves spectral results unchanged",
            abs(fine_val - coarse_val),
            0.0,
            1e-10,
        )
    )

    for i in range(3):
        comps = geometry.random_tangent_components(rng, band=band)
        res = identity_residuals(geometry, comps)
        checks.append(make_check(f"yano[{i}]", "divergence identity on a random field", res.yano, 0.0, 1e-9))
        checks.append(
            make_check(f"bochner[{i}]", "Laplacian exchange identity on a random field", res.bochner, 0.0, 1e-9)
        )
        checks.append(
            make_check(f"jacobi[{i}]", "curvature-term collapse on a random tangent section", res.jacobi, 0.0, 1e-9)
        )
        checks.append(
            make_check(
                f"decomposition[{i}]",
                "(I(V),V) = int |J V|^2 + 4(div X)^2 + 2m <J V, V>",
                res.decomposition,
                0.0,
                1e-9,
            )
        )
        checks.append(
            make_bound_check(
                f"lie bound[{i}]", "|L_X g|^2 >= (4/m)(div X)^2 pointwise", res.lie_margin, 0.0, 1e-9
            )
        )
    return checks


def _unit_normal_value(geometry, spec) -> float:
    sec = geometry.section_normal(spec)
    return quadform_numeric(geometry, sec) / geometry.integrate(sec.f_values**2)


def _sphere_case_checks(geometry, seed, eq_tol):
    checks = []
    e_res, tau_res, tau2_res = biharmonicity_residuals(geometry)
    biharm_tol = 1e-6
    checks.append(make_check("energy density", "e(psi) = m/2 at every node", e_res, 0.0, biharm_tol))
    checks.append(make_check("tension", "tau(phi) = -m eta at every node", tau_res, 0.0, biharm_tol))
    checks.append(make_check("bitension", "tau2(phi) = 0 at every node (biharmonicity)", tau2_res, 0.0, biharm_tol))

    if geometry.kind == "sphere":
        fam = TotallyGeodesicInclusion(m=2, n=geometry.n)
        lam_of = lambda k: Fraction(2 * k * (k + 1))
        plan = [(1, False), (1, True), (2, False)]  # lam = 4, 4, 12
    else:
        fam = Veronese(m=2)
        lam_of = lambda k: Fraction(2 * k * (k + 1), 3)
        plan = [(1, False), (1, True), (2, False), (3, False), (4, False), (5, False)]

    for k, tesseral in plan:
        lam = lam_of(k)
        tag = f"k={k}{' tesseral' if tesseral else ''}"
        nsec = geometry.section_normal(k, tesseral)
        f2 = geometry.integrate(nsec.f_values**2)
        checks.append(
            make_check(
                f"normal {tag}",
                f"(I(f eta), f eta)/int f^2 matches the exact normal form at lam={lam}",
                quadform_numeric(geometry, nsec) / f2,
                normal_form(2, lam).value,
                eq_tol,
            )
        )
        tsec = geometry.section_gradient(k, tesseral)
        numeric_t = quadform_numeric(geometry, tsec) / f2
        tval = tangent_form(fam, lam)
        if tval.kind == "exact":
            checks.append(
                make_check(
                    f"tangent {tag}",
                    f"(I(V),V)/int f^2 matches the exact tangent form at lam={lam}",
                    numeric_t,
                    tval.value,
                    eq_tol,
                )
            )
        else:
            checks.append(
                make_bound_check(
                    f"tangent {tag}",
                    f"(I(V),V)/int f^2 sits above the tangent lower bound at lam={lam}",
                    numeric_t,
                    tval.value,
                    eq_tol,
                )
            )
        if geometry.kind == "sphere":
            vsec = geometry.section_vertical(k, tesseral=tesseral)
            checks.append(
                make_check(
                    f"vertical {tag}",
                    f"(I(f e),f e)/int f^2 matches the exact vertical form at lam={lam}",
                    quadform_numeric(geometry, vsec) / f2,
                    vertical_form(fam, lam).value,
                    eq_tol,
                )
            )

    fine = type(geometry)(geometry.kind, grid=(2 * geometry.n_th, 2 * geometry.n_lon), n=geometry.n)
    coarse_val = _unit_normal_value(geometry, 2)
    fine_val = _unit_normal_value(fine, 2)
    checks.append(
        make_check(
            "grid refinement",
            "doubling the quadrature resolution leaves results unchanged",
            abs(fine_val - coarse_val),
            0.0,
            1e-8,
        )
    )
    return checks


def run_case_checks(case: str, grid=None, seed: int = 0, n=None, tolerance=None) -> VerificationReport:
    """Assemble and run the verification battery for one explicit geometry."""
    # the batteries drive every eigenvalue <= 20 through fourth derivatives;
    # the aliasing guard needs N//8 - 2 >= twice the largest section band
    if case == "circle" and grid is not None and grid < 128:
        raise ValueError("the circle verification battery needs --grid >= 128")
    if case == "torus" and grid is not None and grid < 64:
        raise ValueError("the torus verification battery needs --grid >= 64")
    geometry = build_geometry(case, grid=grid, n=n)
    if case in ("circle", "torus"):
        eq_tol = 1e-8 if tolerance is None else float(tolerance)
        checks = _flat_case_checks(geometry, seed, eq_tol)
        grid_out = geometry.N
    else:
        eq_tol = 1e-5 if tolerance is None else float(tolerance)
        checks = _sphere_case_checks(geometry, seed, eq_tol)
        grid_out = (geometry.n_th, geometry.n_lon)
    return VerificationReport(case=case, grid=grid_out, seed=seed, checks=checks)


def run_identity_suite(count: int = 100, seed: int = 0, tol: float = 1e-9) -> VerificationReport:
    """The integral-geometry identities over seeded random band-limited fields.

    Splits the budget between the circle and the torus and reports the worst
    residual per identity, plus the torus first-eigenvalue trace identity.
    """
    rng = np.random.default_rng(seed)
    worst = {"yano": 0.0, "bochner": 0.0, "jacobi": 0.0, "decomposition": 0.0}
    margin = np.inf
    geoms = [build_geometry("circle", grid=128, n=2), build_geometry("torus", grid=128)]
    for i in range(count):
        geometry = geoms[i % 2]
        comps = geometry.random_tangent_components(rng, band=3)
        res = identity_residuals(geometry, comps)
        worst["yano"] = max(worst["yano"], res.yano)
        worst["bochner"] = max(worst["bochner"], res.bochner)
        worst["jacobi"] = max(worst["jacobi"], res.jacobi)
        worst["decomposition"] = max(worst["decomposition"], res.decomposition)
        margin = min(margin, res.lie_margin)
    statements = {
        "yano": "divergence identity over random fields",
        "bochner": "Laplacian exchange identity over random fields",
        "jacobi": "curvature-term collapse over random tangent sections",
        "decomposition": "(I(V),V) decomposition over random tangent sections",
    }
    checks = [
        make_check(f"{name} (worst of {count})", statements[name], value, 0.0, tol)
        for name, value in worst.items()
    ]
    checks.append(
        make_bound_check(f"lie bound (worst of {count})", "|L_X g|^2 >= (4/m)(div X)^2 pointwise", float(margin), 0.0, tol)
    )
    checks.append(
        make_check(
            "first-eigenvalue trace identity",
            "4 |tr grad dpsi(grad.X,.)|^2 = 32 m^2 f^2 for f = cos u",
            trace_identity_residual(geoms[1]),
            0.0,
            tol,
        )
    )
    return VerificationReport(case="identities", grid=128, seed=seed, checks=checks)
