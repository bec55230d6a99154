"""Acceptance-criteria runner and the one-command report artifact.

Each criterion is a pure function returning a CriterionResult; the report
path runs all of them plus the oracle verification batteries, then writes
a JSON summary, a text summary, a CSV of every verification check, and
matplotlib figures next to them.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .classifier import classify, identity_nullity, normal_negative_directions, tgi_nullity
from .oracle import run_case_checks, run_identity_suite
from .quadforms import (
    block_definiteness,
    cross_term,
    normal_form,
    normal_threshold,
    tangent_form,
    veronese_tangent_roots,
)
from .serialize import canonical_dumps
from .spectra import CliffordTorus, TotallyGeodesicInclusion, Veronese, VeroneseProjective

__all__ = [
    "CriterionResult",
    "ACCEPTANCE_CRITERIA",
    "run_criterion",
    "run_acceptance",
    "write_report",
]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float


def _criterion_1() -> tuple[bool, str]:
    """Inclusion classification is exact: index 1, closed-form nullity split."""
    rep = classify(TotallyGeodesicInclusion(m=2, n=3))
    split = tgi_nullity(2, 3)
    ok = (
        rep.index_exact == 1
        and rep.nullity_exact == 10
        and (split.first_eigen_pairs, split.killing, split.vertical) == (3, 3, 4)
    )
    checked = 0
    for m in range(1, 21):
        for n in range(m, 21):
            r = classify(TotallyGeodesicInclusion(m=m, n=n))
            expect = (m + 1) * (m + 2) // 2 + (m + 2) * (n - m)
            ok = ok and r.index_exact == 1 and r.nullity_exact == expect
            checked += 1
    return ok, f"m=2,n=3 gives index 1, nullity 10 = 3+3+4; {checked} (m,n) pairs match the closed form"


def _criterion_2() -> tuple[bool, str]:
    """Normal-form negativity counts across the three minimal families."""
    ok = all(normal_negative_directions(Veronese(m=m)) == m + 2 for m in range(2, 31))
    ok = ok and all(normal_negative_directions(CliffordTorus(l=l)) == 1 for l in range(1, 16))
    ok = ok and all(normal_negative_directions(VeroneseProjective(m=m)) == 1 for m in range(2, 31))
    return ok, "counts are m+2 (Veronese m=2..30) and 1 (Clifford l=1..15, projective m=2..30)"


def _criterion_3() -> tuple[bool, str]:
    """Clifford tangent bound sign flip at m = 8 and the strictly positive refinement."""
    ok = True
    for l in range(1, 26):
        m = 2 * l
        fam = CliffordTorus(l=l)
        lam1 = Fraction(2 * m)
        bound = tangent_form(fam, lam1).value
        ok = ok and ((bound >= 0) == (m <= 8)) and bound == lam1 * (-8 * m + 64)
        refined = tangent_form(fam, lam1, refine_lambda1=True)
        ok = ok and refined.kind == "exact" and refined.value == 16 * m * (m + 8) and refined.value > 0
    return ok, "lower bound at 2m is >= 0 iff m <= 8; refined value 16m(m+8) > 0 for even m <= 50"


def _criterion_4() -> tuple[bool, str]:
    """Veronese root comparisons and the resulting index bound 2m+3 at m = 5."""
    ok = True
    for m in range(2, 31):
        x2 = veronese_tangent_roots(m)[1]
        lam1 = Fraction(m * m, m + 1)
        ok = ok and ((x2.sign_minus(lam1) <= 0) == (m in (2, 3, 4)))
        for k in range(2, 6):
            lam_k = Fraction(m, m + 1) * k * (m + k - 1)
            ok = ok and x2.sign_minus(lam_k) <= 0
    rep = classify(Veronese(m=5))
    ok = ok and rep.index_lower_bound == 13
    return ok, "lam1 >= x2 exactly for m in {2,3,4}; lam_k >= x2 for k >= 2; index bound 13 at m=5"


def _criterion_5() -> tuple[bool, str]:
    """First-eigenvalue 2x2 block is singular positive semidefinite with kernel (2,1)."""
    ok = True
    for m in range(1, 51):
        fam = TotallyGeodesicInclusion(m=m, n=m + 1)
        lam1 = Fraction(2 * m)
        block = block_definiteness(
            normal_form(m, lam1).value,
            tangent_form(fam, lam1).value,
            cross_term(fam, lam1).value,
        )
        ok = (
            ok
            and block.kind == "positive_semidefinite"
            and block.determinant == 0
            and block.kernel_direction == (2, 1)
        )
    return ok, "for every m <= 50 the block at 2m has determinant 0 and kernel direction (2,1)"


def _criterion_6(seed: int = 0) -> tuple[bool, str]:
    """Oracle agreement on the flat geometries at grid 128."""
    circle = run_case_checks("circle", grid=128, seed=seed)
    torus = run_case_checks("torus", grid=128, seed=seed)
    ok = circle.all_pass and torus.all_pass
    n = len(circle.checks) + len(torus.checks)
    return ok, f"{n} circle+torus checks at grid 128 pass at 1e-8 (forms, operator, biharmonicity)"


def _criterion_7(seed: int = 0) -> tuple[bool, str]:
    """Integral-geometry identity suite over 100 seeded random fields."""
    rep = run_identity_suite(count=100, seed=seed)
    return rep.all_pass, "Yano, Laplacian exchange, Jacobi decomposition, Lie bound, trace identity at 1e-9"


def _criterion_8() -> tuple[bool, str]:
    """Identity-map nullity closed form."""
    values = tuple(identity_nullity(n) for n in (2, 3, 4, 5))
    return values == (6, 6, 10, 15), f"identity_nullity(2..5) = {values}"


ACCEPTANCE_CRITERIA = (
    (1, "inclusion classification is exact (index 1, nullity split)", _criterion_1),
    (2, "normal-form negativity counts", _criterion_2),
    (3, "Clifford tangent sign flip and refinement", _criterion_3),
    (4, "Veronese root comparisons and index bound", _criterion_4),
    (5, "first-eigenvalue block singularity", _criterion_5),
    (6, "oracle-formula agreement on flat geometries", _criterion_6),
    (7, "identity suite over random fields", _criterion_7),
    (8, "identity-map nullity closed form", _criterion_8),
)


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    for num, title, fn in ACCEPTANCE_CRITERIA:
        if num == number:
            start = time.perf_counter()
            passed, detail = fn(seed) if num in (6, 7) else fn()
            return CriterionResult(num, title, passed, detail, time.perf_counter() - start)
    raise ValueError(f"no acceptance criterion numbered {number}")


def run_acceptance(seed: int = 0) -> list[CriterionResult]:
    return [run_criterion(num, seed=seed) for num, _, _ in ACCEPTANCE_CRITERIA]


# --- figures -------------------------------------------------------------------


def _fig_normal_forms(path: Path) -> None:
    import numpy as np
    from matplotlib import pyplot as plt

    lam = np.linspace(0.0, 30.0, 400)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for m, color in ((1, "tab:blue"), (2, "tab:orange"), (3, "tab:green"), (5, "tab:red")):
        ax.plot(lam, lam**2 + 4 * lam - 4 * m * m, color=color, label=f"m = {m}")
        thr = float(normal_threshold(m))
        ax.axvline(thr, color=color, linestyle=":", linewidth=1)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("normal form value per unit mass")
    ax.set_title("Normal sub-bundle form and its sign threshold")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _fig_clifford_flip(path: Path) -> None:
    from matplotlib import pyplot as plt

    ms = list(range(2, 51, 2))
    bound = [-8 * m + 64 for m in ms]
    refined = [16 * m * (m + 8) for m in ms]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(ms, bound, "o-", label="tangent bound coefficient at first eigenvalue")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.axvline(8, color="tab:red", linestyle=":", linewidth=1, label="sign flip at m = 8")
    ax2 = ax.twinx()
    ax2.plot(ms, refined, "s--", color="tab:green", label="refined exact value 16m(m+8)")
    ax2.set_ylabel("refined exact value")
    ax.set_xlabel("domain dimension m = 2l")
    ax.set_ylabel("bound coefficient")
    ax.set_title("Torus tangent form: inconclusive bound, positive refinement")
    lines1, labels1 = ax.get_legend_handles_labels()
    lines2, labels2 = ax2.get_legend_handles_labels()
    ax.legend(lines1 + lines2, labels1 + labels2, loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _fig_veronese_crossover(path: Path) -> None:
    from matplotlib import pyplot as plt

    ms = list(range(2, 13))
    lam1 = [m * m / (m + 1) for m in ms]
    x2 = [float(veronese_tangent_roots(m)[1]) for m in ms]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(ms, lam1, "o-", label="first eigenvalue")
    ax.plot(ms, x2, "s-", label="upper root of the tangent polynomial")
    ax.axvspan(1.5, 4.5, color="tab:orange", alpha=0.15, label="indefinite block (m = 2, 3, 4)")
    ax.set_xlabel("domain dimension m")
    ax.set_ylabel("value")
    ax.set_title("Veronese crossover: first eigenvalue falls below the root at m = 5")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _fig_residuals(path: Path, reports) -> None:
    import numpy as np
    from matplotlib import pyplot as plt

    labels, residuals, tols = [], [], []
    for rep in reports:
        worst = 0.0
        tol = min(c.tolerance for c in rep.checks)
        for c in rep.checks:
            if c.kind == "equality":
                worst = max(worst, abs(c.computed - c.expected) / max(1.0, abs(c.expected)))
        labels.append(rep.case)
        residuals.append(max(worst, 1e-18))
        tols.append(tol)
    x = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.bar(x, residuals, color="tab:blue", width=0.6)
    for xi, tol in zip(x, tols):
        ax.plot([xi - 0.35, xi + 0.35], [tol, tol], color="tab:red", linewidth=1.5)
    ax.set_yscale("log")
    ax.set_xticks(x, labels, rotation=20)
    ax.set_ylabel("worst relative residual (red: strictest tolerance)")
    ax.set_title("Verification residuals by geometry")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


# --- the report artifact ----------------------------------------------------------


def default_output_dir() -> Path:
    env = os.environ.get("BHINDEX_OUTPUT_DIR")
    return Path(env) if env else Path.cwd() / "bhindex-report"


def write_report(out_dir=None, seed: int = 0) -> dict:
    """Run everything and write JSON, text, CSV and figures; returns the paths."""
    import matplotlib

    matplotlib.use("Agg")

    out = Path(out_dir) if out_dir is not None else default_output_dir()
    out.mkdir(parents=True, exist_ok=True)

    criteria = run_acceptance(seed=seed)
    reports = [
        run_case_checks("circle", grid=128, seed=seed),
        run_case_checks("torus", grid=64, seed=seed),
        run_case_checks("sphere", seed=seed),
        run_case_checks("veronese-surface", seed=seed),
        run_identity_suite(count=100, seed=seed),
    ]

    obj = {
        "schema_version": 1,
        "seed": seed,
        "all_pass": all(c.passed for c in criteria) and all(r.all_pass for r in reports),
        "criteria": [
            {"number": c.number, "title": c.title, "pass": c.passed, "detail": c.detail}
            for c in criteria
        ],
        "verification": [r.json_obj() for r in reports],
    }
    json_path = out / "report.json"
    json_path.write_text(canonical_dumps(obj))

    lines = ["acceptance criteria", "==================="]
    for c in criteria:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"[{mark}] {c.number}. {c.title} ({c.elapsed:.2f}s)")
        lines.append(f"       {c.detail}")
    lines.append("")
    lines.append("verification batteries")
    lines.append("======================")
    for r in reports:
        lines.append(r.to_text())
        lines.append("")
    text_path = out / "report.txt"
    text_path.write_text("\n".join(lines))

    csv_lines = []
    header_done = False
    for r in reports:
        rows = r.csv_rows()
        if header_done:
            rows = rows[1:]
        header_done = True
        for row in rows:
            csv_lines.append(",".join(str(x) for x in row))
    csv_path = out / "checks.csv"
    csv_path.write_text("\n".join(csv_lines) + "\n")

    figures = {
        "normal_forms": out / "normal_forms.png",
        "clifford_flip": out / "clifford_flip.png",
        "veronese_crossover": out / "veronese_crossover.png",
        "residuals": out / "residuals.png",
    }
    _fig_normal_forms(figures["normal_forms"])
    _fig_clifford_flip(figures["clifford_flip"])
    _fig_veronese_crossover(figures["veronese_crossover"])
    _fig_residuals(figures["residuals"], reports)

    paths = {"json": json_path, "text": text_path, "csv": csv_path}
    paths.update(figures)
    return {"paths": paths, "all_pass": obj["all_pass"], "criteria": criteria, "reports": reports}
