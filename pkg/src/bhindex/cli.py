"""Command-line front end.

Subcommands: spectrum, quadform, classify, verify, report.  Exit codes:
0 success, 2 validation error, 3 a verification check failed tolerance.
Rationals cross the boundary as "p/q" strings; JSON output is canonical
(sorted keys, fixed separators) so identical requests give identical bytes.
"""

from __future__ import annotations

import sys

import click

from .classifier import classify as classify_family
from .classifier import report_json_obj, report_text
from .oracle import CASES, run_case_checks, run_identity_suite
from .quadforms import block_definiteness, cross_term, normal_form, tangent_form, vertical_form
from .reporting import write_report
from .serialize import SCHEMA_VERSION, canonical_dumps, parse_rational, rational_obj, rational_str
from .spectra import (
    family_kind,
    family_obj,
    family_spectrum,
    is_domain_eigenvalue,
    level_str,
    make_family,
    spectrum_csv,
    spectrum_json_obj,
)

FAMILY_KINDS = ("tgi", "veronese", "veronese-rp", "clifford", "identity")
VERIFY_CASES = CASES + ("identities",)


def _family(kind, m, n, l):
    try:
        return make_family(kind, m=m, n=n, l=l)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _rational(text: str, what: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise click.UsageError(f"{what}: {exc}") from exc


_family_options = (
    click.option("--family", "kind", required=True, type=click.Choice(FAMILY_KINDS)),
    click.option("--m", type=int, default=None, help="domain dimension (tgi, veronese variants)"),
    click.option("--n", type=int, default=None, help="target dimension (tgi, identity)"),
    click.option("--l", type=int, default=None, help="torus factor parameter (clifford)"),
)


def family_options(fn):
    for opt in reversed(_family_options):
        fn = opt(fn)
    return fn


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Spectral index and nullity calculator for biharmonic sphere maps."""


@main.command()
@family_options
@click.option("--lambda-max", "lambda_max", default="40", show_default=True,
              help='inclusive eigenvalue cutoff, rational "p/q"')
@click.option("--format", "fmt", type=click.Choice(("text", "json", "csv")), default="text")
def spectrum(kind, m, n, l, lambda_max, fmt) -> None:
    """List the distinct domain eigenvalues up to a cutoff."""
    fam = _family(kind, m, n, l)
    lam_max = _rational(lambda_max, "--lambda-max")
    try:
        entries = family_spectrum(fam, lam_max)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "json":
        click.echo(canonical_dumps(spectrum_json_obj(fam, lam_max, entries)))
    elif fmt == "csv":
        click.echo(spectrum_csv(entries), nl=False)
    else:
        click.echo(f"family {family_obj(fam)}  eigenvalues <= {rational_str(lam_max)}")
        for ev in entries:
            click.echo(f"  {rational_str(ev.value):>10}  level {level_str(ev.level):<12} mult {ev.multiplicity}")


@main.command()
@family_options
@click.option("--lam", required=True, help='eigenvalue to evaluate at, rational "p/q"')
@click.option("--refine-lambda1", is_flag=True, help="use the exact first-eigenvalue refinement (clifford)")
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text")
def quadform(kind, m, n, l, lam, refine_lambda1, fmt) -> None:
    """Evaluate the per-bundle quadratic forms at one eigenvalue."""
    fam = _family(kind, m, n, l)
    if family_kind(fam) == "identity":
        raise click.UsageError("quadratic forms apply to sphere compositions, not the identity map")
    value = _rational(lam, "--lam")
    if not is_domain_eigenvalue(fam, value):
        raise click.UsageError(f"{rational_str(value)} is not an eigenvalue of the domain")

    forms = [normal_form(fam.domain_dim, value)]
    try:
        forms.append(tangent_form(fam, value, refine_lambda1=refine_lambda1))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    for fn in (vertical_form, cross_term):
        try:
            forms.append(fn(fam, value))
        except ValueError:
            pass  # bundle not applicable for this family/eigenvalue

    block = None
    crosses = [f for f in forms if f.subbundle == "cross"]
    if crosses:
        block = block_definiteness(forms[0].value, forms[1].value, crosses[0].value)

    if fmt == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "family": family_obj(fam),
            "eigenvalue": rational_obj(value),
            "forms": [
                {"subbundle": f.subbundle, "kind": f.kind, "value": rational_obj(f.value)}
                for f in forms
            ],
        }
        if block is not None:
            obj["block"] = {
                "kind": block.kind,
                "determinant": rational_obj(block.determinant),
                "trace": rational_obj(block.trace),
                "kernel_direction": list(block.kernel_direction) if block.kernel_direction else None,
            }
        click.echo(canonical_dumps(obj))
    else:
        click.echo(f"family {family_obj(fam)}  eigenvalue {rational_str(value)}")
        for f in forms:
            click.echo(f"  {f.subbundle:>8}: {rational_str(f.value):>12}  ({f.kind})")
        if block is not None:
            kd = f", kernel direction {block.kernel_direction}" if block.kernel_direction else ""
            click.echo(f"  normal/tangent block: {block.kind}, det {rational_str(block.determinant)}{kd}")


@main.command()
@family_options
@click.option("--lambda-max", "lambda_max", default=None,
              help='spectrum cutoff override, rational "p/q" (default: past the last sign change)')
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text")
def classify(kind, m, n, l, lambda_max, fmt) -> None:
    """Compute the index and nullity report for a family member."""
    fam = _family(kind, m, n, l)
    lam_max = _rational(lambda_max, "--lambda-max") if lambda_max is not None else None
    try:
        report = classify_family(fam, lambda_max=lam_max)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "json":
        click.echo(canonical_dumps(report_json_obj(report)))
    else:
        click.echo(report_text(report))


@main.command()
@click.option("--case", required=True, type=click.Choice(VERIFY_CASES))
@click.option("--grid", type=int, default=None, help="points per parameter direction")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--n", type=int, default=None, help="ambient sphere dimension where the case allows it")
@click.option("--count", type=int, default=100, show_default=True, help="random fields (identities case)")
@click.option("--tolerance", type=float, default=None, help="override every equality tolerance")
@click.option("--format", "fmt", type=click.Choice(("text", "json", "csv")), default="text")
def verify(case, grid, seed, n, count, tolerance, fmt) -> None:
    """Run a numerical verification battery; exit 3 if any check fails."""
    try:
        if case == "identities":
            report = run_identity_suite(count=count, seed=seed, tol=tolerance if tolerance is not None else 1e-9)
        else:
            report = run_case_checks(case, grid=grid, seed=seed, n=n, tolerance=tolerance)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "json":
        click.echo(report.to_json())
    elif fmt == "csv":
        click.echo("\n".join(",".join(str(x) for x in row) for row in report.csv_rows()))
    else:
        click.echo(report.to_text())
    if not report.all_pass:
        sys.exit(3)


@main.command()
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="output directory (default: $BHINDEX_OUTPUT_DIR or ./bhindex-report)")
@click.option("--seed", type=int, default=0, show_default=True)
def report(out_dir, seed) -> None:
    """Run the full acceptance suite and write JSON, text, CSV and figures."""
    result = write_report(out_dir=out_dir, seed=seed)
    for name, path in result["paths"].items():
        click.echo(f"{name}: {path}")
    status = "PASS" if result["all_pass"] else "FAIL"
    click.echo(f"overall: {status}")
    if not result["all_pass"]:
        sys.exit(3)


if __name__ == "__main__":
    main()
