"""Command-line front end.

Exit codes: 0 for success (or a passing check), 1 for a case that was
checked and found not of group type, 2 for usage or input errors.
Output is deterministic for a fixed invocation, independent of the
worker count.
"""

from __future__ import annotations

import json
import os
import sys
from typing import List, Optional, Tuple

import click

from . import __version__
from .bialgebra import InadmissibleCaseError, cybe_residual
from .caseio import (CaseFormatError, case_to_doc, load_case, records_to_json,
                     records_to_table)
from .chevalley import basis_for
from .coideal import (classify, coideal_check, coideal_check_direct,
                      case_r0, compute_r_tilde, solve_lambda)
from .double import (annihilator_dual_bracket_check, graph_subalgebra,
                     is_lagrangian, realified_fixed_space)
from .involutions import OMEGA, build_theta, isotropy_algebra
from .rootsys import DynkinType, build_root_system


def _default_jobs() -> int:
    env = os.environ.get("BD_COIDEAL_JOBS")
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _fail_usage(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


@click.group()
@click.version_option(__version__, prog_name="bdcoideal")
def main():
    """Exact group-type classification for non-compact symmetric spaces."""


@main.command()
@click.argument("family")
@click.argument("rank", type=int)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]),
              default="table", show_default=True)
def roots(family: str, rank: int, fmt: str):
    """Summarize a root system: counts, highest root, Gram matrix."""
    try:
        rs = build_root_system(family.upper(), rank)
    except (ValueError, KeyError) as exc:
        _fail_usage(str(exc))
    if fmt == "json":
        click.echo(rs.to_json())
        return
    click.echo(f"type {rs.type}")
    click.echo(f"positive roots: {len(rs.positive_roots)}")
    click.echo(f"dimension: {2 * len(rs.positive_roots) + rs.rank}")
    click.echo(f"highest root: {rs.highest_root()}")
    click.echo("Cartan matrix:")
    for row in rs.cartan_matrix:
        click.echo("  " + " ".join(f"{v:3d}" for v in row))
    click.echo("Killing Gram matrix:")
    for row in rs.killing_gram:
        click.echo("  " + " ".join(str(v) for v in row))


@main.command()
@click.argument("family")
@click.argument("rank", type=int)
@click.option("--mu", default=None,
              help="Diagram automorphism as comma-separated images, 1-indexed.")
def constants(family: str, rank: int, mu: Optional[str]):
    """Structure-constant table as JSON (golden-file friendly)."""
    try:
        perm = None
        if mu is not None:
            perm = tuple(int(x) - 1 for x in mu.split(","))
        basis = basis_for(family.upper(), rank, perm)
    except (ValueError, KeyError) as exc:
        _fail_usage(str(exc))
    click.echo(json.dumps(basis.constants_json_doc(), indent=2, sort_keys=True))


@main.command()
@click.argument("casefile", type=click.Path())
def rmatrix(casefile: str):
    """Build the skew r-matrix of a case and report exact diagnostics."""
    case = _load(casefile)
    r0 = case_r0(case)
    theta = build_theta(case.basis, case.spec)
    rt = compute_r_tilde(case.basis, theta, r0)
    residual = cybe_residual(case.basis, r0)
    doc = {
        "schema": 1,
        "case": case_to_doc(case),
        "r0_terms": len(r0.entries),
        "r0_skew": r0.dagger() == -r0,
        "projected_terms": len(rt.tensor.entries),
        "skew_cybe_residual_terms": len(residual.entries),
    }
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


@main.command()
@click.argument("casefile", type=click.Path())
def check(casefile: str):
    """Decide the group-type property for one case file."""
    case = _load(casefile)
    verdict = coideal_check(case)
    if verdict.is_coideal:
        click.echo("group type: yes")
        sys.exit(0)
    gen = verdict.witness_generator
    terms = ", ".join(f"{case.basis.describe_index(i)}*{c}"
                      for i, c in gen.items())
    click.echo("group type: no")
    click.echo(f"witness generator: {terms}")
    sys.exit(1)


@main.command("solve-lambda")
@click.argument("casefile", type=click.Path())
def solve_lambda_cmd(casefile: str):
    """Exact parameter space passing the criterion for a case's shape."""
    case = _load(casefile)
    sol = solve_lambda(case.basis, case.spec, case.triple, case.t)
    from .bialgebra import continuous_parameter_space
    adm = continuous_parameter_space(case.basis, case.triple, case.spec)
    doc = {
        "schema": 1,
        "admissible_dim": None if adm.is_empty else adm.dim,
        "solution_dim": None if sol.is_empty else sol.dim,
        "group_type_possible": not sol.is_empty,
    }
    click.echo(json.dumps(doc, indent=2, sort_keys=True))
    sys.exit(0 if not sol.is_empty else 1)


@main.command("double-check")
@click.argument("casefile", type=click.Path())
def double_check(casefile: str):
    """Cross-verify one case through the double-sided oracles."""
    case = _load(casefile)
    basis = case.basis
    theta = build_theta(basis, case.spec)
    iso = isotropy_algebra(basis, case.spec)
    r0 = case_r0(case)
    primary = coideal_check(case).is_coideal
    direct = coideal_check_direct(case)
    annihilator = annihilator_dual_bracket_check(basis, r0, iso)
    doc = {
        "schema": 1,
        "coideal": primary,
        "quotient_oracle": direct,
        "annihilator_oracle": annihilator,
        "graph_of_cartan_involution_lagrangian":
            is_lagrangian(basis, graph_subalgebra(basis, theta.apply)),
    }
    if case.spec.kind == OMEGA:
        m = realified_fixed_space(basis, case.spec)
        doc["realified_fixed_space"] = {
            "real_dim": m.real_dim,
            "isotropic": m.isotropic,
            "k0_dim": m.k0_dim,
        }
    click.echo(json.dumps(doc, indent=2, sort_keys=True))
    agree = primary == direct == annihilator
    if not agree:
        click.echo("oracle disagreement", err=True)
        sys.exit(1)
    sys.exit(0 if primary else 1)


DEFAULT_FAMILIES = (
    [("A", n) for n in range(1, 7)]
    + [("B", n) for n in range(2, 7)]
    + [("C", n) for n in range(2, 7)]
    + [("D", n) for n in range(4, 7)]
    + [("E", 6), ("E", 7)]
)


def _parse_families(text: str) -> List[Tuple[str, int]]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        fam, rank = part[0].upper(), part[1:]
        try:
            t = DynkinType(fam, int(rank))
        except ValueError as exc:
            _fail_usage(str(exc))
        out.append((t.family, t.rank))
    if not out:
        _fail_usage("no systems given")
    return out


@main.command("classify")
@click.option("--families", default=None,
              help="Comma-separated systems like A2,B3,E6 (default: the full grid).")
@click.option("--sigma", "sigma_filter",
              type=click.Choice(["all", "varsigma", "omega-j", "omega-mu-j"]),
              default="all", show_default=True)
@click.option("--triples", "triple_filter", type=click.Choice(["trivial", "all"]),
              default="trivial", show_default=True)
@click.option("--exploratory", is_flag=True,
              help="Include the open nontrivial-triple grading-reversing cases.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]),
              default="table", show_default=True)
@click.option("--jobs", type=int, default=None,
              help="Worker processes (default: BD_COIDEAL_JOBS or 1).")
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON file with the same fields as the flags.")
def classify_cmd(families, sigma_filter, triple_filter, exploratory, fmt,
                 jobs, config_path):
    """Run the classification over a grid of cases."""
    if config_path is not None:
        try:
            with open(config_path) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            _fail_usage(f"bad config: {exc}")
        families = cfg.get("families", families)
        sigma_filter = cfg.get("sigma", sigma_filter)
        triple_filter = cfg.get("triples", triple_filter)
        exploratory = cfg.get("exploratory", exploratory)
        if isinstance(families, list):
            families = ",".join(families)
    fams = DEFAULT_FAMILIES if families is None else _parse_families(families)
    if jobs is None:
        jobs = _default_jobs()
    try:
        records = classify(fams, sigma_filter, triple_filter, exploratory,
                           jobs=jobs)
    except ValueError as exc:
        _fail_usage(str(exc))
    if fmt == "json":
        click.echo(records_to_json(records))
    else:
        click.echo(records_to_table(records), nl=False)


def _load(casefile: str):
    try:
        return load_case(casefile)
    except (CaseFormatError, InadmissibleCaseError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
