"""JSON case files and classification records.

Scalars are encoded as exact strings like "3/4" or "1/2-3/4i"; floats
are rejected everywhere.  Simple roots are 1-indexed in files, matching
the usual diagram labels.  All documents carry a schema version.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Optional

from .bialgebra import BDTriple, validate_bd_triple
from .coideal import Case, make_case
from .involutions import OMEGA, VARSIGMA, SigmaSpec
from .rootsys import build_root_system
from .scalars import GaussRational

SCHEMA = 1


class CaseFormatError(ValueError):
    """Malformed or inexact case document."""


def parse_scalar(text) -> GaussRational:
    if isinstance(text, int):
        return GaussRational(text)
    if not isinstance(text, str):
        raise CaseFormatError(f"scalars must be exact strings, got {text!r}")
    try:
        return GaussRational.from_string(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CaseFormatError(f"bad scalar {text!r}: {exc}") from None


def format_scalar(x: GaussRational) -> str:
    return str(x)


def _expect(doc: dict, key: str):
    if key not in doc:
        raise CaseFormatError(f"missing field {key!r}")
    return doc[key]


def sigma_spec_from_doc(doc: dict, rank: int) -> SigmaSpec:
    kind = _expect(doc, "kind")
    if kind not in (VARSIGMA, OMEGA):
        raise CaseFormatError(f"unknown sigma kind {kind!r}")
    mu_doc = doc.get("mu")
    if mu_doc is None:
        mu = tuple(range(rank))
    else:
        if sorted(mu_doc) != list(range(1, rank + 1)):
            raise CaseFormatError("mu must be a permutation of 1..rank")
        mu = tuple(m - 1 for m in mu_doc)
    painted = tuple(sorted(j - 1 for j in doc.get("painted", ())))
    if any(not 0 <= j < rank for j in painted):
        raise CaseFormatError("painted indices out of range")
    try:
        return SigmaSpec(kind, mu, painted)
    except ValueError as exc:
        raise CaseFormatError(str(exc)) from None


def sigma_spec_to_doc(spec: SigmaSpec) -> dict:
    return {
        "kind": spec.kind,
        "mu": None if spec.mu_is_identity else [m + 1 for m in spec.mu],
        "painted": [j + 1 for j in spec.painted],
    }


def triple_from_doc(doc: Optional[dict], rs) -> BDTriple:
    if doc is None:
        return BDTriple((), (), ())
    g1 = tuple(i - 1 for i in doc.get("gamma1", ()))
    g2 = tuple(i - 1 for i in doc.get("gamma2", ()))
    images = tuple(i - 1 for i in doc.get("images", ()))
    if len(g1) != len(images):
        raise CaseFormatError("gamma1 and images must have equal length")
    try:
        return validate_bd_triple(rs, g1, g2, images)
    except ValueError as exc:
        raise CaseFormatError(f"invalid triple: {exc}") from None


def triple_to_doc(triple: BDTriple) -> dict:
    return {
        "gamma1": [i + 1 for i in triple.gamma1],
        "gamma2": [i + 1 for i in triple.gamma2],
        "images": [i + 1 for i in triple.images],
    }


def case_from_doc(doc: dict) -> Case:
    if doc.get("schema") != SCHEMA:
        raise CaseFormatError(f"unsupported schema {doc.get('schema')!r}")
    family = _expect(doc, "type")
    rank = _expect(doc, "rank")
    if not isinstance(rank, int):
        raise CaseFormatError("rank must be an integer")
    try:
        rs = build_root_system(family, rank)
    except ValueError as exc:
        raise CaseFormatError(str(exc)) from None
    spec = sigma_spec_from_doc(_expect(doc, "sigma"), rank)
    triple = triple_from_doc(doc.get("triple"), rs)
    t_doc = doc.get("t")
    t = parse_scalar(t_doc) if t_doc is not None else None
    lam_doc = doc.get("lambda")
    lam = None
    weights: List[Fraction] = []
    if lam_doc is not None:
        if "matrix" in lam_doc:
            entries = lam_doc["matrix"]
            if len(entries) != rank or any(len(row) != rank for row in entries):
                raise CaseFormatError("lambda matrix must be rank x rank")
            lam = [[parse_scalar(x) for x in row] for row in entries]
        elif "weights" in lam_doc:
            for w in lam_doc["weights"]:
                s = parse_scalar(w)
                if not s.is_real():
                    raise CaseFormatError("lambda weights must be real")
                weights.append(s.re)
        else:
            raise CaseFormatError("lambda must give a matrix or weights")
    try:
        return make_case(family, rank, spec, triple, lam=lam, t=t,
                         lambda_weights=weights)
    except ValueError as exc:
        raise CaseFormatError(f"inadmissible case: {exc}") from None


def case_to_doc(case: Case) -> dict:
    return {
        "schema": SCHEMA,
        "type": case.rs.type.family,
        "rank": case.rs.rank,
        "sigma": sigma_spec_to_doc(case.spec),
        "triple": triple_to_doc(case.triple),
        "t": format_scalar(case.t),
        "lambda": {"matrix": [[format_scalar(x) for x in row] for row in case.lam]},
    }


def load_case(path: str) -> Case:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CaseFormatError(f"cannot read case file: {exc}") from None
    if not isinstance(doc, dict):
        raise CaseFormatError("case file must hold a JSON object")
    return case_from_doc(doc)


def records_to_json(records: List[dict]) -> str:
    return json.dumps({"schema": SCHEMA, "records": records},
                      indent=2, sort_keys=True)


TABLE_COLUMNS = ("type", "sigma", "triple", "group_type", "parameter", "flags")


def records_to_table(records: List[dict]) -> str:
    rows = [TABLE_COLUMNS]
    for r in records:
        if r["lambda_admissible_dim"] is None:
            param = "inadmissible"
        elif not r["group_type"]:
            param = "empty"
        elif r["lambda_solution_dim"] == r["lambda_admissible_dim"]:
            param = "all admissible"
        else:
            param = (f"dim {r['lambda_solution_dim']}"
                     f" of {r['lambda_admissible_dim']}")
        rows.append((
            f"{r['type']}{r['rank']}",
            r["sigma"],
            r["triple"],
            "yes" if r["group_type"] else "no",
            param,
            "exploratory" if r.get("exploratory") else "",
        ))
    widths = [max(len(row[c]) for row in rows) for c in range(len(TABLE_COLUMNS))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
