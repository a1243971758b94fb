"""Command-line front door: every module behind a subcommand, every answer
wrapped in a report that re-checks itself.

Reports render as human text by default or line-delimited JSON with
--json; both carry the same content.  Floats print with 10 significant
digits, integers exactly.  Exit codes: 0 success with all checks passed,
1 domain error, 2 internal verification failure, 64 usage error.
Set QFCENSUS_VERBOSE=1 for fuller reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Optional, Sequence

from .census import (
    census_table,
    exclude_1011_cover,
    exclude_closed_hypersurface,
)
from .collar import c4, collar_profile, collar_radius, ball_volume, volume_obstruction
from .forms import (
    DiagonalForm,
    global_anisotropic,
    hasse_invariant,
    isotropy_search,
    local_anisotropic,
    projectively_equivalent,
    signature,
)
from .padic import (
    InsufficientDepthError,
    Place,
    hilbert,
    hilbert_oracle,
    is_square_local,
    sufficient_oracle_depth,
)
from .subforms import (
    TernarySearchError,
    generate_family_report,
    verify_certificate_report,
)
from .witness import build_witness, verify_form_equivalence

__all__ = ["Check", "Report", "main", "entry"]

USAGE_EXIT = 64


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    results: list[tuple[str, Any]] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, passed, detail))


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return float(f"{value:.10g}")
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, int):
        return value
    return str(value)


def _render_text(report: Report, verbose: bool) -> str:
    lines = [report.command]
    for key, value in report.inputs.items():
        lines.append(f"input {key} = {_fmt(value)}")
    for name, value in report.results:
        lines.append(f"{name}: {_fmt(value)}")
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        line = f"check {check.name}: {status}"
        if check.detail and (verbose or not check.passed):
            line += f" ({check.detail})"
        lines.append(line)
    lines.extend(f"note: {note}" for note in report.notes)
    lines.append("ok" if report.ok else "verification failed")
    return "\n".join(lines)


def _render_json(report: Report, verbose: bool) -> str:
    lines = [
        json.dumps(
            {"command": report.command, "inputs": _jsonable(report.inputs)},
            sort_keys=True,
        )
    ]
    for name, value in report.results:
        lines.append(
            json.dumps({"result": name, "value": _jsonable(value)}, sort_keys=True)
        )
    for check in report.checks:
        payload: dict[str, Any] = {"check": check.name, "passed": check.passed}
        if check.detail and (verbose or not check.passed):
            payload["detail"] = check.detail
        lines.append(json.dumps(payload, sort_keys=True))
    for note in report.notes:
        lines.append(json.dumps({"note": note}, sort_keys=True))
    lines.append(json.dumps({"ok": report.ok}, sort_keys=True))
    return "\n".join(lines)


def _parse_place(text: str) -> Place:
    if text == "real":
        return Place.real()
    try:
        return Place(int(text))
    except ValueError as exc:
        raise ValueError(f"not a place: {text!r} ({exc})") from exc


def _cmd_hilbert(ns: argparse.Namespace, verbose: bool) -> Report:
    v = _parse_place(ns.place)
    report = Report(
        "hilbert", {"a": ns.a, "b": ns.b, "place": str(v), "depth": ns.depth}
    )
    symbol = hilbert(ns.a, ns.b, v)
    report.results.append(("symbol", symbol))
    depth = ns.depth if ns.depth is not None else sufficient_oracle_depth(ns.a, ns.b, v)
    oracle = hilbert_oracle(ns.a, ns.b, v, depth)
    report.check(
        "matches_exhaustive_oracle",
        symbol == oracle,
        f"residue search at depth {depth} returned {oracle}",
    )
    return report


def _cmd_hasse(ns: argparse.Namespace, verbose: bool) -> Report:
    v = _parse_place(ns.place)
    form = DiagonalForm(tuple(ns.coefficients))
    report = Report(
        "hasse", {"coefficients": list(form.coefficients), "place": str(v)}
    )
    value = hasse_invariant(form, v)
    report.results.append(("hasse", value))
    report.results.append(("determinant", form.determinant))
    report.results.append(
        ("determinant_is_local_square", is_square_local(form.determinant, v))
    )
    oracle = 1
    coeffs = form.coefficients
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            depth = sufficient_oracle_depth(coeffs[i], coeffs[j], v)
            oracle *= hilbert_oracle(coeffs[i], coeffs[j], v, depth)
    report.check(
        "matches_exhaustive_oracle",
        value == oracle,
        f"pairwise residue searches multiply to {oracle}",
    )
    return report


def _cmd_aniso(ns: argparse.Namespace, verbose: bool) -> Report:
    form = DiagonalForm(tuple(ns.coefficients))
    report = Report(
        "aniso", {"coefficients": list(form.coefficients), "bound": ns.bound}
    )
    anisotropic, witness = global_anisotropic(form)
    report.results.append(("anisotropic", anisotropic))
    report.results.append(("witness_place", str(witness) if witness else "none"))
    report.results.append(("signature", tuple(signature(form))))
    if anisotropic:
        assert witness is not None
        if witness.is_real:
            pos, neg = signature(form)
            confirmed = pos == 0 or neg == 0
        else:
            confirmed = local_anisotropic(form, witness)
        report.check(
            "witness_confirmed", confirmed, f"local recheck at {witness}"
        )
    vec = isotropy_search(form, ns.bound)
    if vec is None:
        report.results.append(("zero_within_bound", "none"))
        report.check(
            "search_consistent",
            True,
            f"no nontrivial zero with entries up to {ns.bound}",
        )
    else:
        report.results.append(("zero_within_bound", list(vec)))
        report.check(
            "search_consistent",
            not anisotropic and form.evaluate(vec) == 0,
            f"form evaluates to {form.evaluate(vec)} on {list(vec)}",
        )
    return report


def _cmd_subforms(ns: argparse.Namespace, verbose: bool) -> Report:
    report = Report(
        "subforms", {"S": ns.S, "count": ns.count, "skip": ns.skip}
    )
    family = generate_family_report(ns.S, ns.count, skip=ns.skip)
    params = family.parameters
    report.results.append(
        ("parameters", {"S": params.S, "s": params.s, "a": params.a})
    )
    report.results.append(("ambient", str(family.ambient.form)))
    report.results.append(("case", family.case_name))
    for i, cert in enumerate(family.certificates):
        payload = cert.to_dict()
        if not verbose:
            payload.pop("basis")
        report.results.append((f"certificate_{i}", payload))
    for note in family.collisions:
        report.notes.append(
            f"candidate {note.skipped_details} skipped: projectively "
            f"equivalent to certificate {note.kept_index} "
            f"(scalar {note.scalar})"
        )
    for i, cert in enumerate(family.certificates):
        audit = verify_certificate_report(family.ambient, cert)
        report.check(
            f"certificate_{i}_verified",
            audit.ok,
            "; ".join(audit.failures) or "all recomputed checks passed",
        )
    pairs_checked = 0
    all_distinct = True
    for i in range(len(family.certificates)):
        for j in range(i + 1, len(family.certificates)):
            matched, _ = projectively_equivalent(
                family.certificates[i].subform, family.certificates[j].subform
            )
            pairs_checked += 1
            if matched:
                all_distinct = False
    report.check(
        "pairwise_projectively_inequivalent",
        all_distinct,
        f"{pairs_checked} pairs scanned",
    )
    return report


def _cmd_equiv_witness(ns: argparse.Namespace, verbose: bool) -> Report:
    report = Report("equiv-witness", {"p": ns.p})
    witness = build_witness(ns.p)
    report.results.append(("k", witness.k))
    report.results.append(("a_matrix", [list(r) for r in witness.a_matrix]))
    report.results.append(("det_a", witness.det_a))
    if verbose:
        report.results.append(("t_matrix", [list(r) for r in witness.t_matrix]))
    t = witness.t_matrix
    j = (1, 1, 1, 1, -1)
    gram = [
        [sum(t[k][r] * j[k] * t[k][c] for k in range(5)) for c in range(5)]
        for r in range(5)
    ]
    target = [
        [(1, 1, 1, -ns.p, ns.p)[r] if r == c else 0 for c in range(5)]
        for r in range(5)
    ]
    report.check(
        "exact_identity",
        gram == target,
        "T^t diag(1,1,1,1,-1) T recomputed in integer arithmetic",
    )
    report.check(
        "invariant_classification_agrees",
        verify_form_equivalence(ns.p),
        "signature, determinant class, and Hasse symbols all match",
    )
    return report


def _cmd_collar(ns: argparse.Namespace, verbose: bool) -> Report:
    report = Report(
        "collar", {"area": ns.area, "chi": ns.chi, "copies": ns.copies}
    )
    profile = collar_profile(ns.area)
    report.results.append(("d4", profile.d4))
    report.results.append(("c4", c4(ns.area)))
    report.results.append(("tube_volume", profile.tube_volume))
    round_trip = 2.0 * ball_volume(collar_radius(2.0 * profile.d4))
    report.check(
        "radius_round_trip",
        abs(round_trip - ns.area) <= 1e-9 * max(1.0, ns.area),
        f"2 V(r(2 d4)) = {round_trip:.10g}",
    )
    report.check(
        "separating_margin",
        profile.d4 > c4(ns.area),
        "the separating collar strictly exceeds the one-sided collar",
    )
    if (ns.chi is None) != (ns.copies is None):
        raise ValueError("--chi and --copies must be given together")
    if ns.chi is not None:
        verdict = volume_obstruction(ns.chi, ns.copies, ns.area)
        report.results.append(("available", verdict.available))
        report.results.append(("required", verdict.required))
        report.results.append(("contradiction", verdict.contradiction))
        if verdict.contradiction:
            report.notes.append(
                f"{verdict.required:.10g} > {verdict.available:.10g}: "
                "contradiction"
            )
    return report


def _cmd_census_exclude(ns: argparse.Namespace, verbose: bool) -> Report:
    report = Report("census-exclude", {"index": ns.index})
    records = census_table()
    if ns.index is not None:
        records = tuple(r for r in records if r.index == ns.index)
        if not records:
            raise ValueError(f"no census record with index {ns.index}")
    for rec in records:
        trace = exclude_closed_hypersurface(rec)
        report.results.append(
            (
                f"manifold_{rec.index}",
                {
                    "b1": rec.b1,
                    "orientable_cross_sections": rec.orientable_cross_sections,
                    "rule": trace.steps[-1].rule,
                    "verdict": trace.verdict,
                },
            )
        )
        report.check(f"manifold_{rec.index}_excluded", trace.excluded)
        if verbose:
            report.notes.extend(trace.to_text().splitlines())
    return report


def _cmd_link_1011(ns: argparse.Namespace, verbose: bool) -> Report:
    report = Report("link-1011", {})
    trace = exclude_1011_cover()
    for step in trace.steps:
        report.results.append((step.rule, step.conclusion))
        if verbose:
            report.notes.append(f"{step.rule}: {step.justification}")
    report.results.append(("verdict", trace.verdict))
    report.check("cover_excluded", trace.excluded)
    volume_step = next(s for s in trace.steps if s.rule == "volume")
    required = volume_step.inputs["required"]
    available = volume_step.inputs["available"]
    report.check(
        "volume_contradiction",
        required > available,
        f"{required:.10g} > {available:.10g}",
    )
    report.notes.extend(trace.annotations)
    report.notes.append(f"{required:.10g} > {available:.10g}: contradiction")
    return report


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="line-delimited JSON output"
    )
    parser = _Parser(prog="qfcensus", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert symbol at a place")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--place", required=True, help="real, 2, or an odd prime")
    p.add_argument("--depth", type=int, help="residue search depth override")
    p.set_defaults(handler=_cmd_hilbert)

    p = sub.add_parser(
        "hasse", parents=[common], help="Hasse invariant of a diagonal form"
    )
    p.add_argument("coefficients", type=int, nargs="+")
    p.add_argument("--place", required=True)
    p.set_defaults(handler=_cmd_hasse)

    p = sub.add_parser(
        "aniso", parents=[common], help="global anisotropy with witness place"
    )
    p.add_argument("coefficients", type=int, nargs="+")
    p.add_argument("--bound", type=int, default=20, help="brute search bound")
    p.set_defaults(handler=_cmd_aniso)

    p = sub.add_parser(
        "subforms",
        parents=[common],
        help="certified anisotropic subform family for a squarefree odd S",
    )
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--skip", type=int, default=0, help="skip admissible primes a")
    p.set_defaults(handler=_cmd_subforms)

    p = sub.add_parser(
        "equiv-witness",
        parents=[common],
        help="exact equivalence witness for <1,1,1,-p,p>",
    )
    p.add_argument("p", type=int)
    p.set_defaults(handler=_cmd_equiv_witness)

    p = sub.add_parser(
        "collar", parents=[common], help="tube radius and volume for a 3-volume"
    )
    p.add_argument("area", type=float)
    p.add_argument("--chi", type=int)
    p.add_argument("--copies", type=int)
    p.set_defaults(handler=_cmd_collar)

    p = sub.add_parser(
        "census-exclude",
        parents=[common],
        help="replay the Betti-number exclusion over the census table",
    )
    p.add_argument("--index", type=int, help="single record instead of all 22")
    p.set_defaults(handler=_cmd_census_exclude)

    p = sub.add_parser(
        "link-1011",
        parents=[common],
        help="volume exclusion for the double cover of census manifold 1011",
    )
    p.set_defaults(handler=_cmd_link_1011)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    verbose = os.environ.get("QFCENSUS_VERBOSE", "") not in ("", "0")
    try:
        report = ns.handler(ns, verbose)
    except (
        ValueError,
        InsufficientDepthError,
        TernarySearchError,
        RuntimeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return 2
    rendered = _render_json(report, verbose) if ns.json else _render_text(
        report, verbose
    )
    print(rendered)
    return 0 if report.ok else 2


def entry() -> None:
    sys.exit(main())
