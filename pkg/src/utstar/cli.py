"""Command-line front end for the exact *-algebra toolkit.

One thin synchronous shell over the library: build and inspect algebras,
check identities, run packaged catalog suites, tabulate codimensions, and
query images of multilinear polynomials.  Every command can emit either a
human-readable text report or versioned JSON (``--json``), optionally to a
file (``--out``); output is byte-stable for identical inputs and seeds.

Randomized searches take their default seed from the ``UTSTAR_SEED``
environment variable when set, else from a fixed documented constant, and
``--seed`` overrides both.

Exit codes: 0 success; 1 a requested check found a mathematical negative
(non-identity, non-membership, non-closure, suite or lemma failure,
invalid certificate); 2 usage errors; 3 the solver hit a resource cap or a
search was exhausted without an answer.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

from .algebra import COMPONENT_TAGS, KINDS, build_algebra, spec_to_json
from .certificates import verify_certificate
from .codim import UT4_CLOSED_FORM_SPEC_ID, codim_total
from .freepoly import parse_schema, parse_star_poly
from .groebner import SolverIncomplete
from .identities import is_identity
from .images import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    classify_image_ut3,
    classify_image_ut3_odd,
    counterexample_utn,
    membership_decide,
    membership_search,
    vector_space_probe,
    verify_structure_lemmas,
)
from .matrices import Mat, format_mat, parse_mat_expr
from .suites import available_suites, load_catalog, run_suite

SEED_ENV_VAR = "UTSTAR_SEED"

EXIT_SUCCESS = 0
EXIT_NEGATIVE_FINDING = 1
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3


@dataclass(frozen=True)
class RunConfig:
    """One fully parsed invocation; dispatch() consumes nothing else."""

    command: str
    n: int | None = None
    grading: str | None = None
    kind: str | None = None
    poly: str | None = None
    suite: str | None = None
    target: str | None = None
    certificate_path: str | None = None
    max_degree: int = 4
    check_closed_form: bool = False
    samples: int = 1000
    l_max: int = 3
    k_max: int = 5
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    json_output: bool = False
    out: str | None = None


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _parse_grading(text: str) -> tuple[int, ...]:
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"grading must be a nonempty string of 0s and 1s, got {text!r}")
    return tuple(int(c) for c in text)


def _build_spec(config: RunConfig):
    if config.n is None or config.grading is None or config.kind is None:
        raise ValueError("this command needs --n, --grading and --kind")
    grading = _parse_grading(config.grading)
    if len(grading) != config.n:
        raise ValueError(
            f"grading {config.grading!r} has length {len(grading)}, but --n is {config.n}"
        )
    return build_algebra(config.n, grading, config.kind)


# ---------------------------------------------------------------------------
# command implementations; each returns (exit status, json doc, text lines)

Outcome = tuple[int, dict, list[str]]


def _cmd_algebra_show(config: RunConfig) -> Outcome:
    spec = _build_spec(config)
    lines = [
        f"algebra {spec.id}",
        "component dimensions "
        + " ".join(f"{t.label}={len(spec.component(t))}" for t in COMPONENT_TAGS),
    ]
    for tag in COMPONENT_TAGS:
        basis = ", ".join(format_mat(b) for b in spec.component(tag))
        lines.append(f"{tag.label}: {basis if basis else '(empty)'}")
    return EXIT_SUCCESS, spec_to_json(spec), lines


def _cmd_check_identity(config: RunConfig) -> Outcome:
    spec = _build_spec(config)
    if config.poly is None:
        raise ValueError("check-identity needs --poly")
    variants = parse_schema(config.poly)
    checked = 0
    for variant in variants:
        if variant.is_zero():
            continue
        checked += 1
        verdict = is_identity(variant, spec, seed=config.seed)
        if not verdict.is_identity:
            witness = {str(v): format_mat(m) for v, m in sorted(verdict.witness.items())}
            doc = {
                "schema": "check-identity/1",
                "polynomial": config.poly,
                "algebra": spec.id,
                "identity": False,
                "variants_checked": checked,
                "counterexample": {
                    "variant": str(variant),
                    "witness": witness,
                    "value": format_mat(verdict.value),
                },
            }
            lines = [
                f"not an identity on {spec.id}",
                f"variant: {variant}",
                *(f"  {name} = {m}" for name, m in witness.items()),
                f"  value = {format_mat(verdict.value)}",
            ]
            return EXIT_NEGATIVE_FINDING, doc, lines
    doc = {
        "schema": "check-identity/1",
        "polynomial": config.poly,
        "algebra": spec.id,
        "identity": True,
        "variants_checked": checked,
    }
    detail = f" ({checked} signed variants)" if len(variants) > 1 else ""
    return EXIT_SUCCESS, doc, [f"identity on {spec.id}{detail}"]


def _cmd_suite_run(config: RunConfig) -> Outcome:
    if config.suite is None:
        raise ValueError(
            "suite run needs --suite; available: " + ", ".join(available_suites())
        )
    catalog = load_catalog(config.suite)
    if config.n is None and config.grading is None and config.kind is None:
        spec = build_algebra(catalog.n, catalog.grading, catalog.kind)
    else:
        spec = _build_spec(config)
    report = run_suite(spec, config.suite)
    status = EXIT_SUCCESS if report.all_passed else EXIT_NEGATIVE_FINDING
    return status, report.to_json(), report.summary_lines()


def _cmd_codim(config: RunConfig) -> Outcome:
    spec = _build_spec(config)
    if config.max_degree < 1:
        raise ValueError(f"--max-degree must be >= 1, got {config.max_degree}")
    if config.check_closed_form and spec.id != UT4_CLOSED_FORM_SPEC_ID:
        raise ValueError(
            f"--check-closed-form applies to {UT4_CLOSED_FORM_SPEC_ID} only, not {spec.id}"
        )
    reports = [codim_total(spec, d) for d in range(1, config.max_degree + 1)]
    lines = [f"codimension table for {spec.id}, degrees 1..{config.max_degree}"]
    all_match = True
    for report in reports:
        summary = f"n={report.n} total={report.total}"
        if report.expected_total is not None:
            match = report.matches_closed_form()
            all_match = all_match and bool(match)
            summary += f" closed-form={report.expected_total} match={match}"
        lines.append(summary)
        for sig, value in sorted(report.table.items()):
            lines.append(f"  {','.join(map(str, sig))}: {value}")
    doc = {
        "schema": "codim-table/1",
        "algebra": spec.id,
        "max_degree": config.max_degree,
        "reports": [r.to_json() for r in reports],
    }
    status = EXIT_SUCCESS
    if config.check_closed_form and not all_match:
        status = EXIT_NEGATIVE_FINDING
    return status, doc, lines


def _cmd_image_classify(config: RunConfig) -> Outcome:
    if config.poly is None:
        raise ValueError("image classify needs --poly")
    f = parse_star_poly(config.poly)
    if any(v.species == "z" for v in f.letter_set()):
        verdict = classify_image_ut3_odd(
            f, samples=config.samples, trials=config.trials, seed=config.seed
        )
    else:
        verdict = classify_image_ut3(
            f, samples=config.samples, trials=config.trials, seed=config.seed
        )
    doc = verdict.to_json()
    doc["polynomial"] = config.poly
    return EXIT_SUCCESS, doc, [f"image of {config.poly} on ut3-010-super-reflection:", str(verdict)]


def _cmd_image_member(config: RunConfig) -> Outcome:
    spec = _build_spec(config)
    if config.poly is None or config.target is None:
        raise ValueError("image member needs --poly and --target")
    f = parse_star_poly(config.poly)
    target = parse_mat_expr(config.target, spec.n)
    if len(f.letter_set()) == 2:
        decision = membership_decide(
            f, spec, target, trials=config.trials, seed=config.seed
        )
        doc = decision.to_json()
        if decision.status == "in":
            lines = [f"IN: {config.target} is a value of {config.poly} on {spec.id}"]
            lines += [f"  {name} = {m}" for name, m in decision.witness]
            return EXIT_SUCCESS, doc, lines
        if decision.status == "out":
            lines = [
                f"OUT: {config.target} is certified not a value of "
                f"{config.poly} on {spec.id}",
                "  Groebner basis: "
                + ", ".join(str(p) for p in decision.certificate.basis),
            ]
            return EXIT_NEGATIVE_FINDING, doc, lines
        return EXIT_INCOMPLETE, doc, [f"UNKNOWN: {decision.detail}"]
    witness = membership_search(f, spec, target, config.trials, config.seed)
    doc = {
        "schema": "membership-search/1",
        "polynomial": config.poly,
        "algebra": spec.id,
        "target": config.target,
        "trials": config.trials,
        "seed": config.seed,
    }
    if witness is not None:
        named = {str(v): format_mat(m) for v, m in sorted(witness.items())}
        doc["status"] = "in"
        doc["witness"] = named
        lines = [f"IN: {config.target} is a value of {config.poly} on {spec.id}"]
        lines += [f"  {name} = {m}" for name, m in named.items()]
        return EXIT_SUCCESS, doc, lines
    doc["status"] = "unknown"
    return EXIT_INCOMPLETE, doc, [
        f"UNKNOWN: no witness within {config.trials} trials "
        "(search misses prove nothing)"
    ]


def _cmd_image_probe(config: RunConfig) -> Outcome:
    spec = _build_spec(config)
    if config.poly is None:
        raise ValueError("image probe needs --poly")
    f = parse_star_poly(config.poly)
    report = vector_space_probe(f, spec, trials=config.trials, seed=config.seed)
    lines = [
        f"image of {config.poly} on {spec.id}: {report.verdict} "
        f"({report.evidence}; {report.samples} samples, seed {report.seed})"
    ]
    if report.verdict == "vector-space" and report.basis:
        lines.append("basis: " + ", ".join(report.basis))
    if report.pair is not None:
        lines.append(f"pair in the image: {report.pair[0]} and {report.pair[1]}")
        lines.append("their sum is certified outside the image")
    if report.detail:
        lines.append(report.detail)
    status = {
        "vector-space": EXIT_SUCCESS,
        "not-vector-space": EXIT_NEGATIVE_FINDING,
        "unknown": EXIT_INCOMPLETE,
    }[report.verdict]
    return status, report.to_json(), lines


def _cmd_image_counterexample(config: RunConfig) -> Outcome:
    if config.n is None:
        raise ValueError("image counterexample needs --n")
    report = counterexample_utn(config.n, trials=config.trials, seed=config.seed)
    lines = [
        f"the image of {report.poly_text} on {report.spec_id} is not a vector space",
        f"values: {report.pair[0]} and {report.pair[1]}",
    ]
    for value, witness in zip(report.pair, report.pair_witnesses):
        assigned = ", ".join(f"{name} = {m}" for name, m in witness)
        lines.append(f"  {value}: {assigned}")
    lines.append(
        f"sum {report.pair[0]} + {report.pair[1]}: certified outside "
        "(Groebner basis contains 1)"
    )
    return EXIT_SUCCESS, report.to_json(), lines


def _cmd_lemmas_verify(config: RunConfig) -> Outcome:
    report = verify_structure_lemmas(config.l_max, config.k_max)
    status = EXIT_SUCCESS if report.all_ok else EXIT_NEGATIVE_FINDING
    return status, report.to_json(), report.summary_lines()


def _cmd_verify_certificate(config: RunConfig) -> Outcome:
    if config.certificate_path is None:
        raise ValueError("verify-certificate needs a certificate file path")
    if config.certificate_path == "-":
        doc = json.load(sys.stdin)
    else:
        with open(config.certificate_path) as handle:
            doc = json.load(handle)
    check = verify_certificate(doc)
    status = EXIT_SUCCESS if check.ok else EXIT_NEGATIVE_FINDING
    verdict = "certificate verified" if check.ok else "certificate REJECTED"
    return status, {
        "schema": "certificate-check/1",
        "ok": check.ok,
        "lines": list(check.lines),
    }, [*check.lines, verdict]


_COMMANDS = {
    "algebra-show": _cmd_algebra_show,
    "check-identity": _cmd_check_identity,
    "suite-run": _cmd_suite_run,
    "codim": _cmd_codim,
    "image-classify": _cmd_image_classify,
    "image-member": _cmd_image_member,
    "image-probe": _cmd_image_probe,
    "image-counterexample": _cmd_image_counterexample,
    "lemmas-verify": _cmd_lemmas_verify,
    "verify-certificate": _cmd_verify_certificate,
}


def dispatch(config: RunConfig) -> Outcome:
    """Route one validated invocation; returns (status, json doc, text lines)."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        raise ValueError(f"unknown command: {config.command!r}")
    return handler(config)


def emit_report(doc: dict, lines: list[str], config: RunConfig) -> None:
    """Write the chosen rendering to stdout or --out; byte-stable."""
    if config.json_output:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w") as handle:
            handle.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def _add_algebra_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, help="matrix size")
    parser.add_argument("--grading", help="degree string like 0101, one digit per row")
    parser.add_argument("--kind", choices=KINDS, help="star map kind")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--out", help="write the report to this path")


def _add_search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--trials", type=int, default=DEFAULT_TRIALS, help="random search rounds"
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"random seed (default: ${SEED_ENV_VAR} or {DEFAULT_SEED})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="utstar",
        description="exact identities, codimensions and polynomial images "
        "on graded upper-triangular matrix algebras with a star map",
    )
    top = parser.add_subparsers(dest="group", required=True)

    algebra = top.add_parser("algebra", help="inspect an algebra")
    algebra_sub = algebra.add_subparsers(dest="subcommand", required=True)
    show = algebra_sub.add_parser("show", help="print component bases and dimensions")
    _add_algebra_flags(show)
    _add_output_flags(show)

    check = top.add_parser("check-identity", help="decide a *-identity exactly")
    check.add_argument("--poly", required=True, help="polynomial text")
    _add_algebra_flags(check)
    _add_search_flags(check)
    _add_output_flags(check)

    suite = top.add_parser("suite", help="packaged identity/evaluation catalogs")
    suite_sub = suite.add_subparsers(dest="subcommand", required=True)
    suite_run = suite_sub.add_parser("run", help="run one catalog")
    suite_run.add_argument(
        "--suite", required=True, help="suite id; one of " + ", ".join(available_suites())
    )
    _add_algebra_flags(suite_run)
    _add_output_flags(suite_run)

    codim = top.add_parser("codim", help="codimension table")
    _add_algebra_flags(codim)
    codim.add_argument("--max-degree", type=int, default=4, help="tabulate degrees 1..D")
    codim.add_argument(
        "--check-closed-form",
        action="store_true",
        help="fail unless every degree matches the known closed form",
    )
    _add_output_flags(codim)

    image = top.add_parser("image", help="images of multilinear polynomials")
    image_sub = image.add_subparsers(dest="subcommand", required=True)

    classify = image_sub.add_parser(
        "classify", help="exact image on the 3x3 algebra with grading 010"
    )
    classify.add_argument("--poly", required=True)
    classify.add_argument("--samples", type=int, default=1000, help="validation samples")
    _add_search_flags(classify)
    _add_output_flags(classify)

    member = image_sub.add_parser("member", help="is a matrix a value of the polynomial?")
    member.add_argument("--poly", required=True)
    member.add_argument("--target", required=True, help="matrix text like 'e12 + e23'")
    _add_algebra_flags(member)
    _add_search_flags(member)
    _add_output_flags(member)

    probe = image_sub.add_parser("probe", help="is the image a vector space?")
    probe.add_argument("--poly", required=True)
    _add_algebra_flags(probe)
    _add_search_flags(probe)
    _add_output_flags(probe)

    counter = image_sub.add_parser(
        "counterexample", help="certified non-closure on size n >= 4"
    )
    counter.add_argument("--n", type=int, required=True)
    _add_search_flags(counter)
    _add_output_flags(counter)

    lemmas = top.add_parser("lemmas", help="closed product forms on the 3x3 algebra")
    lemmas_sub = lemmas.add_subparsers(dest="subcommand", required=True)
    lemmas_verify = lemmas_sub.add_parser("verify", help="re-check the closed forms")
    lemmas_verify.add_argument("--l-max", type=int, default=3)
    lemmas_verify.add_argument("--k-max", type=int, default=5)
    _add_output_flags(lemmas_verify)

    verify = top.add_parser("verify-certificate", help="re-check a serialized certificate")
    verify.add_argument("certificate", help="path to a certificate JSON file, or -")
    _add_output_flags(verify)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.group
    if getattr(args, "subcommand", None):
        command = f"{args.group}-{args.subcommand}"
    seed = getattr(args, "seed", None)
    config = RunConfig(
        command=command,
        n=getattr(args, "n", None),
        grading=getattr(args, "grading", None),
        kind=getattr(args, "kind", None),
        poly=getattr(args, "poly", None),
        suite=getattr(args, "suite", None),
        target=getattr(args, "target", None),
        certificate_path=getattr(args, "certificate", None),
        max_degree=getattr(args, "max_degree", 4),
        check_closed_form=getattr(args, "check_closed_form", False),
        samples=getattr(args, "samples", 1000),
        l_max=getattr(args, "l_max", 3),
        k_max=getattr(args, "k_max", 5),
        trials=getattr(args, "trials", DEFAULT_TRIALS),
        seed=DEFAULT_SEED if seed is None else seed,
        json_output=getattr(args, "json", False),
        out=getattr(args, "out", None),
    )
    if seed is None:
        config = replace(config, seed=_default_seed())
    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        status, doc, lines = dispatch(config)
    except SolverIncomplete as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit_report(doc, lines, config)
    return status


if __name__ == "__main__":
    sys.exit(main())
