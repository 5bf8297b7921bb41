"""
Command line driver: read a JSON job, run it, write a JSON report.

::

    twistbraid --spec job.json --out report.json --dot diagrams/
    twistbraid --print-schema
"""

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import ValidationError as SchemaError

from . import __version__
from .errors import EXIT_BUDGET, EXIT_OK, EXIT_VALIDATION, EXIT_VERIFICATION, BudgetExceeded, TwistbraidError
from .groups import FiniteGroup
from .jobspec import JobSpec, build_alpha, build_ansatz, build_base, build_candidate, q_modulus, schema
from .search import z3z3_survey
from .session import Session
from .spectra import factorized_profile, profile_case
from .tower import (
    bratteli_A,
    bratteli_C,
    compare_towers,
    fusion_bratteli,
    fusion_ring_D,
)
from .ybo import DEFAULT_CAP, ORDER_CAP

logger = logging.getLogger(__name__)


@dataclass
class Outcome:
    result: dict
    code: int = EXIT_OK
    diagrams: list = field(default_factory=list)


def _session(spec: JobSpec) -> Session:
    base = build_base(spec)
    options = spec.options
    return Session(
        base,
        build_alpha(spec, base.group),
        budget=options.budget,
        cap=options.cap or DEFAULT_CAP,
        digits=options.digits,
        threads=options.threads,
        extra_modulus=options.extra_modulus,
    )


def _candidate(spec: JobSpec, session: Session):
    return build_candidate(spec.candidate, session.base, q_modulus(spec))


def _verify(spec: JobSpec) -> Outcome:
    session = _session(spec)
    cand = _candidate(spec, session)
    report = session.verify(cand, order_cap=spec.options.cap or ORDER_CAP)
    code = EXIT_OK if report.braid_ok else EXIT_VERIFICATION
    return Outcome({"candidate": cand.to_json(), **report.to_json()}, code)


def _enumerate(spec: JobSpec) -> Outcome:
    session = _session(spec)
    return Outcome(session.enumerate(build_ansatz(spec.ansatz, q_modulus(spec))).to_json())


def _orbits(spec: JobSpec) -> Outcome:
    session = _session(spec)
    sols = session.orbits(build_ansatz(spec.ansatz, q_modulus(spec)), spec.options.actions)
    return Outcome(sols.to_json())


def _spectrum(spec: JobSpec) -> Outcome:
    options = spec.options
    expected, exact = factorized_profile(options.p, options.epsilon, options.x, options.threads)
    match = expected == exact
    result = {
        "p": options.p,
        "epsilon": options.epsilon,
        "x": options.x,
        "case": profile_case(options.p, options.epsilon, options.x),
        "expected": expected.to_json(),
        "exact": exact.to_json(),
        "match": match,
    }
    return Outcome(result, EXIT_OK if match else EXIT_VERIFICATION)


def _center(spec: JobSpec) -> Outcome:
    n = spec.options.n
    basis = _session(spec).center(n)
    return Outcome({"n": n, "dimension": len(basis), "monomials": [list(m) for m in basis]})


def _fixed_dim(spec: JobSpec) -> Outcome:
    n = spec.options.n
    return Outcome({"n": n, "dimension": _session(spec).fixed_dim(n)})


def _bratteli(spec: JobSpec) -> Outcome:
    options = spec.options
    build = bratteli_A if options.kind == "A" else bratteli_C
    diagram = build(options.order, options.depth, options.k)
    return Outcome(diagram.to_json(), diagrams=[diagram])


def _fusion(spec: JobSpec) -> Outcome:
    options = spec.options
    if options.order is not None:
        ring = fusion_ring_D(options.order)
    else:
        ring = fusion_ring_D(build_base(spec).group)
    problems = ring.violations()
    diagram = fusion_bratteli(ring, "Z0", options.depth)
    result = {**ring.to_json(), "violations": problems, "diagram": diagram.to_json()}
    return Outcome(result, EXIT_VERIFICATION if problems else EXIT_OK, [diagram])


def _compare(spec: JobSpec) -> Outcome:
    options = spec.options
    report = compare_towers(options.order, options.depth)
    group = FiniteGroup.abelian(*([report.prime] * report.rank))
    diagrams = [
        fusion_bratteli(fusion_ring_D(group), "Z0", options.depth),
        bratteli_C(report.prime, options.depth, report.rank),
    ]
    return Outcome(report.to_json(), EXIT_OK if report.ok else EXIT_VERIFICATION, diagrams)


def _image_order(spec: JobSpec) -> Outcome:
    session = _session(spec)
    n = spec.options.n
    order = session.image_order(_candidate(spec, session), n)
    if order is None:
        raise BudgetExceeded(session.cap + 1, session.cap, "projective image elements")
    return Outcome({"n": n, "order": order})


def _survey(spec: JobSpec) -> Outcome:
    options = spec.options
    survey = z3z3_survey(options.budget, options.threads, options.p or 3)
    return Outcome(survey.to_json(), EXIT_VERIFICATION if survey.discrepancies else EXIT_OK)


HANDLERS = {
    "verify": _verify,
    "enumerate": _enumerate,
    "orbits": _orbits,
    "spectrum": _spectrum,
    "center": _center,
    "fixed-dim": _fixed_dim,
    "bratteli": _bratteli,
    "fusion": _fusion,
    "compare": _compare,
    "image-order": _image_order,
    "survey-z3z3": _survey,
}


def spec_digest(spec: JobSpec) -> str:
    """sha256 of the canonical job JSON; the thread count does not take part."""
    data = spec.model_dump(mode="json")
    data["options"].pop("threads", None)
    return hashlib.sha256(canonical_json(data).encode()).hexdigest()


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(spec: JobSpec, dot_dir: Path | None = None) -> tuple[dict, int]:
    """
    Run one job.

    Args:
        spec: A validated job.
        dot_dir: Where to write the job's Bratteli diagrams as DOT files.

    Returns:
        The report and the exit code. Errors raised by the library are
        reported, not raised.

    Example::

        report, code = run(JobSpec(command="compare", options={"order": 3, "depth": 4}))
        assert code == 0 and report["result"]["ok"]
    """
    report = {"command": spec.command, "version": __version__, "spec_sha256": spec_digest(spec)}
    try:
        outcome = HANDLERS[spec.command](spec)
    except TwistbraidError as e:
        logger.error("%s failed: %s", spec.command, e)
        error = {"type": type(e).__name__, "message": str(e)}
        if getattr(e, "details", None):
            error["details"] = e.details
        report.update(status=e.exit_code, error=error)
        return report, e.exit_code
    if dot_dir is not None:
        dot_dir.mkdir(parents=True, exist_ok=True)
        for diagram in outcome.diagrams:
            (dot_dir / f"{spec.command}-{diagram.name}.dot").write_text(diagram.to_dot())
    report.update(status=outcome.code, result=outcome.result)
    return report, outcome.code


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="twistbraid",
        description="Braid group representations in twisted tensor products of group algebras.",
    )
    parser.add_argument("--spec", type=Path, help="JSON job file")
    parser.add_argument("--out", type=Path, help="write the report here instead of stdout")
    parser.add_argument("--dot", type=Path, help="directory for DOT diagrams")
    parser.add_argument("--threads", type=_positive)
    parser.add_argument("--budget", type=_positive)
    parser.add_argument("--digits", type=_positive)
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )
    parser.add_argument("--print-schema", action="store_true", help="print the job JSON schema and exit")
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(level=args.log_level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.print_schema:
        sys.stdout.write(render(schema()))
        return EXIT_OK
    if args.spec is None:
        logger.error("--spec is required")
        return EXIT_VALIDATION
    try:
        spec = JobSpec.model_validate_json(args.spec.read_text())
    except OSError as e:
        logger.error("cannot read %s: %s", args.spec, e)
        return EXIT_VALIDATION
    except SchemaError as e:
        logger.error("invalid job %s:\n%s", args.spec, e)
        return EXIT_VALIDATION
    overrides = {
        name: getattr(args, name) for name in ("threads", "budget", "digits") if getattr(args, name) is not None
    }
    if overrides:
        spec = spec.model_copy(update={"options": spec.options.model_copy(update=overrides)})
    report, code = run(spec, args.dot)
    document = render(report)
    if args.out is not None:
        args.out.write_text(document)
    else:
        sys.stdout.write(document)
    return code
