import argparse
import asyncio
import json
import sys
from typing import List, Optional, Tuple

from pydantic import ValidationError

from app.models.coefficients import T_TO_ONE, CoefficientRing, encode
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition, PartitionSequence
from app.processors.basis_converter import basis_converter
from app.schemas.documents import ExpansionDocument, TermSchema
from app.services.basis_cache import BasisCacheStore
from app.services.checks import CHECKS
from app.services.kschur_service import kschur_service
from app.services.macdonald_service import macdonald_service
from app.services.table_service import TABLE_KINDS, render_csv, render_text, table_service
from app.services.verification_orchestrator import ALL_CHECKS, VerificationOrchestrator
from app.services.vertex_service import vertex_service
from app.utils.errors import InvalidInput, KSchurError
from app.utils.logger import setup_logger
from config import settings

logger = setup_logger("cli")

OBJECTS = ("kschur", "ksplit", "hall", "macdonald-h", "macdonald-j", "hs")
TARGETS = {
    "schur": Basis.SCHUR,
    "h": Basis.H,
    "e": Basis.E,
    "m": Basis.M,
    "p": Basis.P,
    "kschur": Basis.KSCHUR,
    "ksplit": Basis.KSPLIT,
}
K_OBJECTS = ("kschur", "ksplit")
T1_BASES = {Basis.KSCHUR: Basis.KSCHUR_T1, Basis.KSPLIT: Basis.KSPLIT_T1}

EXIT_OK = 0
EXIT_THEOREM_FAILURE = 1
EXIT_INTERNAL_ERROR = 4


class CliParser(argparse.ArgumentParser):
    """Argument errors exit with the malformed-input code"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(InvalidInput.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="kschur", description=f"{settings.app_name} {settings.version}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    expand = commands.add_parser("expand", help="expand a symmetric function in a chosen basis")
    expand.add_argument("object", choices=OBJECTS)
    expand.add_argument("--index", default="", help='partition "3,2,1" or, for hs, a sequence "2,1;1"')
    expand.add_argument("--k", type=int)
    expand.add_argument("--target", choices=sorted(TARGETS), default="schur")
    expand.add_argument("--t1", action="store_true", help="use the t=1 construction")
    expand.add_argument("--format", choices=("json", "text"), default="json")

    table = commands.add_parser("table", help="coefficient table for one k and degree")
    table.add_argument("kind", choices=TABLE_KINDS)
    table.add_argument("--k", type=int, required=True)
    table.add_argument("--degree", type=int, required=True)
    table.add_argument("--format", choices=("json", "csv", "text"), default="json")
    table.add_argument("--no-cache", action="store_true")

    verify = commands.add_parser("verify", help="run theorem and conjecture checks")
    verify.add_argument("--check", choices=sorted(CHECKS) + [ALL_CHECKS], default=ALL_CHECKS)
    verify.add_argument("--k", type=int)
    verify.add_argument("--max-degree", type=int)
    verify.add_argument("--jobs", type=int, default=settings.default_jobs)
    return parser


def _build_object(args) -> Tuple[str, SymExpansion]:
    """Normalized index text and the requested expansion"""
    if args.object in K_OBJECTS and args.k is None:
        raise InvalidInput(f"{args.object} needs --k")
    if args.object == "hs":
        sequence = PartitionSequence.parse(args.index)
        index, degree = sequence.to_text(), sequence.degree
    else:
        lam = Partition.parse(args.index)
        index, degree = lam.to_text(), lam.degree
    if degree > settings.max_degree:
        raise InvalidInput(f"degree {degree} exceeds the configured maximum {settings.max_degree}")
    if args.t1 and args.object.startswith("macdonald"):
        raise InvalidInput("--t1 does not apply to Macdonald polynomials")

    if args.object == "kschur":
        build = kschur_service.k_schur_t1 if args.t1 else kschur_service.k_schur
        return index, build(args.k, lam)
    if args.object == "ksplit":
        build = kschur_service.k_split_poly_t1 if args.t1 else kschur_service.k_split_poly
        return index, build(args.k, lam)
    if args.object == "macdonald-h":
        return index, macdonald_service.macdonald_h(lam)
    if args.object == "macdonald-j":
        return index, macdonald_service.macdonald_j(lam)
    built = vertex_service.h_s(sequence) if args.object == "hs" else vertex_service.hall_littlewood(lam)
    return index, built.specialize_t(T_TO_ONE) if args.t1 else built


def _convert(f: SymExpansion, target: Basis, k: Optional[int], t1: bool) -> SymExpansion:
    if target in (Basis.KSCHUR, Basis.KSPLIT):
        if k is None:
            raise InvalidInput(f"--target {target.value.lower()} needs --k")
        if t1:
            return basis_converter.to_basis(f, T1_BASES[target], k)
        converted = basis_converter.to_basis(f, target, k)
        if f.ring == CoefficientRing.POLY_QT:
            return converted.narrow(CoefficientRing.POLY_QT)
        return converted
    return basis_converter.to_basis(f, target)


def cmd_expand(args) -> int:
    index, built = _build_object(args)
    expansion = _convert(built, TARGETS[args.target], args.k, args.t1)
    if args.format == "text":
        print(expansion.to_text())
        return EXIT_OK
    document = ExpansionDocument(
        object=args.object,
        index=index,
        k=args.k if expansion.k is None else expansion.k,
        basis=expansion.basis.value,
        ring=expansion.ring.value,
        terms=[TermSchema(index=list(lam), coeff=encode(c)) for lam, c in expansion.sorted_terms()],
    )
    print(json.dumps(document.model_dump(mode="json"), indent=2))
    return EXIT_OK


def cmd_table(args) -> int:
    store = BasisCacheStore(enabled=settings.cache_enabled and not args.no_cache)
    store.load()
    document = table_service.build_table(args.kind, args.k, args.degree)
    store.save()
    if args.format == "csv":
        sys.stdout.write(render_csv(document))
    elif args.format == "text":
        sys.stdout.write(render_text(document))
    else:
        print(json.dumps(document.model_dump(mode="json"), indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.jobs < 1:
        raise InvalidInput(f"--jobs must be positive, got {args.jobs}")
    orchestrator = VerificationOrchestrator(jobs=args.jobs)
    report = asyncio.run(orchestrator.verify(args.check, args.k, args.max_degree))
    print(json.dumps(report.model_dump(mode="json"), indent=2))
    if report.theorem_failures:
        logger.log_error("Theorem checks failed", failures=report.theorem_failures)
        return EXIT_THEOREM_FAILURE
    if report.conjecture_counterexamples:
        logger.log_warning("Conjecture counterexamples found", count=report.conjecture_counterexamples)
    return EXIT_OK


COMMANDS = {"expand": cmd_expand, "table": cmd_table, "verify": cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            return COMMANDS[args.command](args)
        except ValidationError as e:
            raise InvalidInput("malformed document", {"errors": e.errors(include_url=False)}) from e
    except KSchurError as e:
        logger.log_error("Command failed", command=args.command, details=e.to_dict())
        print(json.dumps(e.to_dict(), default=str), file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.log_error("Command crashed", command=args.command, error=repr(e))
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_INTERNAL_ERROR
