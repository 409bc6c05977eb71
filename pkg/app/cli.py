"""
Command line front end.

    verify {qosc,uq,involution,intertwining,tetrahedron,conservation,boundary,ybe,symmetry}
    dilog check [--identity NAME] [--b-re X --b-im Y] [--tol T] [--samples a,b,..] [--lambda l,..]
    gen rmatrix [--s --t --n --orders --N --format json|csv]
    gen r3d [--N]

Exit codes: 0 when every check passes, 1 when one fails or errors,
2 for usage and configuration errors.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.config import settings
from app.schemas import DILOG_IDENTITIES, EXACT_CHECKS, ConfigError, RunConfig, parse_orders
from app.services.certificate_service import CertificateService

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def float_list(value: str) -> List[float]:
    try:
        return [float(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {value!r}")


LIST_OPTIONS = ("--samples", "--lambda")


def join_list_options(argv: List[str]) -> List[str]:
    """Rewrite ``--samples -0.3,0.2`` as ``--samples=-0.3,0.2``."""
    joined: List[str] = []
    args = iter(argv)
    for arg in args:
        if arg in LIST_OPTIONS:
            value = next(args, None)
            joined.append(arg if value is None else f"{arg}={value}")
        else:
            joined.append(arg)
    return joined


def _add_shape(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", type=int, default=1, help="boundary label of the bra side (1 or 2)")
    parser.add_argument("--t", type=int, default=1, help="boundary label of the ket side (1 or 2)")
    parser.add_argument("--n", type=int, default=1, help="number of sites")
    parser.add_argument("--orders", help="z-orders as 'lo..hi', 'a,b,..' or a single maximum")
    parser.add_argument("--N", dest="cutoff", type=int, help="Fock cutoff of the enumerated states")


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workers", type=int, help=f"parallel workers (default {settings.WORKERS})")
    parser.add_argument("--out", dest="output", help="write the certificate JSON here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tetra", description=settings.APP_NAME)
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="exact verification over Q(i)(q^{1/2})")
    verify.add_argument("target", choices=EXACT_CHECKS)
    _add_shape(verify)
    verify.add_argument("--zigzag", action="store_true", help="use Ŝ instead of S (ybe)")
    verify.add_argument("--cyclic", action="store_true", help="cyclic A^(1)_{n-1} images (uq)")
    _add_run_options(verify)

    dilog = commands.add_parser("dilog", help="numeric identities of the modular layer")
    dilog_commands = dilog.add_subparsers(dest="action", required=True)
    check = dilog_commands.add_parser("check")
    check.add_argument("--identity", choices=DILOG_IDENTITIES)
    check.add_argument("--b-re", dest="b_re", type=float)
    check.add_argument("--b-im", dest="b_im", type=float)
    check.add_argument("--tol", type=float)
    check.add_argument("--samples", type=float_list, help="real sample points σ")
    check.add_argument("--lambda", dest="lambdas", type=float_list, help="λ values for the Fourier identities")
    _add_run_options(check)

    gen = commands.add_parser("gen", help="coefficient tables")
    gen_commands = gen.add_subparsers(dest="action", required=True)
    rmatrix = gen_commands.add_parser("rmatrix", help="S(z) and Ŝ(z) coefficients")
    _add_shape(rmatrix)
    rmatrix.add_argument("--format", choices=("json", "csv"), default="json")
    rmatrix.add_argument("--out", dest="output")
    r3d = gen_commands.add_parser("r3d", help="R coefficients as CSV")
    r3d.add_argument("--N", dest="cutoff", type=int)
    r3d.add_argument("--out", dest="output")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if value is not None}
    values.pop("log_level", None)
    action = values.pop("action", None)
    if args.command == "gen":
        values["command"] = f"gen-{action}"
    elif args.command == "dilog":
        values["target"] = values.pop("identity", None)
    if "orders" in values:
        values["orders"] = parse_orders(values["orders"])
    return RunConfig(**values)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(join_list_options(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS

    if args.log_level:
        logging.getLogger().setLevel(args.log_level.upper())

    try:
        config = config_from_args(args)
    except (ConfigError, ValidationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    service = CertificateService()
    certificate = service.run(config)
    summary = service.summary(certificate)

    if config.command in ("verify", "dilog") and config.output:
        service.write_certificate(certificate, config.output)
        print(summary)
    elif config.command in ("verify", "dilog"):
        print(certificate.model_dump_json(indent=2))
        print(summary, file=sys.stderr)
    else:
        print(summary)
    return EXIT_PASS if certificate.passed else EXIT_FAIL
