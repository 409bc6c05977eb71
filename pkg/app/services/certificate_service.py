"""
Certificate Service

Runs the checks or generators named by a RunConfig and records the outcome
as a hash-stable Certificate plus a short human-readable summary.
"""

import csv
import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from app.checks import CheckRegistry, run_check
from app.config import settings
from app.schemas import Certificate, IdentityReport, RunConfig, VerificationReport
from app.services.mpo_service import s_matrix_rows
from app.services.r3d_service import coefficient_rows

logger = logging.getLogger(__name__)

DEFAULT_OUTPUTS = {"gen-rmatrix": "rmatrix", "gen-r3d": "r3d.csv"}


class CertificateService:
    """Turns a RunConfig into a Certificate"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    def run(self, config: RunConfig) -> Certificate:
        started = time.perf_counter()
        artifacts: List[str] = []
        checks: List[Dict[str, Any]] = []

        if config.command == "gen-rmatrix":
            artifacts.append(self.write_rmatrix(config))
        elif config.command == "gen-r3d":
            artifacts.append(self.write_r3d(config))
        else:
            workers = config.workers or self.workers
            for name, params in config.check_params():
                checks.append(self.run_one(name, params, workers))

        certificate = Certificate.build(
            tool_version=settings.VERSION,
            config=config.model_dump(mode="json"),
            checks=checks,
            artifacts=artifacts,
            wall_clock_seconds=round(time.perf_counter() - started, 3),
        )
        self.logger.info(
            f"{config.command} {config.target or ''} finished: "
            f"passed={certificate.passed}, hash={certificate.content_hash[:12]}"
        )
        return certificate

    def run_one(self, name: str, params: Dict[str, Any], workers: Optional[int]) -> Dict[str, Any]:
        result = run_check(name, params, workers)
        check_class = CheckRegistry.get_check(name)
        if check_class is not None and check_class.kind == "numeric":
            report = IdentityReport.from_result(result)
        else:
            report = VerificationReport.from_result(result)
        return report.model_dump(by_alias=True, mode="json")

    # --- generators ----------------------------------------------------------

    def write_rmatrix(self, config: RunConfig) -> str:
        """Coefficient table of S(z) and Ŝ(z) as JSON or CSV"""
        orders = config.orders or list(range(settings.DEFAULT_Z_ORDER + 1))
        cutoff = settings.DEFAULT_FOCK_CUTOFF if config.cutoff is None else config.cutoff
        tables = {
            "S": s_matrix_rows(config.s, config.t, config.n, orders, cutoff),
            "S_hat": s_matrix_rows(config.s, config.t, config.n, orders, cutoff, zigzag=True),
        }
        path = Path(config.output or f"{DEFAULT_OUTPUTS['gen-rmatrix']}.{config.format}")
        path.parent.mkdir(parents=True, exist_ok=True)

        if config.format == "json":
            payload = {"s": config.s, "t": config.t, "n": config.n, "orders": orders, "cutoff": cutoff, **tables}
            path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        else:
            with path.open("w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(["matrix", "z_order", "in_state", "out_state", "coeff"])
                for matrix, rows in tables.items():
                    for row in rows:
                        writer.writerow(
                            [
                                matrix,
                                row["z_order"],
                                " ".join(map(str, row["in_state"])),
                                " ".join(map(str, row["out_state"])),
                                row["coeff"],
                            ]
                        )
        self.logger.info(f"Wrote {sum(len(rows) for rows in tables.values())} S entries to {path}")
        return str(path)

    def write_r3d(self, config: RunConfig) -> str:
        """Every nonzero R^{abc}_{ijk} with inputs <= cutoff as CSV"""
        cutoff = settings.DEFAULT_FOCK_CUTOFF if config.cutoff is None else config.cutoff
        path = Path(config.output or DEFAULT_OUTPUTS["gen-r3d"])
        path.parent.mkdir(parents=True, exist_ok=True)
        rows = coefficient_rows(cutoff)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["a", "b", "c", "i", "j", "k", "scalar"])
            for *indices, scalar in rows:
                writer.writerow([*indices, str(scalar)])
        self.logger.info(f"Wrote {len(rows)} R coefficients to {path}")
        return str(path)

    # --- output -------------------------------------------------------------

    @staticmethod
    def write_certificate(certificate: Certificate, path: str) -> None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(certificate.model_dump_json(indent=2) + "\n", encoding="utf-8")

    @staticmethod
    def summary(certificate: Certificate) -> str:
        lines = [f"{settings.APP_NAME} {certificate.tool_version}"]
        for check in certificate.checks:
            verdict = "PASS" if check["pass"] else check["status"].upper()
            if "identity" in check:
                detail = (
                    f"{check['samples']} samples, max residual "
                    f"{_format_float(check['max_residual'])} (tol {_format_float(check['tolerance'])})"
                )
                lines.append(f"  {check['identity']}: {verdict} ({detail})")
            else:
                lines.append(f"  {check['relation']}: {verdict} ({check['states_checked']} checked)")
            if check["witness_count"]:
                lines.append(f"    {check['witness_count']} witnesses, first: {check['witnesses'][0]}")
            elif check["status"] == "error":
                lines.append(f"    {check['message']}")
        for artifact in certificate.artifacts:
            lines.append(f"  wrote {artifact}")
        lines.append(f"content hash {certificate.content_hash}")
        return "\n".join(lines)


def _format_float(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.2e}"


def run(config: RunConfig, workers: Optional[int] = None) -> Certificate:
    """Execute ``config`` and return its certificate"""
    return CertificateService(workers).run(config)
