from pydantic import BaseModel, Field
from typing import List, Dict, Any
from datetime import datetime, timezone
import hashlib
import json

SCHEMA_VERSION = "1.0"


def content_hash(config: Dict[str, Any], checks: List[Dict[str, Any]], artifacts: List[str]) -> str:
    """sha256 over the canonical JSON of everything except timing"""
    canonical = json.dumps(
        {"config": config, "checks": checks, "artifacts": artifacts},
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        default=str,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class Certificate(BaseModel):
    """Persistent record of one run; identical configs give identical hashes"""
    schema_version: str = SCHEMA_VERSION
    tool_version: str
    config: Dict[str, Any]
    checks: List[Dict[str, Any]] = Field(default_factory=list, description="Reports dumped by alias")
    artifacts: List[str] = Field(default_factory=list, description="Files written by gen commands")
    passed: bool
    content_hash: str
    wall_clock_seconds: float = 0.0
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))

    @classmethod
    def build(
        cls,
        tool_version: str,
        config: Dict[str, Any],
        checks: List[Dict[str, Any]],
        artifacts: List[str],
        wall_clock_seconds: float,
    ) -> "Certificate":
        return cls(
            tool_version=tool_version,
            config=config,
            checks=checks,
            artifacts=artifacts,
            passed=all(check.get("pass", False) for check in checks),
            content_hash=content_hash(config, checks, artifacts),
            wall_clock_seconds=wall_clock_seconds,
        )

    def hash_matches(self) -> bool:
        return self.content_hash == content_hash(self.config, self.checks, self.artifacts)
