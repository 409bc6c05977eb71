from .report import VerificationReport, IdentityReport
from .run_config import RunConfig, ConfigError, EXACT_CHECKS, DILOG_IDENTITIES, DEFAULT_IDENTITIES, parse_orders
from .certificate import Certificate, SCHEMA_VERSION, content_hash

__all__ = [
    # Report schemas
    "VerificationReport",
    "IdentityReport",

    # Run configuration
    "RunConfig",
    "ConfigError",
    "EXACT_CHECKS",
    "DILOG_IDENTITIES",
    "DEFAULT_IDENTITIES",
    "parse_orders",

    # Certificates
    "Certificate",
    "SCHEMA_VERSION",
    "content_hash",
]
