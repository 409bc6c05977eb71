from pydantic import BaseModel, Field, field_validator, model_validator
from typing import Optional, List, Dict, Any, Tuple, Literal
import re

EXACT_CHECKS = (
    "qosc",
    "uq",
    "involution",
    "intertwining",
    "tetrahedron",
    "conservation",
    "boundary",
    "ybe",
    "symmetry",
)

DILOG_IDENTITIES = (
    "difference",
    "unitarity",
    "reflection",
    "product_identity",
    "chi_swap",
    "appendixA1",
    "appendixA2",
    "routes",
    "kernel_symmetry",
    "kernel_convergence",
    "kernel_relation",
)

# run by `dilog check` without --identity
DEFAULT_IDENTITIES = ("difference", "reflection", "product_identity", "chi_swap")

_KERNEL_IDENTITIES = ("kernel_symmetry", "kernel_convergence", "kernel_relation")
_APPENDIX_IDENTITIES = ("appendixA1", "appendixA2")


class ConfigError(ValueError):
    """Raised for a run configuration that no check can accept"""


def parse_orders(value: str) -> List[int]:
    """'0..3' -> [0, 1, 2, 3]; '0,2' -> [0, 2]; '3' -> [0, 1, 2, 3]"""
    value = value.strip()
    match = re.fullmatch(r"(\d+)\.\.(\d+)", value)
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise ConfigError(f"empty order range {value}")
        return list(range(low, high + 1))
    try:
        parts = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"cannot read orders from {value!r}")
    if len(parts) == 1:
        return list(range(parts[0] + 1))
    return parts


class RunConfig(BaseModel):
    """Everything one CLI invocation needs"""
    command: Literal["verify", "dilog", "gen-rmatrix", "gen-r3d"]
    target: Optional[str] = Field(None, description="Check name for verify, identity for dilog")
    s: int = 1
    t: int = 1
    n: int = 1
    cutoff: Optional[int] = Field(None, description="Fock cutoff N of the enumerated states")
    orders: Optional[List[int]] = None
    zigzag: bool = False
    cyclic: bool = False
    b_re: Optional[float] = None
    b_im: Optional[float] = None
    tol: Optional[float] = None
    samples: Optional[List[float]] = None
    lambdas: Optional[List[float]] = None
    output: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    workers: Optional[int] = None

    @field_validator('s', 't')
    @classmethod
    def validate_boundary(cls, v):
        if v not in (1, 2):
            raise ConfigError(f"boundary labels s, t must be 1 or 2, got {v}")
        return v

    @field_validator('n')
    @classmethod
    def validate_n(cls, v):
        if v < 1:
            raise ConfigError(f"n must be >= 1, got {v}")
        return v

    @field_validator('cutoff')
    @classmethod
    def validate_cutoff(cls, v):
        if v is not None and v < 0:
            raise ConfigError(f"cutoff must be >= 0, got {v}")
        return v

    @field_validator('orders')
    @classmethod
    def validate_orders(cls, v):
        if v is not None and (not v or min(v) < 0):
            raise ConfigError(f"orders must be a non-empty list of non-negative integers, got {v}")
        return v

    @field_validator('tol')
    @classmethod
    def validate_tol(cls, v):
        if v is not None and not v > 0:
            raise ConfigError(f"tolerance must be positive, got {v}")
        return v

    @field_validator('workers')
    @classmethod
    def validate_workers(cls, v):
        if v is not None and v < 1:
            raise ConfigError(f"workers must be >= 1, got {v}")
        return v

    @model_validator(mode='after')
    def validate_command(self):
        if self.command == "verify":
            if self.target not in EXACT_CHECKS:
                raise ConfigError(f"unknown verification '{self.target}', expected one of {EXACT_CHECKS}")
            if self.cyclic and (self.target != "uq" or self.n < 2):
                raise ConfigError("the cyclic algebra is checked by 'verify uq' with n >= 2")
        elif self.command == "dilog":
            if self.target is not None and self.target not in DILOG_IDENTITIES:
                raise ConfigError(f"unknown identity '{self.target}', expected one of {DILOG_IDENTITIES}")
            if self.b_re is not None and not self.b_re > 0:
                raise ConfigError(f"Re(b) must be positive, got {self.b_re}")
        return self

    @property
    def identities(self) -> Tuple[str, ...]:
        return (self.target,) if self.target else DEFAULT_IDENTITIES

    def check_params(self) -> List[Tuple[str, Dict[str, Any]]]:
        """(check name, params) for every check this configuration runs"""
        if self.command == "verify":
            return [(self.target, self._exact_params())]
        if self.command == "dilog":
            return [(identity, self._numeric_params(identity)) for identity in self.identities]
        return []

    def _exact_params(self) -> Dict[str, Any]:
        params: Dict[str, Any] = {}
        if self.cutoff is not None:
            params["cutoff"] = self.cutoff
        if self.target in ("uq", "ybe", "symmetry"):
            params.update(s=self.s, t=self.t, n=self.n)
        if self.target == "boundary":
            params["s"] = self.s
        if self.target == "uq" and self.cyclic:
            params["cyclic"] = True
        if self.target in ("ybe", "symmetry") and self.orders is not None:
            params["order"] = max(self.orders)
        if self.target == "ybe" and self.zigzag:
            params["zigzag"] = True
        return params

    def _numeric_params(self, identity: str) -> Dict[str, Any]:
        params: Dict[str, Any] = {}
        for key in ("b_re", "b_im", "tol"):
            value = getattr(self, key)
            if value is not None:
                params[key] = value
        if identity in _APPENDIX_IDENTITIES:
            if self.lambdas is not None:
                params["samples"] = self.lambdas
        elif identity not in _KERNEL_IDENTITIES and self.samples is not None:
            params["samples"] = self.samples
        return params
