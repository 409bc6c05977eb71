from pydantic_settings import BaseSettings
from pydantic import field_validator
from typing import List, Union
import json
import math
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

class Settings(BaseSettings):
    # Application Settings
    APP_NAME: str = "Tetrahedron Verifier"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Work dispatch
    WORKERS: int = 1
    TASK_BACKEND: str = "local"  # local, celery
    CHUNK_SIZE: int = 64
    WITNESS_CAP: int = 10

    # Celery (memory transport unless a broker such as redis is configured)
    CELERY_BROKER_URL: str = "memory://"
    CELERY_RESULT_BACKEND: str = "cache+memory://"
    CELERY_TASK_ALWAYS_EAGER: bool = True

    # Exact layer defaults
    DEFAULT_FOCK_CUTOFF: int = 3
    DEFAULT_Z_ORDER: int = 4

    # Modular layer defaults: b = e^{iπ/5} and b = 0.8 + 0.3i
    STRONG_COUPLING_B_RE: float = math.cos(math.pi / 5)
    STRONG_COUPLING_B_IM: float = math.sin(math.pi / 5)
    PRODUCT_REGIME_B_RE: float = 0.8
    PRODUCT_REGIME_B_IM: float = 0.3
    KERNEL_RELATION_B_RE: float = 0.4
    KERNEL_RELATION_B_IM: float = 0.2
    DILOG_TOLERANCE: float = 1e-8
    INTEGRAL_TOLERANCE: float = 1e-6
    KERNEL_RELATION_TOLERANCE: float = 1e-5
    QUAD_LIMIT: int = 2000
    QUAD_EPSABS: float = 1e-12
    QUAD_EPSREL: float = 1e-12

    # Sample points for dilog check
    DILOG_SAMPLES: Union[List[float], str] = "-1.1,-0.8,-0.5,-0.25,-0.1,0.1,0.25,0.5,0.8,1.1"
    APPENDIX_LAMBDAS: Union[List[float], str] = "-0.15,0.1,0.2"

    @field_validator('DILOG_SAMPLES', 'APPENDIX_LAMBDAS', mode='before')
    @classmethod
    def parse_points(cls, v):
        if isinstance(v, str):
            try:
                parsed = json.loads(v)
                return [float(x) for x in parsed] if isinstance(parsed, list) else [float(parsed)]
            except json.JSONDecodeError:
                # If it's a comma-separated string
                return [float(x.strip()) for x in v.split(',') if x.strip()]
        return v

    @field_validator('TASK_BACKEND')
    @classmethod
    def check_backend(cls, v):
        if v not in ("local", "celery"):
            raise ValueError(f"TASK_BACKEND must be 'local' or 'celery', got {v!r}")
        return v

    model_config = {
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "allow"
    }

settings = Settings()
