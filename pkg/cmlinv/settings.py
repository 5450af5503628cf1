# Basic settings for cmlinv
import os


class Settings:
    PRECISION: int = int(os.getenv("CMLINV_PRECISION", "60"))
    QMAX: int = int(os.getenv("CMLINV_QMAX", "1000"))
    DEPTH: int = int(os.getenv("CMLINV_DEPTH", "6"))
    THREADS: int = int(os.getenv("CMLINV_THREADS", "1"))
    LOG_LEVEL: str = os.getenv("CMLINV_LOG_LEVEL", "INFO")

    # Cache settings
    CACHE_DIR: str = os.getenv("CMLINV_CACHE_DIR", os.path.expanduser("~/.cache/cmlinv"))
    CACHE_FILE: str = os.getenv("CMLINV_CACHE_FILE", "artifacts.jsonl")

    # Search and numerics
    SEARCH_BOUND: int = int(os.getenv("CMLINV_SEARCH_BOUND", str(10**12)))
    GUARD_DIGITS: int = int(os.getenv("CMLINV_GUARD_DIGITS", "30"))
    CLASS_POLY_MAX_H: int = int(os.getenv("CMLINV_CLASS_POLY_MAX_H", "64"))

    # Equalities are asserted this many digits below working precision
    TOLERANCE_DIGITS: int = 5

    def cache_path(self) -> str:
        return os.path.join(self.CACHE_DIR, self.CACHE_FILE)


settings = Settings()
