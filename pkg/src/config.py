"""Path constants, environment variable loading and logging setup."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Callable, Iterable, TypeVar

from dotenv import load_dotenv

load_dotenv()

T = TypeVar("T")
R = TypeVar("R")

REPO_ROOT = Path(__file__).resolve().parent.parent

# --- Paths ---
DATA_DIR = Path(os.environ.get("DATA_DIR", str(REPO_ROOT / "data")))
CORPUS_DIR = Path(os.environ.get("CORPUS_DIR", str(DATA_DIR / "corpus")))

# --- Parallelism ---
THREADS = int(os.environ.get("FEWXC_THREADS", str(os.cpu_count() or 1)))

# --- Search guards ---
COVER_GUARD = int(os.environ.get("FEWXC_COVER_GUARD", "200"))      # max m*n for exact covers
COVER_NODES = int(os.environ.get("FEWXC_COVER_NODES", "200000"))   # branch-and-bound budget
GALE_MAX_DIM = int(os.environ.get("FEWXC_GALE_MAX_DIM", "8"))

# --- Corpus ---
SEED = int(os.environ.get("FEWXC_SEED", "0"))


def setup_logging() -> logging.Logger:
    """Configure and return the application logger.

    Console: INFO level, message-only format on stderr.
    File: DEBUG level, timestamped, rotating 5MB/3 backups.
    """
    logger = logging.getLogger("fewxc")
    if logger.handlers:
        return logger
    logger.setLevel(logging.DEBUG)

    console = logging.StreamHandler()
    console.setLevel(logging.INFO)
    console.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(console)

    log_dir = REPO_ROOT / "private"
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_dir / "fewxc.log",
            maxBytes=5 * 1024 * 1024,
            backupCount=3,
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)-8s %(name)s: %(message)s")
        )
        logger.addHandler(file_handler)
    except OSError:
        pass  # read-only checkout

    return logger


def validate_config() -> list[str]:
    """Check that the environment settings are usable. Returns list of error messages."""
    errors = []
    if THREADS < 1:
        errors.append(f"FEWXC_THREADS must be at least 1, got {THREADS}")
    if COVER_GUARD < 1:
        errors.append(f"FEWXC_COVER_GUARD must be positive, got {COVER_GUARD}")
    if COVER_NODES < 1:
        errors.append(f"FEWXC_COVER_NODES must be positive, got {COVER_NODES}")
    if not 2 <= GALE_MAX_DIM <= 8:
        errors.append(f"FEWXC_GALE_MAX_DIM must be between 2 and 8, got {GALE_MAX_DIM}")
    return errors


# --- Fan-out ---


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map over a thread pool capped by THREADS; results keep input order."""
    items = list(items)
    workers = max(1, min(THREADS, len(items)))
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
