"""_summary_
This module provides the runtime configuration shared by every physarum package:
the grid-size cap, the field-priming default and the logging setup, read from
the environment (optionally from a .env file). Settings that only the
command-line runner uses live in physarum.harness.config.

Functions:
    max_cells() -> int:
        Returns the configured maximum number of grid cells (width * height).
    default_prime_ticks(width: int, height: int) -> int:
        Returns the number of field-priming ticks used when a scene does not set one.
    configure_logging(level: Optional[str] = None) -> None:
        Configures the root logger once (INFO unless a level is given).
Environment Variables:
    PHYSARUM_MAX_CELLS: Maximum width*height of a scene grid (default: 4096*4096).
    PHYSARUM_PRIME_TICKS: Optional override of the field-priming length.
"""

import os
import logging
from typing import Optional
from dotenv import load_dotenv
load_dotenv()

DEFAULT_MAX_CELLS = 4096 * 4096
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'
DEFAULT_LOG_LEVEL = 'INFO'


def max_cells() -> int:
    """
    Returns the grid-size cap. Read on every call so tests and the CLI can
    override PHYSARUM_MAX_CELLS after import.
    Returns:
        int: The maximum allowed width * height.
    Raises:
        ValueError: If the variable is set but is not a positive integer.
    """
    raw = os.getenv('PHYSARUM_MAX_CELLS')
    if raw is None or raw.strip() == '':
        return DEFAULT_MAX_CELLS
    value = int(raw)
    if value <= 0:
        raise ValueError(f'PHYSARUM_MAX_CELLS must be positive, got {raw}')
    return value


def default_prime_ticks(width: int, height: int) -> int:
    """
    Returns the field-priming length used when a scene does not specify one.
    Args:
        width (int): Grid width in cells.
        height (int): Grid height in cells.
    Returns:
        int: PHYSARUM_PRIME_TICKS if set, else width + height.
    """
    raw = os.getenv('PHYSARUM_PRIME_TICKS')
    if raw:
        return max(0, int(raw))
    return width + height


def configure_logging(level: Optional[str] = None) -> None:
    """
    Configures the root logger. Calling it again only changes the level.
    Args:
        level (Optional[str]): Level name; defaults to INFO.
    """
    name = (level or DEFAULT_LOG_LEVEL).upper()
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(format=LOG_FORMAT)
    root.setLevel(getattr(logging, name, logging.INFO))
