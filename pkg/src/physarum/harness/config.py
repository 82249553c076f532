"""_summary_
Configuration module for the experiment harness.
This module loads environment variables from a .env file and provides a Config class
with the defaults the command-line runner falls back to.
"""

import os
from dataclasses import dataclass
from dotenv import load_dotenv
load_dotenv()


@dataclass
class Config:
    """
    Configuration class for the experiment harness.
    Attributes:
        OUTPUT_DIR (str): Default --out directory of `physarum run`.
        LOG_LEVEL (str): Logging level name used by the CLI.
        BISECTOR_TOLERANCE (int): Chebyshev tolerance (cells) of bisector coverage.
        NODE_TOLERANCE_CELLS (float): Node matching tolerance in cell widths.
        CONTINUATION_TICKS (int): Ticks run after completion by the continuation experiment.
    """
    OUTPUT_DIR = os.getenv("PHYSARUM_OUTPUT_DIR", "./runs")
    LOG_LEVEL = os.getenv("PHYSARUM_LOG_LEVEL", "INFO")
    BISECTOR_TOLERANCE = int(os.getenv("PHYSARUM_BISECTOR_TOLERANCE", "2"))
    NODE_TOLERANCE_CELLS = float(os.getenv("PHYSARUM_NODE_TOLERANCE_CELLS", "3"))
    CONTINUATION_TICKS = int(os.getenv("PHYSARUM_CONTINUATION_TICKS", "500"))
