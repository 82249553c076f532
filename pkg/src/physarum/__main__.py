"""_summary_
Runs the physarum command-line interface with `python -m physarum`.
"""
import sys

from physarum.harness.cli import main

if __name__ == "__main__":
    sys.exit(main())
