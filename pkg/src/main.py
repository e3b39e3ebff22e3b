"""
Entry point for the sharp Taylor enclosure CLI.

Usage:
    python src/main.py enclose --f exp --k 2 --x0 0.5 --region 0,2
    python src/main.py --help
"""

import sys

from dotenv import load_dotenv

from cli import run
from config import setup_cli_logging

if __name__ == "__main__":
    load_dotenv()
    setup_cli_logging()
    sys.exit(run(sys.argv[1:]))
