#!/usr/bin/env python3
"""
Run betagap from a source checkout.

Examples:
    python scripts/betagap.py exact gap-deriv --beta 1 --n 2
    python scripts/betagap.py mc gap --beta 1 --n 1 --eps 0.5 --trials 1000000 --seed 7
    python scripts/betagap.py sweep --quantity volume --beta 2 --n-max 200 --out volume.csv
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from dotenv import load_dotenv

load_dotenv()

from src.cli.main import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
