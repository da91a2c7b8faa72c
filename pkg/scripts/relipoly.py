#!/usr/bin/env python3
"""
scripts/relipoly.py — Lanceur sans installation de la CLI relipoly.

Usage :
    python scripts/relipoly.py nk --graph data/fixtures/toy.edges --rule two_terminal --source S --target T
    python scripts/relipoly.py repro table2
"""

import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
