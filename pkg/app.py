#!/usr/bin/env python3
"""
Command-line entry point for the partial partition automata toolkit

    python app.py verify cover --depth 8
    python app.py run programs/coordi_run.json
"""
import os
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixpoint_ppa.modules.cli import main

if __name__ == '__main__':
    sys.exit(main())
