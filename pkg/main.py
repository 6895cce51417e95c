#!/usr/bin/env python3
"""
Main entry point for monotest
Monotonicity testers and exact verifiers for Boolean functions on the hypercube
"""

import sys

from monotest.harness.cli import main

if __name__ == "__main__":
    sys.exit(main())
