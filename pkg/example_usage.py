#!/usr/bin/env python3
"""
Example usage of gradecat

This script computes the fundamental group of kC2 relative to the shipped
diagram, first through the library and then through the CLI entry point.
"""

import sys

from gradecat.coverings.pi1 import build_diagram, relative_pi1
from gradecat.main import main
from gradecat.tools import fixtures

if __name__ == "__main__":
    loaded = fixtures.load_diagram("kc2")
    diagram = build_diagram(loaded.category, loaded.base_object, loaded.gradings)
    limit = relative_pi1(diagram)
    print(f"free rank {limit.free_rank}, invariant factors {list(limit.torsion)}")

    # Same computation through the command line
    sys.argv = [
        "gradecat",
        "pi1",
        "--diagram", str(fixtures.fixture_path("diagrams", "kc2")),
    ]

    sys.exit(main())
