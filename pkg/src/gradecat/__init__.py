"""
gradecat.

Group-graded finite linear categories: walk-degree groups, smash-product
coverings, covering morphisms and fundamental groups relative to a diagram
of connected gradings.
"""

__version__ = "0.1.0"
