"""Exact tools for parahoric torsors on the projective line.

Root systems and alcoves, parabolic bundles with extended weights, quantum
Schubert calculus on Grassmannians, the walls of the (semi)stable polytope
and a numeric unitary witness search.
"""

__version__ = "0.1.0"
