"""Twisted K-theory on circle bundles over a manifold, made executable.

Subpackages cover exact lattice algebra (``zlinalg``), the gluing computation
of twisted K-groups (``ktheory``), a truncated spinor-Fock simulator
(``fock``), symbolic Cech cocycles (``cech``) and rational form algebra with
superconnection characters (``forms``).
"""

__version__ = "0.1.0"
