"""Exact-arithmetic workbench for maximal subalgebras of classical linear Lie superalgebras."""

from .algebras import LieSuperAlgebra, by_name
from .maxcheck import MaximalityReport, registry, verify_maximal, verify_row

__all__ = ["LieSuperAlgebra", "MaximalityReport", "by_name", "registry", "verify_maximal", "verify_row"]
__version__ = "0.1.0"
