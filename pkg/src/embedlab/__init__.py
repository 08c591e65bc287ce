"""Finite, checkable versions of embedding constructions for Sym, Se, End, Eq and Rel."""

from .ground import FinSuppEndo, LevelInvolution, LevelPoint
from .partitions import Partition
from .relations import RelMat
from .words import CopWord, Factor, reduce

__all__ = ["CopWord", "Factor", "FinSuppEndo", "LevelInvolution", "LevelPoint", "Partition", "RelMat", "reduce"]
__version__ = "0.1.0"
