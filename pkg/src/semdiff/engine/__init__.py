"""Bounded semantic differencing of class diagrams."""

from .diff import (CompareResult, DiffProblem, Verdict, Witness, compare,
                   diff, encode_pair, evolution, restore_attributes)
from .encoding import (BidiAssoc, Composition, ConstraintSet, DiffConfig,
                       FilterKind, NoObj, ObjAttrib, ObjLU, ObjLUAttrib,
                       ObjNoFName, One, TypeRef, lower)

__all__ = [
    "BidiAssoc", "CompareResult", "Composition", "ConstraintSet",
    "DiffConfig", "DiffProblem", "FilterKind", "NoObj", "ObjAttrib", "ObjLU",
    "ObjLUAttrib", "ObjNoFName", "One", "TypeRef", "Verdict", "Witness",
    "compare", "diff", "encode_pair", "evolution", "lower",
    "restore_attributes",
]
