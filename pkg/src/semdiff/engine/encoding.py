"""Lowering a diagram pair to one bounded constraint problem.

Each diagram becomes a flat list of constraints over a shared universe.  The
constraint classes are named after the predicates they realise, so a lowered
diagram reads much like the relational encoding it replaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..cd.abstraction import abstract_attributes
from ..cd.ast import ClassDiagram
from ..cd.flatten import FlatClassDiagram, flatten
from ..cd.universe import SignatureUniverse, build_universe, strip_common
from ..filters import FilterKind

Value = tuple[str, str, str]  # ("prim", type, "") or ("enum", enum, literal)


@dataclass(frozen=True)
class DiffConfig:
    scope: int = 5
    max_witnesses: int = 20
    filter: FilterKind = FilterKind.NONE
    abstract_attributes: bool = False
    strip_common: bool = True

    def __post_init__(self):
        if self.scope < 0:
            raise ValueError("scope must be non-negative")
        if self.max_witnesses < 1:
            raise ValueError("max_witnesses must be at least 1")


@dataclass(frozen=True)
class TypeRef:
    """A type name together with the concrete classes conforming to it."""

    name: str
    members: frozenset[str]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class NoObj:
    cls: str
    predicate = "NoObj"


@dataclass(frozen=True)
class One:
    """Exactly one object conforms to ``type``."""

    type: TypeRef
    predicate = "One"


@dataclass(frozen=True)
class ObjAttrib:
    """Every ``cls`` object holds exactly one ``field`` value from ``values``."""

    cls: str
    field: str
    values: tuple[Value, ...]
    predicate = "ObjAttrib"


@dataclass(frozen=True)
class ObjNoFName:
    """``cls`` objects carry no field outside ``allowed``."""

    cls: str
    allowed: frozenset[str]
    predicate = "ObjNoFName"


@dataclass(frozen=True)
class ObjLUAttrib:
    """Objects of ``src`` link via ``field`` to ``lower..upper`` objects of ``tgt``."""

    src: TypeRef
    field: str
    tgt: TypeRef
    lower: int
    upper: Optional[int]
    predicate = "ObjLUAttrib"


@dataclass(frozen=True)
class ObjLU:
    """Objects of ``tgt`` are linked via ``field`` by ``lower..upper`` objects of ``src``."""

    src: TypeRef
    field: str
    tgt: TypeRef
    lower: int
    upper: Optional[int]

    @property
    def predicate(self) -> str:
        return "ObjL" if self.upper is None else "ObjLU"


@dataclass(frozen=True)
class BidiAssoc:
    left: TypeRef
    forward: str
    right: TypeRef
    backward: str
    predicate = "BidiAssoc"


@dataclass(frozen=True)
class Composition:
    """Every ``part`` object has exactly one ``whole`` linking it via ``field``."""

    whole: TypeRef
    field: str
    part: TypeRef
    predicate = "Composition"


Constraint = Union[NoObj, One, ObjAttrib, ObjNoFName, ObjLUAttrib, ObjLU,
                   BidiAssoc, Composition]


@dataclass(frozen=True)
class ConstraintSet:
    name: str
    constraints: tuple[Constraint, ...]

    def by_predicate(self, predicate: str) -> list[Constraint]:
        return [c for c in self.constraints if c.predicate == predicate]

    def of_type(self, kind: type) -> list:
        return [c for c in self.constraints if isinstance(c, kind)]


def lower(fcd: FlatClassDiagram, universe: SignatureUniverse) -> ConstraintSet:
    """Translate ``fcd`` into constraints over ``universe``."""
    out: list[Constraint] = []

    def ref(name: str) -> TypeRef:
        return TypeRef(name, fcd.subtype_sets.get(name, frozenset()))

    for cls in universe.class_names:
        if cls not in fcd.concrete_classes:
            out.append(NoObj(cls))
    for cls in sorted(fcd.singleton_classes):
        out.append(One(ref(cls)))
    for cls in sorted(fcd.concrete_classes):
        for attr in fcd.flat_attrs[cls]:
            if attr.type_name in fcd.enum_values:
                values = tuple(("enum", attr.type_name, lit)
                               for lit in fcd.enum_values[attr.type_name])
            else:
                values = (("prim", attr.type_name, ""),)
            out.append(ObjAttrib(cls, attr.name, values))
        out.append(ObjNoFName(cls, fcd.fields(cls)))
    for a in fcd.associations:
        left, right = ref(a.left), ref(a.right)
        rm, lm = a.right_mult, a.left_mult
        out.append(ObjLUAttrib(left, a.forward_role, right, rm.lower, rm.upper))
        if a.bidirectional:
            out.append(ObjLUAttrib(right, a.backward_role, left,
                                   lm.lower, lm.upper))
            out.append(BidiAssoc(left, a.forward_role, right, a.backward_role))
        elif lm.lower > 0 or lm.upper is not None:
            out.append(ObjLU(left, a.forward_role, right, lm.lower, lm.upper))
        if a.is_composition:
            out.append(Composition(left, a.forward_role, right))
    return ConstraintSet(fcd.name, tuple(out))


@dataclass
class EncodedPair:
    """Everything the search needs, plus the pre-strip views for reporting."""

    left: FlatClassDiagram
    right: FlatClassDiagram
    original_left: FlatClassDiagram
    original_right: FlatClassDiagram
    universe: SignatureUniverse
    left_constraints: ConstraintSet
    right_constraints: ConstraintSet
    config: DiffConfig = field(default_factory=DiffConfig)


def encode(cd1: ClassDiagram | FlatClassDiagram,
           cd2: ClassDiagram | FlatClassDiagram,
           cfg: DiffConfig) -> EncodedPair:
    if cfg.abstract_attributes:
        cd1, cd2 = abstract_attributes(cd1), abstract_attributes(cd2)
    full1 = cd1 if isinstance(cd1, FlatClassDiagram) else flatten(cd1)
    full2 = cd2 if isinstance(cd2, FlatClassDiagram) else flatten(cd2)
    if cfg.strip_common:
        left, right = strip_common(full1, full2)
    else:
        left, right = full1, full2
    universe = build_universe(left, right)
    return EncodedPair(left, right, full1, full2, universe,
                       lower(left, universe), lower(right, universe), cfg)
