"""Abstract syntax of textual class diagrams.

All nodes are frozen dataclasses holding tuples, so diagrams are hashable
and compare structurally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

#: Attribute types that are not declared in the diagram itself.  Their value
#: domain is never modeled; every slot of such a type holds one placeholder.
PRIMITIVE_TYPES = frozenset({
    "String", "int", "Integer", "long", "Long", "short", "Short", "byte",
    "Byte", "double", "Double", "float", "Float", "boolean", "Boolean",
    "char", "Character", "Date",
})


class AssocKind(enum.Enum):
    PLAIN = "plain"
    AGGREGATION = "aggregation"
    COMPOSITION = "composition"


class Navigability(enum.Enum):
    LEFT_TO_RIGHT = "->"
    BIDIRECTIONAL = "<->"


@dataclass(frozen=True)
class Multiplicity:
    lower: int
    upper: Optional[int]  # None means unbounded

    def __post_init__(self):
        if self.lower < 0 or (self.upper is not None and self.upper < 0):
            raise ValueError("multiplicity bounds must be non-negative")

    @property
    def is_valid(self) -> bool:
        return self.upper is None or self.lower <= self.upper

    def admits(self, count: int) -> bool:
        return count >= self.lower and (self.upper is None or count <= self.upper)

    def __str__(self) -> str:
        if self.upper is None:
            return "*" if self.lower == 0 else f"{self.lower}..*"
        if self.lower == self.upper:
            return str(self.lower)
        return f"{self.lower}..{self.upper}"


#: Interpretation of an omitted multiplicity.
MANY = Multiplicity(0, None)


@dataclass(frozen=True)
class Attribute:
    name: str
    type_name: str


@dataclass(frozen=True)
class ClassDecl:
    name: str
    is_abstract: bool = False
    is_singleton: bool = False
    superclass: Optional[str] = None
    interfaces: tuple[str, ...] = ()
    attributes: tuple[Attribute, ...] = ()


@dataclass(frozen=True)
class InterfaceDecl:
    name: str
    extends: tuple[str, ...] = ()


@dataclass(frozen=True)
class EnumDecl:
    name: str
    literals: tuple[str, ...]


@dataclass(frozen=True)
class AssocDecl:
    """``left [left_mult] (left_role) ARROW (right_role) [right_mult] right``.

    ``right_role`` is the field stored on left-type objects and constrained by
    ``right_mult``; ``left_role`` is the field stored on right-type objects
    (only navigable for bidirectional associations).
    """

    left_type: str
    right_type: str
    navigability: Navigability = Navigability.LEFT_TO_RIGHT
    kind: AssocKind = AssocKind.PLAIN
    left_role: Optional[str] = None
    right_role: Optional[str] = None
    left_mult: Optional[Multiplicity] = None
    right_mult: Optional[Multiplicity] = None

    @property
    def bidirectional(self) -> bool:
        return self.navigability is Navigability.BIDIRECTIONAL

    @property
    def effective_left_mult(self) -> Multiplicity:
        return self.left_mult if self.left_mult is not None else MANY

    @property
    def effective_right_mult(self) -> Multiplicity:
        return self.right_mult if self.right_mult is not None else MANY


@dataclass(frozen=True)
class ClassDiagram:
    name: str
    classes: tuple[ClassDecl, ...] = ()
    interfaces: tuple[InterfaceDecl, ...] = ()
    enums: tuple[EnumDecl, ...] = ()
    associations: tuple[AssocDecl, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False,
                         hash=False)

    def _lookup(self) -> dict:
        if self._index is None:
            idx: dict[str, object] = {}
            for decl in (*self.enums, *self.interfaces, *self.classes):
                idx.setdefault(decl.name, decl)
            object.__setattr__(self, "_index", idx)
        return self._index

    def declaration(self, name: str):
        return self._lookup().get(name)

    def get_class(self, name: str) -> Optional[ClassDecl]:
        decl = self.declaration(name)
        return decl if isinstance(decl, ClassDecl) else None

    def get_enum(self, name: str) -> Optional[EnumDecl]:
        decl = self.declaration(name)
        return decl if isinstance(decl, EnumDecl) else None

    def kind_of(self, name: str) -> Optional[str]:
        """'class', 'interface', 'enum' or None for undeclared names."""
        decl = self.declaration(name)
        if isinstance(decl, ClassDecl):
            return "class"
        if isinstance(decl, InterfaceDecl):
            return "interface"
        if isinstance(decl, EnumDecl):
            return "enum"
        return None

    def type_names(self) -> list[str]:
        return [d.name for d in (*self.classes, *self.interfaces, *self.enums)]
