"""Attribute abstraction: forget attributes of primitive type."""

from __future__ import annotations

from dataclasses import replace
from types import MappingProxyType

from .ast import ClassDiagram
from .flatten import FlatClassDiagram


def abstract_attributes(cd: ClassDiagram | FlatClassDiagram):
    """Drop every attribute of primitive type; enum attributes stay."""
    if isinstance(cd, FlatClassDiagram):
        attrs = {cls: tuple(a for a in attrs if a.type_name in cd.enum_values)
                 for cls, attrs in cd.flat_attrs.items()}
        return replace(cd, flat_attrs=MappingProxyType(attrs))
    enums = {e.name for e in cd.enums}
    classes = tuple(
        replace(c, attributes=tuple(a for a in c.attributes
                                    if a.type_name in enums))
        for c in cd.classes)
    return replace(cd, classes=classes)
