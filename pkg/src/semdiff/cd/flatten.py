"""Inheritance flattening: the view of a diagram that semantics works on."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from .ast import AssocKind, Attribute, ClassDiagram, Multiplicity
from .checks import superclass_chain, supertypes


@dataclass(frozen=True)
class FlatAssoc:
    """An association lowered onto concrete subtype sets.

    ``forward_role`` is the field on objects conforming to ``left``; it is
    bounded by ``right_mult``.  ``backward_role`` is the field on objects
    conforming to ``right`` and only exists for bidirectional associations;
    a unidirectional association may still name its left end.
    """

    left: str
    right: str
    forward_role: str
    left_role: Optional[str]
    bidirectional: bool
    left_mult: Multiplicity
    right_mult: Multiplicity
    kind: AssocKind

    @property
    def backward_role(self) -> Optional[str]:
        return self.left_role if self.bidirectional else None

    @property
    def is_composition(self) -> bool:
        return self.kind is AssocKind.COMPOSITION


@dataclass(frozen=True)
class FlatClassDiagram:
    name: str
    class_names: frozenset[str]
    concrete_classes: frozenset[str]
    singleton_classes: frozenset[str]
    interface_names: frozenset[str]
    flat_attrs: Mapping[str, tuple[Attribute, ...]]
    subtype_sets: Mapping[str, frozenset[str]]
    enum_values: Mapping[str, tuple[str, ...]]
    associations: tuple[FlatAssoc, ...]
    _roles: Mapping[str, tuple[str, ...]] = field(default=None, init=False,
                                                  repr=False, compare=False,
                                                  hash=False)

    def __post_init__(self):
        roles: dict[str, list[str]] = {c: [] for c in self.class_names}
        for a in self.associations:
            for c in self.subtype_sets.get(a.left, ()):
                roles[c].append(a.forward_role)
            if a.backward_role is not None:
                for c in self.subtype_sets.get(a.right, ()):
                    roles[c].append(a.backward_role)
        frozen = {c: tuple(rs) for c, rs in roles.items()}
        object.__setattr__(self, "_roles", MappingProxyType(frozen))

    def roles(self, cls: str) -> tuple[str, ...]:
        """Role names navigable from objects of concrete class ``cls``."""
        return self._roles.get(cls, ())

    def fields(self, cls: str) -> frozenset[str]:
        return frozenset(a.name for a in self.flat_attrs.get(cls, ())) \
            | frozenset(self.roles(cls))

    def conforms(self, cls: str, type_name: str) -> bool:
        return cls in self.subtype_sets.get(type_name, ())


def flatten(cd: ClassDiagram) -> FlatClassDiagram:
    """Pull inherited attributes down and compute concrete subtype sets.

    ``cd`` must satisfy the context conditions.
    """
    class_names = frozenset(c.name for c in cd.classes)
    concrete = frozenset(c.name for c in cd.classes if not c.is_abstract)

    flat_attrs = {}
    for c in cd.classes:
        chain = superclass_chain(cd, c.name)
        attrs = []
        for ancestor in reversed(chain):
            attrs.extend(cd.get_class(ancestor).attributes)
        flat_attrs[c.name] = tuple(attrs)

    subtype_sets: dict[str, set[str]] = {
        t: set() for t in (*class_names, *(i.name for i in cd.interfaces))}
    for c in concrete:
        for sup in supertypes(cd, c):
            if sup in subtype_sets:
                subtype_sets[sup].add(c)

    assocs = []
    for a in cd.associations:
        assocs.append(FlatAssoc(
            left=a.left_type,
            right=a.right_type,
            forward_role=a.right_role,
            left_role=a.left_role,
            bidirectional=a.bidirectional,
            left_mult=a.effective_left_mult,
            right_mult=a.effective_right_mult,
            kind=a.kind,
        ))

    return FlatClassDiagram(
        name=cd.name,
        class_names=class_names,
        concrete_classes=concrete,
        singleton_classes=frozenset(c.name for c in cd.classes
                                    if c.is_singleton),
        interface_names=frozenset(i.name for i in cd.interfaces),
        flat_attrs=MappingProxyType(flat_attrs),
        subtype_sets=MappingProxyType(
            {t: frozenset(s) for t, s in subtype_sets.items()}),
        enum_values=MappingProxyType({e.name: e.literals for e in cd.enums}),
        associations=tuple(assocs),
    )
