"""Finite object models: typed objects plus a set of (object, field, value) slots."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Union


@dataclass(frozen=True)
class ObjRef:
    target: str

    def __str__(self) -> str:
        return self.target


@dataclass(frozen=True)
class EnumLit:
    enum: str
    literal: str

    def __str__(self) -> str:
        return f"{self.enum}::{self.literal}"


@dataclass(frozen=True)
class PrimValue:
    """The single placeholder atom of a primitive type."""

    type_name: str

    def __str__(self) -> str:
        return f"<{self.type_name}>"


SlotValue = Union[ObjRef, EnumLit, PrimValue]


def value_key(v: SlotValue) -> tuple:
    if isinstance(v, ObjRef):
        return (0, v.target, "")
    if isinstance(v, EnumLit):
        return (1, v.enum, v.literal)
    return (2, v.type_name, "")


class Slot(NamedTuple):
    obj: str
    field: str
    value: SlotValue


def slot_key(s: Slot) -> tuple:
    return (s.obj, s.field, value_key(s.value))


class ObjectModel:
    """Immutable object model.

    ``objects`` maps object ids to class names (insertion order is kept for
    rendering only); ``slots`` is a set, so duplicate triples collapse.
    Equality ignores ordering.
    """

    __slots__ = ("_objects", "_slots", "_hash")

    def __init__(self, objects: Mapping[str, str] | Iterable[tuple[str, str]] = (),
                 slots: Iterable[Slot | tuple] = ()):
        objs = dict(objects)
        slot_set = frozenset(Slot(*s) for s in slots)
        for s in slot_set:
            if s.obj not in objs:
                raise ValueError(f"slot owner {s.obj!r} is not an object")
            if isinstance(s.value, ObjRef) and s.value.target not in objs:
                raise ValueError(f"slot {s.obj}.{s.field} references unknown "
                                 f"object {s.value.target!r}")
            if not isinstance(s.value, (ObjRef, EnumLit, PrimValue)):
                raise TypeError(f"bad slot value {s.value!r}")
        self._objects = MappingProxyType(objs)
        self._slots = slot_set
        self._hash = None

    @property
    def objects(self) -> Mapping[str, str]:
        return self._objects

    @property
    def slots(self) -> frozenset[Slot]:
        return self._slots

    def __len__(self) -> int:
        return len(self._objects)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ObjectModel):
            return NotImplemented
        return dict(self._objects) == dict(other._objects) and \
            self._slots == other._slots

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._objects.items()), self._slots))
        return self._hash

    def __repr__(self) -> str:
        return f"ObjectModel({dict(self._objects)!r}, {len(self._slots)} slots)"

    def sorted_slots(self) -> list[Slot]:
        return sorted(self._slots, key=slot_key)

    def classes(self) -> set[str]:
        return set(self._objects.values())

    def rename(self, mapping: Mapping[str, str]) -> "ObjectModel":
        """Apply an object-id renaming (must be injective)."""
        def m(x):
            return mapping.get(x, x)
        objs = [(m(o), c) for o, c in self._objects.items()]
        if len({o for o, _ in objs}) != len(objs):
            raise ValueError("renaming is not injective")
        slots = [Slot(m(s.obj), s.field,
                      ObjRef(m(s.value.target)) if isinstance(s.value, ObjRef)
                      else s.value)
                 for s in self._slots]
        return ObjectModel(objs, slots)


EMPTY = ObjectModel()
