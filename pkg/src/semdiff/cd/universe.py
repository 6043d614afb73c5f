"""The shared signature universe of a diagram pair, and common-attribute stripping."""

from __future__ import annotations

from dataclasses import dataclass, replace
from types import MappingProxyType
from typing import Mapping, Union

from .ast import ClassDiagram
from .flatten import FlatClassDiagram, flatten


class TypeKindClash(Exception):
    """A name denotes different kinds of type in the two diagrams."""

    def __init__(self, name: str, left_kind: str, right_kind: str):
        self.name = name
        self.left_kind = left_kind
        self.right_kind = right_kind
        super().__init__(f"{name} is a {left_kind} in one diagram and a "
                         f"{right_kind} in the other")


@dataclass(frozen=True)
class FieldDomain:
    """What a slot of one field may hold on objects of one class.

    ``targets`` lists the classes an object reference may point to (empty
    when the field is never a role); ``values`` lists the admissible
    primitive placeholders and enum literals as ``(kind, type, literal)``
    triples with kind ``"prim"`` or ``"enum"``.
    """

    targets: tuple[str, ...]
    values: tuple[tuple[str, str, str], ...]

    @property
    def refs(self) -> bool:
        return bool(self.targets)


@dataclass(frozen=True)
class SignatureUniverse:
    class_names: tuple[str, ...]
    field_names: tuple[str, ...]
    primitive_types: tuple[str, ...]
    enum_literals: tuple[tuple[str, str], ...]
    #: per class, per field: union over both diagrams of the locally declared
    #: slot shape.  Slots outside these domains violate both diagrams.
    slot_domains: Mapping[str, Mapping[str, FieldDomain]]

    def literals_of(self, enum: str) -> tuple[str, ...]:
        return tuple(lit for e, lit in self.enum_literals if e == enum)


Diagram = Union[ClassDiagram, FlatClassDiagram]


def _as_flat(cd: Diagram) -> FlatClassDiagram:
    return cd if isinstance(cd, FlatClassDiagram) else flatten(cd)


def _kinds(fcd: FlatClassDiagram) -> dict[str, str]:
    kinds = {c: "class" for c in fcd.class_names}
    kinds.update({i: "interface" for i in fcd.interface_names})
    kinds.update({e: "enum" for e in fcd.enum_values})
    return kinds


def check_kinds(left: FlatClassDiagram, right: FlatClassDiagram) -> None:
    lk, rk = _kinds(left), _kinds(right)
    for name in sorted(lk.keys() & rk.keys()):
        if lk[name] != rk[name]:
            raise TypeKindClash(name, lk[name], rk[name])


def build_universe(cd1: Diagram, cd2: Diagram) -> SignatureUniverse:
    """Union the signatures of two diagrams; names are matched exactly."""
    left, right = _as_flat(cd1), _as_flat(cd2)
    check_kinds(left, right)

    classes = sorted(left.class_names | right.class_names)
    fields: set[str] = set()
    prims: set[str] = set()
    literals: set[tuple[str, str]] = set()
    for fcd in (left, right):
        for attrs in fcd.flat_attrs.values():
            for a in attrs:
                fields.add(a.name)
                if a.type_name not in fcd.enum_values:
                    prims.add(a.type_name)
        for a in fcd.associations:
            fields.add(a.forward_role)
            if a.left_role:
                # non-navigable left ends still name an FName
                fields.add(a.left_role)
        for enum, lits in fcd.enum_values.items():
            literals.update((enum, lit) for lit in lits)

    enum_literals = tuple(sorted(literals))
    lits_by_enum: dict[str, list[str]] = {}
    for e, lit in enum_literals:
        lits_by_enum.setdefault(e, []).append(lit)

    domains: dict[str, dict[str, tuple[set, set]]] = {c: {} for c in classes}

    def domain(cls, name):
        return domains[cls].setdefault(name, (set(), set()))

    for fcd in (left, right):
        for cls in fcd.class_names:
            for a in fcd.flat_attrs[cls]:
                _, vals = domain(cls, a.name)
                if a.type_name in fcd.enum_values:
                    vals |= {("enum", a.type_name, lit)
                             for lit in lits_by_enum[a.type_name]}
                else:
                    vals.add(("prim", a.type_name, ""))
        for a in fcd.associations:
            ends = [(a.left, a.forward_role, a.right)]
            if a.backward_role is not None:
                ends.append((a.right, a.backward_role, a.left))
            for src, role, tgt in ends:
                for cls in fcd.subtype_sets.get(src, ()):
                    targets, _ = domain(cls, role)
                    targets |= fcd.subtype_sets.get(tgt, frozenset())

    frozen = {
        cls: MappingProxyType({
            f: FieldDomain(tuple(sorted(targets)), tuple(sorted(vals)))
            for f, (targets, vals) in sorted(per_cls.items())})
        for cls, per_cls in domains.items()}

    return SignatureUniverse(
        class_names=tuple(classes),
        field_names=tuple(sorted(fields)),
        primitive_types=tuple(sorted(prims)),
        enum_literals=enum_literals,
        slot_domains=MappingProxyType(frozen),
    )


def common_attributes(left: FlatClassDiagram,
                      right: FlatClassDiagram) -> dict[str, frozenset[str]]:
    """Per shared class, the attributes both diagrams declare identically.

    Enum-typed attributes only count when the enum has the same literal set
    on both sides.
    """
    common = {}
    for cls in sorted(left.class_names & right.class_names):
        rtypes = {a.name: a.type_name for a in right.flat_attrs[cls]}
        names = set()
        for a in left.flat_attrs[cls]:
            if rtypes.get(a.name) != a.type_name:
                continue
            lenum = a.type_name in left.enum_values
            renum = a.type_name in right.enum_values
            if lenum != renum:
                continue
            if lenum and set(left.enum_values[a.type_name]) != \
                    set(right.enum_values[a.type_name]):
                continue
            names.add(a.name)
        if names:
            common[cls] = frozenset(names)
    return common


def strip_common(cd1: Diagram, cd2: Diagram
                 ) -> tuple[FlatClassDiagram, FlatClassDiagram]:
    """Drop attributes that are syntactically equal on same-named classes.

    Works on the flattened diagrams, so an inherited attribute is removed
    only from the classes where it is common.  Such attributes constrain both
    sides identically and never decide membership in a diff.
    """
    left, right = _as_flat(cd1), _as_flat(cd2)
    check_kinds(left, right)
    common = common_attributes(left, right)

    def strip(fcd: FlatClassDiagram) -> FlatClassDiagram:
        attrs = {cls: tuple(a for a in fcd.flat_attrs[cls]
                            if a.name not in common.get(cls, ()))
                 for cls in fcd.flat_attrs}
        return replace(fcd, flat_attrs=MappingProxyType(attrs))

    return strip(left), strip(right)
