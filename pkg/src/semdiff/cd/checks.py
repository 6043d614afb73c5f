"""Context conditions (well-formedness rules) for parsed class diagrams."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .ast import PRIMITIVE_TYPES, AssocKind, ClassDiagram


@dataclass(frozen=True)
class Violation:
    rule: str
    elements: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.message}"


class ContextConditionError(Exception):
    def __init__(self, violations: list[Violation], source: str = ""):
        self.violations = list(violations)
        prefix = f"{source}: " if source else ""
        lines = [f"{prefix}{v}" for v in self.violations]
        super().__init__("\n".join(lines))


def superclass_chain(cd: ClassDiagram, name: str) -> list[str]:
    """``name`` followed by its ancestors, nearest first; stops at cycles."""
    chain, seen = [], set()
    current = name
    while current is not None and current not in seen:
        decl = cd.get_class(current)
        if decl is None:
            break
        seen.add(current)
        chain.append(current)
        current = decl.superclass
    return chain


def supertypes(cd: ClassDiagram, name: str) -> set[str]:
    """Reflexive-transitive closure over extends/implements from ``name``."""
    result: set[str] = set()
    stack = [name]
    while stack:
        t = stack.pop()
        if t in result:
            continue
        result.add(t)
        decl = cd.declaration(t)
        if decl is None:
            continue
        kind = cd.kind_of(t)
        if kind == "class":
            if decl.superclass:
                stack.append(decl.superclass)
            stack.extend(decl.interfaces)
        elif kind == "interface":
            stack.extend(decl.extends)
    return result


def check_context_conditions(cd: ClassDiagram) -> list[Violation]:
    """Return every well-formedness violation in ``cd``; empty means valid."""
    out: list[Violation] = []

    def add(rule, elements, message):
        out.append(Violation(rule, tuple(elements), message))

    counts = Counter(cd.type_names())
    for name, n in sorted(counts.items()):
        if n > 1:
            add("DuplicateTypeName", [name], f"type {name} declared {n} times")

    def resolve(name, where, allowed, rule):
        kind = cd.kind_of(name)
        if kind is None:
            add("UndeclaredType", [where, name],
                f"{where} references undeclared type {name}")
            return False
        if kind not in allowed:
            add(rule, [where, name], f"{where} cannot reference {kind} {name}")
            return False
        return True

    for e in cd.enums:
        if not e.literals:
            add("EmptyEnum", [e.name], f"enum {e.name} has no literals")
        for lit, n in sorted(Counter(e.literals).items()):
            if n > 1:
                add("DuplicateEnumLiteral", [e.name, lit],
                    f"literal {lit} repeated in enum {e.name}")

    for i in cd.interfaces:
        for sup in i.extends:
            resolve(sup, i.name, {"interface"}, "InterfaceExtendsNonInterface")

    for c in cd.classes:
        if c.is_abstract and c.is_singleton:
            add("AbstractSingleton", [c.name],
                f"class {c.name} is both abstract and singleton")
        if c.superclass is not None:
            resolve(c.superclass, c.name, {"class"}, "ExtendsNonClass")
        for iface in c.interfaces:
            resolve(iface, c.name, {"interface"}, "ImplementsNonInterface")
        for a in c.attributes:
            if a.type_name in PRIMITIVE_TYPES:
                continue
            kind = cd.kind_of(a.type_name)
            if kind is None:
                add("UndeclaredType", [c.name, a.type_name],
                    f"attribute {c.name}.{a.name} has unknown type {a.type_name}")
            elif kind != "enum":
                add("AttributeTypeNotValue", [c.name, a.name],
                    f"attribute {c.name}.{a.name} is typed by {kind} "
                    f"{a.type_name}; use an association instead")

    _check_cycles(cd, add)

    for idx, a in enumerate(cd.associations):
        label = f"association#{idx + 1}"
        for end in (a.left_type, a.right_type):
            resolve(end, label, {"class", "interface"}, "AssociationEndNotType")
        for mult in (a.left_mult, a.right_mult):
            if mult is not None and not mult.is_valid:
                add("InvalidMultiplicity", [label, str(mult.lower)],
                    f"{label} has multiplicity {mult.lower}..{mult.upper} "
                    "with lower > upper")
        if a.bidirectional and (a.left_role is None or a.right_role is None):
            add("MissingRole", [label],
                f"bidirectional {label} needs both role names")
        elif a.right_role is None:
            add("MissingRole", [label],
                f"{label} needs a role name on its navigable (right) end")
        if a.kind is AssocKind.COMPOSITION and a.left_mult is not None \
                and not a.left_mult.admits(1):
            add("InvalidMultiplicity", [label],
                f"composition {label} must allow exactly one whole")

    if not any(v.rule in ("InheritanceCycle", "InterfaceCycle",
                          "UndeclaredType", "DuplicateTypeName")
               for v in out):
        _check_fields(cd, add)
    return out


def _check_cycles(cd, add):
    reported: set[frozenset] = set()
    for c in cd.classes:
        seen: list[str] = []
        current = c.name
        while current is not None:
            if current in seen:
                cycle = frozenset(seen[seen.index(current):])
                if cycle not in reported:
                    reported.add(cycle)
                    add("InheritanceCycle", sorted(cycle),
                        "inheritance cycle among " + ", ".join(sorted(cycle)))
                break
            seen.append(current)
            decl = cd.get_class(current)
            current = decl.superclass if decl else None

    # interface extension graph: DFS with colours
    state: dict[str, int] = {}

    def visit(name, path):
        state[name] = 1
        path.append(name)
        decl = cd.declaration(name)
        for sup in getattr(decl, "extends", ()):
            if cd.kind_of(sup) != "interface":
                continue
            if state.get(sup) == 1:
                cycle = frozenset(path[path.index(sup):])
                if cycle not in reported:
                    reported.add(cycle)
                    add("InterfaceCycle", sorted(cycle),
                        "interface extension cycle among "
                        + ", ".join(sorted(cycle)))
            elif sup not in state:
                visit(sup, path)
        path.pop()
        state[name] = 2

    for i in cd.interfaces:
        if i.name not in state:
            visit(i.name, [])


def _check_fields(cd, add):
    roles_by_type: dict[str, list[str]] = {}
    for a in cd.associations:
        if a.right_role is not None:
            roles_by_type.setdefault(a.left_type, []).append(a.right_role)
        if a.bidirectional and a.left_role is not None:
            roles_by_type.setdefault(a.right_type, []).append(a.left_role)

    for c in cd.classes:
        attrs = [attr.name for cls in superclass_chain(cd, c.name)
                 for attr in cd.get_class(cls).attributes]
        for name, n in sorted(Counter(attrs).items()):
            if n > 1:
                add("DuplicateAttribute", [c.name, name],
                    f"attribute {name} occurs {n} times in flattened {c.name}")
        roles = [r for t in sorted(supertypes(cd, c.name))
                 for r in roles_by_type.get(t, ())]
        attr_set = set(attrs)
        for name, n in sorted(Counter(roles).items()):
            if name in attr_set:
                add("RoleCollision", [c.name, name],
                    f"role {name} collides with an attribute of {c.name}")
            elif n > 1:
                add("RoleCollision", [c.name, name],
                    f"role {name} is navigable {n} times from {c.name}")
