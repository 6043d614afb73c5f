from __future__ import annotations

from .ast import AssocDecl, AssocKind, ClassDecl, ClassDiagram


def render_cd(cd: ClassDiagram) -> str:
    """Pretty-print ``cd`` in the ``.cd`` format accepted by ``parse_cd``.

    Enums come first, then interfaces, classes and associations, each group
    in declaration order.
    """
    lines = [f"classdiagram {cd.name} {{"]
    for e in cd.enums:
        lines.append(f"  enum {e.name} {{ {', '.join(e.literals)} }}")
    for i in cd.interfaces:
        ext = f" extends {', '.join(i.extends)}" if i.extends else ""
        lines.append(f"  interface {i.name}{ext};")
    for c in cd.classes:
        lines.extend(_render_class(c))
    for a in cd.associations:
        lines.append("  " + _render_assoc(a))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_class(c: ClassDecl) -> list[str]:
    head = "abstract class" if c.is_abstract else (
        "singleton class" if c.is_singleton else "class")
    head = f"  {head} {c.name}"
    if c.superclass:
        head += f" extends {c.superclass}"
    if c.interfaces:
        head += f" implements {', '.join(c.interfaces)}"
    if not c.attributes:
        return [head + ";"]
    out = [head + " {"]
    out.extend(f"    {a.type_name} {a.name};" for a in c.attributes)
    out.append("  }")
    return out


def _render_assoc(a: AssocDecl) -> str:
    parts = ["association"]
    if a.kind is not AssocKind.PLAIN:
        parts.append(a.kind.value)
    parts.append(a.left_type)
    if a.left_mult is not None:
        parts.append(f"[{a.left_mult}]")
    if a.left_role:
        parts.append(f"({a.left_role})")
    parts.append(a.navigability.value)
    if a.right_role:
        parts.append(f"({a.right_role})")
    if a.right_mult is not None:
        parts.append(f"[{a.right_mult}]")
    parts.append(a.right_type)
    return " ".join(parts) + ";"
