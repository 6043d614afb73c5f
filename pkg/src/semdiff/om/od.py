"""Textual object diagrams and their JSON mirror.

    objectdiagram w {
      e1 : Employee { kind = PosKnd::fullTime; };
      t1 : Task;
      link worksOn e1 -> t1;
    }
"""

from __future__ import annotations

from .._lexer import DiagramSyntaxError, TokenStream
from .model import EnumLit, ObjectModel, ObjRef, PrimValue, Slot, value_key

KEYWORDS = frozenset({"objectdiagram", "link"})
FORMAT_VERSION = 1


def _ordered(om: ObjectModel):
    position = {o: i for i, o in enumerate(om.objects)}
    attrs = sorted((s for s in om.slots if not isinstance(s.value, ObjRef)),
                   key=lambda s: (position[s.obj], s.field, value_key(s.value)))
    links = sorted((s for s in om.slots if isinstance(s.value, ObjRef)),
                   key=lambda s: (position[s.obj], s.field,
                                  position[s.value.target]))
    return attrs, links


def render_od(om: ObjectModel, name: str = "w") -> str:
    if not om.objects:
        return f"objectdiagram {name} {{ }}\n"
    attrs, links = _ordered(om)
    by_obj: dict[str, list[Slot]] = {}
    for s in attrs:
        by_obj.setdefault(s.obj, []).append(s)
    lines = [f"objectdiagram {name} {{"]
    for o, cls in om.objects.items():
        body = by_obj.get(o)
        if body:
            inner = " ".join(f"{s.field} = {s.value};" for s in body)
            lines.append(f"  {o} : {cls} {{ {inner} }};")
        else:
            lines.append(f"  {o} : {cls};")
    for s in links:
        lines.append(f"  link {s.field} {s.obj} -> {s.value.target};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_od_named(text: str) -> tuple[str, ObjectModel]:
    ts = TokenStream(text)
    ts.expect("objectdiagram")
    name = ts.expect_ident("diagram name", KEYWORDS)
    ts.expect("{")
    objects: dict[str, str] = {}
    slots: list[Slot] = []
    links: list[tuple] = []
    while not ts.at("}"):
        if ts.accept("link"):
            tok = ts.current
            role = ts.expect_ident("role name", KEYWORDS)
            src = ts.expect_ident("object id", KEYWORDS)
            ts.expect("->")
            tgt = ts.expect_ident("object id", KEYWORDS)
            ts.expect(";")
            links.append((src, role, tgt, tok))
            continue
        tok = ts.current
        oid = ts.expect_ident("object id or 'link'", KEYWORDS)
        if oid in objects:
            raise DiagramSyntaxError(f"object {oid} declared twice",
                                     tok.line, tok.column)
        ts.expect(":")
        objects[oid] = ts.expect_ident("class name", KEYWORDS)
        if ts.accept("{"):
            while not ts.at("}"):
                field = ts.expect_ident("attribute name", KEYWORDS)
                ts.expect("=")
                slots.append(Slot(oid, field, _parse_value(ts)))
                ts.expect(";")
            ts.expect("}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    for src, role, tgt, tok in links:
        for end in (src, tgt):
            if end not in objects:
                raise DiagramSyntaxError(f"link {role} uses undeclared object "
                                         f"{end}", tok.line, tok.column)
        slots.append(Slot(src, role, ObjRef(tgt)))
    return name, ObjectModel(objects, slots)


def _parse_value(ts: TokenStream):
    if ts.accept("<"):
        type_name = ts.expect_ident("type name")
        ts.expect(">")
        return PrimValue(type_name)
    enum = ts.expect_ident("'<' or enum name", KEYWORDS)
    ts.expect("::")
    return EnumLit(enum, ts.expect_ident("enum literal"))


def parse_od(text: str) -> ObjectModel:
    return parse_od_named(text)[1]


def _value_json(v) -> dict:
    if isinstance(v, ObjRef):
        return {"ref": v.target}
    if isinstance(v, EnumLit):
        return {"enum": v.enum, "literal": v.literal}
    return {"type": v.type_name}


def _value_from_json(d: dict):
    if "ref" in d:
        return ObjRef(d["ref"])
    if "enum" in d:
        return EnumLit(d["enum"], d["literal"])
    if "type" in d:
        return PrimValue(d["type"])
    raise ValueError(f"unrecognised slot value {d!r}")


def od_to_json(om: ObjectModel, name: str = "w") -> dict:
    attrs, links = _ordered(om)
    return {
        "name": name,
        "objects": [{"id": o, "class": c} for o, c in om.objects.items()],
        "slots": [{"object": s.obj, "field": s.field,
                   "value": _value_json(s.value)} for s in attrs + links],
    }


def od_from_json(data: dict) -> ObjectModel:
    objects = {d["id"]: d["class"] for d in data["objects"]}
    slots = [Slot(d["object"], d["field"], _value_from_json(d["value"]))
             for d in data["slots"]]
    return ObjectModel(objects, slots)
