"""Membership test ``om in sem(cd)`` under complete interpretation.

This evaluator reads the flattened diagram directly and is deliberately
independent of the constraint lowering used by the search engine, so that
every witness the engine emits can be re-checked here.

Rules:
    R1  objects only of concrete classes of the diagram
    R2  each singleton class has exactly one instance
    R3  each declared attribute holds exactly one value of its type
    R4  no slot outside the declared attributes and navigable roles
    R5  role targets are typed and their number is within the far-end bound
    R6  unidirectional: each target is referenced a permitted number of times
    R7  bidirectional links are mirrored by the opposite role
    R8  composition: every part has exactly one whole
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from ..cd.ast import ClassDiagram
from ..cd.flatten import FlatClassDiagram, flatten
from .model import EnumLit, ObjectModel, ObjRef, PrimValue

RULES = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8")


@dataclass(frozen=True)
class RuleViolation:
    rule: str
    subjects: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.message}"


@dataclass(frozen=True)
class SatisfactionReport:
    satisfied: bool
    violations: tuple[RuleViolation, ...] = ()

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


class _Stop(Exception):
    pass


def evaluate(fcd: FlatClassDiagram | ClassDiagram, om: ObjectModel, *,
             first_only: bool = False) -> SatisfactionReport:
    """Check ``om`` against every rule of ``fcd``.

    A diagram that is not yet flattened is flattened first.  With ``first_only`` the check stops at the first violation, which is all
    a plain membership test needs.
    """
    if isinstance(fcd, ClassDiagram):
        fcd = flatten(fcd)
    found: list[RuleViolation] = []

    def fail(rule, subjects, message):
        found.append(RuleViolation(rule, tuple(subjects), message))
        if first_only:
            raise _Stop

    try:
        _check(fcd, om, fail)
    except _Stop:
        pass
    return SatisfactionReport(not found, tuple(found))


def is_member(fcd: FlatClassDiagram | ClassDiagram, om: ObjectModel) -> bool:
    return evaluate(fcd, om, first_only=True).satisfied


def _check(fcd: FlatClassDiagram, om: ObjectModel, fail) -> None:
    objects = om.objects
    values = defaultdict(list)
    for s in om.slots:
        values[(s.obj, s.field)].append(s.value)

    # R1
    for o, cls in objects.items():
        if cls not in fcd.concrete_classes:
            why = "is abstract" if cls in fcd.class_names else "is not declared"
            fail("R1", [o, cls], f"{o}: class {cls} {why}")

    # R2
    for single in sorted(fcd.singleton_classes):
        members = fcd.subtype_sets.get(single, frozenset())
        count = sum(1 for cls in objects.values() if cls in members)
        if count != 1:
            fail("R2", [single], f"singleton {single} has {count} instances")

    # R3
    for o, cls in objects.items():
        for attr in fcd.flat_attrs.get(cls, ()):
            vals = values.get((o, attr.name), [])
            if len(vals) != 1:
                fail("R3", [o, attr.name],
                     f"{o}.{attr.name} holds {len(vals)} values, expected 1")
                continue
            v = vals[0]
            if attr.type_name in fcd.enum_values:
                ok = isinstance(v, EnumLit) and v.enum == attr.type_name and \
                    v.literal in fcd.enum_values[attr.type_name]
            else:
                ok = isinstance(v, PrimValue) and v.type_name == attr.type_name
            if not ok:
                fail("R3", [o, attr.name],
                     f"{o}.{attr.name} = {v} is not a {attr.type_name}")

    # R4
    allowed = {cls: fcd.fields(cls) for cls in set(objects.values())}
    for s in sorted(om.slots, key=lambda s: (s.obj, s.field)):
        if s.field not in allowed[objects[s.obj]]:
            fail("R4", [s.obj, s.field],
                 f"{s.obj} ({objects[s.obj]}) has undeclared field {s.field}")

    for assoc in fcd.associations:
        left = fcd.subtype_sets.get(assoc.left, frozenset())
        right = fcd.subtype_sets.get(assoc.right, frozenset())
        fwd, bwd = assoc.forward_role, assoc.backward_role

        # R5, navigable ends
        ends = [(left, fwd, right, assoc.right_mult)]
        if bwd is not None:
            ends.append((right, bwd, left, assoc.left_mult))
        for src, role, tgt, mult in ends:
            for o, cls in objects.items():
                if cls not in src:
                    continue
                vals = values.get((o, role), [])
                for v in vals:
                    if not isinstance(v, ObjRef) or objects[v.target] not in tgt:
                        fail("R5", [o, role],
                             f"{o}.{role} = {v} is not a valid target")
                if not mult.admits(len(vals)):
                    fail("R5", [o, role],
                         f"{o}.{role} has {len(vals)} links, allowed {mult}")

        incoming = defaultdict(set)
        for o, cls in objects.items():
            if cls in left:
                for v in values.get((o, fwd), ()):
                    if isinstance(v, ObjRef):
                        incoming[v.target].add(o)

        # R6
        if bwd is None:
            for b, cls in objects.items():
                if cls in right and not assoc.left_mult.admits(len(incoming[b])):
                    fail("R6", [b, fwd],
                         f"{b} is referenced via {fwd} by {len(incoming[b])} "
                         f"objects, allowed {assoc.left_mult}")

        # R7
        if bwd is not None:
            for a, cls in objects.items():
                if cls not in left:
                    continue
                for v in values.get((a, fwd), ()):
                    if isinstance(v, ObjRef) and objects[v.target] in right and \
                            ObjRef(a) not in values.get((v.target, bwd), ()):
                        fail("R7", [a, fwd, v.target],
                             f"link {a}.{fwd} -> {v.target} lacks its "
                             f"opposite {bwd}")
            for b, cls in objects.items():
                if cls not in right:
                    continue
                for v in values.get((b, bwd), ()):
                    if isinstance(v, ObjRef) and objects[v.target] in left and \
                            ObjRef(b) not in values.get((v.target, fwd), ()):
                        fail("R7", [b, bwd, v.target],
                             f"link {b}.{bwd} -> {v.target} lacks its "
                             f"opposite {fwd}")

        # R8
        if assoc.is_composition:
            for p, cls in objects.items():
                if cls in right and len(incoming[p]) != 1:
                    fail("R8", [p, fwd],
                         f"part {p} has {len(incoming[p])} wholes via {fwd}")
