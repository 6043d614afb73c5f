"""Witness filters and the attribute abstraction.

The incremental filters keep a witness only if it shows something no
previously kept witness showed: a class (NNC), a link field (NNA) or a
(source class, field, target class) combination (NNCA).  The static filter
keeps the first witness for each set of instantiated classes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .cd.abstraction import abstract_attributes
from .om.model import ObjectModel, ObjRef


class FilterKind(enum.Enum):
    NONE = "none"
    NNC = "nnc"
    NNA = "nna"
    NNCA = "nnca"
    STATIC = "static"


@dataclass(frozen=True)
class WitnessProfile:
    class_set: frozenset[str]
    assoc_set: frozenset[str]
    combo_set: frozenset[tuple[str, str, str]]


def _model(w) -> ObjectModel:
    return w if isinstance(w, ObjectModel) else w.om


def profile(w) -> WitnessProfile:
    """Profile of a witness (or a bare object model)."""
    om = _model(w)
    objs = om.objects
    combos = frozenset((objs[s.obj], s.field, objs[s.value.target])
                       for s in om.slots if isinstance(s.value, ObjRef))
    return WitnessProfile(
        class_set=frozenset(objs.values()),
        assoc_set=frozenset(f for _, f, _ in combos),
        combo_set=combos,
    )


@dataclass(frozen=True)
class FilterState:
    kind: FilterKind = FilterKind.NONE
    seen_classes: frozenset[str] = frozenset()
    seen_assocs: frozenset[str] = frozenset()
    seen_combos: frozenset[tuple[str, str, str]] = frozenset()

    def accept(self, w) -> tuple[bool, "FilterState"]:
        """Decide on ``w``; the returned state only grows on acceptance."""
        p = profile(w)
        if self.kind is FilterKind.NNC:
            keep = not p.class_set <= self.seen_classes
        elif self.kind is FilterKind.NNA:
            keep = not p.assoc_set <= self.seen_assocs
        elif self.kind is FilterKind.NNCA:
            keep = not p.combo_set <= self.seen_combos
        else:
            keep = True
        if not keep:
            return False, self
        return True, replace(self,
                             seen_classes=self.seen_classes | p.class_set,
                             seen_assocs=self.seen_assocs | p.assoc_set,
                             seen_combos=self.seen_combos | p.combo_set)

    def saturated(self, possible: WitnessProfile) -> bool:
        """True when no witness drawn from ``possible`` can still be kept."""
        if self.kind is FilterKind.NNC:
            return possible.class_set <= self.seen_classes
        if self.kind is FilterKind.NNA:
            return possible.assoc_set <= self.seen_assocs
        if self.kind is FilterKind.NNCA:
            return possible.combo_set <= self.seen_combos
        return False


def accept(state: FilterState, w) -> tuple[bool, FilterState]:
    return state.accept(w)


def apply_filter(kind: FilterKind, witnesses: Iterable) -> list:
    if kind is FilterKind.STATIC:
        return static_representatives(list(witnesses))
    state = FilterState(kind)
    kept = []
    for w in witnesses:
        keep, state = state.accept(w)
        if keep:
            kept.append(w)
    return kept


def static_representatives(ws: Sequence) -> list:
    """First witness of each distinct class set, in input order."""
    seen: set[frozenset[str]] = set()
    out = []
    for w in ws:
        key = profile(w).class_set
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


__all__ = ["FilterKind", "FilterState", "WitnessProfile", "abstract_attributes",
           "accept", "apply_filter", "profile", "static_representatives"]
