"""Diff witnesses, refinement verdicts and evolution reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from ..cd.ast import ClassDiagram
from ..cd.flatten import FlatClassDiagram
from ..filters import (FilterKind, FilterState, WitnessProfile,
                       static_representatives)
from ..om.canonical import CanonicalForm, canonical_relabel, canonicalize
from ..om.evaluate import SatisfactionReport, evaluate
from ..om.model import EnumLit, ObjectModel, ObjRef, PrimValue, Slot
from .encoding import DiffConfig, EncodedPair, encode
from .search import Candidate, Generator, satisfies

Diagram = ClassDiagram | FlatClassDiagram


@dataclass(frozen=True)
class Witness:
    """An object model admitted by the left diagram and rejected by the right.

    ``om`` lives in the (possibly stripped) field set the search ran on and
    the reports refer to it; ``full_om`` adds back the stripped common
    attributes so it can be checked against the unstripped diagrams.
    """

    om: ObjectModel
    canonical: CanonicalForm
    left_report: SatisfactionReport
    right_report: SatisfactionReport
    full_om: ObjectModel

    @property
    def size(self) -> int:
        return len(self.om)


def _to_object_model(cand: Candidate) -> ObjectModel:
    objects = {f"o{i}": cls for i, cls in enumerate(cand.classes)}
    slots = []
    for i, per in enumerate(cand.fields):
        for fld, vals in per.items():
            for v in vals:
                if v[0] == "ref":
                    value = ObjRef(f"o{v[1]}")
                elif v[0] == "enum":
                    value = EnumLit(v[1], v[2])
                else:
                    value = PrimValue(v[1])
                slots.append(Slot(f"o{i}", fld, value))
    return ObjectModel(objects, slots)


def restore_attributes(om: ObjectModel, fcd: FlatClassDiagram) -> ObjectModel:
    """Fill in attributes of ``fcd`` that ``om`` leaves unset.

    Used to re-attach attributes removed as common to both diagrams; enum
    attributes get the first declared literal.
    """
    present = {(s.obj, s.field) for s in om.slots}
    extra = []
    for o, cls in om.objects.items():
        for attr in fcd.flat_attrs.get(cls, ()):
            if (o, attr.name) in present:
                continue
            if attr.type_name in fcd.enum_values:
                value = EnumLit(attr.type_name,
                                fcd.enum_values[attr.type_name][0])
            else:
                value = PrimValue(attr.type_name)
            extra.append(Slot(o, attr.name, value))
    if not extra:
        return om
    return ObjectModel(om.objects, [*om.slots, *extra])


class DiffProblem:
    """Stateful search for the witnesses of ``sem(left) \\ sem(right)``.

    Witnesses come out by object count, then by canonical text, and never
    twice up to isomorphism.
    """

    def __init__(self, encoded: EncodedPair, scope: int):
        if scope < 0:
            raise ValueError("scope must be non-negative")
        self.encoded = encoded
        self.scope = scope
        self.exclusions: set[str] = set()
        self._generator = Generator(encoded.left_constraints,
                                    encoded.universe.class_names)
        self._level = 0
        self._pending: list[tuple[str, ObjectModel]] = []

    @property
    def left(self) -> FlatClassDiagram:
        return self.encoded.left

    @property
    def right(self) -> FlatClassDiagram:
        return self.encoded.right

    @property
    def universe(self):
        return self.encoded.universe

    def possible_profile(self) -> WitnessProfile:
        """Upper bound on the profile of any witness of this problem."""
        left = self.left
        combos = set()
        for a in left.associations:
            ends = [(a.left, a.forward_role, a.right)]
            if a.backward_role is not None:
                ends.append((a.right, a.backward_role, a.left))
            for src, role, tgt in ends:
                combos.update((s, role, t)
                              for s in left.subtype_sets.get(src, ())
                              for t in left.subtype_sets.get(tgt, ()))
        return WitnessProfile(frozenset(left.concrete_classes),
                              frozenset(f for _, f, _ in combos),
                              frozenset(combos))

    def _fill(self) -> None:
        while not self._pending and self._level <= self.scope:
            found: dict[str, ObjectModel] = {}
            left_cs = self.encoded.left_constraints
            right_cs = self.encoded.right_constraints
            for cand in self._generator.models(self._level):
                if satisfies(right_cs, cand):
                    continue
                if not satisfies(left_cs, cand):
                    raise RuntimeError("generator produced a model outside "
                                       "the left diagram")
                om = _to_object_model(cand)
                text = canonicalize(om).canonical_text
                if text not in found and text not in self.exclusions:
                    found[text] = om
            self._pending = sorted(found.items(), reverse=True)
            self._level += 1

    def next_witness(self) -> Optional[Witness]:
        while True:
            self._fill()
            if not self._pending:
                return None
            text, om = self._pending.pop()
            if text in self.exclusions:
                continue
            self.exclusions.add(text)
            return self._make_witness(om)

    def _make_witness(self, om: ObjectModel) -> Witness:
        form = canonicalize(om)
        om = canonical_relabel(om, form=form)
        form = CanonicalForm(form.canonical_text, tuple(om.objects))
        left_report = evaluate(self.left, om)
        right_report = evaluate(self.right, om)
        if not left_report.satisfied or right_report.satisfied:
            raise RuntimeError(f"witness {form.canonical_text} failed the "
                               "independent membership check")
        full = restore_attributes(om, self.encoded.original_left)
        if not evaluate(self.encoded.original_left, full,
                        first_only=True).satisfied or \
                evaluate(self.encoded.original_right, full,
                         first_only=True).satisfied:
            raise RuntimeError(f"witness {form.canonical_text} does not "
                               "survive restoring common attributes")
        return Witness(om, form, left_report, right_report, full)

    def __iter__(self) -> Iterator[Witness]:
        while (w := self.next_witness()) is not None:
            yield w


def encode_pair(cd1: Diagram, cd2: Diagram,
                cfg: DiffConfig = DiffConfig()) -> DiffProblem:
    return DiffProblem(encode(cd1, cd2, cfg), cfg.scope)


def diff(cd1: Diagram, cd2: Diagram,
         cfg: DiffConfig = DiffConfig()) -> list[Witness]:
    """Up to ``cfg.max_witnesses`` witnesses of ``sem(cd1) \\ sem(cd2)``."""
    problem = encode_pair(cd1, cd2, cfg)
    if cfg.filter is FilterKind.STATIC:
        found = []
        for w in problem:
            found.append(w)
            if len(found) == cfg.max_witnesses:
                break
        return static_representatives(found)
    state = FilterState(cfg.filter)
    possible = problem.possible_profile()
    kept = []
    for w in problem:
        keep, state = state.accept(w)
        if keep:
            kept.append(w)
            if len(kept) == cfg.max_witnesses or state.saturated(possible):
                break
    return kept


class Verdict(enum.Enum):
    LEFT_REFINES_RIGHT = "<"
    RIGHT_REFINES_LEFT = ">"
    EQUIVALENT = "≡"
    INCOMPARABLE = "<>"

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Verdict.EQUIVALENT: "semantics-preserving change",
    Verdict.LEFT_REFINES_RIGHT: "introduced new possible implementations",
    Verdict.RIGHT_REFINES_LEFT: "eliminated possible implementations",
    Verdict.INCOMPARABLE: "both",
}


@dataclass(frozen=True)
class CompareResult:
    verdict: Verdict
    scope: int
    #: a witness of sem(left) \ sem(right), if any
    left_witness: Optional[Witness] = field(default=None, compare=False)
    #: a witness of sem(right) \ sem(left), if any
    right_witness: Optional[Witness] = field(default=None, compare=False)

    @property
    def label(self) -> str:
        return self.verdict.label

    @property
    def evidence(self) -> tuple[Witness, ...]:
        return tuple(w for w in (self.left_witness, self.right_witness)
                     if w is not None)

    def describe(self, left: str = "left", right: str = "right") -> str:
        return f"{left} {self.verdict.value}_{self.scope} {right}"


def compare(cd1: Diagram, cd2: Diagram, k: int = 5, *,
            strip_common: bool = True,
            abstract_attributes: bool = False) -> CompareResult:
    cfg = DiffConfig(scope=k, strip_common=strip_common,
                     abstract_attributes=abstract_attributes)
    fwd = encode_pair(cd1, cd2, cfg).next_witness()
    bwd = encode_pair(cd2, cd1, cfg).next_witness()
    if fwd is None and bwd is None:
        verdict = Verdict.EQUIVALENT
    elif fwd is None:
        verdict = Verdict.LEFT_REFINES_RIGHT
    elif bwd is None:
        verdict = Verdict.RIGHT_REFINES_LEFT
    else:
        verdict = Verdict.INCOMPARABLE
    return CompareResult(verdict, k, fwd, bwd)


def evolution(versions: Sequence[Diagram], k: int = 5,
              **options) -> list[CompareResult]:
    """Compare each version with its successor, oldest first."""
    if len(versions) < 2:
        raise ValueError("evolution needs at least two versions")
    return [compare(a, b, k, **options)
            for a, b in zip(versions, versions[1:])]
