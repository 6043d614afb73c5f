"""Exhaustive enumeration of small object models over a signature universe.

This is the brute-force oracle the search engine is tested against, so it
shares nothing with the engine beyond the universe itself.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator

from ..cd.universe import SignatureUniverse
from .canonical import canonicalize
from .model import EnumLit, ObjectModel, ObjRef, PrimValue, Slot

DEFAULT_MAX_SCOPE = 4


class ScopeTooLarge(ValueError):
    def __init__(self, k: int, limit: int):
        self.k = k
        self.limit = limit
        super().__init__(f"exhaustive enumeration refuses scope {k} "
                         f"(limit {limit})")


def _value(triple) -> EnumLit | PrimValue:
    kind, type_name, literal = triple
    if kind == "enum":
        return EnumLit(type_name, literal)
    return PrimValue(type_name)


def _slot_options(universe: SignatureUniverse, classes: tuple[str, ...],
                  i: int) -> list[tuple[Slot, ...]]:
    """Every admissible slot set of object ``i`` given all object classes."""
    oid = f"o{i}"
    per_field = []
    for fname, dom in universe.slot_domains.get(classes[i], {}).items():
        candidates = [Slot(oid, fname, _value(v)) for v in dom.values]
        targets = set(dom.targets)
        candidates += [Slot(oid, fname, ObjRef(f"o{j}"))
                       for j, c in enumerate(classes) if c in targets]
        per_field.append(candidates)
    flat = [s for cands in per_field for s in cands]
    return [tuple(s for s, bit in zip(flat, bits) if bit)
            for bits in itertools.product((0, 1), repeat=len(flat))]


def _class_tuples(universe: SignatureUniverse, n: int):
    return itertools.combinations_with_replacement(universe.class_names, n)


def count_labeled(universe: SignatureUniverse, k: int) -> int:
    """Number of models :func:`iter_labeled_oms` would produce for ``k``."""
    total = 0
    for n in range(k + 1):
        for classes in _class_tuples(universe, n):
            total += math.prod(_option_count(universe, classes, i)
                               for i in range(n))
    return total


def _option_count(universe, classes, i) -> int:
    bits = 0
    for dom in universe.slot_domains.get(classes[i], {}).values():
        targets = set(dom.targets)
        bits += len(dom.values) + sum(1 for c in classes if c in targets)
    return 2 ** bits


def iter_labeled_oms(universe: SignatureUniverse, k: int
                     ) -> Iterator[ObjectModel]:
    """All models with at most ``k`` objects, objects sorted by class.

    Isomorphic models may repeat; every isomorphism class appears at least
    once.  Object ids are ``o0, o1, ...``.
    """
    for n in range(k + 1):
        for classes in _class_tuples(universe, n):
            objects = {f"o{i}": c for i, c in enumerate(classes)}
            options = [_slot_options(universe, classes, i) for i in range(n)]
            for choice in itertools.product(*options):
                yield ObjectModel(objects, [s for part in choice for s in part])


def enumerate_oms(universe: SignatureUniverse, k: int, *,
                  max_scope: int = DEFAULT_MAX_SCOPE
                  ) -> Iterator[ObjectModel]:
    """One representative per isomorphism class of models with ``<= k`` objects.

    Slots are drawn from the universe's slot domains: a slot a class could
    not carry in either diagram would be rejected by both, so it never
    matters for a diff.
    """
    if k < 0:
        raise ValueError("scope must be non-negative")
    if k > max_scope:
        raise ScopeTooLarge(k, max_scope)
    seen: set[str] = set()
    for om in iter_labeled_oms(universe, k):
        text = canonicalize(om).canonical_text
        if text not in seen:
            seen.add(text)
            yield om
