"""Bounded generation of a diagram's object models, and constraint checking.

The generator produces, for a given object count, at least one model from
every isomorphism class of ``sem`` of the left diagram.  It walks classes,
then attribute vectors, then one link relation at a time, one source object
at a time.  Two symmetry reductions keep it small:

* objects are ordered by class and, within a class, by attribute vector, so
  only multisets of classes and vectors are tried;
* objects nobody has linked to or from yet and that share class and vector
  are interchangeable, so a source may only pick a prefix of such a group.

Everything the generator yields still goes through canonical deduplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .encoding import (BidiAssoc, Composition, ConstraintSet, NoObj, ObjAttrib,
                       ObjLU, ObjLUAttrib, ObjNoFName, One)

Fields = list[dict[str, list]]  # per object: field -> values


@dataclass
class Candidate:
    classes: tuple[str, ...]
    fields: Fields


# -- checking ---------------------------------------------------------------


def _holds(c, classes, fields) -> bool:
    n = len(classes)
    if isinstance(c, NoObj):
        return c.cls not in classes
    if isinstance(c, One):
        return sum(1 for k in classes if k in c.type.members) == 1
    if isinstance(c, ObjAttrib):
        allowed = set(c.values)
        for i in range(n):
            if classes[i] == c.cls:
                vals = fields[i].get(c.field, ())
                if len(vals) != 1 or vals[0] not in allowed:
                    return False
        return True
    if isinstance(c, ObjNoFName):
        return all(fields[i].keys() <= c.allowed
                   for i in range(n) if classes[i] == c.cls)
    if isinstance(c, ObjLUAttrib):
        for i in range(n):
            if classes[i] not in c.src.members:
                continue
            vals = fields[i].get(c.field, ())
            if len(vals) < c.lower or (c.upper is not None
                                       and len(vals) > c.upper):
                return False
            for v in vals:
                if v[0] != "ref" or classes[v[1]] not in c.tgt.members:
                    return False
        return True
    if isinstance(c, (ObjLU, Composition)):
        if isinstance(c, Composition):
            src, tgt, lo, hi = c.whole, c.part, 1, 1
        else:
            src, tgt, lo, hi = c.src, c.tgt, c.lower, c.upper
        indeg = [0] * n
        for i in range(n):
            if classes[i] in src.members:
                for v in fields[i].get(c.field, ()):
                    if v[0] == "ref":
                        indeg[v[1]] += 1
        return all(lo <= indeg[j] and (hi is None or indeg[j] <= hi)
                   for j in range(n) if classes[j] in tgt.members)
    if isinstance(c, BidiAssoc):
        for i in range(n):
            for fld, own, other in ((c.forward, c.left, c.right),
                                    (c.backward, c.right, c.left)):
                if classes[i] not in own.members:
                    continue
                back = c.backward if fld == c.forward else c.forward
                for v in fields[i].get(fld, ()):
                    if v[0] == "ref" and classes[v[1]] in other.members and \
                            ("ref", i) not in fields[v[1]].get(back, ()):
                        return False
        return True
    raise TypeError(f"unknown constraint {c!r}")


def first_failure(cs: ConstraintSet, cand: Candidate):
    """The first constraint of ``cs`` that ``cand`` violates, or ``None``."""
    for c in cs.constraints:
        if not _holds(c, cand.classes, cand.fields):
            return c
    return None


def satisfies(cs: ConstraintSet, cand: Candidate) -> bool:
    return first_failure(cs, cand) is None


# -- generation -------------------------------------------------------------


@dataclass
class _Relation:
    src: frozenset[str]
    field: str
    tgt: frozenset[str]
    lower: int
    upper: Optional[int]
    inverse: Optional[str]  # derived backward field of a bidirectional pair
    # in-degree bounds: (conforming classes, lower, upper)
    indegree: list


class Generator:
    """Enumerates models of one constraint set, object count by object count."""

    def __init__(self, cs: ConstraintSet, class_names: tuple[str, ...]):
        banned = {c.cls for c in cs.of_type(NoObj)}
        self.classes = tuple(c for c in class_names if c not in banned)
        self.ones = [c.type.members for c in cs.of_type(One)]
        self.vectors: dict[str, list[tuple]] = {}
        attrs: dict[str, list[ObjAttrib]] = {}
        for c in cs.of_type(ObjAttrib):
            attrs.setdefault(c.cls, []).append(c)
        for cls in self.classes:
            per = attrs.get(cls, [])
            self.vectors[cls] = [
                tuple((a.field, v) for a, v in zip(per, combo))
                for combo in itertools.product(*(a.values for a in per))]

        derived = {}
        for b in cs.of_type(BidiAssoc):
            derived[(b.right.name, b.backward)] = (b.left.name, b.forward)
        rels: dict[tuple[str, str], _Relation] = {}
        backward = []
        for c in cs.of_type(ObjLUAttrib):
            key = (c.src.name, c.field)
            if key in derived:
                backward.append((derived[key], c))
                continue
            rels[key] = _Relation(c.src.members, c.field, c.tgt.members,
                                  c.lower, c.upper, None, [])
        for fwd_key, c in backward:
            rel = rels[fwd_key]
            rel.inverse = c.field
            rel.indegree.append((c.src.members, c.lower, c.upper))
        for c in cs.of_type(ObjLU):
            rels[(c.src.name, c.field)].indegree.append(
                (c.tgt.members, c.lower, c.upper))
        for c in cs.of_type(Composition):
            rels[(c.whole.name, c.field)].indegree.append(
                (c.part.members, 1, 1))
        self.relations = list(rels.values())

    # objects are laid out by class in ``self.classes`` order
    def models(self, n: int) -> Iterator[Candidate]:
        for classes in itertools.combinations_with_replacement(self.classes, n):
            if any(sum(1 for k in classes if k in m) != 1 for m in self.ones):
                continue
            yield from self._with_attributes(classes)

    def _with_attributes(self, classes):
        groups = [(cls, len(list(g)))
                  for cls, g in itertools.groupby(classes)]
        choices = [itertools.combinations_with_replacement(
                       range(len(self.vectors[cls])), size)
                   for cls, size in groups]
        for pick in itertools.product(*choices):
            vec_ids, vectors = [], []
            for (cls, _), ids in zip(groups, pick):
                for v in ids:
                    vec_ids.append((cls, v))
                    vectors.append(self.vectors[cls][v])
            yield from self._with_links(classes, vec_ids, vectors)

    def _with_links(self, classes, vec_ids, vectors):
        n = len(classes)
        group_of = []
        index = {}
        for key in vec_ids:
            group_of.append(index.setdefault(key, len(index)))
        touched = [0] * n
        outs: list[list[tuple[int, ...]]] = []
        plans = []
        for rel in self.relations:
            sources = [i for i in range(n) if classes[i] in rel.src]
            targets = [j for j in range(n) if classes[j] in rel.tgt]
            lo_in = [0] * n
            hi_in: list[Optional[int]] = [None] * n
            for members, lo, hi in rel.indegree:
                for j in range(n):
                    if classes[j] in members:
                        lo_in[j] = max(lo_in[j], lo)
                        if hi is not None:
                            hi_in[j] = hi if hi_in[j] is None else \
                                min(hi_in[j], hi)
            if any(hi is not None and lo > hi for lo, hi in zip(lo_in, hi_in)):
                return
            # a lower in-degree bound on a non-target can never be met
            if any(lo_in[j] > 0 and j not in targets for j in range(n)):
                return
            plans.append((rel, sources, targets, lo_in, hi_in))

        def build():
            fields: Fields = [dict() for _ in range(n)]
            for i, vec in enumerate(vectors):
                for fld, val in vec:
                    fields[i][fld] = [val]
            for (rel, sources, _, _, _), out in zip(plans, outs):
                for s, chosen in zip(sources, out):
                    if chosen:
                        fields[s][rel.field] = [("ref", t) for t in chosen]
                    if rel.inverse is not None:
                        for t in chosen:
                            fields[t].setdefault(rel.inverse, []).append(
                                ("ref", s))
            return Candidate(tuple(classes), fields)

        def relation(r):
            if r == len(plans):
                yield build()
                return
            rel, sources, targets, lo_in, hi_in = plans[r]
            indeg = [0] * n
            out: list[tuple[int, ...]] = []
            outs.append(out)
            yield from source(r, 0, rel, sources, targets, lo_in, hi_in,
                              indeg, out)
            outs.pop()

        def source(r, p, rel, sources, targets, lo_in, hi_in, indeg, out):
            if p == len(sources):
                if all(indeg[j] >= lo_in[j] for j in targets):
                    yield from relation(r + 1)
                return
            s = sources[p]
            remaining = len(sources) - p - 1
            open_targets = [j for j in targets
                            if hi_in[j] is None or indeg[j] < hi_in[j]]
            for chosen in _out_sets(s, open_targets, touched, group_of,
                                    rel.lower, rel.upper):
                for t in chosen:
                    indeg[t] += 1
                if all(indeg[j] + remaining >= lo_in[j] for j in targets):
                    touched[s] += 1
                    for t in chosen:
                        touched[t] += 1
                    out.append(chosen)
                    yield from source(r, p + 1, rel, sources, targets,
                                      lo_in, hi_in, indeg, out)
                    out.pop()
                    touched[s] -= 1
                    for t in chosen:
                        touched[t] -= 1
                for t in chosen:
                    indeg[t] -= 1

        yield from relation(0)


def _out_sets(s, targets, touched, group_of, lower, upper):
    """Target sets for source ``s``, prefix-closed on untouched twin groups."""
    fixed = [t for t in targets if touched[t] or t == s]
    groups: dict[int, list[int]] = {}
    for t in targets:
        if not touched[t] and t != s:
            groups.setdefault(group_of[t], []).append(t)
    group_lists = list(groups.values())
    cap = len(targets) if upper is None else min(upper, len(targets))
    for k_fixed in range(len(fixed) + 1):
        if k_fixed > cap:
            break
        for head in itertools.combinations(fixed, k_fixed):
            for counts in itertools.product(
                    *(range(len(g) + 1) for g in group_lists)):
                size = k_fixed + sum(counts)
                if size < lower or size > cap:
                    continue
                chosen = list(head)
                for g, m in zip(group_lists, counts):
                    chosen.extend(g[:m])
                yield tuple(sorted(chosen))
