"""Canonical forms of object models under object-id renaming.

Colour refinement followed by individualisation of the first ambiguous cell,
taking the lexicographically least serialisation over all leaves.  Objects
that can be swapped without changing the model (twins) are only tried once
per cell, which keeps the usual case of interchangeable objects cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import ObjectModel, ObjRef


@dataclass(frozen=True)
class CanonicalForm:
    canonical_text: str
    #: original object ids in canonical position order
    order: tuple[str, ...] = field(default=(), compare=False)

    def __str__(self) -> str:
        return self.canonical_text


class _Graph:
    def __init__(self, om: ObjectModel):
        self.ids = sorted(om.objects)
        index = {o: i for i, o in enumerate(self.ids)}
        n = len(self.ids)
        self.n = n
        self.cls = [om.objects[o] for o in self.ids]
        attrs: list[list[str]] = [[] for _ in range(n)]
        self.out: list[list[tuple[str, int]]] = [[] for _ in range(n)]
        self.inc: list[list[tuple[str, int]]] = [[] for _ in range(n)]
        for s in om.slots:
            i = index[s.obj]
            if isinstance(s.value, ObjRef):
                j = index[s.value.target]
                self.out[i].append((s.field, j))
                self.inc[j].append((s.field, i))
            else:
                attrs[i].append(f"{s.field}={s.value}")
        self.attrs = [tuple(sorted(a)) for a in attrs]
        self.edges = frozenset((i, f, j) for i in range(n)
                               for f, j in self.out[i])
        self.width = len(str(max(n - 1, 0)))

    def initial_colours(self) -> list[int]:
        keys = [(self.cls[i], self.attrs[i]) for i in range(self.n)]
        return _rank(keys)

    def refine(self, colours: list[int]) -> list[int]:
        cells = len(set(colours))
        while True:
            keys = [(colours[i],
                     tuple(sorted((f, colours[j]) for f, j in self.out[i])),
                     tuple(sorted((f, colours[j]) for f, j in self.inc[i])))
                    for i in range(self.n)]
            colours = _rank(keys)
            new_cells = len(set(colours))
            if new_cells == cells:
                return colours
            cells = new_cells

    def twin_classes(self) -> list[int]:
        """Representative index for each vertex under the twin relation."""
        rep = list(range(self.n))
        for i in range(self.n):
            if rep[i] != i:
                continue
            for j in range(i + 1, self.n):
                if rep[j] == j and self._swappable(i, j):
                    rep[j] = i
        return rep

    def _swappable(self, i: int, j: int) -> bool:
        if self.cls[i] != self.cls[j] or self.attrs[i] != self.attrs[j]:
            return False

        def sw(x):
            return j if x == i else i if x == j else x
        for k in (i, j):
            for f, t in self.out[k]:
                if (sw(k), f, sw(t)) not in self.edges:
                    return False
            for f, s in self.inc[k]:
                if (sw(s), f, sw(k)) not in self.edges:
                    return False
        return True

    def serialise(self, colours: list[int]) -> str:
        # colours are a permutation of 0..n-1 at a leaf
        pos = colours
        w = self.width
        order = sorted(range(self.n), key=lambda i: pos[i])
        head = ";".join(self.cls[i] for i in order)
        parts = []
        for i in range(self.n):
            p = f"{pos[i]:0{w}d}"
            parts.extend(f"{p}.{a}" for a in self.attrs[i])
            parts.extend(f"{p}.{f}->{pos[j]:0{w}d}" for f, j in self.out[i])
        return head + "|" + ";".join(sorted(parts))


def _rank(keys: list) -> list[int]:
    distinct = sorted(set(keys))
    index = {k: r for r, k in enumerate(distinct)}
    return [index[k] for k in keys]


def canonicalize(om: ObjectModel) -> CanonicalForm:
    """Canonical text that is equal exactly for isomorphic object models."""
    g = _Graph(om)
    if g.n == 0:
        return CanonicalForm("|", ())
    twins = g.twin_classes()
    best: list = [None, None]

    def search(colours: list[int]) -> None:
        colours = g.refine(colours)
        counts: dict[int, int] = {}
        for c in colours:
            counts[c] = counts.get(c, 0) + 1
        ambiguous = [c for c, k in counts.items() if k > 1]
        if not ambiguous:
            text = g.serialise(colours)
            if best[0] is None or text < best[0]:
                best[0], best[1] = text, colours
            return
        target = min(ambiguous)
        tried = set()
        for v in range(g.n):
            if colours[v] != target or twins[v] in tried:
                continue
            tried.add(twins[v])
            # v moves ahead of the rest of its cell
            keys = [(c, 0 if i == v else 1) for i, c in enumerate(colours)]
            search(_rank(keys))

    search(g.initial_colours())
    colours = best[1]
    order = tuple(g.ids[i] for i in sorted(range(g.n), key=lambda i: colours[i]))
    return CanonicalForm(best[0], order)


def canonical_relabel(om: ObjectModel, prefix_of=None,
                      form: CanonicalForm | None = None) -> ObjectModel:
    """Rename objects so that isomorphic models become identical.

    Objects get ids ``<prefix><counter>`` in canonical order, where the
    prefix defaults to the lowercased first letter of the class name and the
    counter is shared per prefix.
    """
    form = form or canonicalize(om)
    prefix_of = prefix_of or (lambda cls: cls[:1].lower())
    counters: dict[str, int] = {}
    mapping = {}
    for o in form.order:
        p = prefix_of(om.objects[o])
        counters[p] = counters.get(p, 0) + 1
        mapping[o] = f"{p}{counters[p]}"
    # rename via temporary ids to avoid clashes with existing names
    tmp = om.rename({o: f"\0{k}" for k, o in enumerate(form.order)})
    renamed = tmp.rename({f"\0{k}": mapping[o] for k, o in enumerate(form.order)})
    objects = {mapping[o]: om.objects[o] for o in form.order}
    return ObjectModel(objects, renamed.slots)
