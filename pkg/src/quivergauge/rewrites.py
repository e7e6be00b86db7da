"""Structural quiver rewrites: pinch, clip, collapse, reversal, rose reduction.

Collapsing a non-loop arrow merges its endpoints (the survivor is the
lexicographically smaller id) and deletes the arrow; relation words are
translated by dropping every occurrence of the collapsed arrow.  A
ReductionTrace records the collapse sequence so representations can be
carried along afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .quiver import (
    Arrow,
    Quiver,
    RelationSet,
    Word,
    betti_number,
    is_connected,
    spanning_forest,
    validate_relations,
)

TRACE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class CollapseStep:
    """One collapse: the removed arrow, its endpoints, and the vertex merge.

    ``vertex_map`` sends every vertex of the pre-step quiver to the
    corresponding vertex afterwards.  The marking of ``arrow`` at the time
    of the step is the conjugator attached to the merged vertex when a
    representation is pushed through the step.
    """

    arrow: str
    tail: str
    head: str
    merged: str
    vertex_map: tuple[tuple[str, str], ...]

    def map_vertex(self, v: str) -> str:
        for old, new in self.vertex_map:
            if old == v:
                return new
        raise ValueError(f"vertex {v!r} not in step map")


@dataclass(frozen=True)
class ReductionTrace:
    """Replayable record of a collapse sequence from ``source`` to ``final``."""

    source: Quiver
    steps: tuple[CollapseStep, ...]
    final: Quiver
    final_relations: RelationSet

    def map_vertex(self, v: str) -> str:
        """Image of a source vertex in the final quiver."""
        for step in self.steps:
            v = step.map_vertex(v)
        return v

    def replay(self, rels: RelationSet | None = None) -> tuple[Quiver, RelationSet]:
        """Re-run the steps on the source quiver; must reproduce ``final``."""
        q = self.source
        r = rels if rels is not None else RelationSet()
        for step in self.steps:
            q, r, replayed = collapse(q, r, step.arrow)
            if (replayed.tail, replayed.head, replayed.merged) != (
                step.tail,
                step.head,
                step.merged,
            ):
                raise ValueError("trace does not replay on its source quiver")
        return q, r


@dataclass(frozen=True)
class VertexMap:
    """Total, surjective map from source-quiver vertices onto target vertices."""

    mapping: tuple[tuple[str, str], ...]

    def __call__(self, v: str) -> str:
        for old, new in self.mapping:
            if old == v:
                return new
        raise ValueError(f"vertex {v!r} not in map")

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)


def _merge_vertices(q: Quiver, v1: str, v2: str) -> tuple[Quiver, tuple[tuple[str, str], ...]]:
    survivor = min(v1, v2)
    gone = max(v1, v2)
    ren = {v: (survivor if v == gone else v) for v in q.vertices}
    vertices = tuple(v for v in q.vertices if v != gone)
    arrows = tuple(Arrow(a.name, ren[a.tail], ren[a.head]) for a in q.arrows)
    return Quiver(vertices, arrows), tuple(sorted(ren.items()))


def pinch(q: Quiver, v1: str, v2: str) -> tuple[Quiver, VertexMap]:
    """Identify two distinct vertices; arrows are kept as a set.

    The merged vertex takes the lexicographically smaller id, so the result
    is arrow-equivalent to the input with the identity bijection on ids.
    """
    q.check_vertex(v1)
    q.check_vertex(v2)
    if v1 == v2:
        raise ValueError("pinch needs two distinct vertices")
    merged, mapping = _merge_vertices(q, v1, v2)
    return merged, VertexMap(mapping)


def clip(q: Quiver, arrow: str) -> Quiver:
    """Remove one arrow; vertices are untouched."""
    q.arrow(arrow)
    return Quiver(q.vertices, tuple(a for a in q.arrows if a.name != arrow))


def _translate_relations(rels: RelationSet, removed: str) -> RelationSet:
    translated = []
    for w in rels.relations:
        letters = tuple(l for l in w.letters if l[0] != removed)
        translated.append(Word(letters))
    return RelationSet(tuple(translated))


def collapse(q: Quiver, rels: RelationSet, arrow: str) -> tuple[Quiver, RelationSet, CollapseStep]:
    """Merge the endpoints of a non-loop arrow and delete it.

    Relation words are translated by deleting every letter carrying the
    collapsed arrow; the translated set still validates on the new quiver.
    """
    a = q.arrow(arrow)
    if a.is_loop:
        raise ValueError(f"cannot collapse loop {arrow!r}")
    clipped = clip(q, arrow)
    merged, mapping = _merge_vertices(clipped, a.tail, a.head)
    new_rels = _translate_relations(rels, arrow)
    if validate_relations(merged, new_rels):
        raise ValueError("translated relations fail to validate after collapse")
    step = CollapseStep(
        arrow=arrow,
        tail=a.tail,
        head=a.head,
        merged=min(a.tail, a.head),
        vertex_map=mapping,
    )
    return merged, new_rels, step


def apply_step(q: Quiver, step: CollapseStep) -> Quiver:
    """Apply a recorded collapse step to a quiver (structure only)."""
    merged, _, replayed = collapse(q, RelationSet(), step.arrow)
    if (replayed.tail, replayed.head) != (step.tail, step.head):
        raise ValueError("step does not match the quiver it is applied to")
    return merged


def reduce_to_rose(q: Quiver, rels: RelationSet | None = None) -> tuple[Quiver, RelationSet, ReductionTrace]:
    """Collapse the BFS spanning tree of a connected quiver down to one vertex.

    The result is a rose with exactly betti_number(q) loops; the translated
    relations present the fundamental group of the quiver relative to those
    loops.  Tree arrows are collapsed in BFS discovery order.
    """
    if not is_connected(q):
        raise ValueError("rose reduction requires a connected quiver")
    rels = rels if rels is not None else RelationSet()
    bad = validate_relations(q, rels)
    if bad:
        raise ValueError(f"invalid relation set: {bad[0].message}")
    forest = spanning_forest(q)
    current, current_rels = q, rels
    steps = []
    for name in forest.tree_arrows:
        current, current_rels, step = collapse(current, current_rels, name)
        steps.append(step)
    trace = ReductionTrace(q, tuple(steps), current, current_rels)
    if current.n_vertices != 1 or current.n_arrows != betti_number(q):
        raise AssertionError("rose reduction left the wrong skeleton")
    return current, current_rels, trace


def reverse_arrows(q: Quiver, subset: Iterable[str]) -> Quiver:
    """Swap head and tail of the listed arrows."""
    names = set(subset)
    for name in names:
        q.arrow(name)
    arrows = tuple(
        Arrow(a.name, a.head, a.tail) if a.name in names else a for a in q.arrows
    )
    return Quiver(q.vertices, arrows)


def arrows_equivalent(q1: Quiver, q2: Quiver) -> bool:
    """True when the two quivers carry exactly the same arrow ids."""
    return {a.name for a in q1.arrows} == {a.name for a in q2.arrows}
