"""Directed multigraphs (quivers), cycle words, relation sets, and group metadata.

Vertices and arrows are identified by strings.  Every ordering used by the
algorithms (component roots, breadth-first search, tie-breaks) is by
lexicographic id, so all derived structures are deterministic and replayable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

GROUP_FAMILIES = ("GL", "SL", "U", "SU", "TORUS")
COMPACT_FAMILIES = ("U", "SU")


@dataclass(frozen=True)
class Arrow:
    """A named arrow from ``tail`` to ``head``; loops (tail == head) allowed."""

    name: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph with named vertices and arrows.

    Parallel arrows and loops are permitted.  At least one vertex is
    required; arrows may be empty.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self,
            "arrows",
            tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows),
        )
        if not self.vertices:
            raise ValueError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow ids")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.tail not in vset or a.head not in vset:
                raise ValueError(f"arrow {a.name!r} references undeclared vertex")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise ValueError(f"unknown arrow id {name!r}")

    def has_arrow(self, name: str) -> bool:
        return any(a.name == name for a in self.arrows)

    def check_vertex(self, v: str) -> str:
        if v not in self.vertices:
            raise ValueError(f"unknown vertex id {v!r}")
        return v

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.tail == v)

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.head == v)

    def incident_arrows(self, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if v in (a.tail, a.head))


@dataclass(frozen=True)
class Word:
    """Sequence of arrow letters with exponents in {+1, -1}.

    Letters are stored in composition order: the first entry is applied
    last, so a stored sequence (a_k, ..., a_1) is evaluated as the product
    f(a_k) ... f(a_1).  Joining the letter ids in stored order therefore
    reproduces the conventional right-to-left display of the word.
    """

    letters: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple((str(n), int(e)) for n, e in self.letters))
        for name, exp in self.letters:
            if exp not in (1, -1):
                raise ValueError(f"letter {name!r} has exponent {exp}; only +1/-1 allowed")

    @classmethod
    def from_arrow_names(cls, names: Sequence[str]) -> "Word":
        """Word of positive letters given in display (stored) order."""
        return cls(tuple((n, 1) for n in names))

    @classmethod
    def from_application_order(cls, letters: Sequence[tuple[str, int]]) -> "Word":
        """Build a word from letters listed first-applied-first."""
        return cls(tuple(reversed([tuple(l) for l in letters])))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)))

    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.letters)

    def arrow_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.letters)

    def display(self) -> str:
        parts = []
        for name, exp in self.letters:
            parts.append(name if exp == 1 else name + "^-1")
        return " ".join(parts) if parts else "(empty)"


def letter_endpoints(q: Quiver, letter: tuple[str, int]) -> tuple[str, str]:
    """Effective (tail, head) of a letter; inverse letters traverse backwards."""
    name, exp = letter
    a = q.arrow(name)
    return (a.tail, a.head) if exp == 1 else (a.head, a.tail)


def word_endpoints(q: Quiver, w: Word) -> tuple[str, str] | None:
    """(tail, head) of a composable word, None for the empty word.

    Raises ValueError when consecutive letters do not compose.
    """
    if not w.letters:
        return None
    ends = [letter_endpoints(q, l) for l in w.letters]
    for i in range(len(ends) - 1):
        # letters are stored last-applied first: the later letter in the
        # list is applied earlier, so its head must meet the next tail
        if ends[i][0] != ends[i + 1][1]:
            raise ValueError(
                f"word {w.display()!r} breaks between positions {i} and {i + 1}"
            )
    return ends[-1][0], ends[0][1]


def is_cycle(q: Quiver, w: Word) -> bool:
    """True when the word composes and closes up (empty words count)."""
    try:
        ends = word_endpoints(q, w)
    except ValueError:
        return False
    return ends is None or ends[0] == ends[1]


@dataclass(frozen=True)
class RelationViolation:
    word_index: int
    letter_index: int | None
    message: str


@dataclass(frozen=True)
class RelationSet:
    """Finite set of relations, each a positively oriented cycle."""

    relations: tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "relations", tuple(self.relations))

    @classmethod
    def from_names(cls, cycles: Iterable[Sequence[str]]) -> "RelationSet":
        return cls(tuple(Word.from_arrow_names(c) for c in cycles))

    def __len__(self) -> int:
        return len(self.relations)


def validate_relations(q: Quiver, rels: RelationSet) -> tuple[RelationViolation, ...]:
    """Check every relation word for composability and closedness.

    Returns an empty tuple when everything validates; otherwise one
    violation per failing word naming the first offending letter index.
    """
    violations: list[RelationViolation] = []
    for wi, w in enumerate(rels.relations):
        bad = None
        for li, (name, exp) in enumerate(w.letters):
            if not q.has_arrow(name):
                bad = RelationViolation(wi, li, f"unknown arrow {name!r}")
                break
            if exp != 1:
                bad = RelationViolation(wi, li, "relations must be positively oriented")
                break
        if bad is None and w.letters:
            ends = [letter_endpoints(q, l) for l in w.letters]
            for i in range(len(ends) - 1):
                if ends[i][0] != ends[i + 1][1]:
                    bad = RelationViolation(wi, i, "consecutive letters do not compose")
                    break
            if bad is None and ends[-1][0] != ends[0][1]:
                bad = RelationViolation(wi, None, "word does not close up")
        if bad is not None:
            violations.append(bad)
    return tuple(violations)


@dataclass(frozen=True)
class GroupSpec:
    """Matrix group family and size.

    Families: GL, SL, U, SU, and TORUS (= GL(1), so n must be 1).  Dimension
    metadata is the complex dimension and is defined only for the
    non-compact families.
    """

    family: str
    n: int

    def __post_init__(self) -> None:
        if self.family not in GROUP_FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")
        if self.n < 1:
            raise ValueError("matrix size must be >= 1")
        if self.family == "TORUS" and self.n != 1:
            raise ValueError("TORUS means GL(1); use n=1")

    @property
    def is_compact(self) -> bool:
        return self.family in COMPACT_FAMILIES

    @property
    def complex_dimension(self) -> int:
        if self.family in ("GL",):
            return self.n * self.n
        if self.family == "SL":
            return self.n * self.n - 1
        if self.family == "TORUS":
            return 1
        raise ValueError(f"complex dimension undefined for compact family {self.family}")

    @property
    def center_dimension(self) -> int:
        if self.family in ("GL", "TORUS"):
            return 1
        if self.family == "SL":
            return 0
        raise ValueError(f"center dimension undefined for compact family {self.family}")


# ---------------------------------------------------------------------------
# topological invariants and vertex classification


def connected_components(q: Quiver) -> tuple[tuple[str, ...], ...]:
    """Undirected connected components, each a tuple of vertex ids.

    Components are listed by smallest member; members are kept in quiver
    vertex order.
    """
    adjacency: dict[str, set[str]] = {v: set() for v in q.vertices}
    for a in q.arrows:
        adjacency[a.tail].add(a.head)
        adjacency[a.head].add(a.tail)
    seen: set[str] = set()
    comps = []
    for root in sorted(q.vertices):
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in sorted(adjacency[v]):
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        seen |= comp
        comps.append(tuple(v for v in q.vertices if v in comp))
    return tuple(comps)


def is_connected(q: Quiver) -> bool:
    return len(connected_components(q)) == 1


def betti_number(q: Quiver) -> int:
    """First Betti number of the underlying 1-complex: N_A - N_V + #components."""
    return q.n_arrows - q.n_vertices + len(connected_components(q))


def euler_characteristic(q: Quiver) -> int:
    """N_V - N_A; equals 1 - betti_number for connected quivers."""
    return q.n_vertices - q.n_arrows


def classify_vertex(q: Quiver, v: str) -> str:
    """One of 'source', 'sink', 'internal', 'isolated'.

    A loop counts as both incoming and outgoing, so a vertex carrying only
    a loop is internal.
    """
    q.check_vertex(v)
    outs = sum(1 for a in q.arrows if a.tail == v)
    ins = sum(1 for a in q.arrows if a.head == v)
    if outs == 0 and ins == 0:
        return "isolated"
    if ins == 0:
        return "source"
    if outs == 0:
        return "sink"
    return "internal"


def ends(q: Quiver) -> tuple[str, ...]:
    """Vertices classified as source or sink, in vertex order."""
    return tuple(v for v in q.vertices if classify_vertex(q, v) in ("source", "sink"))


def is_super_cyclic(q: Quiver) -> bool:
    """True when the quiver has no sources and no sinks."""
    return not ends(q)


def strongly_connected_components(q: Quiver) -> tuple[tuple[str, ...], ...]:
    """Strongly connected components by Tarjan's algorithm (iterative).

    Deterministic: roots and adjacency are scanned in lexicographic order.
    """
    order = sorted(q.vertices)
    succ: dict[str, list[str]] = {v: [] for v in order}
    for a in sorted(q.arrows, key=lambda a: a.name):
        succ[a.tail].append(a.head)

    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = 0
    sccs: list[tuple[str, ...]] = []

    for root in order:
        if root in index:
            continue
        work: list[tuple[str, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if w not in index:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(tuple(sorted(comp)))
    return tuple(sorted(sccs))


def is_strongly_connected(q: Quiver) -> bool:
    """True iff every ordered vertex pair is joined by a directed path."""
    return len(strongly_connected_components(q)) == 1


# ---------------------------------------------------------------------------
# spanning forests and fundamental cycles


@dataclass(frozen=True)
class SpanningForest:
    """Deterministic BFS spanning forest of the underlying undirected graph.

    ``parent`` maps each non-root vertex to (parent vertex, arrow id,
    forward) where ``forward`` is True when the arrow points parent to
    child.  ``tree_arrows`` lists tree arrow ids in BFS discovery order.
    """

    roots: tuple[str, ...]
    parent: dict[str, tuple[str, str, bool]]
    tree_arrows: tuple[str, ...]


def spanning_forest(q: Quiver) -> SpanningForest:
    """BFS forest with roots at the smallest vertex id of each component.

    Neighbor exploration is by lexicographic arrow id, so parallel arrows
    are broken deterministically.
    """
    incident: dict[str, list[Arrow]] = {v: [] for v in q.vertices}
    for a in sorted(q.arrows, key=lambda a: a.name):
        incident[a.tail].append(a)
        if not a.is_loop:
            incident[a.head].append(a)

    visited: set[str] = set()
    roots: list[str] = []
    parent: dict[str, tuple[str, str, bool]] = {}
    tree_arrows: list[str] = []

    for root in sorted(q.vertices):
        if root in visited:
            continue
        roots.append(root)
        visited.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for a in incident[v]:
                if a.is_loop:
                    continue
                other = a.head if a.tail == v else a.tail
                if other in visited:
                    continue
                visited.add(other)
                parent[other] = (v, a.name, a.tail == v)
                tree_arrows.append(a.name)
                queue.append(other)
    return SpanningForest(tuple(roots), parent, tuple(tree_arrows))


def tree_path_letters(forest: SpanningForest, v: str) -> list[tuple[str, int]]:
    """Letters of the forest path root -> v in application order."""
    path: list[tuple[str, int]] = []
    while v in forest.parent:
        u, name, forward = forest.parent[v]
        path.append((name, 1 if forward else -1))
        v = u
    path.reverse()
    return path


def fundamental_cycles(q: Quiver) -> tuple[tuple[Word, ...], SpanningForest]:
    """One cycle word per non-tree arrow, each closed at its component root.

    The cycle for a non-tree arrow runs from the root to its tail along the
    forest, across the arrow, and back to the root; tree letters pick up
    exponent -1 when walked against their direction.  The list has exactly
    betti_number(q) entries.
    """
    forest = spanning_forest(q)
    tree = set(forest.tree_arrows)
    cycles = []
    for a in q.arrows:
        if a.name in tree:
            continue
        to_tail = tree_path_letters(forest, a.tail)
        to_head = tree_path_letters(forest, a.head)
        back = [(name, -e) for name, e in reversed(to_head)]
        application = to_tail + [(a.name, 1)] + back
        cycles.append(Word.from_application_order(application))
    return tuple(cycles), forest


def moduli_dimension(q: Quiver, group: GroupSpec) -> int:
    """Dimension of the representation moduli for a connected quiver.

    Trees give a single point (dimension 0); otherwise the dimension is
    dim center + (b1 - 1) * dim group.  Compact families are rejected:
    only complex dimensions are tabulated.
    """
    if not is_connected(q):
        raise ValueError("dimension formula requires a connected quiver")
    if group.is_compact:
        raise ValueError("dimension formula covers GL/SL/TORUS only")
    r = betti_number(q)
    if r == 0:
        return 0
    return group.center_dimension + (r - 1) * group.complex_dimension
