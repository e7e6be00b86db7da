"""Additive (endomorphism-valued) representations and orbit-closure diagnostics.

Group-valued representations embed into tuples of arbitrary n x n matrices
by forgetting invertibility.  At a sink or source an explicit one-parameter
gauge degenerates every incident marking to zero, certifying a non-closed
orbit; on strongly connected quivers a weight-monotonicity argument rules
such degenerations out.  Equal-determinant gauges between unimodular
representations can be rescaled to unit determinant without changing their
action.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .matrices import as_matrix
from .quiver import (
    GroupSpec,
    Quiver,
    Word,
    classify_vertex,
    ends,
    is_connected,
    is_strongly_connected,
)
from .representation import GaugeElement, Representation

ALL_INVERTIBLE_ORBITS_CLOSED = "all_invertible_orbits_closed"
ENDS_OBSTRUCT = "ends_obstruct"
INCONCLUSIVE = "inconclusive"

_EMBEDDABLE = ("GL", "SL", "TORUS")


@dataclass(frozen=True, eq=False)
class AdditiveRep:
    """Arrow markings by arbitrary (possibly singular) n x n matrices."""

    quiver: Quiver
    n: int
    markings: Mapping[str, np.ndarray]

    def __post_init__(self) -> None:
        names = [a.name for a in self.quiver.arrows]
        missing = [k for k in names if k not in self.markings]
        if missing:
            raise ValueError(f"missing marking for {missing[0]!r}")
        extra = [k for k in self.markings if k not in set(names)]
        if extra:
            raise ValueError(f"unexpected marking for {extra[0]!r}")
        object.__setattr__(
            self,
            "markings",
            {k: as_matrix(self.markings[k], self.n) for k in names},
        )

    def matrix(self, arrow: str) -> np.ndarray:
        if arrow not in self.markings:
            raise ValueError(f"unknown arrow id {arrow!r}")
        return self.markings[arrow]


def embed_additive(f: Representation) -> AdditiveRep:
    """Reinterpret a GL/SL representation as an additive one.

    The markings are unchanged, so the image consists of representations
    with all determinants nonzero (and equal to one for SL).
    """
    if f.group.family not in _EMBEDDABLE:
        raise ValueError("additive embedding applies to GL/SL/TORUS representations")
    return AdditiveRep(f.quiver, f.group.n, dict(f.markings))


def to_representation(x: AdditiveRep, group: GroupSpec) -> Representation:
    """Round-trip back to a group-valued representation.

    Succeeds exactly when every marking passes the group membership test.
    """
    if group.n != x.n:
        raise ValueError("size mismatch")
    return Representation(x.quiver, group, dict(x.markings))


def act_additive(g: GaugeElement, x: AdditiveRep) -> AdditiveRep:
    """Gauge action g(head) marking g(tail)^(-1) on an additive representation."""
    if g.quiver != x.quiver:
        raise ValueError("quiver mismatch")
    if g.group.n != x.n:
        raise ValueError("size mismatch")
    inverses = {v: np.linalg.inv(g.values[v]) for v in x.quiver.vertices}
    markings = {
        a.name: g.values[a.head] @ x.markings[a.name] @ inverses[a.tail]
        for a in x.quiver.arrows
    }
    return AdditiveRep(x.quiver, x.n, markings)


@dataclass(frozen=True, eq=False)
class DegenerationWitness:
    """A one-parameter gauge degeneration at an end vertex.

    The gauge is t * I at ``vertex`` and the identity elsewhere; for a sink
    the incident markings scale by t (limit t -> 0), for a source by 1/t
    (limit t -> infinity).  ``samples`` realize the gauge at the recorded
    ``parameters``; ``limit`` zeroes the degenerated arrows exactly and
    keeps every other marking.  Since a zero marking stays zero under every
    gauge, the limit lies in the orbit closure but outside the orbit
    whenever one degenerated marking was nonzero.
    """

    vertex: str
    direction: str
    parameters: tuple[float, ...]
    samples: tuple[AdditiveRep, ...]
    limit: AdditiveRep
    degenerated_arrows: tuple[str, ...]


def _scale_at_vertex(x: AdditiveRep, v: str, t: float, direction: str) -> AdditiveRep:
    markings = {}
    for a in x.quiver.arrows:
        m = x.markings[a.name]
        if direction == "sink" and a.head == v:
            m = t * m
        if direction == "source" and a.tail == v:
            m = m / t
        markings[a.name] = m
    return AdditiveRep(x.quiver, x.n, markings)


def sink_source_witness(x: AdditiveRep, v: str) -> DegenerationWitness:
    """Degeneration witness at an end vertex with a nonzero incident marking."""
    kind = classify_vertex(x.quiver, v)
    if kind not in ("sink", "source"):
        raise ValueError(f"vertex {v!r} is {kind}, not a sink or source")
    incident = [
        a.name
        for a in x.quiver.arrows
        if (a.head == v if kind == "sink" else a.tail == v)
    ]
    if all(np.allclose(x.markings[name], 0.0) for name in incident):
        raise ValueError(f"all markings incident to {v!r} are already zero")

    parameters = (1.0, 0.5, 0.125, 1.0 / 64.0)
    if kind == "source":
        parameters = tuple(1.0 / t for t in parameters)
    samples = tuple(_scale_at_vertex(x, v, t, kind) for t in parameters)

    zero = np.zeros((x.n, x.n), dtype=complex)
    limit_markings = {
        a.name: (zero if a.name in incident else x.markings[a.name])
        for a in x.quiver.arrows
    }
    limit = AdditiveRep(x.quiver, x.n, limit_markings)
    return DegenerationWitness(
        vertex=v,
        direction=kind,
        parameters=parameters,
        samples=samples,
        limit=limit,
        degenerated_arrows=tuple(incident),
    )


def directed_path(q: Quiver, src: str, dst: str) -> list[str] | None:
    """Arrow ids of a directed path src -> dst, or None; [] when src == dst.

    Breadth-first with lexicographic arrow order, so deterministic.
    """
    q.check_vertex(src)
    q.check_vertex(dst)
    if src == dst:
        return []
    succ: dict[str, list[tuple[str, str]]] = {v: [] for v in q.vertices}
    for a in sorted(q.arrows, key=lambda a: a.name):
        succ[a.tail].append((a.name, a.head))
    prev: dict[str, tuple[str, str]] = {}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for name, w in succ[v]:
            if w in prev or w == src:
                continue
            prev[w] = (v, name)
            if w == dst:
                path = []
                while w != src:
                    v, name = prev[w]
                    path.append(name)
                    w = v
                path.reverse()
                return path
            queue.append(w)
    return None


@dataclass(frozen=True)
class MonotoneReport:
    """Outcome of the weight-monotonicity check.

    ``ok`` means the assignment is constant.  Otherwise
    ``violating_arrow`` names an arrow whose head weight is strictly below
    its tail weight and ``witness_cycle`` is an oriented cycle through that
    arrow: chaining head >= tail around the cycle forces equality, so no
    non-constant assignment can be monotone on a strongly connected quiver.
    """

    ok: bool
    violating_arrow: str | None = None
    witness_cycle: Word | None = None


def monotone_weights_force_constant(q: Quiver, alpha: Mapping[str, int]) -> MonotoneReport:
    """Check that head >= tail weight monotonicity forces a constant assignment."""
    if not is_strongly_connected(q):
        raise ValueError("weight monotonicity argument needs a strongly connected quiver")
    for v in q.vertices:
        if v not in alpha:
            raise ValueError(f"missing weight for vertex {v!r}")
    values = {alpha[v] for v in q.vertices}
    if len(values) <= 1:
        return MonotoneReport(ok=True)
    violating = None
    for a in sorted(q.arrows, key=lambda a: a.name):
        if alpha[a.head] < alpha[a.tail]:
            violating = a
            break
    if violating is None:
        # impossible: monotone weights on a strongly connected quiver are
        # constant, and this assignment is not constant
        raise AssertionError("non-constant assignment with no violating arrow")
    back = directed_path(q, violating.head, violating.tail)
    cycle = Word.from_application_order(
        [(violating.name, 1)] + [(name, 1) for name in back]
    )
    return MonotoneReport(ok=False, violating_arrow=violating.name, witness_cycle=cycle)


@dataclass(frozen=True)
class OrbitCertificate:
    """Verdict on closedness of invertible-representation orbits.

    ``ends_obstruct`` lists the sink/source vertices at which every
    invertible representation degenerates.  For the strongly connected
    verdict, a sample non-constant weight assignment and the cycle on which
    it fails monotonicity are attached as constructive evidence.
    """

    verdict: str
    ends: tuple[str, ...] = ()
    sample_alpha: tuple[tuple[str, int], ...] | None = None
    sample_violation: MonotoneReport | None = None


def closed_orbit_certificate(q: Quiver) -> OrbitCertificate:
    """Classify a connected quiver by the orbit-closure behavior it forces.

    Strongly connected quivers put every arrow on an oriented cycle, which
    rules out the weight degenerations, so all invertible orbits stay
    closed.  Quivers with ends admit the explicit sink/source degeneration
    at every end.  Quivers with no ends that are not strongly connected are
    reported inconclusive rather than guessed.
    """
    if not is_connected(q):
        raise ValueError("certificate requires a connected quiver")
    end_vertices = ends(q)
    if end_vertices:
        return OrbitCertificate(verdict=ENDS_OBSTRUCT, ends=end_vertices)
    if is_strongly_connected(q):
        sample_alpha = None
        violation = None
        if q.n_vertices >= 2:
            marked = max(q.vertices)
            alpha = {v: (1 if v == marked else 0) for v in q.vertices}
            sample_alpha = tuple(sorted(alpha.items()))
            violation = monotone_weights_force_constant(q, alpha)
        return OrbitCertificate(
            verdict=ALL_INVERTIBLE_ORBITS_CLOSED,
            sample_alpha=sample_alpha,
            sample_violation=violation,
        )
    return OrbitCertificate(verdict=INCONCLUSIVE)


def unimodular_rescale(
    g: GaugeElement,
    x: AdditiveRep,
    x_prime: AdditiveRep,
    tol: float = 1e-9,
) -> GaugeElement:
    """Rescale an equal-determinant gauge between unimodular representations.

    Requires x and x_prime unimodular within tol, g carrying x to x_prime
    within tol, and all vertex determinants of g equal within tol.  The
    returned gauge divides every value by the principal n-th root of the
    common determinant: its determinants are 1 within 10 tol and, because
    the scalar cancels across each arrow, it still carries x to x_prime.
    """
    if g.quiver != x.quiver or x.quiver != x_prime.quiver:
        raise ValueError("quiver mismatch")
    n = x.n
    if g.group.n != n or x_prime.n != n:
        raise ValueError("size mismatch")
    for rep, label in ((x, "x"), (x_prime, "x_prime")):
        for name, m in rep.markings.items():
            if abs(np.linalg.det(m) - 1.0) > tol:
                raise ValueError(f"{label} is not unimodular at arrow {name!r}")
    acted = act_additive(g, x)
    for name in acted.markings:
        gap = float(np.linalg.norm(acted.markings[name] - x_prime.markings[name]))
        if gap > tol:
            raise ValueError(f"gauge does not carry x to x_prime at arrow {name!r} (gap {gap:.3e})")

    dets = {v: complex(np.linalg.det(g.values[v])) for v in g.quiver.vertices}
    reference = dets[min(dets)]
    for v, d in dets.items():
        if abs(d - reference) > tol:
            raise ValueError(
                f"gauge determinants disagree at vertex {v!r}: {d} vs {reference}"
            )
    root = np.exp(np.log(reference) / n)
    values = {v: g.values[v] / root for v in g.quiver.vertices}
    return GaugeElement(
        g.quiver, GroupSpec("SL", n), values, membership_tol=max(10.0 * tol, 1e-12)
    )
