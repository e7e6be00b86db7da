"""Polar-decomposition retraction and the Kempf-Ness apparatus.

The retraction interpolates every marking from a general invertible matrix
at time 0 to its unitary polar factor at time 1 and is equivariant under
unitary gauges.  The residual measures, vertex by vertex, how far a
representation is from being a minimal-norm point of its gauge orbit; the
flow descends the orbit norm along Hermitian gauge directions until the
residual is small.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .matrices import (
    TOL_MEMBERSHIP,
    as_matrix,
    hermitian_exp,
    hermitian_power,
)
from .representation import GaugeElement, Representation, gauge_act

_MAX_BACKTRACKS = 60
_MAX_STEP = 1e12

_NONCOMPACT = ("GL", "SL", "TORUS")


def polar_retract(gm, t: float) -> np.ndarray:
    """g (g* g)^(-t/2): the straight path from g to its unitary factor.

    t=0 returns g unchanged; t=1 returns the unitary polar factor; unitary
    inputs are fixed for every t.  Requires an invertible matrix and
    t in [0, 1].
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("retraction time must lie in [0, 1]")
    g = as_matrix(gm)
    if t == 0.0:
        return g
    if abs(np.linalg.det(g)) <= TOL_MEMBERSHIP:
        raise ValueError("retraction needs an invertible matrix")
    gram = g.conj().T @ g
    return g @ hermitian_power(gram, -t / 2.0)


def retract_representation(f: Representation, t: float) -> Representation:
    """Apply the polar retraction to every marking.

    At t=1 all markings are unitary (and keep unit determinant for SL).
    Compact families are already at the endpoint: the representation is
    returned unchanged with a warning.
    """
    if f.group.is_compact:
        warnings.warn(
            f"{f.group.family}({f.group.n}) is compact; retraction is the identity",
            stacklevel=2,
        )
        return f
    if t == 0.0:
        return f
    markings = {name: polar_retract(m, t) for name, m in f.markings.items()}
    return Representation(f.quiver, f.group, markings, membership_tol=f.membership_tol)


def _traceless(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    return m - (np.trace(m) / n) * np.eye(n, dtype=complex)


@dataclass(frozen=True)
class KNResidual:
    """Per-vertex Hermitian moment matrices and their aggregate norm.

    ``per_vertex`` holds, for each vertex, the sum of marking* marking over
    outgoing arrows minus marking marking* over incoming arrows (loops
    contribute both).  ``projected`` removes the trace part: the compact
    gauge directions are traceless in their orthogonal presentation, and
    the pure-trace directions are determinant rescalings under which the
    orbit norm has no minimum on degree-unbalanced quivers.  ``aggregate``
    is the square root of the summed squared Frobenius norms of the
    projections; zero aggregate is the minimal-norm (critical point)
    condition, and unitary-valued representations always satisfy it.
    """

    per_vertex: Mapping[str, np.ndarray]
    projected: Mapping[str, np.ndarray]
    aggregate: float


def kn_moment(f: Representation) -> KNResidual:
    """Moment matrices of a representation under the unitary gauge group."""
    n = f.group.n
    moments = {v: np.zeros((n, n), dtype=complex) for v in f.quiver.vertices}
    for a in f.quiver.arrows:
        m = f.markings[a.name]
        moments[a.tail] = moments[a.tail] + m.conj().T @ m
        moments[a.head] = moments[a.head] - m @ m.conj().T
    projected = {v: _traceless(m) for v, m in moments.items()}
    aggregate = float(np.sqrt(sum(np.linalg.norm(p) ** 2 for p in projected.values())))
    return KNResidual(per_vertex=moments, projected=projected, aggregate=aggregate)


def orbit_norm(f: Representation) -> float:
    """Sum of squared Frobenius norms of the markings."""
    return float(sum(np.linalg.norm(m) ** 2 for m in f.markings.values()))


def infinitesimal_action(u: Mapping[str, np.ndarray], f: Representation) -> dict[str, np.ndarray]:
    """Derivative of the gauge path exp(-t u) acting on f, at t = 0.

    Per arrow this is marking u(tail) - u(head) marking.
    """
    out = {}
    for a in f.quiver.arrows:
        m = f.markings[a.name]
        out[a.name] = m @ as_matrix(u[a.tail], f.group.n) - as_matrix(u[a.head], f.group.n) @ m
    return out


def action_pairing(u: Mapping[str, np.ndarray], f: Representation) -> complex:
    """Hermitian pairing of the infinitesimal action with f itself.

    Equals the moment contraction sum over vertices of tr(u_v M_v); for
    Hermitian u it is half the derivative of the orbit norm along the
    gauge path exp(-t u).
    """
    df = infinitesimal_action(u, f)
    return complex(
        sum(np.trace(df[a.name] @ f.markings[a.name].conj().T) for a in f.quiver.arrows)
    )


def moment_contraction(u: Mapping[str, np.ndarray], residual: KNResidual) -> complex:
    """Sum over vertices of tr(u_v M_v)."""
    return complex(
        sum(np.trace(as_matrix(u[v]) @ m) for v, m in residual.per_vertex.items())
    )


@dataclass(frozen=True)
class FlowReport:
    """Outcome of a norm-minimizing flow run.

    ``norm_history`` and ``residual_history`` record the state after each
    accepted step, starting with the input; the norm history is strictly
    decreasing until the stop.  ``converged`` means the final aggregate
    residual is at or below the requested tolerance.
    """

    iterations: int
    residual_history: tuple[float, ...]
    norm_history: tuple[float, ...]
    final: Representation
    converged: bool


def kn_flow(
    f: Representation,
    step0: float = 0.25,
    max_iter: int = 1000,
    tol: float = 1e-8,
) -> FlowReport:
    """Steepest descent of the orbit norm along Hermitian gauge directions.

    Each step acts by the gauge whose value at vertex v is
    exp(step * projected moment at v); the sign makes the directional
    derivative of the orbit norm equal minus twice the squared aggregate
    residual, so small enough steps always descend.  Step sizes backtrack
    by halving until the norm strictly decreases (non-finite trials count
    as failures) and double after success.  The flow stops at residual <=
    tol, after max_iter accepted steps, or when no step size descends.

    For representations whose gauge orbit is not closed the flow descends
    toward the minimal-norm representative in the orbit closure; trace
    invariants of closed words are constant along the way.
    """
    if f.group.family not in _NONCOMPACT:
        raise ValueError("flow applies to GL/SL/TORUS representations")
    if step0 <= 0:
        raise ValueError("step0 must be positive")
    if max_iter < 0:
        raise ValueError("max_iter must be non-negative")

    current = Representation(f.quiver, f.group, dict(f.markings), membership_tol=0.0)
    residual = kn_moment(current)
    norms = [orbit_norm(current)]
    residuals = [residual.aggregate]
    eps = float(step0)
    iterations = 0

    while residuals[-1] > tol and iterations < max_iter:
        direction = {
            v: 0.5 * (m + m.conj().T) for v, m in residual.projected.items()
        }
        accepted = None
        trial = eps
        for _ in range(_MAX_BACKTRACKS + 1):
            try:
                values = {v: hermitian_exp(trial * d) for v, d in direction.items()}
                gauge = GaugeElement(current.quiver, current.group, values, membership_tol=0.0)
                candidate = gauge_act(gauge, current)
                candidate_norm = orbit_norm(candidate)
            except (ValueError, FloatingPointError, np.linalg.LinAlgError):
                trial /= 2.0
                continue
            if np.isfinite(candidate_norm) and candidate_norm < norms[-1]:
                accepted = (candidate, candidate_norm)
                eps = min(trial * 2.0, _MAX_STEP)
                break
            trial /= 2.0
        if accepted is None:
            break
        current, new_norm = accepted
        residual = kn_moment(current)
        norms.append(new_norm)
        residuals.append(residual.aggregate)
        iterations += 1

    return FlowReport(
        iterations=iterations,
        residual_history=tuple(residuals),
        norm_history=tuple(norms),
        final=current,
        converged=residuals[-1] <= tol,
    )
