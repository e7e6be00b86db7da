"""JSON encodings for matrices, representations, reports, and traces.

Matrices are encoded row-major as nested arrays of [re, im] pairs.  All
emitters sort object keys, so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .additive import AdditiveRep, DegenerationWitness, OrbitCertificate
from .kempfness import FlowReport, KNResidual
from .quiver import Arrow, GroupSpec, Quiver, RelationSet, Word
from .representation import GaugeElement, Representation
from .rewrites import TRACE_FORMAT_VERSION, CollapseStep, ReductionTrace
from .toric import MonomialBasis


def dumps(payload: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def matrix_to_json(m: np.ndarray) -> list[list[list[float]]]:
    a = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in a]


def matrix_from_json(data) -> np.ndarray:
    rows = []
    for row in data:
        rows.append([complex(float(re), float(im)) for re, im in row])
    return np.asarray(rows, dtype=complex)


def complex_to_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def group_to_json(g: GroupSpec) -> dict:
    return {"family": g.family, "n": g.n}


def group_from_json(data) -> GroupSpec:
    return GroupSpec(str(data["family"]), int(data["n"]))


def quiver_to_json(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "tail": a.tail, "head": a.head} for a in q.arrows],
    }


def quiver_from_json(data) -> Quiver:
    return Quiver(
        tuple(data["vertices"]),
        tuple(Arrow(a["name"], a["tail"], a["head"]) for a in data["arrows"]),
    )


def word_to_json(w: Word) -> list[list]:
    return [[name, exp] for name, exp in w.letters]


def word_from_json(data) -> Word:
    return Word(tuple((str(name), int(exp)) for name, exp in data))


def relations_to_json(r: RelationSet) -> list:
    return [word_to_json(w) for w in r.relations]


def relations_from_json(data) -> RelationSet:
    return RelationSet(tuple(word_from_json(w) for w in data))


def representation_to_json(f: Representation) -> dict:
    return {
        "group": group_to_json(f.group),
        "markings": {name: matrix_to_json(m) for name, m in f.markings.items()},
    }


def representation_from_json(data, q: Quiver) -> Representation:
    group = group_from_json(data["group"])
    markings = {name: matrix_from_json(m) for name, m in data["markings"].items()}
    return Representation(q, group, markings)


def gauge_to_json(g: GaugeElement) -> dict:
    return {
        "group": group_to_json(g.group),
        "values": {v: matrix_to_json(m) for v, m in g.values.items()},
    }


def gauge_from_json(data, q: Quiver) -> GaugeElement:
    group = group_from_json(data["group"])
    values = {v: matrix_from_json(m) for v, m in data["values"].items()}
    return GaugeElement(q, group, values)


def additive_to_json(x: AdditiveRep) -> dict:
    return {
        "n": x.n,
        "markings": {name: matrix_to_json(m) for name, m in x.markings.items()},
    }


def additive_from_json(data, q: Quiver) -> AdditiveRep:
    markings = {name: matrix_from_json(m) for name, m in data["markings"].items()}
    return AdditiveRep(q, int(data["n"]), markings)


def step_to_json(s: CollapseStep) -> dict:
    return {
        "arrow": s.arrow,
        "tail": s.tail,
        "head": s.head,
        "merged": s.merged,
        "vertex_map": {old: new for old, new in s.vertex_map},
    }


def trace_to_json(t: ReductionTrace) -> dict:
    return {
        "version": TRACE_FORMAT_VERSION,
        "source": quiver_to_json(t.source),
        "steps": [step_to_json(s) for s in t.steps],
        "final": quiver_to_json(t.final),
        "final_relations": relations_to_json(t.final_relations),
    }


def residual_to_json(r: KNResidual) -> dict:
    return {
        "per_vertex": {v: matrix_to_json(m) for v, m in r.per_vertex.items()},
        "aggregate": r.aggregate,
    }


def flow_report_to_json(r: FlowReport) -> dict:
    return {
        "iterations": r.iterations,
        "converged": r.converged,
        "residual_history": list(r.residual_history),
        "norm_history": list(r.norm_history),
        "final": representation_to_json(r.final),
    }


def witness_to_json(w: DegenerationWitness) -> dict:
    return {
        "vertex": w.vertex,
        "direction": w.direction,
        "parameters": list(w.parameters),
        "degenerated_arrows": list(w.degenerated_arrows),
        "samples": [additive_to_json(s) for s in w.samples],
        "limit": additive_to_json(w.limit),
    }


def certificate_to_json(c: OrbitCertificate) -> dict:
    payload: dict[str, Any] = {"verdict": c.verdict, "ends": list(c.ends)}
    if c.sample_alpha is not None:
        payload["sample_alpha"] = {v: w for v, w in c.sample_alpha}
    if c.sample_violation is not None:
        payload["sample_violation"] = {
            "ok": c.sample_violation.ok,
            "violating_arrow": c.sample_violation.violating_arrow,
            "witness_cycle": word_to_json(c.sample_violation.witness_cycle)
            if c.sample_violation.witness_cycle is not None
            else None,
        }
    return payload


def monomial_basis_to_json(b: MonomialBasis) -> dict:
    return {
        "arrow_order": list(b.arrow_order),
        "vectors": [list(v) for v in b.vectors],
        "cell_dimension": b.cell_dimension,
    }
