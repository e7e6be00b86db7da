"""JSON encodings: round trips and canonical text output."""

import json

import numpy as np

import quivergauge.serialize as sz
from quivergauge import (
    Word,
    embed_additive,
    kn_flow,
    kn_moment,
    random_gauge,
    random_representation,
    reduce_to_rose,
)
from conftest import GL2, comet, one_loop, triangle, two_cycle


def test_matrix_roundtrip():
    rng = np.random.default_rng(0)
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    encoded = sz.matrix_to_json(m)
    assert encoded[0][1] == [m[0, 1].real, m[0, 1].imag]
    assert np.array_equal(sz.matrix_from_json(encoded), m)


def test_representation_and_gauge_roundtrip():
    q = two_cycle()
    f = random_representation(q, GL2, 1)
    payload = sz.representation_to_json(f)
    assert payload["group"] == {"family": "GL", "n": 2}
    back = sz.representation_from_json(payload, q)
    for name in f.markings:
        assert np.array_equal(back.markings[name], f.markings[name])

    g = random_gauge(q, GL2, 2)
    back_g = sz.gauge_from_json(sz.gauge_to_json(g), q)
    for v in q.vertices:
        assert np.array_equal(back_g.values[v], g.values[v])


def test_additive_roundtrip():
    x = embed_additive(random_representation(one_loop(), GL2, 3))
    back = sz.additive_from_json(sz.additive_to_json(x), one_loop())
    assert np.array_equal(back.markings["l0"], x.markings["l0"])


def test_quiver_relations_word_roundtrip():
    q, rels = triangle()
    assert sz.quiver_from_json(sz.quiver_to_json(q)) == q
    assert sz.relations_from_json(sz.relations_to_json(rels)) == rels
    w = Word((("a0", -1), ("a1", 1)))
    assert sz.word_from_json(sz.word_to_json(w)) == w


def test_trace_is_versioned_and_ordered():
    _, _, trace = reduce_to_rose(comet())
    payload = sz.trace_to_json(trace)
    assert payload["version"] == 1
    assert [s["arrow"] for s in payload["steps"]] == [s.arrow for s in trace.steps]
    assert payload["final"]["vertices"] == list(trace.final.vertices)


def test_flow_report_and_residual_payloads():
    f = random_representation(one_loop(), GL2, 4)
    report = kn_flow(f, step0=0.2, max_iter=50, tol=1e-6)
    payload = sz.flow_report_to_json(report)
    assert payload["iterations"] == report.iterations
    assert payload["norm_history"] == list(report.norm_history)
    res = kn_moment(f)
    rp = sz.residual_to_json(res)
    assert rp["aggregate"] == res.aggregate
    assert set(rp["per_vertex"]) == {"v0"}


def test_dumps_is_canonical():
    text = sz.dumps({"b": 1, "a": [1.5, 2]})
    assert text == '{\n  "a": [\n    1.5,\n    2\n  ],\n  "b": 1\n}\n'
    assert json.loads(text) == {"a": [1.5, 2], "b": 1}
