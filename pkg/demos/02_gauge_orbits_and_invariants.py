"""Representations, the gauge action, and trace invariants.

A representation marks every arrow with an invertible matrix; gauge
elements carry one matrix per vertex and act by g(head) m g(tail)^(-1).
Traces of closed words are constant on gauge orbits, and carrying a
representation through a collapse sequence preserves them, which is how
the rose reduction identifies the moduli with a character variety.
"""

import numpy as np

import quivergauge as qg

rng = np.random.default_rng(0)

loop5 = qg.Quiver(
    tuple(f"v{i}" for i in range(5)),
    tuple((f"a{i}", f"v{i}", f"v{(i + 1) % 5}") for i in range(5)),
)
group = qg.GroupSpec("GL", 3)
f = qg.random_representation(loop5, group, seed=7)

# The gauge action moves markings around without changing closed-word traces.
g = qg.random_gauge(loop5, group, seed=8)
acted = qg.gauge_act(g, f)
menu = qg.standard_word_menu(loop5)
before = qg.trace_invariants(f, menu)
after = qg.trace_invariants(acted, menu)
print("trace drift under a random gauge:", max(abs(a - b) for a, b in zip(before, after)))

# Collapsing the spanning tree pushes the representation onto the rose.
rose, _, trace = qg.reduce_to_rose(loop5)
pushed = qg.pushforward_collapse(f, trace)
(loop_arrow,) = rose.arrows
holonomy = np.eye(3, dtype=complex)
for i in range(5):
    holonomy = f.markings[f"a{i}"] @ holonomy
print("rose loop trace:", np.trace(pushed.markings[loop_arrow.name]).round(10))
print("cycle holonomy trace:", np.trace(holonomy).round(10))

# Equivariance: pushing forward the acted representation equals acting by
# the induced gauge on the pushforward, exactly as matrices.
lhs = qg.pushforward_collapse(qg.gauge_act(g, f), trace)
rhs = qg.gauge_act(qg.induced_gauge(g, trace), pushed)
gap = max(np.linalg.norm(lhs.markings[n] - rhs.markings[n]) for n in lhs.markings)
print("equivariance gap:", gap)

# The tree normal form concentrates all content on the non-tree arrows.
gauge, normal = qg.normal_form_tree_gauge(f)
flat = [n for n in normal.markings if np.linalg.norm(normal.markings[n] - np.eye(3)) < 1e-10]
print("arrows gauged to the identity:", sorted(flat))

# Reversing arrows inverts markings compatibly with the action.
reversed_rep = qg.reverse_representation(f, {"a0"})
print("reversed a0 tail:", reversed_rep.quiver.arrow("a0").tail)
