"""Weighted scalar actions and their invariant Laurent monomials.

Raising gauge values to integer powers per arrow is a genuine group action
only for commuting matrices; for scalar markings it is the natural torus
action whose invariant Laurent monomials are computed exactly as an
integer lattice kernel.  Those monomials coordinatize the dense torus
chart of the quotient.
"""

import numpy as np

import quivergauge as qg

# Two parallel arrows, unit weights: the only invariant is the ratio.
double = qg.Quiver(("v0", "v1"), (("a0", "v0", "v1"), ("a1", "v0", "v1")))
ones = {a.name: 1 for a in double.arrows}
action = qg.weight_matrix(double, ones, ones)
print("weight matrix rows (arrows x vertices):", action.matrix)

basis = qg.invariant_monomial_basis(action)
print("invariant monomial exponents:", basis.vectors)
print("cell dimension:", basis.cell_dimension)
print("numeric check accepts the basis:", qg.check_invariance(action, basis.vectors[0], seed=0))
print("numeric check rejects a non-invariant:", not qg.check_invariance(action, (1, 0), seed=0))

# Heavier weights on a loop plus an arrow.
mixed = qg.Quiver(("v0", "v1"), (("l", "v0", "v0"), ("a", "v0", "v1")))
action = qg.weight_matrix(mixed, {"l": 3, "a": 2}, {"l": 3, "a": 5})
basis = qg.invariant_monomial_basis(action)
print("\nmixed example basis:", basis.vectors, "cell dimension:", basis.cell_dimension)
for vec in basis.vectors:
    assert qg.check_invariance(action, vec, seed=1)

# For matrices the weighted rule composes only when values commute.
loop = qg.Quiver(("v0",), (("l0", "v0", "v0"),))
group = qg.GroupSpec("GL", 2)
mu, nu = {"l0": 2}, {"l0": 1}
f = qg.Representation(loop, group, {"l0": np.eye(2, dtype=complex)})
g = qg.GaugeElement(loop, group, {"v0": np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)})
h = qg.GaugeElement(loop, group, {"v0": np.array([[1.0, 0.0], [1.0, 1.0]], dtype=complex)})
two_steps = qg.weighted_act(g, qg.weighted_act(h, f, mu, nu), mu, nu).markings["l0"]
one_step = qg.weighted_act(g.compose(h), f, mu, nu).markings["l0"]
print("\nnon-abelian composition gap:", np.linalg.norm(two_steps - one_step).round(4))

d1 = qg.GaugeElement(loop, group, {"v0": np.diag([2.0, 0.5]).astype(complex)})
d2 = qg.GaugeElement(loop, group, {"v0": np.diag([1.5, 3.0]).astype(complex)})
two_steps = qg.weighted_act(d1, qg.weighted_act(d2, f, mu, nu), mu, nu).markings["l0"]
one_step = qg.weighted_act(d1.compose(d2), f, mu, nu).markings["l0"]
print("diagonal composition gap:", np.linalg.norm(two_steps - one_step))
