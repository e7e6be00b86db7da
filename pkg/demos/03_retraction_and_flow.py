"""The polar retraction and the norm-minimizing gauge flow.

Writing an invertible matrix as k e^p (unitary times Hermitian
exponential), the path g (g* g)^(-t/2) = k e^((1-t) p) slides it onto its
unitary factor.  Applied marking-wise it retracts representation spaces
onto their compact forms, equivariantly under unitary gauges.  The
Kempf-Ness residual measures criticality of the orbit norm; flowing along
trace-free Hermitian gauge directions descends to the minimal-norm
representative of the orbit closure.
"""

import numpy as np

import quivergauge as qg

# One matrix first: diag(4, 1) interpolates to the identity.
for t in (0.0, 0.5, 1.0):
    print(f"polar_retract(diag(4,1), {t}) =", np.diag(qg.polar_retract(np.diag([4.0, 1.0]), t)).real)

loop = qg.Quiver(("v0",), (("l0", "v0", "v0"),))
group = qg.GroupSpec("GL", 2)

f = qg.random_representation(loop, group, seed=3)
unitary = qg.retract_representation(f, 1.0)
m = unitary.markings["l0"]
print("unitarity defect at t=1:", np.linalg.norm(m @ m.conj().T - np.eye(2)))

# Unitary gauge equivariance of the retraction.
k = qg.random_element(qg.GroupSpec("U", 2), seed=5)
kg = qg.GaugeElement(loop, group, {"v0": k})
lhs = qg.retract_representation(qg.gauge_act(kg, f), 0.7).markings["l0"]
rhs = qg.gauge_act(kg, qg.retract_representation(f, 0.7)).markings["l0"]
print("equivariance gap:", np.linalg.norm(lhs - rhs))

# The Jordan block has a non-closed orbit: its closure contains the
# identity, which is where the flow heads while the trace stays put.
jordan = qg.Representation(loop, group, {"l0": np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)})
residual = qg.kn_moment(jordan)
print("\nJordan block moment matrix:\n", residual.per_vertex["v0"].real)
print("aggregate residual:", residual.aggregate)

report = qg.kn_flow(jordan, step0=0.25, max_iter=10_000, tol=1e-6)
print("flow iterations:", report.iterations, "converged:", report.converged)
print("norm history head:", [round(x, 6) for x in report.norm_history[:5]])
print("final residual:", report.residual_history[-1])
print("final marking:\n", report.final.markings["l0"].round(6))
print("loop trace preserved:", np.trace(report.final.markings["l0"]).round(10))

# Unitary-valued representations are already minimal: zero residual,
# zero iterations.
u = qg.random_representation(loop, qg.GroupSpec("U", 2), seed=9)
as_gl = qg.Representation(loop, group, dict(u.markings))
print("\nunitary representation residual:", qg.kn_moment(as_gl).aggregate)
print("flow iterations:", qg.kn_flow(as_gl).iterations)
