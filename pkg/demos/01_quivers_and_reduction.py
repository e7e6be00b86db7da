"""Quivers, their invariants, and the reduction to a rose.

A quiver is a finite directed multigraph.  Every connected quiver can be
collapsed along a spanning tree to a one-vertex "rose" whose loop count is
the first Betti number; together with its translated relations, that rose
presents the fundamental group whose character variety the representation
moduli equals.
"""

import quivergauge as qg

# Quivers can be built directly ...
theta = qg.Quiver(("v0", "v1"), (("a0", "v0", "v1"), ("a1", "v0", "v1"), ("a2", "v0", "v1")))

# ... or parsed from the text format.
doc = qg.parse(
    """
    # an oriented triangle with its boundary relation
    quiver Triangle {
      vertices: v0 v1 v2;
      arrows: a0: v0 -> v1; a1: v1 -> v2; a2: v2 -> v0;
      relations: a2 a1 a0;
    }
    """
)
triangle = doc.quiver

for name, q in (("theta", theta), ("triangle", triangle)):
    print(f"{name}: b1 = {qg.betti_number(q)}, chi = {qg.euler_characteristic(q)}")
    print(f"  ends: {qg.ends(q) or '(none)'}")
    print(f"  super-cyclic: {qg.is_super_cyclic(q)}, strongly connected: {qg.is_strongly_connected(q)}")

# Fundamental cycles: one closed word per non-tree arrow, based at the root.
cycles, forest = qg.fundamental_cycles(theta)
print("\ntheta spanning tree:", forest.tree_arrows)
for c in cycles:
    print("  cycle:", c.display())

# Collapsing the spanning tree leaves a rose with b1 loops; relation words
# are translated by deleting the collapsed letters.
rose, relations, trace = qg.reduce_to_rose(triangle, doc.relations)
print("\ntriangle reduces to a rose with", rose.n_arrows, "loop(s)")
print("  translated relation:", relations.relations[0].display())
print("  collapse steps:", [s.arrow for s in trace.steps])

# The moduli dimension follows from the loop count alone.
for family, n in (("GL", 2), ("SL", 2), ("TORUS", 1)):
    group = qg.GroupSpec(family, n)
    dims = {
        "theta": qg.moduli_dimension(theta, group),
        "triangle": qg.moduli_dimension(triangle, group),
    }
    print(f"moduli dimension under {family}({n}): {dims}")

# Trees are the degenerate case: they reduce to a bare vertex, a single point.
path = qg.Quiver(("v0", "v1", "v2"), (("a0", "v0", "v1"), ("a1", "v1", "v2")))
rose, _, _ = qg.reduce_to_rose(path)
print("\na path reduces to", rose.n_arrows, "loops: the moduli is a point")
