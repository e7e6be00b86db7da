"""Weight matrices and the exact invariant-monomial lattice."""

import numpy as np
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from quivergauge import (
    Quiver,
    check_invariance,
    hermite_rows,
    integer_kernel,
    invariant_monomial_basis,
    weight_matrix,
)
from conftest import one_arrow, one_loop, random_connected_quiver, two_cycle


def double_arrow():
    return Quiver(("v0", "v1"), (("a0", "v0", "v1"), ("a1", "v0", "v1")))


def ones(q):
    return {a.name: 1 for a in q.arrows}


def test_weight_matrix_rows():
    q = one_arrow()
    w = weight_matrix(q, ones(q), ones(q))
    assert w.matrix == ((-1, 1),)

    q = one_loop()
    w = weight_matrix(q, ones(q), ones(q))
    assert w.matrix == ((0,),)

    q = double_arrow()
    w = weight_matrix(q, ones(q), ones(q))
    assert w.matrix == ((-1, 1), (-1, 1))

    q = one_loop()
    w = weight_matrix(q, {"l0": 5}, {"l0": 2})
    assert w.matrix == ((3,),)


def test_weight_matrix_validation():
    q = one_arrow()
    with pytest.raises(ValueError):
        weight_matrix(q, {}, ones(q))
    with pytest.raises(ValueError):
        weight_matrix(q, {"a0": -1}, ones(q))
    with pytest.raises(ValueError):
        weight_matrix(q, {"a0": 10**7}, ones(q))


def test_monomial_basis_double_arrow():
    q = double_arrow()
    basis = invariant_monomial_basis(weight_matrix(q, ones(q), ones(q)))
    assert basis.vectors == ((1, -1),)
    assert basis.cell_dimension == 1
    assert basis.arrow_order == ("a0", "a1")


def test_monomial_basis_loop_and_arrow():
    q = one_loop()
    basis = invariant_monomial_basis(weight_matrix(q, ones(q), ones(q)))
    assert basis.vectors == ((1,),)
    assert basis.cell_dimension == 1

    q = one_arrow()
    basis = invariant_monomial_basis(weight_matrix(q, ones(q), ones(q)))
    assert basis.vectors == ()
    assert basis.cell_dimension == 0


def _random_action(rng):
    q = random_connected_quiver(rng, max_vertices=5, max_arrows=8)
    mu = {a.name: int(rng.integers(0, 21)) for a in q.arrows}
    nu = {a.name: int(rng.integers(0, 21)) for a in q.arrows}
    return weight_matrix(q, mu, nu)


def test_kernel_exactness_randomized():
    rng = np.random.default_rng(1)
    for _ in range(50):
        action = _random_action(rng)
        basis = invariant_monomial_basis(action)
        n_arrows = action.quiver.n_arrows
        for vec in basis.vectors:
            for v_index in range(action.quiver.n_vertices):
                acc = sum(action.matrix[a][v_index] * vec[a] for a in range(n_arrows))
                assert acc == 0  # exact integer arithmetic, no tolerance


def test_kernel_matches_sympy_nullspace_and_is_saturated():
    rng = np.random.default_rng(2)
    for _ in range(25):
        action = _random_action(rng)
        basis = invariant_monomial_basis(action)
        transposed = sympy.Matrix(
            [
                [action.matrix[a][v] for a in range(action.quiver.n_arrows)]
                for v in range(action.quiver.n_vertices)
            ]
        )
        null = transposed.nullspace()
        assert len(null) == len(basis.vectors)
        assert basis.cell_dimension == action.quiver.n_arrows - transposed.rank()
        if basis.vectors:
            kernel_matrix = sympy.Matrix([list(v) for v in basis.vectors])
            # every sympy nullspace vector must be a rational combination
            for vec in null:
                sol, params = kernel_matrix.T.gauss_jordan_solve(vec)
                assert params.shape[1] == 0 or sol is not None
            # saturation: invariant factors of the basis matrix are all 1
            snf = smith_normal_form(kernel_matrix)
            diag = [snf[i, i] for i in range(min(snf.shape))]
            assert all(abs(d) == 1 for d in diag if d != 0)
            assert sum(1 for d in diag if d != 0) == len(basis.vectors)


def test_kernel_membership_integer_combinations():
    # integer vectors in the kernel must be integer combinations of the basis
    rng = np.random.default_rng(3)
    for _ in range(25):
        action = _random_action(rng)
        basis = invariant_monomial_basis(action)
        if not basis.vectors:
            continue
        coeffs = rng.integers(-5, 6, size=len(basis.vectors))
        combo = [
            int(sum(c * v[i] for c, v in zip(coeffs, basis.vectors)))
            for i in range(action.quiver.n_arrows)
        ]
        kernel_matrix = sympy.Matrix([list(v) for v in basis.vectors]).T
        sol, params = kernel_matrix.gauss_jordan_solve(sympy.Matrix(combo))
        free = {s: 0 for s in params}
        solved = sol.xreplace(free)
        assert all(value == sympy.Integer(int(value)) for value in solved)


def test_integer_kernel_general_matrices_vs_sympy():
    rng = np.random.default_rng(8)
    for _ in range(60):
        nr = int(rng.integers(1, 5))
        nc = int(rng.integers(1, 6))
        mat = [[int(rng.integers(-9, 10)) for _ in range(nc)] for _ in range(nr)]
        basis, rank = integer_kernel(mat, nc)
        sm = sympy.Matrix(nr, nc, lambda i, j: mat[i][j])
        assert rank == sm.rank()
        assert len(basis) == nc - rank
        for vec in basis:
            assert all(
                sum(mat[r][c] * vec[c] for c in range(nc)) == 0 for r in range(nr)
            )
        if basis:
            snf = smith_normal_form(sympy.Matrix(basis))
            diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
            assert diag == [1] * len(basis)  # saturated


def test_integer_kernel_empty_cases():
    basis, rank = integer_kernel([], 3)
    assert rank == 0 and len(basis) == 3
    basis, rank = integer_kernel([[0, 0]], 2)
    assert rank == 0 and len(basis) == 2
    basis, rank = integer_kernel([[1, 0], [0, 1]], 2)
    assert rank == 2 and basis == []


def test_hermite_rows_canonical():
    assert hermite_rows([[-1, 1]]) == [[1, -1]]
    assert hermite_rows([[2, 4], [1, 3]]) == [[1, 1], [0, 2]]
    assert hermite_rows([]) == []


def test_check_invariance_accepts_kernel_rejects_others():
    q = double_arrow()
    action = weight_matrix(q, ones(q), ones(q))
    assert check_invariance(action, (1, -1), trials=20, seed=0)
    assert check_invariance(action, (0, 0), trials=5, seed=0)
    assert not check_invariance(action, (1, 0), trials=5, seed=0)
    with pytest.raises(ValueError):
        check_invariance(action, (1,), trials=1, seed=0)


def test_check_invariance_randomized_agreement():
    rng = np.random.default_rng(4)
    for _ in range(10):
        action = _random_action(rng)
        basis = invariant_monomial_basis(action)
        for vec in basis.vectors[:3]:
            assert check_invariance(action, vec, trials=10, seed=int(rng.integers(2**32)))
        n = action.quiver.n_arrows
        if n == 0:
            continue
        planted = list(rng.integers(-3, 4, size=n))
        in_kernel = all(
            sum(action.matrix[a][v] * planted[a] for a in range(n)) == 0
            for v in range(action.quiver.n_vertices)
        )
        if not in_kernel:
            assert not check_invariance(action, planted, trials=8, seed=7)


def test_scalar_weighted_action_law_exact():
    # scalar gauges compose exactly under the weighted action
    from quivergauge import scalar_weighted_act

    q = two_cycle()
    action = weight_matrix(q, {"a0": 3, "a1": 2}, {"a0": 1, "a1": 5})
    rng = np.random.default_rng(5)
    for _ in range(20):
        markings = {a.name: complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for a in q.arrows}
        g1 = {v: complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for v in q.vertices}
        g2 = {v: complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for v in q.vertices}
        inner = scalar_weighted_act(g2, markings, action)
        lhs = scalar_weighted_act(g1, inner, action)
        product = {v: g1[v] * g2[v] for v in q.vertices}
        rhs = scalar_weighted_act(product, markings, action)
        for name in markings:
            assert abs(lhs[name] - rhs[name]) <= 1e-12 * max(1.0, abs(rhs[name]))
