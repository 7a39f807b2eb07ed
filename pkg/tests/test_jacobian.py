import random

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_F, SMALL_P
from hyperpair.curve import CurveParams, jacobian_order
from hyperpair.errors import InvariantViolation, ProjectionDegenerate
from hyperpair.jacobian import (Jacobian, cantor_with_functions, check_invariants,
                                compose_reduce, frobenius_on_divisor, in_G1, in_G2,
                                is_degenerate, project_G1, project_G2, projector,
                                sample_r_torsion, scalar_mul)
from oracles import FormalJacobian

seeds = st.integers(0, 10 ** 6)


@pytest.fixture(scope="module")
def base_jac():
    return Jacobian(CurveParams.from_ints(SMALL_P, list(SMALL_F)))


def test_group_axioms(small_ctx):
    rng = random.Random(1)
    jac = small_ctx.jac
    O = jac.identity()
    for _ in range(10):
        A, B, C = (jac.random_divisor(rng) for _ in range(3))
        assert A + O == A == O + A
        assert (A - A).is_zero()
        assert A + B == B + A
        assert (A + B) + C == A + (B + C)
        assert -(-A) == A


@given(seeds)
def test_sum_satisfies_mumford_conditions(small_ctx, seed):
    rng = random.Random(seed)
    jac = small_ctx.jac
    A, B = jac.random_divisor(rng), jac.random_divisor(rng)
    for D in (A + B, A + A, A - B, scalar_mul(A, 7)):
        check_invariants(D)
        assert D.degree() <= jac.genus


@given(seeds)
def test_frobenius_is_a_homomorphism(small_ctx, seed):
    rng = random.Random(seed)
    jac = small_ctx.jac
    A, B = jac.random_divisor(rng), jac.random_divisor(rng)
    assert frobenius_on_divisor(A + B) == frobenius_on_divisor(A) + frobenius_on_divisor(B)
    assert frobenius_on_divisor(A, small_ctx.k) == A


@given(seeds)
def test_scalar_multiplication(small_ctx, seed):
    rng = random.Random(seed)
    A = small_ctx.jac.random_divisor(rng)
    a, b = rng.randrange(-50, 50), rng.randrange(-50, 50)
    assert scalar_mul(A, a) + scalar_mul(A, b) == scalar_mul(A, a + b)
    assert scalar_mul(scalar_mul(A, a), b) == scalar_mul(A, a * b)


def test_group_order_kills(small_ctx, base_jac):
    rng = random.Random(2)
    n1 = small_ctx.cp(1)
    nk = jacobian_order(small_ctx.cp, small_ctx.k)
    for _ in range(5):
        assert scalar_mul(base_jac.random_divisor(rng), n1).is_zero()
        assert scalar_mul(small_ctx.jac.random_divisor(rng), nk).is_zero()


def test_agrees_with_formal_jacobian(base_jac):
    rng = random.Random(3)
    oracle = FormalJacobian(SMALL_P, SMALL_F)
    elems = oracle.elements()
    assert len(elems) == 60
    for _ in range(60):
        A, B = rng.choice(elems), rng.choice(elems)
        DA = base_jac.divisor(*oracle.to_mumford(A))
        DB = base_jac.divisor(*oracle.to_mumford(B))
        u, v = oracle.to_mumford(oracle.add(A, B))
        S = DA + DB
        assert (list(S.u), list(S.v)) == (u, v)


def test_ext_degree(small_ctx, base_jac):
    rng = random.Random(4)
    jac = small_ctx.jac
    D = jac.random_divisor(rng, 1)
    assert D.ext_degree == 1
    assert jac.random_divisor(rng, 2).ext_degree in (1, 2)
    assert base_jac.random_divisor(rng).ext_degree == 1


def test_invariant_violations(base_jac):
    with pytest.raises(InvariantViolation):
        base_jac.divisor([1, 2], [])            # not monic
    with pytest.raises(InvariantViolation):
        base_jac.divisor([0, 1], [1, 1])        # deg v >= deg u
    with pytest.raises(InvariantViolation):
        base_jac.divisor([0, 1], [3])           # 3^2 != F(0) = 1
    with pytest.raises(InvariantViolation):
        base_jac.divisor([1, 0, 0, 1], [])      # deg u > g


def test_degenerate():
    jac = Jacobian(CurveParams.from_ints(89, [24, 74, 21, 47, 0, 1]))
    P = jac.point_divisor(14, 75)
    assert is_degenerate(P)
    assert not is_degenerate(jac.identity())
    assert not is_degenerate(P + jac.point_divisor(14, 75))
    assert scalar_mul(P, 233).is_zero()


def test_projections(small_ctx):
    rng = random.Random(5)
    r = small_ctx.r
    for _ in range(4):
        X = sample_r_torsion(small_ctx, small_ctx.k, rng)
        assert scalar_mul(X, r).is_zero() and not X.is_zero()
        P1, P2 = project_G1(X, small_ctx), project_G2(X, small_ctx)
        assert in_G1(P1) and in_G2(P2, small_ctx)
        assert scalar_mul(P1, r).is_zero() and scalar_mul(P2, r).is_zero()
    G1 = small_ctx.random_g1(rng)
    assert G1.ext_degree == 1 and in_G1(G1)


def test_projector_rejects_non_eigenvalue(small_ctx):
    bad = next(lam for lam in range(small_ctx.r)
               if small_ctx.cp(lam) % small_ctx.r)
    with pytest.raises(ProjectionDegenerate):
        projector(small_ctx.cp, small_ctx.r, bad)


@given(seeds)
def test_cantor_with_functions_sum(small_ctx, seed):
    rng = random.Random(seed)
    jac = small_ctx.jac
    A, B, E = (jac.random_divisor(rng) for _ in range(3))
    D, f, g, lc = cantor_with_functions(A, B, E)
    assert D == compose_reduce(A, B)
    assert len(f) < len(E.u) and len(g) < len(E.u)


def test_cantor_function_of_opposite_points(base_jac):
    # P + iota(P) is the divisor of x - x_P
    K = base_jac.field
    rng = random.Random(6)
    x0, y0 = base_jac.random_point(rng)
    P = base_jac.point_divisor(x0, y0)
    E = base_jac.random_divisor(rng)
    D, f, g, lc = cantor_with_functions(P, -P, E)
    assert D.is_zero() and lc == K.one
    from hyperpair.miller import evaluate_at
    from hyperpair import poly
    want = poly.eval_at_roots(K, [K.neg(x0), K.one], list(E.u))
    got = K.mul(evaluate_at(K, f, list(E.u)), K.inv(evaluate_at(K, g, list(E.u))))
    assert got == want


def test_random_divisor_without_rational_points():
    # this curve has no affine F_7-points and #Jac = 19
    jac = Jacobian(CurveParams.from_ints(7, [3, 6, 5, 2, 0, 1]))
    rng = random.Random(8)
    for _ in range(5):
        D = jac.random_divisor(rng)
        check_invariants(D)
        assert D.degree() == 2 and scalar_mul(D, 19).is_zero()
