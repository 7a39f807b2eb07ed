import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SMALL_F, SMALL_P
from hyperpair.curve import CurveParams
from hyperpair.errors import (BadContext, BadExpansion, BadH, BadSpec, BadTwistExponent,
                              InvariantViolation, NotInEigenspace, UnknownPairing, ZeroInput)
from hyperpair.jacobian import scalar_mul
from hyperpair.pairings import (HVSpec, PairingContext, RateSpec, ate, ate_i, final_exponentiation,
                                hv, multiplicative_order, pairing_dispatch, rate,
                                short_expansions, tate, torsion_is_elementary, twisted_ate,
                                vercauteren, weil)
from hyperpair.verify import bilinearity, corrected_hv_exponent, identities, run_suite

seeds = st.integers(0, 10 ** 6)


def test_context(small_ctx, ref_ctx):
    assert (small_ctx.q, small_ctx.r, small_ctx.k) == (7, 5, 4)
    assert (ref_ctx.q, ref_ctx.r, ref_ctx.k) == (89, 233, 4)
    assert ref_ctx.final_exponent == (89 ** 4 - 1) // 233
    assert multiplicative_order(89, 233) == 4
    assert torsion_is_elementary(ref_ctx.cp, 233, 4)


def test_context_rejections():
    C = CurveParams.from_ints(SMALL_P, list(SMALL_F))
    with pytest.raises(BadContext):
        PairingContext(C, 6)
    with pytest.raises(BadContext):
        PairingContext(C, 11)                    # 11 does not divide #Jac = 60
    # y^2 = x^5 + 1 over F_7 has #Jac = 50 = 2 * 5^2
    with pytest.raises(BadContext):
        PairingContext(CurveParams.from_ints(7, [1, 0, 0, 0, 0, 1]), 5)


@settings(max_examples=15)
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_tate_bilinear(small_ctx, seed, a, b):
    rng = random.Random(seed)
    K = small_ctx.pairing_field
    P, Q = small_ctx.random_g1(rng), small_ctx.random_g2(rng)
    base = tate(P, Q, small_ctx, rng)
    assert tate(scalar_mul(P, a), scalar_mul(Q, b), small_ctx, rng) == K.pow(base, a * b)


@settings(max_examples=15)
@given(seeds)
def test_ate_family_bilinear(small_ctx, seed):
    rep = bilinearity(small_ctx, trials=1, seed=seed)
    assert rep.ok, rep.to_dict()


def test_all_values_in_mu_r_and_nondegenerate(ref_ctx):
    rng = random.Random(1)
    K, r = ref_ctx.pairing_field, ref_ctx.r
    P, Q = ref_ctx.random_g1(rng), ref_ctx.random_g2(rng)
    for v in (tate(P, Q, ref_ctx, rng), ate(Q, P, ref_ctx, rng),
              ate_i(Q, P, 1, ref_ctx, rng), twisted_ate(P, Q, 2, ref_ctx, rng)):
        assert v != K.one and K.pow(v, r) == K.one


def test_identities(small_ctx, ref_ctx):
    for ctx in (small_ctx, ref_ctx):
        rep = identities(ctx, trials=3, seed=2)
        assert rep.ok, rep.to_dict()


def test_weil_properties(small_ctx):
    rng = random.Random(3)
    K = small_ctx.pairing_field
    for _ in range(3):
        X, Y = small_ctx.random_torsion(rng), small_ctx.random_torsion(rng)
        w = weil(X, Y, small_ctx, rng)
        assert K.mul(w, weil(Y, X, small_ctx, rng)) == K.one
        assert weil(X, X, small_ctx, rng) == K.one
        assert weil(X, small_ctx.jac.identity(), small_ctx, rng) == K.one


def test_hv_with_constant_r_is_tate(ref_ctx):
    rng = random.Random(4)
    P, Q = ref_ctx.random_g1(rng), ref_ctx.random_g2(rng)
    assert hv(Q, P, HVSpec(ref_ctx.q, (ref_ctx.r,)), ref_ctx, rng) == tate(Q, P, ref_ctx, rng)


def test_corrected_hv_relation(ref_ctx):
    rng = random.Random(5)
    K, q, r = ref_ctx.pairing_field, ref_ctx.q, ref_ctx.r
    P, Q = ref_ctx.random_g1(rng), ref_ctx.random_g2(rng)
    t = tate(Q, P, ref_ctx, rng)
    _, h, m = short_expansions(ref_ctx)[0]
    assert vercauteren(Q, P, h, m, ref_ctx, rng) == K.pow(
        t, corrected_hv_exponent(ref_ctx, HVSpec(q, h)))
    # other s = q^j, including h(s) = 0 mod r^2
    for s, h in ((pow(q, 2, r), (84, 84)), (pow(q, 3, r), (-70, 39, 19, 40)),
                 (q, (15231, -15, -84)), (pow(q, 3, r), (1728, -12))):
        spec = HVSpec(s, h)
        assert hv(Q, P, spec, ref_ctx, rng) == K.pow(t, corrected_hv_exponent(ref_ctx, spec))


def test_short_expansions(ref_ctx):
    found = short_expansions(ref_ctx)
    assert found
    bits, h, m = found[0]
    assert sum(c * ref_ctx.q ** i for i, c in enumerate(h)) == m * ref_ctx.r
    assert len(h) == 2                          # phi(4) = 2
    assert bits == min(b for b, _, _ in found)


def test_rate_spec(ref_ctx):
    spec = RateSpec.from_indices(ref_ctx, 1, 2)
    Ti, Tj = ref_ctx.q % ref_ctx.r, ref_ctx.q ** 2 % ref_ctx.r
    assert Ti == spec.a * Tj + spec.b
    h = spec.hv_spec(ref_ctx)
    assert h.h_at(ref_ctx.q) % ref_ctx.r == 0
    with pytest.raises(BadSpec):
        RateSpec.from_indices(ref_ctx, 2, 1)


def test_final_exponentiation(small_ctx):
    rng = random.Random(6)
    K = small_ctx.pairing_field
    for _ in range(10):
        v = K.random_nonzero(rng)
        a = final_exponentiation(v, small_ctx)
        assert a == final_exponentiation(v, small_ctx, "split")
        assert K.pow(a, small_ctx.r) == K.one
    with pytest.raises(ZeroInput):
        final_exponentiation(K.zero, small_ctx)


def test_denominator_elimination(ref_ctx):
    rng = random.Random(7)
    for _ in range(3):
        P, Q = ref_ctx.random_g1(rng), ref_ctx.random_g2(rng)
        assert tate(P, Q, ref_ctx, rng, denominators=False) == tate(P, Q, ref_ctx, rng)
        assert (twisted_ate(P, Q, 2, ref_ctx, rng, denominators=False)
                == twisted_ate(P, Q, 2, ref_ctx, rng))


def test_errors(small_ctx):
    rng = random.Random(8)
    P, Q = small_ctx.random_g1(rng), small_ctx.random_g2(rng)
    q, r = small_ctx.q, small_ctx.r
    with pytest.raises(UnknownPairing):
        pairing_dispatch("optimal", Q, P, {}, small_ctx, rng)
    with pytest.raises(BadH):
        hv(Q, P, HVSpec(q, (1, 1)), small_ctx, rng)
    with pytest.raises(BadExpansion):
        vercauteren(Q, P, (1, 1), 1, small_ctx, rng)
    with pytest.raises(BadExpansion):
        vercauteren(Q, P, (r * r,), r, small_ctx, rng)
    with pytest.raises(BadTwistExponent):
        twisted_ate(P, Q, 3, small_ctx, rng)
    with pytest.raises(NotInEigenspace):
        ate(P, P, small_ctx, rng)
    with pytest.raises(NotInEigenspace):
        twisted_ate(Q, Q, 2, small_ctx, rng)
    with pytest.raises(BadSpec):
        ate_i(Q, P, 0, small_ctx, rng)
    with pytest.raises(BadSpec):
        rate(Q, P, RateSpec(1, 2, 0, 0), small_ctx, rng)
    with pytest.raises(InvariantViolation):
        tate(small_ctx.jac.random_divisor(rng), Q, small_ctx, rng)


def test_dispatch_metadata(ref_ctx):
    rng = random.Random(9)
    P, Q = ref_ctx.random_g1(rng), ref_ctx.random_g2(rng)
    q, r = ref_ctx.q, ref_ctx.r
    _, meta = pairing_dispatch("tate", P, Q, {}, ref_ctx, rng)
    assert meta == {"loop_bits": r.bit_length(), "final_exp": True}
    _, meta = pairing_dispatch("ate", Q, P, {}, ref_ctx, rng)
    assert meta == {"loop_bits": q.bit_length(), "final_exp": False}
    _, meta = pairing_dispatch("twisted_ate", P, Q, {"e": 2}, ref_ctx, rng)
    assert meta["loop_bits"] == (q ** 2).bit_length()


def test_run_suite_small(small_ctx):
    assert run_suite(small_ctx, trials=2, seed=10).ok
