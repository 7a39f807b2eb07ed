import itertools
import random

from hypothesis import given, strategies as st

from hyperpair import poly
from hyperpair.field import FieldDescriptor, build_extension

F7 = FieldDescriptor(7)
F49 = build_extension(7, 2)
F7_4 = build_extension(7, 4)


def rand_poly(K, rng, deg, monic=False):
    out = [K.random(rng) for _ in range(deg)] + [K.one if monic else K.random_nonzero(rng)]
    return out


def splitting_product(K, L, emb, a, u):
    """prod a(x) over the roots of u, found by brute force in L."""
    ae, ue = [emb(c) for c in a], [emb(c) for c in u]
    acc = L.one
    found = 0
    for x in L.elements():
        while poly.evaluate(L, ue, x) == L.zero:
            acc = L.mul(acc, poly.evaluate(L, ae, x))
            ue = poly.div_exact(L, ue, [L.neg(x), L.one])
            found += 1
    assert found == len(u) - 1
    return acc


def test_resultant_trivial_cases():
    assert poly.resultant(F7, [3, 1, 2], [1]) == 1
    u = [2, 5, 1, 1]
    assert poly.resultant(F7, [F7.neg(4), 1], u) == poly.evaluate(F7, u, 4)


def test_eval_at_roots_matches_splitting_field():
    from hyperpair.field import embedding
    L = build_extension(7, 4)
    emb = embedding(F49, L)
    rng = random.Random(5)
    for _ in range(25):
        u = rand_poly(F49, rng, 2, monic=True)
        a = rand_poly(F49, rng, rng.randrange(0, 4))
        got = emb(poly.eval_at_roots(F49, a, u))
        assert got == splitting_product(F49, L, emb, a, u)


def test_eval_at_roots_sign_relation():
    rng = random.Random(6)
    for da, du in itertools.product(range(1, 4), range(1, 4)):
        a = rand_poly(F49, rng, da)
        u = rand_poly(F49, rng, du, monic=True)
        res = poly.resultant(F49, a, u)
        sign = F49.neg(F49.one) if da * du % 2 else F49.one
        assert poly.eval_at_roots(F49, a, u) == F49.mul(sign, res)


def test_roots_brute_force():
    rng = random.Random(7)
    for _ in range(20):
        a = rand_poly(F49, rng, 4, monic=True)
        brute = sorted((x for x in F49.elements() if poly.evaluate(F49, a, x) == F49.zero),
                       key=F49.sort_key)
        assert poly.roots(F49, a) == brute


def test_irreducibility_against_root_count():
    for c0, c1 in itertools.product(range(7), repeat=2):
        f = [c0, c1, 1]
        assert poly.is_irreducible(F7, f) == all(poly.evaluate(F7, f, x) for x in range(7))


coeffs = st.lists(st.integers(0, 6), min_size=1, max_size=6)


@given(coeffs, coeffs)
def test_divmod_identity(a, b):
    a, b = poly.trim(F7, a), poly.trim(F7, b)
    if not b:
        return
    q, r = poly.divmod_(F7, a, b)
    assert poly.add(F7, poly.mul(F7, q, b), r) == a
    assert len(r) < len(b)


@given(coeffs, coeffs)
def test_xgcd_bezout(a, b):
    a, b = poly.trim(F7, a), poly.trim(F7, b)
    if not a and not b:
        return
    d, s, t = poly.xgcd(F7, a, b)
    assert poly.add(F7, poly.mul(F7, s, a), poly.mul(F7, t, b)) == d
    assert d[-1] == 1
    assert not poly.mod(F7, a, d) and not poly.mod(F7, b, d)
