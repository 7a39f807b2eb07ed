import math
import random

import pytest
from hypothesis import given, strategies as st

from hyperpair.curve import CurveParams, count_points, frobenius_charpoly
from hyperpair.errors import FactorizationBudget, NotCoprime
from hyperpair.field import is_probable_prime
from hyperpair.pfsearch import (SearchConfig, canonical_quintics, embedding_degree, factor,
                                minimal_embedding_field, recommended_k, rho_value, search,
                                write_records)


def test_embedding_degree():
    assert embedding_degree(2, 7) == 3
    assert embedding_degree(89, 233) == 4
    assert embedding_degree(8, 7) == 1
    with pytest.raises(NotCoprime):
        embedding_degree(7, 7)


def test_minimal_embedding_field_can_drop():
    # q = 49, r = 3: k = 1, so F_{q^k} has degree 2 over F_7, yet 3 | 7 - 1
    assert embedding_degree(49, 3) == 1
    assert minimal_embedding_field(7, 2, 3) == 1 < 2 * embedding_degree(49, 3)
    assert minimal_embedding_field(2, 2, 5) == 2 * embedding_degree(4, 5)


def test_rho():
    assert rho_value(2, 89, 233) == pytest.approx(2 * math.log(89) / math.log(233))
    assert rho_value(2, 101, 10193) == pytest.approx(1.0, abs=0.01)
    assert rho_value(1, 2 ** 160, 2 ** 160) == pytest.approx(1.0)


def test_recommended_k():
    assert recommended_k(160, 1024, 1, 2) == pytest.approx(12.8)
    assert recommended_k(256, 3072, 2, 2) == pytest.approx(12)


@given(st.integers(1, 10 ** 12))
def test_factor_property(n):
    f = factor(n)
    assert math.prod(f) == n
    assert all(is_probable_prime(x) for x in f)
    assert f == sorted(f)


def test_factor_large_and_budget():
    p1, p2 = 1000003, 998244353
    assert factor(p1 * p2) == [p1, p2]
    with pytest.raises(FactorizationBudget):
        factor((2 ** 61 - 1) * (2 ** 89 - 1), trial_budget=10, rho_budget=10)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(p_min=3)
    with pytest.raises(ValueError):
        SearchConfig(max_k=0)


@pytest.fixture(scope="module")
def small_records():
    return list(search(SearchConfig(p_min=5, p_max=11, max_k=8)))


def test_record_postconditions(small_records):
    assert small_records
    for rec in small_records:
        p, r = rec.curve.p, rec.r
        assert rec.jac_order == rec.cp(1)
        assert rec.jac_order % r == 0 and is_probable_prime(r) and r != p
        assert rec.k == embedding_degree(p, r) <= 8
        assert rec.rho == pytest.approx(2 * math.log(p) / math.log(r))
        assert rec.cls in ("ordinary", "supersingular", "other")
        c = rec.cp.coeffs
        assert c[-1] == 1 and c[0] == p * p and c[1] == p * c[3]
        # r is the largest admissible prime factor
        assert all(x <= r for x in factor(rec.jac_order) if x != p)


def test_records_match_direct_counts(small_records):
    rng = random.Random(0)
    for rec in rng.sample(small_records, 10):
        assert frobenius_charpoly(rec.curve).coeffs == rec.cp.coeffs
        assert count_points(rec.curve, 1) == rec.curve.p + 1 + rec.cp.coeffs[3]


def test_deterministic():
    cfg = SearchConfig(p_min=7, p_max=7)
    a = write_records(search(cfg))
    assert a == write_records(search(cfg))
    s1 = [r.to_dict() for r in search(SearchConfig(p_min=11, p_max=11, sample_all=False,
                                                   samples=50, seed=4))]
    s2 = [r.to_dict() for r in search(SearchConfig(p_min=11, p_max=11, sample_all=False,
                                                   samples=50, seed=4))]
    assert s1 == s2


def test_dedupe_preserves_charpolys():
    full = {tuple(r.cp.coeffs) for r in search(SearchConfig(p_min=7, p_max=7, dedupe=False))}
    reduced = {tuple(r.cp.coeffs) for r in search(SearchConfig(p_min=7, p_max=7))}
    assert full == reduced
    assert len(list(canonical_quintics(7))) < 7 ** 4


def test_canonical_quintics_are_monic():
    for F in canonical_quintics(5):
        assert len(F) == 6 and F[-1] == 1


def test_write_formats(small_records):
    js = write_records(small_records[:3], "json").splitlines()
    assert len(js) == 3 and '"jac_order"' in js[0]
    csv_text = write_records(small_records[:3], "csv").splitlines()
    assert csv_text[0].startswith("p,F,charpoly") and len(csv_text) == 4


def test_to_dict_uses_strings(small_records):
    d = small_records[0].to_dict()
    assert isinstance(d["jac_order"], str) and isinstance(d["r"], str)
    assert CurveParams.from_ints(int(d["p"]), [int(c) for c in d["F"]]) == small_records[0].curve
