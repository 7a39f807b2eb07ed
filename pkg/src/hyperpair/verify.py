"""Randomized bilinearity and inter-pairing identity checks.

Used by the ``verify`` command and by the test-suite.  Every check is an
exact equality in mu_r; a check either passes or fails, nothing is scored.
"""
import random
from dataclasses import dataclass, field

from .errors import MathError
from .jacobian import scalar_mul
from .pairings import (HVSpec, PairingContext, RateSpec, ate, ate_i, final_exponentiation,
                       hv, rate, short_expansions, tate, twisted_ate, vercauteren, weil)
from .pfsearch import factor

SCALARS = (2, 3, 5, -1)


@dataclass
class Report:
    passed: dict = field(default_factory=dict)
    failed: dict = field(default_factory=dict)

    def record(self, name, ok):
        bucket = self.passed if ok else self.failed
        bucket[name] = bucket.get(name, 0) + 1

    @property
    def ok(self):
        return not self.failed

    def to_dict(self):
        names = sorted(set(self.passed) | set(self.failed))
        return {n: {"pass": self.passed.get(n, 0), "fail": self.failed.get(n, 0)} for n in names}


def choose_context(curve, r=None, cp=None, seed=0, max_k=12):
    """A PairingContext for ``r``, or for the largest usable prime factor of #Jac."""
    from .curve import frobenius_charpoly
    from .errors import BadContext
    cp = cp or frobenius_charpoly(curve)
    if r is not None:
        return PairingContext(curve, r, cp, seed)
    last = None
    for cand in sorted(set(factor(cp(1))), reverse=True):
        if cand == curve.p or cand < 3:
            continue
        try:
            ctx = PairingContext(curve, cand, cp, seed)
        except MathError as exc:
            last = exc
            continue
        if ctx.k <= max_k:
            return ctx
    raise BadContext(f"no usable subgroup order on this curve ({last})")


def scalar(i, r):
    a = SCALARS[i % len(SCALARS)]
    return a % r


def rate_spec(ctx):
    """First (i, j) whose division T_i = a T_j + b has a and b both nonzero."""
    fallback = None
    for j in range(2, ctx.k):
        for i in range(1, j):
            spec = RateSpec.from_indices(ctx, i, j)
            if spec.a and spec.b:
                return spec
            fallback = fallback or spec
    return fallback


def ate_family(ctx):
    """name -> f(D2, D1) for the pairings on G2 x G1."""
    q, r, k = ctx.q, ctx.r, ctx.k
    fams = {
        "tate": lambda Q, P, rng: tate(Q, P, ctx, rng),
        "ate": lambda Q, P, rng: ate(Q, P, ctx, rng),
    }
    if k > 1:
        fams["ate_i"] = lambda Q, P, rng: ate_i(Q, P, 1, ctx, rng)
        fams["hv"] = lambda Q, P, rng: hv(Q, P, HVSpec(q, (-q, 1)), ctx, rng)
        best = short_expansions(ctx)
        if best:
            _, h, m = best[0]
            fams["vercauteren"] = lambda Q, P, rng: vercauteren(Q, P, h, m, ctx, rng)
    if k > 2:
        spec = rate_spec(ctx)
        fams["rate"] = lambda Q, P, rng: rate(Q, P, spec, ctx, rng)
    if k % 2 == 0:
        e = k // 2
        fams["twisted_ate"] = lambda Q, P, rng: twisted_ate(P, Q, e, ctx, rng)
    return fams


def bilinearity(ctx, trials=20, seed=0, names=None):
    """Report of f(aQ, P) = f(Q, P)^a and f(Q, bP) = f(Q, P)^b per pairing."""
    rng = random.Random(seed)
    K, r = ctx.pairing_field, ctx.r
    rep = Report()
    fams = ate_family(ctx)
    for name, fn in fams.items():
        if names and name not in names:
            continue
        for t in range(trials):
            Q, P = ctx.random_g2(rng), ctx.random_g1(rng)
            a = scalar(t, r)
            base = fn(Q, P, rng)
            rep.record(f"{name}:left", fn(scalar_mul(Q, a), P, rng) == K.pow(base, a))
            rep.record(f"{name}:right", fn(Q, scalar_mul(P, a), rng) == K.pow(base, a))
    if not names or "weil" in names:
        for t in range(trials):
            X, Y = ctx.random_torsion(rng), ctx.random_torsion(rng)
            a = scalar(t, r)
            base = weil(X, Y, ctx, rng)
            rep.record("weil:left", weil(scalar_mul(X, a), Y, ctx, rng) == K.pow(base, a))
            rep.record("weil:right", weil(X, scalar_mul(Y, a), ctx, rng) == K.pow(base, a))
    return rep


def corrected_hv_exponent(ctx, spec):
    """Exponent e with hv = tate^e (tate on G2 x G1).

    The generalized Miller function with divisor sum h_i rho(s^i D2)
    differs from f_{r,D2}^{h(s)/r} by prod f_{s^i,D2}^{-h_i}.  After the
    final exponentiation f_{s,D2}(D1) becomes tate^(L c) with
    L = (s^k - 1)/r and c = (k s^(k-1))^-1 mod r, and f_{s^i} contributes
    i s^(i-1) times that.
    """
    r, k, s = ctx.r, ctx.k, spec.s
    hs = spec.h_at(s)
    dh = sum(i * c * s ** (i - 1) for i, c in enumerate(spec.h) if i)
    L = (s ** k - 1) // r
    return (hs // r - dh * L * pow(k * s ** (k - 1), -1, r)) % r


def identities(ctx, trials=20, seed=0):
    """Exact identity checks among the pairings (the correct relations)."""
    rng = random.Random(seed)
    K, r, q, k = ctx.pairing_field, ctx.r, ctx.q, ctx.k
    rep = Report()
    for _ in range(trials):
        Q, P = ctx.random_g2(rng), ctx.random_g1(rng)
        t = tate(Q, P, ctx, rng)
        a = ate(Q, P, ctx, rng)
        rep.record("ate:order", K.pow(a, r) == K.one)
        rep.record("ate:tate", t == K.pow(a, k * q ** (k - 1) % r))
        rep.record("hv:constant_r", hv(Q, P, HVSpec(q, (r,)), ctx, rng) == t)
        if k > 1:
            spec = HVSpec(q, (-q, 1))
            rep.record("hv:corrected", hv(Q, P, spec, ctx, rng)
                       == K.pow(t, corrected_hv_exponent(ctx, spec)))
        for j in range(1, k):
            s = pow(q, j, r)
            L = (s ** k - 1) // r
            e = L * pow(k * s ** (k - 1), -1, r) % r
            rep.record("ate_i:tate", ate_i(Q, P, j, ctx, rng) == K.pow(t, e))
        if k > 2:
            spec = rate_spec(ctx)
            v1 = rate(Q, P, spec, ctx, rng, "product")
            v2 = rate(Q, P, spec, ctx, rng, "ratio")
            v3 = hv(Q, P, spec.hv_spec(ctx), ctx, rng)
            rep.record("rate:two_routes", v1 == v2 == v3)
        if k % 2 == 0:
            v = ctx.pairing_field.random_nonzero(rng)
            rep.record("final_exp:split", final_exponentiation(v, ctx, "split")
                       == final_exponentiation(v, ctx, "plain"))
        X = ctx.random_torsion(rng)
        rep.record("weil:alternating", weil(X, X, ctx, rng) == K.one)
    return rep


def run_suite(ctx, trials=20, seed=0):
    rep = bilinearity(ctx, trials, seed)
    other = identities(ctx, trials, seed + 1)
    for src, dst in ((other.passed, rep.passed), (other.failed, rep.failed)):
        for n, c in src.items():
            dst[n] = dst.get(n, 0) + c
    return rep
