"""Pairings on G2 x G1 (and friends) built from the Miller machinery.

Every pairing returns a raw value of ``ctx.pairing_field``.  Values are
computed from normalized Miller functions at effective parts of reduced
divisors; when an evaluation divisor meets a zero or pole, the evaluation
divisor is moved within its class (see :func:`_robust`).
"""
import math
import random
from dataclasses import dataclass, field as dc_field

from . import poly
from .curve import frobenius_charpoly, jacobian_order
from .errors import (BadContext, BadExpansion, BadH, BadSpec, BadTwistExponent,
                     InvariantViolation, NotInEigenspace, RetriesExhausted,
                     UnknownPairing, ZeroEncountered, ZeroInput)
from .field import FieldDescriptor, build_extension, half_conjugate, is_probable_prime
from .jacobian import (Jacobian, cantor_with_functions, compose_reduce,
                       frobenius_on_divisor, in_G1, in_G2, negate, project_G2,
                       sample_r_torsion, scalar_mul)
from .miller import evaluate_at, generalized_miller_eval, miller_loop

REFRESH_RETRIES = 16


def multiplicative_order(q, r):
    if math.gcd(q, r) != 1:
        raise BadContext(f"gcd({q}, {r}) != 1")
    k, x = 1, q % r
    while x != 1:
        x = x * q % r
        k += 1
    return k


def torsion_is_elementary(cp, r, k):
    """True if the r-part of Jac(F_{q^k}) has exponent r.

    The r-torsion rank over F_{q^k} is at least the number of distinct
    eigenvalues lambda of Frobenius mod r with lambda^k = 1.  When those
    are simple roots of P mod r and their count equals v_r(#Jac(F_{q^k})),
    the r-part is (Z/r)^count.
    """
    Fr = FieldDescriptor(r)
    P = poly.trim(Fr, [c % r for c in cp.coeffs])
    dP = poly.derivative(Fr, P)
    count = 0
    for lam in poly.roots(Fr, P):
        if pow(lam, k, r) != 1:
            continue
        if poly.evaluate(Fr, dP, lam) == 0:
            return False
        count += 1
    n, v = jacobian_order(cp, k), 0
    while n % r == 0:
        n //= r
        v += 1
    return v == count


class PairingContext:
    """One pairing instance: curve over F_q, prime r | #Jac(F_q), embedding
    degree k, and the Jacobian over the flat field F_{q^k}."""

    def __init__(self, curve, r, cp=None, seed=0):
        r = int(r)
        if not is_probable_prime(r):
            raise BadContext(f"r = {r} is not prime")
        self.curve = curve
        self.r = r
        self.q = curve.q
        self.p = curve.p
        self.m = curve.base.degree
        self.cp = cp if cp is not None else frobenius_charpoly(curve)
        if self.cp(1) % r:
            raise BadContext(f"r = {r} does not divide #Jac(F_q) = {self.cp(1)}")
        self.k = multiplicative_order(self.q, r)
        if self.cp(1) % (r * r) == 0:
            raise BadContext("r^2 divides #Jac(F_q)")
        if not torsion_is_elementary(self.cp, r, self.k):
            raise BadContext("Jac(F_{q^k}) may contain elements of order r^2")
        self.final_exponent = (self.q ** self.k - 1) // r
        self.pairing_field = build_extension(self.p, self.m * self.k, seed)
        self.jac = Jacobian(curve, self.pairing_field)

    def __repr__(self):
        return f"PairingContext(q={self.q}, r={self.r}, k={self.k})"

    def frobenius_index(self, s):
        for j in range(self.k):
            if pow(self.q, j, self.r) == s % self.r:
                return j
        raise BadSpec(f"s = {s} is not a power of q modulo r")

    def random_base_divisor(self, rng):
        return self.jac.random_divisor(rng, 1)

    def random_g1(self, rng):
        return sample_r_torsion(self, 1, rng)

    def random_g2(self, rng, retries=64):
        for _ in range(retries):
            D = project_G2(sample_r_torsion(self, self.k, rng), self)
            if not D.is_zero():
                return D
        raise RetriesExhausted("G2 projection kept vanishing")

    def random_torsion(self, rng):
        return sample_r_torsion(self, self.k, rng)


@dataclass(frozen=True)
class HVSpec:
    s: int
    h: tuple

    def h_at(self, x):
        return sum(c * x ** i for i, c in enumerate(self.h))

    def check(self, ctx):
        if self.h_at(self.s) % ctx.r:
            raise BadH(f"h(s) is not divisible by r = {ctx.r}")
        ctx.frobenius_index(self.s)

    def degenerate(self, r):
        return self.h_at(self.s) % (r * r) == 0

    def exponent(self, r):
        return (self.h_at(self.s) // r) % r


@dataclass(frozen=True)
class RateSpec:
    i: int
    j: int
    a: int
    b: int

    @classmethod
    def from_indices(cls, ctx, i, j):
        if not 0 < i < j < ctx.k:
            raise BadSpec("need 0 < i < j < k")
        Ti, Tj = pow(ctx.q, i, ctx.r), pow(ctx.q, j, ctx.r)
        return cls(i, j, Ti // Tj, Ti % Tj)

    def hv_spec(self, ctx):
        h = [0] * (max(self.i, self.j) + 1)
        h[0] += self.b
        h[self.i] -= 1
        h[self.j] += self.a
        return HVSpec(ctx.q, tuple(h))


# ---------------------------------------------------------------------------
# final exponentiation

def final_exponentiation(v, ctx, mode="plain"):
    K = ctx.pairing_field
    if v == K.zero:
        raise ZeroInput("final exponentiation of zero")
    if mode == "plain":
        return K.pow(v, ctx.final_exponent)
    if mode != "split":
        raise ValueError(f"unknown mode {mode!r}")
    k, q = ctx.k, ctx.q
    if k % 2:
        raise BadContext("split mode needs even k")
    # v^(q^(k/2) - 1) = conj(v)/v, then the cofactor (q^(k/2) + 1)/r
    w = K.mul(half_conjugate(K, v), K.inv(v))
    return K.pow(w, (q ** (k // 2) + 1) // ctx.r)


# ---------------------------------------------------------------------------
# evaluation helpers

def _robust(ctx, fn, E, rng, retries=REFRESH_RETRIES):
    """fn(E), or fn(rho(E + S)) / fn(rho(S)) for random S in Jac(F_q).

    S is F_q-rational, so the correction function is F_q-rational too, and
    its contribution is a pure r-th power (or 1) for every pairing that
    uses this path.
    """
    try:
        return fn(E)
    except ZeroEncountered:
        pass
    K = ctx.pairing_field
    rng = rng or random.Random(0)
    for _ in range(retries):
        S = ctx.random_base_divisor(rng)
        try:
            a = fn(compose_reduce(E, S))
            b = fn(S)
        except ZeroEncountered:
            continue
        return K.mul(a, K.inv(b))
    raise RetriesExhausted("no disjoint representative found")


def _by_bilinearity(ctx, pairing, X, Y, rng, sampler, retries=REFRESH_RETRIES):
    """pairing(X, Y) as pairing(X, Y + T) / pairing(X, T) for random T."""
    try:
        return pairing(X, Y)
    except ZeroEncountered:
        pass
    K = ctx.pairing_field
    rng = rng or random.Random(0)
    for _ in range(retries):
        T = sampler(rng)
        try:
            a = pairing(X, compose_reduce(Y, T))
            b = pairing(X, T)
        except ZeroEncountered:
            continue
        return K.mul(a, K.inv(b))
    raise RetriesExhausted("no disjoint representative found")


def _require_torsion(D, ctx):
    if not scalar_mul(D, ctx.r).is_zero():
        raise InvariantViolation("argument is not r-torsion")


def _require_g1(D):
    if not in_G1(D):
        raise NotInEigenspace("argument is not fixed by Frobenius")


def _require_g2(D, ctx):
    if not in_G2(D, ctx):
        raise NotInEigenspace("Frobenius does not act as q on the argument")


def _half_field_u(D, ctx):
    return all(ctx.jac.in_subfield(c, ctx.k // 2) for c in D.u)


# ---------------------------------------------------------------------------
# pairings

def tate_raw(D1, D2, ctx, rng=None, denominators=True):
    """Normalized f_{r,D1}(eps(D2)), a representative of the Tate coset."""
    _require_torsion(D1, ctx)
    return _robust(ctx, lambda E: miller_loop(D1, E, ctx.r, denominators)[0], D2, rng)


def tate(D1, D2, ctx, rng=None, mode="plain", denominators=True):
    """Modified Tate pairing f_{r,D1}(D2)^((q^k-1)/r)."""
    if not denominators:
        if ctx.k % 2 or not _half_field_u(D2, ctx):
            raise BadContext("denominator elimination needs u2 over F_{q^(k/2)}")
    return final_exponentiation(tate_raw(D1, D2, ctx, rng, denominators), ctx, mode)


def weil(D1, D2, ctx, rng=None):
    """f_{r,D1}(D2) / f_{r,D2}(D1) on normalized functions."""
    _require_torsion(D1, ctx)
    _require_torsion(D2, ctx)
    K = ctx.pairing_field

    def direct(A, B):
        a = miller_loop(A, B, ctx.r)[0]
        b = miller_loop(B, A, ctx.r)[0]
        w = K.mul(a, K.inv(b))
        if (A.degree() * B.degree()) % 2:
            w = K.neg(w)
        if K.pow(w, ctx.r) != K.one:
            raise InvariantViolation("Weil value is not an r-th root of unity")
        return w

    if D1.is_zero() or D2.is_zero():
        return K.one
    return _by_bilinearity(ctx, direct, D1, D2, rng, ctx.random_torsion)


def ate(D2, D1, ctx, rng=None):
    """f_{q,D2}(D1), no final exponentiation."""
    _require_g2(D2, ctx)
    _require_g1(D1)
    K = ctx.pairing_field
    v = _robust(ctx, lambda E: miller_loop(D2, E, ctx.q)[0], D1, rng)
    if K.pow(v, ctx.r) != K.one:
        raise InvariantViolation("Ate value is not an r-th root of unity")
    return v


def hv(D2, D1, spec, ctx, rng=None):
    """f_{s,h,D2}(D1)^((q^k-1)/r)."""
    spec.check(ctx)
    _require_g2(D2, ctx)
    _require_g1(D1)
    v = _robust(ctx, lambda E: generalized_miller_eval(D2, E, spec, ctx), D1, rng)
    return final_exponentiation(v, ctx)


def ate_i(D2, D1, j, ctx, rng=None):
    if not 0 < j < ctx.k:
        raise BadSpec("need 0 < j < k")
    _require_g2(D2, ctx)
    _require_g1(D1)
    s = pow(ctx.q, j, ctx.r)
    v = _robust(ctx, lambda E: miller_loop(D2, E, s)[0], D1, rng)
    return final_exponentiation(v, ctx)


def ate_i_spec(ctx, j):
    return HVSpec(pow(ctx.q, j, ctx.r), (-ctx.q ** j, 1))


def vercauteren(D2, D1, h, m, ctx, rng=None):
    """Pairing from a short expansion m*r = sum h_i q^i."""
    h = tuple(int(c) for c in h)
    if sum(c * ctx.q ** i for i, c in enumerate(h)) != m * ctx.r:
        raise BadExpansion("sum h_i q^i != m r")
    if math.gcd(m, ctx.r) != 1:
        raise BadExpansion("m must be prime to r")
    return hv(D2, D1, HVSpec(ctx.q, h), ctx, rng)


def short_expansions(ctx, bound=None, limit=10 ** 6):
    """All h = (h_0..h_n), n = phi(k) - 1, with |h_i| <= bound for i >= 1,
    h_0 the balanced residue making sum h_i q^i = m r, m prime to r.

    Yields (loop_bits, h, m), sorted by total loop bits.
    """
    r, q = ctx.r, ctx.q
    n = _euler_phi(ctx.k) - 1
    bound = q if bound is None else bound
    while (2 * bound + 1) ** n > limit:
        bound //= 2
    out = []

    def rec(prefix):
        if len(prefix) == n:
            tail = sum(c * q ** (i + 1) for i, c in enumerate(prefix))
            h0 = (-tail) % r
            if h0 > r // 2:
                h0 -= r
            h = (h0,) + tuple(prefix)
            total = sum(c * q ** i for i, c in enumerate(h))
            m = total // r
            if m and math.gcd(m, r) == 1 and any(h):
                out.append((sum(abs(c).bit_length() for c in h), h, m))
            return
        for c in range(-bound, bound + 1):
            rec(prefix + [c])

    rec([])
    out.sort()
    return out


def _euler_phi(n):
    return sum(1 for i in range(1, n + 1) if math.gcd(i, n) == 1)


def rate(D2, D1, spec, ctx, rng=None, form="product"):
    _require_g2(D2, ctx)
    _require_g1(D1)
    if not 0 < spec.i < spec.j < ctx.k:
        raise BadSpec("need 0 < i < j < k")
    Ti, Tj = pow(ctx.q, spec.i, ctx.r), pow(ctx.q, spec.j, ctx.r)
    if Ti != spec.a * Tj + spec.b:
        raise BadSpec("T_i != a T_j + b")
    K = ctx.pairing_field

    def miller_or_one(n, E):
        return miller_loop(D2, E, n)[0] if n else K.one

    def product(E):
        fa = K.frobenius(miller_or_one(spec.a, E), ctx.m * spec.j)
        fb = miller_or_one(spec.b, E)
        A = scalar_mul(frobenius_on_divisor(D2, spec.j), spec.a)
        B = scalar_mul(D2, spec.b)
        S, f, g, lc = cantor_with_functions(A, B, E)
        if S != frobenius_on_divisor(D2, spec.i):
            raise InvariantViolation("a T_j D2 + b D2 is not pi^i(D2)")
        gv = combine_value(K, f, g, lc, E)
        return K.mul(K.mul(fa, fb), gv)

    def ratio(E):
        fi = miller_loop(D2, E, Ti)[0]
        fj = miller_or_one(Tj, E)
        return K.mul(fi, K.inv(K.pow(fj, spec.a)))

    fn = {"product": product, "ratio": ratio}.get(form)
    if fn is None:
        raise BadSpec(f"unknown R-ate form {form!r}")
    return final_exponentiation(_robust(ctx, fn, D1, rng), ctx)


def combine_value(K, f, g, lc, E):
    u = list(E.u)
    den = K.mul(evaluate_at(K, g, u), K.pow(lc, len(u) - 1))
    return K.mul(evaluate_at(K, f, u), K.inv(den))


def twisted_ate(D1, D2, e, ctx, rng=None, denominators=True):
    """f_{q^e,D1}(D2)^((q^k-1)/r) for D1 in G1, D2 in G2."""
    if e <= 0 or ctx.k % e:
        raise BadTwistExponent(f"e = {e} does not divide k = {ctx.k}")
    _require_g1(D1)
    _require_g2(D2, ctx)
    if not denominators and not _half_field_u(D2, ctx):
        raise BadContext("denominator elimination needs u2 over F_{q^(k/2)}")
    s = ctx.q ** e
    jac = ctx.jac

    def direct(A, B):
        v, _ = miller_loop(A, B, s, denominators, base_check=jac)
        return final_exponentiation(v, ctx)

    return _by_bilinearity(ctx, direct, D1, D2, rng, ctx.random_g2)


# ---------------------------------------------------------------------------
# dispatch

PAIRINGS = ("tate", "weil", "ate", "ate_i", "hv", "vercauteren", "rate", "twisted_ate")


def pairing_dispatch(name, Da, Db, params, ctx, rng=None):
    """Route to a pairing; returns (value, metadata)."""
    params = params or {}
    q, r = ctx.q, ctx.r
    if name == "tate":
        v = tate(Da, Db, ctx, rng, params.get("mode", "plain"),
                 params.get("denominators", True))
        return v, {"loop_bits": r.bit_length(), "final_exp": True}
    if name == "weil":
        return weil(Da, Db, ctx, rng), {"loop_bits": 2 * r.bit_length(), "final_exp": False}
    if name == "ate":
        return ate(Da, Db, ctx, rng), {"loop_bits": q.bit_length(), "final_exp": False}
    if name == "ate_i":
        j = params.get("j", 1)
        s = pow(q, j, r)
        return ate_i(Da, Db, j, ctx, rng), {"loop_bits": s.bit_length(), "final_exp": True}
    if name == "hv":
        spec = params.get("spec") or HVSpec(params.get("s", q), tuple(params.get("h", (r,))))
        bits = sum(abs(c).bit_length() for c in spec.h)
        return hv(Da, Db, spec, ctx, rng), {"loop_bits": bits, "final_exp": True}
    if name == "vercauteren":
        h, m = params.get("h"), params.get("m")
        if h is None:
            _, h, m = short_expansions(ctx)[0]
        bits = sum(abs(c).bit_length() for c in h)
        return vercauteren(Da, Db, h, m, ctx, rng), {"loop_bits": bits, "final_exp": True}
    if name == "rate":
        spec = params.get("spec") or RateSpec.from_indices(ctx, params.get("i", 1), params.get("j", 2))
        bits = spec.a.bit_length() + spec.b.bit_length()
        v = rate(Da, Db, spec, ctx, rng, params.get("form", "product"))
        return v, {"loop_bits": bits, "final_exp": True}
    if name == "twisted_ate":
        e = params.get("e", ctx.k // 2 if ctx.k % 2 == 0 else ctx.k)
        v = twisted_ate(Da, Db, e, ctx, rng, params.get("denominators", True))
        return v, {"loop_bits": (q ** e).bit_length(), "final_exp": True}
    raise UnknownPairing(f"unknown pairing {name!r}")
