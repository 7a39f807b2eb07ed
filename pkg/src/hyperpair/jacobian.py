"""Divisor class arithmetic on the Jacobian in Mumford representation.

All divisors of one :class:`Jacobian` share a single (flat) field ``L``; a
divisor whose coefficients happen to lie in the subfield F_{q^d} carries
``ext_degree = d``.  Working in one field means pairing code never has to
move values between towers.
"""
import random

from . import poly
from .curve import jacobian_order
from .errors import (InvariantViolation, NoTorsion, ProjectionDegenerate,
                     RetriesExhausted)
from .field import embedding

SEARCH_LIMIT = 10 ** 5


class Jacobian:
    def __init__(self, curve, field=None):
        self.curve = curve
        self.field = field if field is not None else curve.base
        self.genus = curve.genus
        if self.field.p != curve.base.p or self.field.degree % curve.base.degree:
            raise ValueError("field does not contain the curve's base field")
        self.m = curve.base.degree
        self.ext = self.field.degree // self.m
        self.H, self.F = curve.embedded(self.field)
        self._base_emb = embedding(curve.base, self.field)

    def __eq__(self, other):
        return (isinstance(other, Jacobian) and self.curve == other.curve
                and self.field == other.field)

    def __hash__(self):
        return hash((self.curve, self.field))

    def __repr__(self):
        return f"Jacobian(genus={self.genus}, field={self.field})"

    @property
    def q(self):
        return self.curve.q

    def identity(self):
        return ReducedDivisor(self, [self.field.one], [])

    def divisor(self, u, v, check=True):
        K = self.field
        D = ReducedDivisor(self, poly.trim(K, u), poly.trim(K, v))
        if check:
            check_invariants(D)
        return D

    def point_divisor(self, x, y):
        """(P) - (P_inf) for an affine point given by raw coordinates."""
        K = self.field
        return self.divisor([K.neg(x), K.one], poly.const(K, y))

    def from_points(self, pts):
        D = self.identity()
        for x, y in pts:
            D = compose_reduce(D, self.point_divisor(x, y))
        return D

    def in_subfield(self, a, d):
        """True iff the raw value ``a`` of L lies in F_{q^d}."""
        return self.field.frobenius(a, self.m * d) == a

    def subfield_random(self, rng, d):
        """Uniform element of F_{q^d} inside L, via the relative trace."""
        K = self.field
        if d == self.ext:
            return K.random(rng)
        if self.ext % d:
            raise ValueError(f"{d} does not divide {self.ext}")
        a = K.random(rng)
        acc = a
        for i in range(1, self.ext // d):
            acc = K.add(acc, K.frobenius(a, self.m * d * i))
        return acc

    def random_point(self, rng, d=None):
        """A random affine point with coordinates in F_{q^d}."""
        K = self.field
        d = self.ext if d is None else d
        sub_order = self.q ** d
        two_inv = K.inv(K.from_int(2))
        for _ in range(1000):
            x = self.subfield_random(rng, d)
            hx = poly.evaluate(K, self.H, x)
            disc = K.add(K.mul(hx, hx), K.mul(K.from_int(4), poly.evaluate(K, self.F, x)))
            if disc != K.zero and K.pow(disc, (sub_order - 1) // 2) != K.one:
                continue
            s = K.sqrt(disc)
            if rng.randrange(2):
                s = K.neg(s)
            return x, K.mul(K.sub(s, hx), two_inv)
        raise RetriesExhausted("no point found")

    def random_divisor(self, rng, d=None):
        """Sum of two random points (an almost uniform class at desk scale)."""
        try:
            return self.from_points([self.random_point(rng, d), self.random_point(rng, d)])
        except RetriesExhausted:
            return self._random_divisor_by_search(rng, d)

    def _random_divisor_by_search(self, rng, d=None):
        """Random reduced divisor found by trying all v for random monic u.

        Needed for tiny curves with no rational points; only used when the
        field is small enough to enumerate.
        """
        K = self.field
        d = self.ext if d is None else d
        if d != self.ext or K.order ** self.genus > SEARCH_LIMIT:
            raise RetriesExhausted("no point found and the field is too large to search")
        elems = list(K.elements())
        for _ in range(1000):
            u = [rng.choice(elems) for _ in range(self.genus)] + [K.one]
            hits = []
            for idx in range(K.order ** self.genus):
                v = []
                for _ in range(self.genus):
                    idx, c = divmod(idx, K.order)
                    v.append(elems[c])
                D = ReducedDivisor(self, u, poly.trim(K, v))
                try:
                    check_invariants(D)
                except InvariantViolation:
                    continue
                hits.append(D)
            if hits:
                return rng.choice(hits)
        raise RetriesExhausted("no divisor found")


class ReducedDivisor:
    """Mumford pair (u, v) of raw coefficient tuples over ``jac.field``."""

    __slots__ = ("jac", "u", "v")

    def __init__(self, jac, u, v):
        self.jac = jac
        self.u = tuple(u)
        self.v = tuple(v)

    @property
    def ext_degree(self):
        """Smallest d dividing the field's extension degree with coefficients in F_{q^d}."""
        jac = self.jac
        for d in range(1, jac.ext + 1):
            if jac.ext % d == 0 and all(jac.in_subfield(c, d) for c in self.u + self.v):
                return d
        return jac.ext

    def is_zero(self):
        return len(self.u) == 1

    def degree(self):
        return len(self.u) - 1

    def __eq__(self, other):
        return (isinstance(other, ReducedDivisor) and self.u == other.u
                and self.v == other.v and self.jac.field == other.jac.field)

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        K = self.jac.field
        fmt = (lambda c: c) if K.degree == 1 else list
        return f"ReducedDivisor(u={[fmt(c) for c in self.u]}, v={[fmt(c) for c in self.v]})"

    def __add__(self, other):
        return compose_reduce(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return compose_reduce(self, negate(other))

    def __mul__(self, n):
        return scalar_mul(self, n)

    __rmul__ = __mul__


def check_invariants(D, reduced=True):
    jac, K = D.jac, D.jac.field
    u, v = list(D.u), list(D.v)
    if not u or u[-1] != K.one:
        raise InvariantViolation("u is not monic")
    if len(v) >= len(u):
        raise InvariantViolation("deg v >= deg u")
    if reduced and poly.deg(u) > jac.genus:
        raise InvariantViolation("deg u exceeds genus")
    w = poly.sub(K, poly.sub(K, jac.F, poly.mul(K, v, jac.H)), poly.mul(K, v, v))
    if poly.mod(K, w, u):
        raise InvariantViolation("u does not divide F - vH - v^2")


def negate(D):
    jac, K = D.jac, D.jac.field
    v = poly.mod(K, poly.neg(K, poly.add(K, list(D.v), jac.H)), list(D.u))
    return ReducedDivisor(jac, D.u, v)


def _compose(jac, D1, D2):
    """Stage 1: semi-reduced (U, V) and the gcd d."""
    K, H, F = jac.field, jac.H, jac.F
    u1, v1, u2, v2 = list(D1.u), list(D1.v), list(D2.u), list(D2.v)
    d1, e1, e2 = poly.xgcd(K, u1, u2)
    w = poly.add(K, poly.add(K, v1, v2), H)
    if w:
        d, c1, c2 = poly.xgcd(K, d1, w)
    else:
        d, c1, c2 = d1, [K.one], []
    s1, s2, s3 = poly.mul(K, c1, e1), poly.mul(K, c1, e2), c2
    U = poly.div_exact(K, poly.mul(K, u1, u2), poly.mul(K, d, d))
    num = poly.add(K, poly.mul(K, poly.mul(K, s1, u1), v2),
                   poly.mul(K, poly.mul(K, s2, u2), v1))
    num = poly.add(K, num, poly.mul(K, s3, poly.add(K, poly.mul(K, v1, v2), F)))
    V = poly.mod(K, poly.div_exact(K, num, d), U)
    return U, V, d


def _reduce_step(jac, U, V):
    K = jac.field
    w = poly.sub(K, poly.sub(K, jac.F, poly.mul(K, V, jac.H)), poly.mul(K, V, V))
    U2 = poly.monic(K, poly.div_exact(K, w, U))
    V2 = poly.mod(K, poly.neg(K, poly.add(K, jac.H, V)), U2)
    if len(U2) >= len(U):
        raise InvariantViolation("reduction did not lower deg u")
    return U2, V2


def _same_field(D1, D2):
    if D1.jac.field != D2.jac.field or D1.jac.curve != D2.jac.curve:
        raise InvariantViolation("divisors live on different Jacobians or fields")


def compose_reduce(D1, D2):
    _same_field(D1, D2)
    jac = D1.jac
    U, V, _ = _compose(jac, D1, D2)
    while poly.deg(U) > jac.genus:
        U, V = _reduce_step(jac, U, V)
    return ReducedDivisor(jac, U, V)


def cantor_with_functions(D1, D2, Deval):
    """Sum plus the function h with divisor D1 + D2 - rho(D1 + D2).

    Returns ``(D, f, g, lc)`` with f, g polynomials in x reduced modulo
    ``Deval.u`` after substituting y = ``Deval.v``, so that h = f/g on the
    support of Deval, and ``lc`` the leading coefficient of h at infinity
    for the uniformizer x^g/y.
    """
    _same_field(D1, D2)
    jac = D1.jac
    K, g_ = jac.field, jac.genus
    u, v = list(Deval.u), list(Deval.v)
    U, V, d = _compose(jac, D1, D2)
    f = poly.mod(K, d, u)
    g = poly.mod(K, [K.one], u)
    h = K.one
    while poly.deg(U) > g_:
        U2, V2 = _reduce_step(jac, U, V)
        # step function (y - V)/U2, with U2 made monic
        f = poly.mulmod(K, f, poly.sub(K, v, V), u)
        g = poly.mulmod(K, g, U2, u)
        if poly.deg(V) > g_:
            # V dominates y at infinity; U2 was scaled by 1/(-lc(V)^2)
            h = K.mul(h, K.neg(V[-1]))
        U, V = U2, V2
    return ReducedDivisor(jac, U, V), f, g, h


def scalar_mul(D, n):
    n = int(n)
    if n < 0:
        return scalar_mul(negate(D), -n)
    result = D.jac.identity()
    if n == 0 or D.is_zero():
        return result
    for bit in bin(n)[2:]:
        result = compose_reduce(result, result)
        if bit == "1":
            result = compose_reduce(result, D)
    return result


def frobenius_on_divisor(D, times=1):
    """Apply the q-power Frobenius ``times`` times."""
    jac, K = D.jac, D.jac.field
    e = jac.m * times
    return ReducedDivisor(jac, [K.frobenius(c, e) for c in D.u],
                          [K.frobenius(c, e) for c in D.v])


def is_degenerate(D):
    return 0 < D.degree() < D.jac.genus


def _r_part(n, r):
    e = 0
    while n % r == 0:
        n //= r
        e += 1
    return e, n


def sample_r_torsion(ctx, d=None, rng=None, retries=64):
    """A nonzero element of Jac(F_{q^d})[r]."""
    jac = ctx.jac
    d = jac.ext if d is None else d
    rng = rng or random.Random(0)
    order = jacobian_order(ctx.cp, d)
    e, _ = _r_part(order, ctx.r)
    if e == 0:
        raise NoTorsion(f"r = {ctx.r} does not divide #Jac(F_q^{d})")
    cof = order // ctx.r ** e
    for _ in range(retries):
        X = scalar_mul(jac.random_divisor(rng, d), cof)
        if X.is_zero():
            continue
        Y = scalar_mul(X, ctx.r ** (e - 1))
        # walk down to an element of exact order r
        while not Y.is_zero():
            X, Y = Y, scalar_mul(Y, ctx.r)
        return X
    raise RetriesExhausted("could not find a nonzero r-torsion element")


def projector(cp, r, lam):
    """Coefficients (mod r, low-to-high) of P(x)/(x - lam) reduced mod r."""
    P = [c % r for c in cp.coeffs]
    # synthetic division by (x - lam)
    n = len(P) - 1
    Q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = (acc * lam + P[i]) % r
        Q[i - 1] = acc
    rem = (acc * lam + P[0]) % r
    if rem:
        raise ProjectionDegenerate(f"{lam} is not a root of P mod r")
    # multiple root check
    qval = 0
    for c in reversed(Q):
        qval = (qval * lam + c) % r
    if qval == 0:
        raise ProjectionDegenerate(f"{lam} is a multiple root of P mod r")
    return Q


def apply_frobenius_poly(D, coeffs):
    """sum c_i pi^i(D)."""
    acc = D.jac.identity()
    img = D
    for i, c in enumerate(coeffs):
        if i:
            img = frobenius_on_divisor(img)
        if c:
            acc = compose_reduce(acc, scalar_mul(img, c))
    return acc


def project_G1(D, ctx):
    return apply_frobenius_poly(D, projector(ctx.cp, ctx.r, 1))


def project_G2(D, ctx):
    return apply_frobenius_poly(D, projector(ctx.cp, ctx.r, ctx.q % ctx.r))


def in_G1(D):
    return frobenius_on_divisor(D) == D


def in_G2(D, ctx):
    return frobenius_on_divisor(D) == scalar_mul(D, ctx.q % ctx.r)
