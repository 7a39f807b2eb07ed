"""Dense univariate polynomials over a :class:`~hyperpair.field.FieldDescriptor`.

A polynomial is a plain list of raw field values, lowest degree first, with
no trailing zeros; the zero polynomial is ``[]``.  Every function takes the
field ``K`` as its first argument.
"""
import random

from .errors import DivisionByZero


def trim(K, a):
    a = list(a)
    zero = K.zero
    while a and a[-1] == zero:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def lc(a):
    return a[-1]


def const(K, c):
    return [] if c == K.zero else [c]


def x_poly(K):
    return [K.zero, K.one]


def add(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return trim(K, out) if len(a) == len(b) else out


def sub(K, a, b):
    n = max(len(a), len(b))
    zero = K.zero
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(K.sub(x, y))
    return trim(K, out)


def neg(K, a):
    return [K.neg(c) for c in a]


def scale(K, a, c):
    if c == K.zero:
        return []
    return [K.mul(x, c) for x in a]


def mul(K, a, b):
    if not a or not b:
        return []
    if K.degree == 1:
        p = K.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        out = [c % p for c in out]
        return trim(K, out)
    kmul, kadd = K.mul, K.add
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == K.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = kadd(out[i + j], kmul(x, y))
    return trim(K, out)


def divmod_(K, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    r = list(a)
    db = len(b) - 1
    inv_lead = K.inv(b[-1])
    q = [K.zero] * (len(a) - db)
    kmul, ksub = K.mul, K.sub
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c == K.zero:
            continue
        c = kmul(c, inv_lead)
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = ksub(r[i - db + j], kmul(c, b[j]))
    return trim(K, q), trim(K, r[:db])


def div_exact(K, a, b):
    q, r = divmod_(K, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def mod(K, a, b):
    if len(a) < len(b):
        return list(a)
    return divmod_(K, a, b)[1]


def mulmod(K, a, b, m):
    return mod(K, mul(K, a, b), m)


def monic(K, a):
    if not a or a[-1] == K.one:
        return list(a)
    inv = K.inv(a[-1])
    return [K.mul(c, inv) for c in a]


def gcd(K, a, b):
    while b:
        a, b = b, mod(K, a, b)
    return monic(K, a)


def xgcd(K, a, b):
    """Return ``(d, s, t)`` with ``d = s*a + t*b`` and ``d`` monic (or zero)."""
    one = [K.one]
    r0, r1 = list(a), list(b)
    s0, s1 = one, []
    t0, t1 = [], one
    while r1:
        q, r = divmod_(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
        t0, t1 = t1, sub(K, t0, mul(K, q, t1))
    if not r0:
        return [], s0, t0
    inv = K.inv(r0[-1])
    return scale(K, r0, inv), scale(K, s0, inv), scale(K, t0, inv)


def powmod(K, a, e, m):
    result = [K.one]
    base = mod(K, a, m)
    while e:
        if e & 1:
            result = mulmod(K, result, base, m)
        e >>= 1
        if e:
            base = mulmod(K, base, base, m)
    return mod(K, result, m)


def evaluate(K, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def derivative(K, a):
    return trim(K, [K.mul(K.from_int(i), c) for i, c in enumerate(a)][1:])


def from_roots(K, roots):
    out = [K.one]
    for r in roots:
        out = mul(K, out, [K.neg(r), K.one])
    return out


def resultant(K, a, b):
    """Standard resultant Res(a, b) = lc(a)^deg(b) * prod_{a(x)=0} b(x)."""
    if not a or not b:
        return K.zero
    sign = False
    acc = K.one
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return _signed(K, K.mul(acc, K.pow(b[0], da)), sign)
        if da == 0:
            return _signed(K, K.mul(acc, K.pow(a[0], db)), sign)
        if da < db:
            a, b = b, a
            da, db = db, da
            if da * db & 1:
                sign = not sign
        r = mod(K, a, b)
        if not r:
            return K.zero
        # Res(a,b) = (-1)^(da*db) lc(b)^(da-dr) Res(b, r)
        if da * db & 1:
            sign = not sign
        acc = K.mul(acc, K.pow(b[-1], da - (len(r) - 1)))
        a, b = b, r


def _signed(K, v, sign):
    return K.neg(v) if sign else v


def eval_at_roots(K, a, u):
    """Product of ``a`` over the roots of the monic polynomial ``u``.

    Equals (-1)^(deg a * deg u) Res(a, u); the empty product is 1.
    """
    if len(u) <= 1:
        return K.one
    if not a:
        return K.zero
    a = mod(K, a, u)
    if not a:
        return K.zero
    if len(u) == 2:
        return evaluate(K, a, K.neg(u[0]))
    if len(u) == 3 and len(a) <= 2:
        a0 = a[0]
        if len(a) == 1:
            return K.mul(a0, a0)
        a1 = a[1]
        # (a0 + a1 x1)(a0 + a1 x2) with x1 + x2 = -u1, x1 x2 = u0
        t = K.sub(K.mul(a0, a0), K.mul(K.mul(a0, a1), u[1]))
        return K.add(t, K.mul(K.mul(a1, a1), u[0]))
    v = resultant(K, a, u)
    if (len(a) - 1) * (len(u) - 1) & 1:
        v = K.neg(v)
    return v


def roots(K, a, rng=None):
    """All roots of ``a`` lying in ``K`` (with multiplicity ignored), sorted."""
    a = monic(K, trim(K, a))
    if len(a) <= 1:
        return []
    rng = rng or random.Random(0)
    X = x_poly(K)
    # restrict to the product of distinct linear factors
    xq = _x_pow_order(K, a)
    lin = gcd(K, a, sub(K, xq, X))
    found = []
    _split_linear(K, lin, rng, found)
    return sorted(found, key=K.sort_key)


def _x_pow_order(K, m):
    # x^(p^d) mod m via repeated p-th powers
    X = x_poly(K)
    out = mod(K, X, m)
    for _ in range(K.degree):
        out = powmod(K, out, K.p, m)
    return out


def _split_linear(K, f, rng, found):
    if len(f) <= 1:
        return
    if len(f) == 2:
        found.append(K.neg(f[0]))
        return
    e = (K.order - 1) // 2
    while True:
        c = K.random(rng)
        g = powmod(K, [c, K.one], e, f)
        h = gcd(K, f, sub(K, g, [K.one]))
        if 1 < len(h) < len(f):
            _split_linear(K, h, rng, found)
            _split_linear(K, div_exact(K, f, h), rng, found)
            return


def is_irreducible(K, f):
    """Rabin's irreducibility test for ``f`` over ``K``."""
    f = monic(K, trim(K, f))
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    Q = K.order
    X = x_poly(K)

    def x_pow_q(times):
        out = mod(K, X, f)
        for _ in range(times):
            out = powmod(K, out, Q, f)
        return out

    if sub(K, x_pow_q(n), mod(K, X, f)):
        return False
    for ell in _prime_factors(n):
        h = sub(K, x_pow_q(n // ell), X)
        if len(gcd(K, f, h)) != 1:
            return False
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
