"""Miller's algorithm on Mumford divisors, normalized at infinity.

Values are always *normalized*: a function f with pole of order n at P_inf
is divided by its leading coefficient lc(f) = (z^n f)(P_inf), z = x^g/y,
and then evaluated at the affine part of the evaluation divisor.
"""
from dataclasses import dataclass

from . import poly
from .errors import BadH, InvariantViolation, OrderMismatch, ZeroEncountered
from .jacobian import (cantor_with_functions, compose_reduce, frobenius_on_divisor,
                       scalar_mul)


def resultant(K, A, B):
    """Res(A, B); zero iff A and B share a root."""
    if not B:
        raise ValueError("resultant with the zero polynomial")
    return poly.resultant(K, A, B)


def evaluate_at(K, f, u):
    """prod f(P) over the roots of the monic ``u`` (a reduced function value)."""
    val = poly.eval_at_roots(K, f, u)
    if val == K.zero:
        raise ZeroEncountered("function vanishes on the evaluation divisor")
    return val


@dataclass
class MillerAccumulator:
    f1: list
    f2: list
    f3: object


def miller_loop(D1, D2, s, denominators=True, base_check=None):
    """Miller loop for f_{s,D1} evaluated at eps(D2).

    Returns ``(value, rho(s D1))`` with ``value`` the normalized,
    unexponentiated f_{s,D1}(eps(D2)).  With ``denominators=False`` the
    vertical factors are skipped (only meaningful under a final
    exponentiation that kills the subfield they land in).  Passing the
    Jacobian as ``base_check`` asserts that every intermediate divisor of
    the loop is defined over F_q.
    """
    s = int(s)
    if s < 1:
        raise ValueError("loop scalar must be positive")
    K = D1.jac.field
    u2 = list(D2.u)
    one = poly.mod(K, [K.one], u2)
    acc = MillerAccumulator(one, one, K.one)
    D = D1
    for bit in bin(s)[3:]:
        acc.f1 = poly.mulmod(K, acc.f1, acc.f1, u2)
        acc.f2 = poly.mulmod(K, acc.f2, acc.f2, u2)
        acc.f3 = K.mul(acc.f3, acc.f3)
        D, h1, h2, h3 = cantor_with_functions(D, D, D2)
        _absorb(K, acc, h1, h2, h3, u2, denominators)
        if bit == "1":
            D, h1, h2, h3 = cantor_with_functions(D, D1, D2)
            _absorb(K, acc, h1, h2, h3, u2, denominators)
        if base_check is not None:
            _assert_base(base_check, D)
    num = evaluate_at(K, acc.f1, u2)
    den = evaluate_at(K, acc.f2, u2)
    den = K.mul(den, K.pow(acc.f3, len(u2) - 1))
    return K.mul(num, K.inv(den)), D


def _assert_base(jac, D):
    if not all(jac.in_subfield(c, 1) for c in D.u + D.v):
        raise InvariantViolation("Miller loop left the base field")


def _absorb(K, acc, h1, h2, h3, u2, denominators):
    acc.f1 = poly.mulmod(K, acc.f1, h1, u2)
    if denominators:
        acc.f2 = poly.mulmod(K, acc.f2, h2, u2)
    acc.f3 = K.mul(acc.f3, h3)


def miller_eval(D1, D2, s, d=1):
    """f^norm_{s,D1}(eps(D2))^d."""
    K = D1.jac.field
    value, _ = miller_loop(D1, D2, s)
    return K.pow(value, d)


def leading_coeff_at_infinity(order, frep, genus):
    """lc of c*(a(x) + b(x) y) for frep = (K, a, b, c) with uniformizer x^g/y.

    ``order`` is the expected pole order at P_inf.  ord(x) = -2 and
    ord(y) = -(2g+1) have opposite parity, so the two parts never cancel and
    the leading term is that of the dominant part; lc(x) = lc(y) = 1.
    """
    K, a, b, c = frep
    a, b = poly.trim(K, a), poly.trim(K, b)
    cand = []
    if a:
        cand.append((2 * poly.deg(a), a[-1]))
    if b:
        cand.append((2 * poly.deg(b) + 2 * genus + 1, b[-1]))
    if not cand or c == K.zero:
        raise OrderMismatch("zero function has no leading coefficient")
    n, lead = max(cand)
    if n != order:
        raise OrderMismatch(f"pole order is {n}, not {order}")
    return K.mul(c, lead)


def exact_inverse_factor(D, m):
    """u-polynomial of rho(mD): f_{-m,D} = 1/(f_{m,D} * u_{rho(mD)}(x))."""
    return list(scalar_mul(D, m).u)


def generalized_miller_eval(D2, D1, spec, ctx):
    """Normalized f_{s,h,D2}(eps(D1)) for s = q^j mod r and D2 in G2.

    Uses f_{h_i, pi^{ij} D2} = pi^{ij} f_{h_i, D2}; D1 is assumed fixed by
    Frobenius so the conjugation moves onto the value.  Combining functions
    for rho(h_0 D_0) + ... + rho(h_n D_n) come from Cantor with functions.
    """
    K = D2.jac.field
    s, h = spec.s, list(spec.h)
    r = ctx.r
    if sum(c * pow(s, i, r * r) for i, c in enumerate(h)) % r:
        raise BadH("h(s) is not divisible by r")
    j = ctx.frobenius_index(s)
    u1 = list(D1.u)
    value = K.one
    B = []
    cache = {}
    for i, hi in enumerate(h):
        e = (i * j) % ctx.k
        Di = frobenius_on_divisor(D2, e)
        if hi == 0:
            B.append(D2.jac.identity())
            continue
        m = abs(hi)
        if m not in cache:
            cache[m] = miller_loop(D2, D1, m)[0]
        val = cache[m]
        if hi < 0:
            corr = evaluate_at(K, exact_inverse_factor(D2, m), u1)
            val = K.inv(K.mul(val, corr))
        value = K.mul(value, K.frobenius(val, ctx.m * e))
        B.append(scalar_mul(Di, hi))
    value = K.mul(value, combine_functions(B, D1))
    return value


def combine_functions(parts, Deval):
    """Normalized value at eps(Deval) of the function with divisor sum(parts).

    ``parts`` must sum to the identity class.
    """
    K = Deval.jac.field
    u1 = list(Deval.u)
    value = K.one
    S = parts[0]
    for B in parts[1:]:
        S, f, g, lc = cantor_with_functions(S, B, Deval)
        num = evaluate_at(K, f, u1)
        den = K.mul(evaluate_at(K, g, u1), K.pow(lc, len(u1) - 1))
        value = K.mul(value, K.mul(num, K.inv(den)))
    if not S.is_zero():
        raise BadH("generalized Miller divisor is not principal")
    return value


def loop_bits(n):
    return abs(int(n)).bit_length()
