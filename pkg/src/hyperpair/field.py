"""Prime fields and their flat extensions F_p[t]/(m(t)).

Inside the library an element is handled as a *raw* value: an ``int`` in
``[0, p)`` for a prime field and a ``d``-tuple of such ints (coefficients of
``1, t, ..., t^(d-1)``) for a degree-``d`` extension.  The descriptor carries
all arithmetic on raw values; :class:`FieldElement` is the operator-friendly
wrapper handed to callers.
"""
import math
import random

from . import poly
from .errors import (CompositeCharacteristic, DescriptorMismatch, DivisionByZero,
                     NotADivisor, SearchExhausted)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n, rounds=8):
    """Miller-Rabin; deterministic below 3.3e24, probabilistic above."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= 3317044064679887385961981:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldDescriptor:
    """The field F_{p^d}; ``modulus`` is the monic defining polynomial
    (low-to-high ints, length d+1) or ``None`` for d = 1.

    Descriptors are immutable and compare by (p, d, modulus).
    """

    def __init__(self, p, d=1, modulus=None, check=True):
        p, d = int(p), int(d)
        if check and not is_probable_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if d < 1:
            raise ValueError("degree must be positive")
        self.p = p
        self.degree = d
        self.order = p ** d
        if d == 1:
            self.modulus = None
            self.zero, self.one = 0, 1
            self.add = self._add_p
            self.sub = self._sub_p
            self.neg = self._neg_p
            self.mul = self._mul_p
            self.inv = self._inv_p
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree d")
            self.modulus = modulus
            self.zero = (0,) * d
            self.one = (1,) + (0,) * (d - 1)
            # t^d = sum red[j] t^j, kept sparse
            self._red = [(j, (-c) % p) for j, c in enumerate(modulus[:d]) if c]
            self.add = self._add_e
            self.sub = self._sub_e
            self.neg = self._neg_e
            self.mul = self._mul_e
            self.inv = self._inv_e
            if check and not poly.is_irreducible(FieldDescriptor(p), list(modulus)):
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self._frob = {}
        self._key = (p, d, self.modulus)

    # identity -------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.degree == 1:
            return f"FieldDescriptor(p={self.p})"
        return f"FieldDescriptor(p={self.p}, d={self.degree}, modulus={list(self.modulus)})"

    # prime-field kernels --------------------------------------------------
    def _add_p(self, a, b):
        return (a + b) % self.p

    def _sub_p(self, a, b):
        return (a - b) % self.p

    def _neg_p(self, a):
        return -a % self.p

    def _mul_p(self, a, b):
        return a * b % self.p

    def _inv_p(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    # extension kernels ----------------------------------------------------
    def _add_e(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub_e(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg_e(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul_e(self, a, b):
        p, d = self.p, self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        red = self._red
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                base = k - d
                for j, rj in red:
                    prod[base + j] += c * rj
        return tuple(c % p for c in prod[:d])

    def _inv_e(self, a):
        p = self.p
        if not any(a):
            raise DivisionByZero("inverse of zero")
        # extended Euclid in F_p[t] against the modulus
        r0, r1 = list(self.modulus), _trim_int(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            inv_lead = pow(r1[-1], -1, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            for i in range(len(r0) - 1, len(r1) - 2, -1):
                c = r[i] * inv_lead % p
                if c:
                    q[i - len(r1) + 1] = c
                    for j, y in enumerate(r1):
                        r[i - len(r1) + 1 + j] = (r[i - len(r1) + 1 + j] - c * y) % p
            r = _trim_int(r[:len(r1) - 1])
            r0, r1 = r1, r
            qs = _mul_int(q, s1, p)
            s0, s1 = s1, _trim_int([(x - y) % p for x, y in _zip_pad(s0, qs)])
        c = pow(r1[0], -1, p)
        out = [x * c % p for x in s1] + [0] * self.degree
        return tuple(out[:self.degree])

    # shared ---------------------------------------------------------------
    def pow(self, a, e):
        e = int(e)
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def from_int(self, n):
        if self.degree == 1:
            return int(n) % self.p
        return (int(n) % self.p,) + (0,) * (self.degree - 1)

    def from_coeffs(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if self.degree == 1:
            if len(coeffs) != 1:
                raise ValueError("prime-field element takes one coefficient")
            return coeffs[0]
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients")
        return tuple(coeffs)

    def coeffs(self, a):
        return (a,) if self.degree == 1 else tuple(a)

    def is_zero(self, a):
        return a == self.zero

    def random(self, rng):
        if self.degree == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if a != self.zero:
                return a

    def sort_key(self, a):
        return (a,) if self.degree == 1 else tuple(reversed(a))

    def index(self, a):
        """Integer code sum c_j p^j; a bijection onto [0, p^d)."""
        if self.degree == 1:
            return a
        out = 0
        for c in reversed(a):
            out = out * self.p + c
        return out

    def from_index(self, n):
        if self.degree == 1:
            return n % self.p
        out = []
        for _ in range(self.degree):
            n, c = divmod(n, self.p)
            out.append(c)
        return tuple(out)

    def elements(self):
        for n in range(self.order):
            yield self.from_index(n)

    def generator_t(self):
        """The class of t (a primitive element only by accident)."""
        if self.degree == 1:
            raise ValueError("prime field has no t")
        return (0, 1) + (0,) * (self.degree - 2)

    def frobenius(self, a, e=1):
        """a^(p^e)."""
        d = self.degree
        e %= d
        if e == 0 or d == 1:
            return a
        cols = self._frob.get(e)
        if cols is None:
            cols = self._frob_cols(e)
        p = self.p
        out = [0] * d
        for c, col in zip(a, cols):
            if c:
                for j, y in enumerate(col):
                    out[j] += c * y
        return tuple(x % p for x in out)

    def _frob_cols(self, e):
        # images of 1, t, ..., t^(d-1) under x -> x^(p^e)
        t = self.generator_t()
        te = self.pow(t, self.p ** e)
        cols, acc = [], self.one
        for _ in range(self.degree):
            cols.append(acc)
            acc = self.mul(acc, te)
        self._frob[e] = cols
        return cols

    def is_square(self, a):
        if a == self.zero:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def sqrt(self, a):
        """A square root of ``a`` or ``None`` (Tonelli-Shanks)."""
        if a == self.zero:
            return self.zero
        Q = self.order
        if self.pow(a, (Q - 1) // 2) != self.one:
            return None
        s, t = 0, Q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = self._nonresidue()
        m, c = s, self.pow(z, t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        while b != self.one:
            i, bb = 0, b
            while bb != self.one:
                bb = self.mul(bb, bb)
                i += 1
            w = self.pow(c, 1 << (m - i - 1))
            x = self.mul(x, w)
            c = self.mul(w, w)
            b = self.mul(b, c)
            m = i
        return x

    def _nonresidue(self):
        nr = getattr(self, "_nr", None)
        if nr is None:
            e = (self.order - 1) // 2
            for n in range(1, self.order):
                cand = self.from_index(n)
                if self.pow(cand, e) != self.one:
                    nr = cand
                    break
            self._nr = nr
        return nr

    def element(self, value):
        """Wrap an int, coefficient sequence, or raw value."""
        if isinstance(value, FieldElement):
            if value.descriptor != self:
                raise DescriptorMismatch("element from another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.from_coeffs(value))


class FieldElement:
    """Immutable element of a :class:`FieldDescriptor`."""

    __slots__ = ("descriptor", "raw")

    def __init__(self, descriptor, raw):
        self.descriptor = descriptor
        self.raw = raw

    @property
    def coeffs(self):
        return self.descriptor.coeffs(self.raw)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.descriptor is not self.descriptor and other.descriptor != self.descriptor:
                raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")
            return other.raw
        if isinstance(other, int):
            return self.descriptor.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return self if o is NotImplemented else FieldElement(self.descriptor, self.descriptor.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.descriptor, self.descriptor.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElement(self.descriptor, self.descriptor.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.descriptor, self.descriptor.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.descriptor, self.descriptor.mul(self.raw, self.descriptor.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        return FieldElement(self.descriptor, self.descriptor.mul(o, self.descriptor.inv(self.raw)))

    def __neg__(self):
        return FieldElement(self.descriptor, self.descriptor.neg(self.raw))

    def __pow__(self, e):
        return FieldElement(self.descriptor, self.descriptor.pow(self.raw, e))

    def inverse(self):
        return FieldElement(self.descriptor, self.descriptor.inv(self.raw))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.descriptor != self.descriptor:
                raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")
            return self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.descriptor.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.descriptor, self.raw))

    def __bool__(self):
        return self.raw != self.descriptor.zero

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)} in F_{self.descriptor.p}^{self.descriptor.degree})"


# ---------------------------------------------------------------------------
# descriptor-level operations

def build_extension(p, d, seed=0):
    """Deterministically pick an irreducible monic modulus of degree ``d``.

    For even ``d`` a binomial ``t^d - c`` with ``c`` a non-residue is tried
    first, so that the half-degree conjugation is a sign flip on odd
    coefficients.
    """
    p, d = int(p), int(d)
    if not is_probable_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    if d == 1:
        return FieldDescriptor(p)
    Fp = FieldDescriptor(p)
    rng = random.Random(f"{p}:{d}:{seed}")
    if d % 2 == 0:
        offset = seed % (p - 1)
        for i in range(1, p):
            c = (i + offset) % p
            if c == 0 or pow(c, (p - 1) // 2, p) == 1:
                continue
            m = [(-c) % p] + [0] * (d - 1) + [1]
            if poly.is_irreducible(Fp, m):
                return FieldDescriptor(p, d, m, check=False)
    for _ in range(200 * d * d + 1000):
        m = [rng.randrange(p) for _ in range(d)] + [1]
        if m[0] and poly.is_irreducible(Fp, m):
            return FieldDescriptor(p, d, m, check=False)
    raise SearchExhausted(f"no irreducible of degree {d} over F_{p}")


def arith(a, b, kind):
    """Dispatch ``kind`` in {add, sub, mul, div, inv, neg} on wrapped elements."""
    if kind == "inv":
        return a.inverse()
    if kind == "neg":
        return -a
    if a.descriptor != b.descriptor:
        raise DescriptorMismatch(f"{a.descriptor} vs {b.descriptor}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def pow_(a, e):
    return a ** e


def frobenius_power(a, e):
    """a^(p^e) for a wrapped element."""
    K = a.descriptor
    return FieldElement(K, K.frobenius(a.raw, e))


def subfield_test(a, ell):
    """True iff ``a`` lies in the subfield F_{p^ell}."""
    K = a.descriptor
    if ell <= 0 or K.degree % ell:
        raise NotADivisor(f"{ell} does not divide {K.degree}")
    return K.frobenius(a.raw, ell) == a.raw


def in_subfield(K, raw, ell):
    return K.frobenius(raw, ell) == raw


def half_conjugate(K, raw):
    """The non-trivial automorphism of F_{p^d} over F_{p^(d/2)}."""
    d = K.degree
    if d % 2:
        raise NotADivisor("odd degree has no half subfield")
    return K.frobenius(raw, d // 2)


def conjugation_gamma(K):
    """gamma with conj(gamma) = -gamma, so every element is a + gamma*b
    with a, b in the half field.  For a binomial modulus this is t itself."""
    d = K.degree
    if d % 2:
        raise NotADivisor("odd degree has no half subfield")
    t = K.generator_t()
    if half_conjugate(K, t) == K.neg(t):
        return t
    for n in range(1, K.order):
        w = K.from_index(n)
        g = K.sub(w, half_conjugate(K, w))
        if g != K.zero:
            return g
    raise SearchExhausted("no conjugation generator")


def embedding(src, dst):
    """A field homomorphism src -> dst on raw values (src.degree | dst.degree).

    Prime fields embed canonically; otherwise t is sent to the smallest root
    of the source modulus in ``dst``.
    """
    if src.p != dst.p or dst.degree % src.degree:
        raise NotADivisor(f"cannot embed {src} into {dst}")
    if src == dst:
        return lambda a: a
    if src.degree == 1:
        return dst.from_int
    rts = poly.roots(dst, [dst.from_int(c) for c in src.modulus])
    alpha = rts[0]
    powers = [dst.one]
    for _ in range(src.degree - 1):
        powers.append(dst.mul(powers[-1], alpha))

    def emb(a):
        acc = dst.zero
        for c, pw in zip(a, powers):
            if c:
                acc = dst.add(acc, dst.mul(dst.from_int(c), pw))
        return acc

    return emb


def _trim_int(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul_int(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return [c % p for c in out]


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))
