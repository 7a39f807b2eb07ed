"""Hyperelliptic curves y^2 + H(x) y = F(x) in odd characteristic.

Point counting is naive but vectorized: every x in F_{q^i} is evaluated at
once with numpy, and the number of y over each x is read off the quadratic
character of H^2 + 4F.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import poly
from .errors import (DegreeOutOfRange, NotMonic, PointNotOnCurve, SingularCurve,
                     TooLarge)
from .field import FieldDescriptor, FieldElement, build_extension, embedding

COUNT_LIMIT = 1 << 24
# exhaustive singularity scan over F_{q^2} up to this size; gcd beyond
SCAN_LIMIT = 1 << 22


@dataclass(frozen=True)
class CurveParams:
    """``H`` and ``F`` are raw coefficient lists (low-to-high) over ``base``."""
    genus: int
    H: tuple
    F: tuple
    base: FieldDescriptor

    def __post_init__(self):
        object.__setattr__(self, "H", tuple(poly.trim(self.base, self.H)))
        object.__setattr__(self, "F", tuple(poly.trim(self.base, self.F)))

    @property
    def q(self):
        return self.base.order

    @property
    def p(self):
        return self.base.p

    @classmethod
    def from_ints(cls, p, F, H=(), genus=None):
        """Prime-field convenience constructor."""
        K = FieldDescriptor(p)
        F = [c % p for c in F]
        if genus is None:
            genus = (len(poly.trim(K, F)) - 2) // 2
        return cls(genus, tuple(c % p for c in H), tuple(F), K)

    def embedded(self, K):
        """(H, F) mapped into the field ``K`` which contains the base."""
        emb = embedding(self.base, K)
        return [emb(c) for c in self.H], [emb(c) for c in self.F]


def validate_curve(params):
    g, K = params.genus, params.base
    if g not in (1, 2):
        raise DegreeOutOfRange(f"genus {g} not supported")
    if K.p < 5:
        raise DegreeOutOfRange("characteristic must be at least 5")
    F, H = list(params.F), list(params.H)
    if poly.deg(F) != 2 * g + 1:
        raise DegreeOutOfRange(f"deg F = {poly.deg(F)}, expected {2 * g + 1}")
    if F[-1] != K.one:
        raise NotMonic("F must be monic")
    if poly.deg(H) > g:
        raise DegreeOutOfRange(f"deg H = {poly.deg(H)} exceeds genus")
    # In odd characteristic the curve is singular iff G = H^2 + 4F has a
    # repeated root.  A repeated root of a quintic has degree <= 2 over the
    # base, so scanning F_{q^2} is exhaustive.
    G = _discriminant_poly(params)
    if K.order ** 2 <= SCAN_LIMIT:
        L = build_extension(K.p, 2 * K.degree)
        emb = embedding(K, L)
        Gl = [emb(c) for c in G]
        vals = _eval_all(L, Gl)
        dvals = _eval_all(L, poly.derivative(L, Gl))
        if np.any(np.all(vals == 0, axis=1) & np.all(dvals == 0, axis=1)):
            raise SingularCurve("H^2 + 4F has a repeated root")
    elif len(poly.gcd(K, G, poly.derivative(K, G))) > 1:
        raise SingularCurve("H^2 + 4F has a repeated root")


def _discriminant_poly(params):
    K = params.base
    H, F = list(params.H), list(params.F)
    return poly.add(K, poly.mul(K, H, H), poly.scale(K, F, K.from_int(4)))


def on_curve(params, x, y):
    """``x``, ``y`` are FieldElements over a field containing the base."""
    K = x.descriptor
    H, F = params.embedded(K)
    lhs = K.add(K.mul(y.raw, y.raw), K.mul(poly.evaluate(K, H, x.raw), y.raw))
    return lhs == poly.evaluate(K, F, x.raw)


def involution(params, P):
    x, y = P
    if not on_curve(params, x, y):
        raise PointNotOnCurve(f"{P} is not on the curve")
    K = x.descriptor
    H, _ = params.embedded(K)
    return x, FieldElement(K, K.sub(K.neg(y.raw), poly.evaluate(K, H, x.raw)))


# ---------------------------------------------------------------------------
# vectorized evaluation over a whole field

def _all_elements(L):
    """Array (Q, d) of coefficient vectors, row n encoding element n."""
    Q, d, p = L.order, L.degree, L.p
    idx = np.arange(Q, dtype=np.int64)
    out = np.empty((Q, d), dtype=np.int64)
    for j in range(d):
        out[:, j] = idx % p
        idx //= p
    return out


def _vmul(L, a, b):
    p, d = L.p, L.degree
    if d == 1:
        return a * b % p
    n = a.shape[0]
    prod = np.zeros((n, 2 * d - 1), dtype=np.int64)
    for i in range(d):
        prod[:, i:i + d] = (prod[:, i:i + d] + a[:, i:i + 1] * b) % p
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[:, k]
        for j, rj in L._red:
            prod[:, k - d + j] = (prod[:, k - d + j] + c * rj) % p
    return prod[:, :d]


def _eval_all(L, f, xs=None):
    """Evaluate ``f`` (raw coefficients over L) at every element of L."""
    if xs is None:
        xs = _all_elements(L)
    p, d = L.p, L.degree
    acc = np.zeros((xs.shape[0], d), dtype=np.int64)
    for c in reversed(f):
        cv = np.array(L.coeffs(c), dtype=np.int64)
        if d == 1:
            acc = (acc * xs + cv) % p
        else:
            acc = (_vmul(L, acc, xs) + cv) % p
    return acc


def _codes(L, arr):
    weights = L.p ** np.arange(L.degree, dtype=np.int64)
    return arr @ weights


def count_points(params, i=1):
    """Number of points of the curve over F_{q^i}, including P_inf."""
    K = params.base
    Q = K.order ** i
    if Q > COUNT_LIMIT:
        raise TooLarge(f"q^i = {Q} exceeds enumeration limit")
    L = K if i == 1 else build_extension(K.p, K.degree * i)
    emb = embedding(K, L)
    G = [emb(c) for c in _discriminant_poly(params)]
    xs = _all_elements(L)
    sq = np.zeros(Q, dtype=bool)
    sq[_codes(L, _vmul(L, xs, xs))] = True
    codes = _codes(L, _eval_all(L, G, xs))
    # 1 + chi(G(x)) points above each x
    per_x = np.where(codes == 0, 1, np.where(sq[codes], 2, 0))
    return 1 + int(per_x.sum())


# ---------------------------------------------------------------------------
# characteristic polynomial of Frobenius

class CharPoly:
    """Integer polynomial P(x) of degree 2g, coefficients low-to-high."""

    def __init__(self, coeffs, q, genus):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.q = int(q)
        self.genus = int(genus)
        g = self.genus
        if len(self.coeffs) != 2 * g + 1 or self.coeffs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic of degree 2g")
        for i in range(g + 1):
            # coefficient of x^i is q^(g-i) times that of x^(2g-i)
            if self.coeffs[i] != q ** (g - i) * self.coeffs[2 * g - i]:
                raise ValueError("functional equation violated")

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, CharPoly) and (self.coeffs, self.q) == (other.coeffs, other.q)

    def __hash__(self):
        return hash((self.coeffs, self.q))

    def __repr__(self):
        return f"CharPoly({list(self.coeffs)}, q={self.q})"

    def power_sums(self, n):
        """s_1..s_n of the roots of P (Newton's identities)."""
        g2 = 2 * self.genus
        # e_i with P = sum (-1)^i e_i x^(2g-i)
        e = [(-1) ** i * self.coeffs[g2 - i] for i in range(g2 + 1)]
        s = [g2]
        for m in range(1, n + 1):
            acc = (-1) ** (m - 1) * m * e[m] if m <= g2 else 0
            for i in range(1, min(m, g2 + 1)):
                acc += (-1) ** (i - 1) * e[i] * s[m - i]
            s.append(acc)
        return s[1:]


def charpoly_from_counts(counts, q, genus):
    """Build P(x) from N_1..N_g."""
    g = genus
    s = [q ** i + 1 - n for i, n in enumerate(counts, start=1)]
    e = _elementary_from_power_sums(s, g)
    # functional equation fills e_{g+1..2g}
    e_full = e + [q ** (i - g) * e[2 * g - i] for i in range(g + 1, 2 * g + 1)]
    coeffs = [(-1) ** i * e_full[i] for i in range(2 * g, -1, -1)]
    return CharPoly(coeffs, q, g)


def _elementary_from_power_sums(s, n):
    e = [1]
    for m in range(1, n + 1):
        acc = 0
        for i in range(1, m + 1):
            acc += (-1) ** (i - 1) * e[m - i] * s[i - 1]
        if acc % m:
            raise ValueError("power sums are not those of an integer polynomial")
        e.append(acc // m)
    return e


def frobenius_charpoly(params):
    counts = [count_points(params, i) for i in range(1, params.genus + 1)]
    return charpoly_from_counts(counts, params.q, params.genus)


def jacobian_order(cp, k=1):
    """#Jac(F_{q^k}) = prod (1 - alpha_i^k), computed exactly."""
    g2 = 2 * cp.genus
    if k == 1:
        return cp(1)
    s = cp.power_sums(g2 * k)
    sk = [s[j * k - 1] for j in range(1, g2 + 1)]
    e = _elementary_from_power_sums(sk, g2)
    return sum((-1) ** i * e[i] for i in range(g2 + 1))


def _vp(n, p):
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def newton_slopes(cp, p):
    """Slopes of the p-adic Newton polygon, normalized so they lie in [0, 1].

    Each slope is repeated by the length of its segment; the list is sorted.
    """
    q = cp.q
    m = round(np.log(q) / np.log(p))
    while p ** m < q:
        m += 1
    pts = [(i, _vp(c, p)) for i, c in enumerate(cp.coeffs) if c != 0]
    # lower convex hull, left to right
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes += [Fraction(y1 - y2, (x2 - x1) * m)] * (x2 - x1)
    return sorted(slopes)


def classify(cp, p):
    slopes = newton_slopes(cp, p)
    g = cp.genus
    if all(s == Fraction(1, 2) for s in slopes):
        return "supersingular"
    if slopes.count(0) == g and slopes.count(1) == g:
        return "ordinary"
    return "other"
