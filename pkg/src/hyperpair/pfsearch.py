"""Small-field search for pairing-friendly genus-2 curves y^2 = F(x).

Point counts for a whole batch of quintics are computed at once: the
powers x^0..x^5 of every element of F_p and F_{p^2} are tabulated, each
curve's F(x) is a matrix product, and the quadratic character is a table
lookup.
"""
import csv
import io
import json
import math
import random
from dataclasses import dataclass

import numpy as np

from .curve import CharPoly, CurveParams, charpoly_from_counts, classify
from .curve import _all_elements, _codes, _vmul
from .errors import FactorizationBudget, NotCoprime
from .field import build_extension, is_probable_prime

TRIAL_BUDGET = 10 ** 6
RHO_BUDGET = 10 ** 4


def embedding_degree(q, r):
    """Multiplicative order of q modulo r."""
    if math.gcd(q, r) != 1:
        raise NotCoprime(f"gcd({q}, {r}) != 1")
    k, x = 1, q % r
    while x != 1:
        x = x * q % r
        k += 1
    return k


def rho_value(g, q, r):
    return g * math.log(q) / math.log(r)


def minimal_embedding_field(p, m, r):
    """Degree over F_p of the smallest field containing the r-th roots of unity."""
    return embedding_degree(p, r)


def recommended_k(subgroup_bits, extfield_bits, rho, g):
    """Embedding degree balancing an r-bit subgroup with a q^k-bit field."""
    return (extfield_bits / subgroup_bits) * (g / rho)


# ---------------------------------------------------------------------------
# factoring

def factor(n, trial_budget=TRIAL_BUDGET, rho_budget=RHO_BUDGET):
    """Prime factorization as a sorted list (with repeats)."""
    if n < 1:
        raise ValueError("factor needs a positive integer")
    out = []
    d, steps = 2, 0
    while d * d <= n and steps < trial_budget:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
        steps += 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < d * d or is_probable_prime(m):
            out.append(m)
            continue
        f = _pollard_rho(m, rho_budget)
        if f is None:
            raise FactorizationBudget(f"could not split {m}")
        stack += [f, m // f]
    return sorted(out)


def _pollard_rho(n, budget):
    if n % 2 == 0:
        return 2
    for c in range(1, 20):
        x = y = 2
        d = 1
        steps = 0
        while d == 1 and steps < budget:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            steps += 1
        if 1 < d < n:
            return d
    return None


# ---------------------------------------------------------------------------
# batched point counting

class _Counter:
    """Tabulated powers of all elements of F_p and F_{p^2}."""

    def __init__(self, p):
        self.p = p
        self.fields = []
        for d in (1, 2):
            L = build_extension(p, d)
            xs = _all_elements(L)
            pw = [np.zeros_like(xs)]
            pw[0][:, 0] = 1
            for _ in range(5):
                pw.append(_vmul(L, pw[-1], xs))
            sq = np.zeros(L.order, dtype=bool)
            sq[_codes(L, _vmul(L, xs, xs))] = True
            weights = p ** np.arange(d, dtype=np.int64)
            self.fields.append((L, np.stack(pw), sq, weights))

    def counts(self, Fs):
        """N_1, N_2 for each monic quintic in the (B, 6) array ``Fs``."""
        p = self.p
        out = []
        for L, pw, sq, weights in self.fields:
            # (B, 6) x (6, Q, d) -> (B, Q, d)
            vals = np.tensordot(Fs, pw, axes=(1, 0)) % p
            codes = vals @ weights
            per_x = np.where(codes == 0, 1, np.where(sq[codes], 2, 0))
            out.append(1 + per_x.sum(axis=1))
        return out[0], out[1]


def squarefree_mask(Fs, p):
    """Rows of ``Fs`` whose polynomial has no repeated root (gcd(F, F') = 1)."""
    from .field import FieldDescriptor
    from . import poly
    K = FieldDescriptor(p)
    keep = []
    for row in Fs:
        f = poly.trim(K, [int(c) for c in row])
        keep.append(len(poly.gcd(K, f, poly.derivative(K, f))) == 1)
    return np.array(keep, dtype=bool)


def canonical_quintics(p, dedupe=True):
    """Monic quintics over F_p, one per class under x -> a^2 x + b
    (with y rescaled) when ``dedupe`` is set."""
    if not dedupe:
        for idx in range(p ** 5):
            coeffs = []
            for _ in range(5):
                idx, c = divmod(idx, p)
                coeffs.append(c)
            yield tuple(coeffs) + (1,)
        return
    shift = p != 5
    squares = sorted({pow(a, 2, p) for a in range(1, p)})
    n_free = 4 if shift else 5
    for idx in range(p ** n_free):
        coeffs = []
        for _ in range(n_free):
            idx, c = divmod(idx, p)
            coeffs.append(c)
        F = tuple(coeffs) + ((0,) if shift else ()) + (1,)
        # a_i -> a_i * lam^(i - 5) for lam a square keeps the curve's class
        orbit = []
        for lam in squares:
            inv = pow(lam, -1, p)
            orbit.append(tuple(c * pow(inv, 5 - i, p) % p for i, c in enumerate(F)))
        if F == min(orbit):
            yield F


@dataclass
class SearchConfig:
    p_min: int = 5
    p_max: int = 13
    genus: int = 2
    max_k: int = 12
    min_r_bits: int = 2
    sample_all: bool = True
    samples: int = 1000
    seed: int = 0
    dedupe: bool = True
    batch: int = 2048

    def __post_init__(self):
        if self.p_min < 5:
            raise ValueError("p_min must be at least 5")
        if self.max_k < 1:
            raise ValueError("max_k must be positive")
        if self.genus != 2:
            raise ValueError("search is genus 2 only")


@dataclass
class CurveRecord:
    curve: CurveParams
    cp: CharPoly
    jac_order: int
    r: int
    k: int
    rho: float
    cls: str
    mef_degree: int

    def to_dict(self):
        return {
            "p": str(self.curve.p),
            "F": [str(c) for c in self.curve.F],
            "charpoly": [str(c) for c in self.cp.coeffs],
            "jac_order": str(self.jac_order),
            "r": str(self.r),
            "k": self.k,
            "rho": self.rho,
            "class": self.cls,
            "mef_degree": self.mef_degree,
        }


def _primes(lo, hi):
    return [n for n in range(max(lo, 5), hi + 1) if is_probable_prime(n)]


def _curves_for(p, config, rng):
    if config.sample_all:
        return list(canonical_quintics(p, config.dedupe))
    return [tuple(rng.randrange(p) for _ in range(5)) + (1,) for _ in range(config.samples)]


def search(config, notices=None):
    """Yield CurveRecords in a deterministic order."""
    rng = random.Random(config.seed)
    for p in _primes(config.p_min, config.p_max):
        counter = _Counter(p)
        curves = _curves_for(p, config, rng)
        for start in range(0, len(curves), config.batch):
            Fs = np.array(curves[start:start + config.batch], dtype=np.int64)
            Fs = Fs[squarefree_mask(Fs, p)]
            if not len(Fs):
                continue
            N1, N2 = counter.counts(Fs)
            for F, n1, n2 in zip(Fs, N1, N2):
                rec = _record(p, F, int(n1), int(n2), config, notices)
                if rec is not None:
                    yield rec


def _record(p, F, n1, n2, config, notices):
    cp = charpoly_from_counts([n1, n2], p, 2)
    order = cp(1)
    try:
        primes = factor(order)
    except FactorizationBudget as exc:
        if notices is not None:
            notices.append(f"p={p} F={list(F)}: {exc}")
        return None
    cands = [r for r in primes if r != p and r.bit_length() >= config.min_r_bits]
    if not cands:
        return None
    r = max(cands)
    k = embedding_degree(p, r)
    if k > config.max_k:
        return None
    curve = CurveParams.from_ints(p, [int(c) for c in F], genus=2)
    return CurveRecord(curve, cp, order, r, k, rho_value(2, p, r), classify(cp, p),
                       minimal_embedding_field(p, 1, r))


def write_records(records, fmt="json"):
    """Serialize records as NDJSON or CSV text."""
    records = list(records)
    if fmt == "json":
        return "".join(json.dumps(r.to_dict()) + "\n" for r in records)
    buf = io.StringIO()
    fields = ["p", "F", "charpoly", "jac_order", "r", "k", "rho", "class", "mef_degree"]
    w = csv.DictWriter(buf, fieldnames=fields)
    w.writeheader()
    for r in records:
        row = r.to_dict()
        row["F"] = " ".join(row["F"])
        row["charpoly"] = " ".join(row["charpoly"])
        w.writerow(row)
    return buf.getvalue()
