"""Isolating primes, Kronecker-style weight maps, and the three-variable
projection that preserves low-degree factors.

A scheme carries two weight vectors: w drives the substitution
z_i -> y^{w_i} t + y^{w'_i} and w' alone determines the t=0 slice used for
inversion, so both must map the monomials of degree <= delta injectively.
The prime p certifies the reduction step of the weight construction.

Scheme construction comes in three flavors, tried in a deterministic ladder
by the factoring engine:

* compact: greedily chosen minimal weights (smallest dense grids; default),
* reduced powers: w_i = (delta+1)^(i-1) mod p for the smallest prime p that
  keeps the map injective, scanning upward (optionally from a degree bound),
* split: one instance over 2n formal variables whose weight vector is cut
  into (w, w'), sized by a capped degree bound for the certifying
  polynomial; exact sizing is unreachable at desk scale, so preservation is
  validated empirically by the trivariate factorizer either way.
"""

import json
import math
from dataclasses import dataclass
from itertools import count

from .rational import Q, ONE
from .sparse import SparsePoly
from .dense import DensePoly3
from .errors import CapError, NotInCodomain, PolyError


def monomials_up_to(n, delta):
    """Exponent tuples of total degree <= delta in n variables."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    rec([], n, delta)
    return out


def weights_injective(weights, delta, modulus=None):
    """Whether e -> sum(e_i w_i) (mod modulus) separates M_delta."""
    monos = monomials_up_to(len(weights), delta)
    seen = set()
    for e in monos:
        v = sum(ei * wi for ei, wi in zip(e, weights))
        if modulus is not None:
            v %= modulus
        if v in seen:
            return False
        seen.add(v)
    return True


@dataclass(frozen=True)
class IsolationScheme:
    n: int
    delta: int
    p: int
    w: tuple
    w_prime: tuple

    def __post_init__(self):
        if not weights_injective(self.w, self.delta):
            raise PolyError("w is not injective on the bounded monomials")
        if not weights_injective(self.w_prime, self.delta):
            raise PolyError("w' is not injective on the bounded monomials")

    def monomial_table(self, primary=True):
        """Invertible map sum(e*w) -> e over M_delta (w' when primary=False)."""
        weights = self.w if primary else self.w_prime
        table = {}
        for e in monomials_up_to(self.n, self.delta):
            table[sum(ei * wi for ei, wi in zip(e, weights))] = e
        return table

    def to_json(self):
        return json.dumps(
            {
                "n": self.n,
                "delta": self.delta,
                "p": self.p,
                "w": list(self.w),
                "w_prime": list(self.w_prime),
            }
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(
            data["n"],
            data["delta"],
            data["p"],
            tuple(data["w"]),
            tuple(data["w_prime"]),
        )


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def find_isolating_prime(n, delta, extra_capacity=1):
    """Smallest prime p making w_i = (delta+1)^(i-1) mod p injective on the
    degree-<=delta monomials, scanning upward; extra_capacity > 1 starts the
    scan there so all bounded-degree factors of a degree-d polynomial stay
    separated simultaneously."""
    if n < 1 or delta < 1:
        raise ValueError("need n >= 1 and delta >= 1")
    start = max(2, extra_capacity)
    for p in count(start):
        if not _is_prime(p):
            continue
        w = tuple(pow(delta + 1, i, p) for i in range(n))
        if weights_injective(w, delta, modulus=p):
            if n == 1:
                wp = (w[0] + 1,)
            else:
                wp = tuple(reversed(w))
            return IsolationScheme(n, delta, p, w, wp)
    raise AssertionError("unreachable: a valid prime always exists")


def compact_scheme(n, delta):
    """Greedy minimal weight vector injective on M_delta, paired with its
    reversal; keeps dense-grid degrees as small as the separation floor
    allows."""
    w = []
    for _ in range(n):
        c = (w[-1] + 1) if w else 1
        while not weights_injective(w + [c], delta):
            c += 1
        w.append(c)
    w = tuple(w)
    wp = (w[0] + 1,) if n == 1 else tuple(reversed(w))
    p = w[-1] * delta + 1
    while not _is_prime(p):
        p += 1
    return IsolationScheme(n, delta, p, w, wp)


def offset_scheme(n, delta):
    """Greedy weights with an offset copy w'_i = w_i + (delta*max(w) + 1)."""
    base = compact_scheme(n, delta)
    c = delta * max(base.w) + 1
    wp = tuple(wi + c for wi in base.w)
    return IsolationScheme(n, delta, base.p, base.w, wp)


def split_scheme(n, delta, extra_capacity=1, g_degree_cap=2):
    """One isolation instance over 2n formal variables, weight vector split
    into (w, w'); the degree bound for the hidden certifying polynomial is
    min(2*delta^5, g_degree_cap)."""
    g_degree = min(2 * delta**5, max(1, g_degree_cap))
    big = find_isolating_prime(2 * n, g_degree, extra_capacity)
    w = big.w[:n]
    wp = big.w[n:]
    if not (weights_injective(w, delta) and weights_injective(wp, delta)):
        raise CapError("split_scheme_injectivity", g_degree, g_degree_cap)
    return IsolationScheme(n, delta, big.p, w, wp)


def scheme_ladder(n, delta, extra_capacity=1, g_degree_cap=2):
    """Deterministic sequence of schemes of increasing strength; consumers
    retry down the ladder when a projection turns out to lose a factor."""
    schemes = [compact_scheme(n, delta)]
    reduced = find_isolating_prime(n, delta, extra_capacity)
    if reduced not in schemes:
        schemes.append(reduced)
    off = offset_scheme(n, delta)
    if off not in schemes:
        schemes.append(off)
    try:
        split = split_scheme(n, delta, extra_capacity, g_degree_cap)
        if split not in schemes:
            schemes.append(split)
    except (CapError, PolyError):
        pass
    return schemes


# ---------------------------------------------------------------------------
# the maps


def apply_phi(f, scheme, x_vars=0):
    """Substitute z_i -> y^{w_i}; the first x_vars variables pass through."""
    if f.n != x_vars + scheme.n:
        raise PolyError("variable count does not match the scheme")
    m = x_vars + 1
    terms = {}
    for exps, c in f.terms.items():
        head = exps[:x_vars]
        yexp = sum(e * wi for e, wi in zip(exps[x_vars:], scheme.w))
        key = head + (yexp,)
        acc = terms.get(key)
        acc = c if acc is None else acc + c
        if acc:
            terms[key] = acc
        else:
            terms.pop(key, None)
    return SparsePoly(m, terms)


def recover_from_phi(h, scheme, delta, x_vars=0):
    """Unique degree-<=delta preimage under apply_phi; NotInCodomain on a
    y-exponent outside the scheme's monomial table."""
    if h.n != x_vars + 1:
        raise PolyError("image must have exactly one y variable")
    table = scheme.monomial_table(primary=True)
    terms = {}
    for exps, c in h.terms.items():
        yexp = exps[x_vars]
        e = table.get(yexp)
        if e is None:
            raise NotInCodomain("y-exponent %d not in the bounded table" % yexp)
        terms[exps[:x_vars] + e] = c
    return SparsePoly(x_vars + scheme.n, terms)


def psi_map(f, scheme, max_cells=None):
    """g(x, z) -> g(x, y^{w_i} t + y^{w'_i}) as a dense (x, y, t) grid."""
    if f.n != scheme.n + 1:
        raise PolyError("expected variables (x, z_1..z_n)")
    acc = {}
    for exps, c in f.terms.items():
        k = exps[0]
        part = {(0, 0): ONE}  # (t-exp, y-exp) -> coefficient
        for e, wi, wpi in zip(exps[1:], scheme.w, scheme.w_prime):
            if not e:
                continue
            expanded = {}
            for j in range(e + 1):
                binom = math.comb(e, j)
                ty = (j, j * wi + (e - j) * wpi)
                expanded[ty] = Q(binom)
            new = {}
            for (t1, y1), c1 in part.items():
                for (t2, y2), c2 in expanded.items():
                    key = (t1 + t2, y1 + y2)
                    prod = c1 * c2
                    acc2 = new.get(key)
                    new[key] = prod if acc2 is None else acc2 + prod
            part = new
        for (tj, yj), cj in part.items():
            key = (k, yj, tj)
            prev = acc.get(key)
            val = c * cj if prev is None else prev + c * cj
            if val:
                acc[key] = val
            else:
                acc.pop(key, None)
    dx = max((k[0] for k in acc), default=0)
    dy = max((k[1] for k in acc), default=0)
    dt = max((k[2] for k in acc), default=0)
    grid = DensePoly3.zeros((dx, dy, dt), max_cells=max_cells)
    for (i, j, k), c in acc.items():
        grid.coeffs[i][j][k] = c
    return grid


def psi_invert(h, scheme, delta):
    """Invert psi_map on a monic-in-x grid with deg_x <= delta.

    Sets t = 0, reads each x^k y^j monomial back through the w' table, and
    verifies the candidate maps exactly onto h; anything else raises
    NotInCodomain.
    """
    degs = h.true_degrees()
    if degs is None:
        raise NotInCodomain("zero grid")
    dx = degs[0]
    if dx > delta:
        raise NotInCodomain("x-degree exceeds the bound")
    table = scheme.monomial_table(primary=False)
    terms = {}
    for i in range(dx + 1):
        for j, row in enumerate(h.coeffs[i]):
            c = row[0]
            if not c:
                continue
            e = table.get(j)
            if e is None:
                raise NotInCodomain("slice monomial y^%d has no preimage" % j)
            terms[(i,) + e] = c
    candidate = SparsePoly(scheme.n + 1, terms)
    if psi_map(candidate, scheme) != h:
        raise NotInCodomain("verification against the full image failed")
    return candidate
