"""Divisibility testing, both by exact division and by the reduction of
divisibility to a single polynomial identity.

The identity route builds

    h~(z) = sum_{beta in S} f(beta z + alpha) sum_{i<=d} c_{beta,i} g(beta z + alpha)^i

with S = {1..2d^2+1} and g(alpha) != 0, such that g | f iff
f(z+alpha) = g(z+alpha) h~(z).  The constants come from truncating the
power series f/g at total degree d: with a_i = (-1)^i binom(d+1, i+1) / g(alpha)^(i+1),
the combination g * sum_i a_i g^i telescopes to 1 - u^(d+1) for
u = 1 - g(z+alpha)/g(alpha), so multiplying f(z+alpha) by sum a_i g^i and
discarding every component of degree > d yields the exact quotient whenever
it exists.  The degree truncation is a linear combination of the scaled
copies f(beta z + alpha), with Lagrange-dual weights lambda_beta; hence
c_{beta,i} = lambda_beta * a_i.
"""

import math
from dataclasses import dataclass

from .rational import Q, ONE, ZERO
from .sparse import SparsePoly
from .errors import ZeroDivisorError
from .pit import find_nonzero_point


@dataclass(frozen=True)
class WitnessIdentity:
    alpha: tuple
    h_tilde: SparsePoly
    holds: bool
    constants: dict  # (beta, i) -> rational


def divides_exact(f, g):
    """(divides, quotient) by exact multivariate division."""
    if g.is_zero():
        raise ZeroDivisorError("zero divisor")
    q = f.exact_divide(g)
    return (q is not None), q


def truncation_weights(d, D):
    """lambda_beta over beta = 1..D+1 with sum_beta lambda_beta q(beta)
    = sum of q's coefficients of degree <= d, for every q of degree <= D."""
    betas = list(range(1, D + 2))
    master = [ONE]
    for b in betas:
        master = _uq_mul_linear(master, b)
    weights = {}
    for b in betas:
        num = _uq_deflate(master, b)
        den = ZERO
        acc = ONE
        # num evaluated at b gives prod_{b' != b} (b - b')
        den = _uq_eval(num, Q(b))
        inv = ONE / den
        weights[b] = sum(num[k] for k in range(0, min(d, len(num) - 1) + 1)) * inv
    return weights


def _uq_mul_linear(poly, root):
    # poly * (X - root)
    out = [ZERO] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = out[i + 1] + c
        out[i] = out[i] - c * root
    return out


def _uq_deflate(poly, root):
    # poly / (X - root), exact
    n = len(poly) - 1
    out = [ZERO] * n
    acc = ZERO
    for i in range(n - 1, -1, -1):
        acc = poly[i + 1] + acc * root
        out[i] = acc
    return out


def _uq_eval(poly, x):
    acc = ZERO
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def divisibility_witness(f, g, degree_bound=None):
    """The full witness record for the identity-based divisibility test."""
    if g.is_zero():
        raise ZeroDivisorError("zero divisor")
    n = f.n
    d = degree_bound
    if d is None:
        d = max(f.degree() or 0, g.degree() or 0, 1)
    alpha = find_nonzero_point(g, n, g.degree() or 0, mode="whitebox")
    g_alpha = g.eval_point(alpha)
    assert g_alpha != 0
    D = 2 * d * d
    lam = truncation_weights(d, D)
    a = [
        Q((-1) ** i) * math.comb(d + 1, i + 1) / g_alpha ** (i + 1)
        for i in range(d + 1)
    ]
    constants = {}
    h_tilde = SparsePoly.zero(n)
    for beta in range(1, D + 2):
        lb = lam[beta]
        if not lb:
            for i in range(d + 1):
                constants[(beta, i)] = ZERO
            continue
        f_beta = _scale_shift(f, beta, alpha)
        g_beta = _scale_shift(g, beta, alpha)
        inner = SparsePoly.zero(n)
        power = SparsePoly.const(n, 1)
        for i in range(d + 1):
            c = lb * a[i]
            constants[(beta, i)] = c
            if c:
                inner = inner + power.scale(c)
            if i < d:
                power = power * g_beta
        h_tilde = h_tilde + f_beta * inner
    lhs = f.shift(alpha)
    rhs = g.shift(alpha) * h_tilde
    holds = (lhs - rhs).is_zero()
    return WitnessIdentity(tuple(alpha), h_tilde, holds, constants)


def _scale_shift(f, beta, alpha):
    """f(beta * z + alpha)."""
    assignment = [
        SparsePoly.variable(f.n, i).scale(beta) + SparsePoly.const(f.n, alpha[i - 1])
        for i in range(1, f.n + 1)
    ]
    return f.substitute(assignment, m=f.n)


def quotient_from_witness(witness):
    """h~(z - alpha): equals the exact quotient when the identity holds."""
    neg = [-a for a in witness.alpha]
    return witness.h_tilde.shift(neg)


def truncated_series_quotient(f, g, alpha, d):
    """Brute-force oracle: degree-<=d truncation of f(z+alpha)/g(z+alpha)
    computed by term-by-term power series division."""
    F = f.shift(alpha)
    G = g.shift(alpha)
    g0 = G.constant_value()
    assert g0 != 0
    u = SparsePoly.const(f.n, 1) - G.scale(ONE / g0)  # no constant term
    inv = SparsePoly.zero(f.n)
    upow = SparsePoly.const(f.n, 1)
    for _ in range(d + 1):
        inv = inv + upow
        upow = _truncate(upow * u, d)
    inv = _truncate(inv, d).scale(ONE / g0)
    return _truncate(F * inv, d)


def _truncate(f, d):
    return SparsePoly(f.n, {e: c for e, c in f.terms.items() if sum(e) <= d})


def constant_degree_divides(f, g, use_witness=False):
    """Divisibility of f by a constant-degree g; exact division by default,
    the witness identity behind a flag."""
    if use_witness:
        return divisibility_witness(f, g).holds
    return divides_exact(f, g)[0]
