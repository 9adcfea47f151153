"""Deterministic identity testing, nonzero-point search, and sparse
interpolation for the class of s-sparse n-variate degree-d polynomials.

The interpolation scheme is deterministic Prony (prime-power evaluation
points, a Berlekamp-Massey recurrence over Q, integer root extraction of the
term locator, then a transposed Vandermonde solve).  It fulfils the same
evaluate-then-solve contract as the Klivans-Spielman construction and reuses
the univariate factorizer for the locator roots.
"""

from dataclasses import dataclass
from itertools import product

from .rational import Q, ONE, ZERO
from .sparse import SparsePoly
from .errors import CapError, InterpolationFailure, ZeroPolynomialError


@dataclass(frozen=True)
class HittingSet:
    points: tuple
    n: int
    d: int
    descriptor: str


@dataclass(frozen=True)
class EvaluationPlan:
    points: tuple
    s: int
    n: int
    d: int

    def to_json(self):
        import json

        return json.dumps([[str(c) for c in point] for point in self.points])


def trivial_hitting_set(n, d, max_size=None):
    """The grid {1..d+1}^n; exponential in n, usable for constant n."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    size = (d + 1) ** n
    if max_size is not None and size > max_size:
        raise CapError("hitting_set_size", size, max_size)
    points = tuple(
        tuple(Q(v) for v in combo) for combo in product(range(1, d + 2), repeat=n)
    )
    return HittingSet(points, n, d, "all degree-%d in %d vars" % (d, n))


class ProbeCounter:
    """Tallies identity-test probes for the self-reduction budget assertion."""

    def __init__(self):
        self.count = 0


def find_nonzero_point(f, n, d, mode="whitebox", hitting_set=None, counter=None):
    """A point a with all coordinates nonzero and f(a) != 0.

    Whitebox mode takes a SparsePoly and assigns variables one at a time,
    scanning candidate values 1..d+1 (at most n*(d+1) probes).  Blackbox mode
    takes an evaluation callable plus a hitting set for f's class; a hit with
    zero coordinates is repaired by scanning the diagonal shifts
    a + (M+1+j), j = 0..d, with M the magnitude of the smallest coordinate.
    """
    if mode == "whitebox":
        if not isinstance(f, SparsePoly):
            raise TypeError("whitebox mode needs a SparsePoly")
        if f.is_zero():
            raise ZeroPolynomialError("no nonzero point: polynomial is zero")
        current = f
        point = []
        for i in range(1, n + 1):
            if i not in current.var_support():
                point.append(ONE)
                continue
            chosen = None
            for v in range(1, d + 2):
                if counter is not None:
                    counter.count += 1
                candidate = _assign_var(current, i, Q(v))
                if not candidate.is_zero():
                    chosen = (Q(v), candidate)
                    break
            if chosen is None:  # pragma: no cover - impossible for nonzero f
                raise ZeroPolynomialError("self-reduction exhausted d+1 values")
            point.append(chosen[0])
            current = chosen[1]
        return tuple(point)

    if mode == "blackbox":
        if hitting_set is None:
            raise ValueError("blackbox mode needs a hitting set")
        evaluate = f if callable(f) else f.eval_point
        hit = None
        for a in hitting_set.points:
            if counter is not None:
                counter.count += 1
            if evaluate(a):
                hit = a
                break
        if hit is None:
            raise ZeroPolynomialError("no nonzero point: polynomial is zero")
        if all(coord != 0 for coord in hit):
            return tuple(hit)
        m_val = abs(min(hit))
        for j in range(d + 1):
            shift = m_val + 1 + j
            candidate = tuple(c + shift for c in hit)
            if counter is not None:
                counter.count += 1
            if evaluate(candidate):
                return candidate
        raise ZeroPolynomialError("shift search failed on a nonzero polynomial")

    raise ValueError("mode must be whitebox or blackbox")


def _assign_var(f, var, value):
    """Substitute z_var with a constant, keeping the ambient variable count."""
    terms = {}
    i = var - 1
    for exps, c in f.terms.items():
        contrib = c * value ** exps[i] if exps[i] else c
        reduced = exps[:i] + (0,) + exps[i + 1 :]
        acc = terms.get(reduced)
        acc = contrib if acc is None else acc + contrib
        if acc:
            terms[reduced] = acc
        else:
            terms.pop(reduced, None)
    return SparsePoly(f.n, terms)


def sparse_pit(f):
    """True iff f is identically zero (immediate on the canonical table)."""
    return f.is_zero()


_PRIME_CACHE = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def _first_primes(n):
    while len(_PRIME_CACHE) < n:
        c = _PRIME_CACHE[-1] + 2
        while any(c % p == 0 for p in _PRIME_CACHE if p * p <= c):
            c += 2
        _PRIME_CACHE.append(c)
    return _PRIME_CACHE[:n]


def interpolation_plan(s, n, d):
    """2s evaluation points (p_1^i, ..., p_n^i), i = 0..2s-1; plans for larger
    sparsity bounds extend smaller ones."""
    if s < 1:
        raise ValueError("sparsity bound must be >= 1")
    primes = _first_primes(n)
    points = tuple(
        tuple(Q(p**i) for p in primes) for i in range(2 * s)
    )
    return EvaluationPlan(points, s, n, d)


def berlekamp_massey(values):
    """Minimal LFSR coefficients c (monic char poly) for the sequence over Q.

    Returns the connection polynomial as an ascending coefficient list of the
    characteristic polynomial lambda^L - c_1 lambda^(L-1) - ... - c_L.
    """
    c = [ONE]
    b = [ONE]
    L = 0
    m = 1
    bb = ONE
    for i, val in enumerate(values):
        delta = val
        for j in range(1, L + 1):
            delta = delta + c[j] * values[i - j]
        if not delta:
            m += 1
            continue
        t = list(c)
        coef = delta / bb
        while len(c) < len(b) + m:
            c.append(ZERO)
        for j, bj in enumerate(b):
            c[j + m] = c[j + m] - coef * bj
        if 2 * L <= i:
            L = i + 1 - L
            b = t
            bb = delta
            m = 1
        else:
            m += 1
    # connection c(X) = 1 + c1 X + ...; char poly = X^L * c(1/X)
    char = [ZERO] * (L + 1)
    for j in range(min(len(c), L + 1)):
        char[L - j] = c[j]
    return char, L


def _integer_roots(char_coeffs, primes, d):
    """Distinct positive-integer roots of the locator polynomial.

    The roots of an on-promise locator are products of the designated primes
    with exponents <= d, so the search walks the smooth divisors of the
    constant term (rational root theorem); a full univariate factorization is
    the fallback when that walk would blow past its budget.  Returns None
    when the locator does not split into distinct such roots.
    """
    L = len(char_coeffs) - 1
    den = 1
    for c in char_coeffs:
        cd = int(c.denominator)
        den = den * cd // _gcd(den, cd)
    ints = [int(c.numerator) * (den // int(c.denominator)) for c in char_coeffs]
    c0 = ints[0]
    if c0 == 0:
        return None
    smooth = abs(c0)
    caps = []
    for p in primes:
        e = 0
        while smooth % p == 0 and e <= L * d:
            smooth //= p
            e += 1
        caps.append(min(e, d))
    budget = 50_000
    total = 1
    for e in caps:
        total *= e + 1
        if total > budget:
            break
    if total > budget:
        return _integer_roots_by_factoring(char_coeffs)
    roots = []

    def walk(idx, value):
        if idx == len(primes):
            acc = 0
            for c in reversed(ints):
                acc = acc * value + c
            if acc == 0:
                roots.append(value)
            return
        v = value
        for _ in range(caps[idx] + 1):
            walk(idx + 1, v)
            v *= primes[idx]

    walk(0, 1)
    if len(roots) != L:
        return None
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _integer_roots_by_factoring(char_coeffs):
    """Fallback: factor the locator and read off linear roots."""
    from .basefactor import factor_univariate_q

    poly = SparsePoly(1, {(i,): c for i, c in enumerate(char_coeffs) if c})
    roots = []
    for factor, mult in factor_univariate_q(poly).factors:
        if factor.degree() != 1 or mult != 1:
            return None
        a1 = factor.terms.get((1,), ZERO)
        a0 = factor.terms.get((0,), ZERO)
        root = -a0 / a1
        if root.denominator != 1:
            return None
        roots.append(int(root.numerator))
    return sorted(roots)


def _monomial_from_locator(value, primes, d):
    """Greedy factorization of a locator root over the designated primes."""
    if value <= 0:
        return None
    exps = []
    for p in primes:
        e = 0
        while value % p == 0:
            value //= p
            e += 1
            if e > d:
                return None
        exps.append(e)
    if value != 1:
        return None
    return tuple(exps)


def sparse_interpolate(values, s, n, d):
    """Recover the unique polynomial of sparsity <= s and degree <= d from its
    evaluations on interpolation_plan(s, n, d)."""
    values = [Q(v) for v in values]
    if len(values) != 2 * s:
        raise InterpolationFailure("expected exactly 2s evaluation values")
    if all(not v for v in values):
        return SparsePoly.zero(n)
    char, L = berlekamp_massey(values)
    if L > s or L == 0:
        raise InterpolationFailure("recovered sparsity exceeds the bound")
    primes = _first_primes(n)
    roots = _integer_roots(char, primes, d)
    if roots is None:
        raise InterpolationFailure("locator polynomial does not split over Z")
    monomials = []
    for root in roots:
        mono = _monomial_from_locator(root, primes, d)
        if mono is None:
            raise InterpolationFailure(
                "locator root %d is not a bounded prime-power product" % root
            )
        monomials.append((root, mono))
    # transposed Vandermonde: sum_j coeff_j * root_j^i = values[i]
    r = len(monomials)
    mat = [[Q(root) ** i for root, _ in monomials] for i in range(r)]
    rhs = values[:r]
    coeffs = _solve_linear(mat, rhs)
    if coeffs is None:
        raise InterpolationFailure("singular locator system")
    result = SparsePoly(
        n,
        {mono: c for (root, mono), c in zip(monomials, coeffs) if c},
    )
    if result.sparsity() > s or (result.degree() or 0) > d:
        raise InterpolationFailure("result violates the promised class")
    # residual check over all supplied points
    plan = interpolation_plan(s, n, d)
    for point, expected in zip(plan.points, values):
        if result.eval_point(point) != expected:
            raise InterpolationFailure("residual mismatch: input was off-promise")
    return result


def _solve_linear(mat, rhs):
    """Gaussian elimination over Q; None when singular."""
    r = len(mat)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(r):
        pivot = None
        for row in range(col, r):
            if aug[row][col]:
                pivot = row
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for row in range(r):
            if row != col and aug[row][col]:
                factor = aug[row][col]
                aug[row] = [a - factor * b for a, b in zip(aug[row], aug[col])]
    return [aug[i][r] for i in range(r)]
