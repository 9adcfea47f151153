"""Exact factorization of univariate, bivariate and trivariate polynomials
over Q in dense representation.

Univariate: clear denominators, Yun squarefree decomposition, then a
deterministic Zassenhaus pass per squarefree part (smallest usable prime,
Berlekamp modulo p, quadratic Hensel lifting to a Landau-Mignotte bound,
subset recombination).

Two and three variables, monic in x: evaluate the largest-degree non-main
variable at points 0, 1, -1, 2, ... scanned deterministically, factor the
image recursively, group the image factorization into pairwise-coprime
prime powers, Hensel-lift the groups (coefficients mod p^k, series in the
evaluated variable), and recombine subsets of lifted groups; repeated
factors come back as exact m-th roots of reconstructed subset products.
Every accepted factor is verified by exact division over Q, and a final
recomposition check guards the whole attempt, so a degenerate evaluation
point can only cost time, never correctness.
"""

import math
from itertools import combinations

from .rational import Q, ONE, ZERO
from .sparse import SparsePoly, grlex_key
from .dense import DensePoly3, from_dense
from .factors import FactorList, factor_sort_key
from .errors import LiftFailure, PolyError, ZeroPolynomialError


class _AttemptFailed(Exception):
    """Internal: current evaluation point cannot support a verified lift."""


# ---------------------------------------------------------------------------
# small number theory


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _primes(start=2):
    n = max(2, start)
    while True:
        if _is_prime(n):
            yield n
        n += 1


def _ratrec(c, m):
    """Rational reconstruction of c mod m; None when no small representative."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, c % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    num, den = (r1, s1) if s1 > 0 else (-r1, -s1)
    if math.gcd(den, m) != 1:
        return None
    g = math.gcd(abs(num), den)
    if g > 1:
        num //= g
        den //= g
    return Q(num, den)


# ---------------------------------------------------------------------------
# dense univariate helpers: ascending int coefficient lists


def up_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def up_deg(f):
    return len(f) - 1


def up_add(f, g, m=None):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] += c
    if m:
        out = [c % m for c in out]
    return up_trim(out)


def up_sub(f, g, m=None):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] -= c
    if m:
        out = [c % m for c in out]
    return up_trim(out)


def up_mul(f, g, m=None):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    if m:
        out = [c % m for c in out]
    return up_trim(out)


def up_scale(f, c, m=None):
    out = [a * c for a in f]
    if m:
        out = [a % m for a in out]
    return up_trim(out)


def up_mod(f, m):
    return up_trim([c % m for c in f])


def up_divmod(f, g, m):
    """Division by g with lc(g) invertible mod m."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1] % m, -1, m)
    rem = [c % m for c in f]
    dq = len(rem) - len(g)
    if dq < 0:
        return [], up_trim(rem)
    quot = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        idx = k + len(g) - 1
        if idx >= len(rem):
            continue
        c = rem[idx] % m
        if not c:
            continue
        q = (c * inv) % m
        quot[k] = q
        for j, b in enumerate(g):
            rem[k + j] = (rem[k + j] - q * b) % m
    return up_trim(quot), up_trim(up_mod(rem, m))


def up_eval(f, a, m=None):
    acc = 0
    for c in reversed(f):
        acc = acc * a + c
        if m:
            acc %= m
    return acc


def up_deriv(f):
    return up_trim([i * c for i, c in enumerate(f)][1:])


def up_monic_p(f, p):
    if not f:
        return f
    inv = pow(f[-1] % p, -1, p)
    return [(c * inv) % p for c in f]


def up_gcd_p(f, g, p):
    a, b = up_mod(f, p), up_mod(g, p)
    while b:
        _, r = up_divmod(a, b, p)
        a, b = b, r
    return up_monic_p(a, p)


def up_xgcd_p(f, g, p):
    """(s, t, h) with s*f + t*g = h = monic gcd mod p."""
    a, b = up_mod(f, p), up_mod(g, p)
    sa, sb = [1], []
    ta, tb = [], [1]
    while b:
        q, r = up_divmod(a, b, p)
        a, b = b, r
        sa, sb = sb, up_sub(sa, up_mul(q, sb, p), p)
        ta, tb = tb, up_sub(ta, up_mul(q, tb, p), p)
    if not a:
        return [], [], []
    inv = pow(a[-1] % p, -1, p)
    return up_scale(sa, inv, p), up_scale(ta, inv, p), up_scale(a, inv, p)


def up_sqf_p(f, p):
    return up_deg(up_gcd_p(f, up_deriv(f), p)) == 0


def up_pow_mod_p(base, e, f, p):
    result = [1]
    cur = up_divmod(base, f, p)[1]
    while e:
        if e & 1:
            result = up_divmod(up_mul(result, cur, p), f, p)[1]
        e >>= 1
        if e:
            cur = up_divmod(up_mul(cur, cur, p), f, p)[1]
    return result


def _nullspace_p(rows, p):
    """Basis of the right nullspace of the square matrix rows (mod p)."""
    n = len(rows)
    mat = [list(r) for r in rows]
    pivots = {}
    row = 0
    for col in range(n):
        pivot = None
        for r in range(row, n):
            if mat[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = pow(mat[row][col] % p, -1, p)
        mat[row] = [(v * inv) % p for v in mat[row]]
        for r in range(n):
            if r != row and mat[r][col] % p:
                factor = mat[r][col] % p
                mat[r] = [(a - factor * b) % p for a, b in zip(mat[r], mat[row])]
        pivots[col] = row
        row += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for col, r in pivots.items():
            vec[col] = (-mat[r][fc]) % p
        basis.append(vec)
    return basis


def berlekamp(f, p):
    """Deterministic Berlekamp split of a monic squarefree f mod p."""
    n = up_deg(f)
    if n <= 1:
        return [f]
    xp = up_pow_mod_p([0, 1], p, f, p)
    rows = []
    cur = [1]
    for i in range(n):
        padded = list(cur) + [0] * (n - len(cur))
        rows.append(padded)
        if i + 1 < n:
            cur = up_divmod(up_mul(cur, xp, p), f, p)[1]
    # v with v(x)^p = v(x) mod f: v * Q = v for row vectors, so nullspace of
    # (Q - I) transposed.
    mt = [[(rows[j][i] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
    basis = _nullspace_p(mt, p)
    r = len(basis)
    if r == 1:
        return [f]
    factors = [f]
    for vec in basis:
        if len(factors) == r:
            break
        v = up_trim(list(vec))
        if up_deg(v) < 1:
            continue
        new = []
        for w in factors:
            rem = w
            pieces = []
            for c in range(p):
                if up_deg(rem) <= 0:
                    break
                g = up_gcd_p(rem, up_sub(v, [c], p), p)
                if 0 < up_deg(g) <= up_deg(rem):
                    if up_deg(g) == up_deg(rem):
                        continue
                    pieces.append(g)
                    rem = up_divmod(rem, g, p)[0]
                    rem = up_monic_p(rem, p)
            if up_deg(rem) > 0:
                pieces.append(rem)
            new.extend(pieces)
        factors = sorted(new, key=lambda h: (up_deg(h), h))
    return factors


# ---------------------------------------------------------------------------
# Hensel machinery over Z (univariate)


def _hensel_step(m, f, g, h, s, t):
    """m -> m^2 quadratic step: f = g*h, s*g + t*h = 1, h monic."""
    M = m * m
    e = up_mod(up_sub(f, up_mul(g, h)), M)
    q, r = up_divmod(up_mul(s, e), h, M)
    u = up_add(up_mul(t, e), up_mul(q, g))
    G = up_mod(up_add(g, u), M)
    H = up_mod(up_add(h, r), M)
    b = up_mod(up_sub(up_add(up_mul(s, G), up_mul(t, H)), [1]), M)
    c, d = up_divmod(up_mul(s, b), H, M)
    S = up_mod(up_sub(s, d), M)
    T = up_mod(up_sub(t, up_add(up_mul(t, b), up_mul(c, G))), M)
    return G, H, S, T


def _hensel_lift_univ(p, f, f_list, l):
    """Lift f = lc(f) * prod(f_list) (mod p) to mod p^l, factors monic."""
    r = len(f_list)
    lc = f[-1]
    pl = p**l
    if r == 1:
        inv = pow(lc % pl, -1, pl)
        return [up_mod(up_scale(f, inv), pl)]
    k = r // 2
    d = int(math.ceil(math.log2(l))) if l > 1 else 1
    g = [lc % p]
    for fi in f_list[:k]:
        g = up_mul(g, fi, p)
    h = [1]
    for fi in f_list[k:]:
        h = up_mul(h, fi, p)
    s, t, gg = up_xgcd_p(g, h, p)
    if up_deg(gg) != 0:
        raise _AttemptFailed("modular factors not coprime")
    m = p
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift_univ(p, g, f_list[:k], l) + _hensel_lift_univ(
        p, h, f_list[k:], l
    )


def _symmetric(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _up_primitive_z(f):
    g = 0
    for c in f:
        g = math.gcd(g, abs(c))
    if g == 0:
        return []
    sign = -1 if f[-1] < 0 else 1
    return [c // (g * sign) for c in f]


def _up_div_exact_z(f, g):
    """Quotient in Z[x] when g (primitive) divides f, else None."""
    if not g:
        return None
    rem = list(f)
    up_trim(rem)
    dq = len(rem) - len(g)
    if dq < 0:
        return None if rem else []
    quot = [0] * (dq + 1)
    lc = g[-1]
    for k in range(dq, -1, -1):
        idx = k + len(g) - 1
        c = rem[idx] if idx < len(rem) else 0
        if c % lc:
            return None
        q = c // lc
        quot[k] = q
        if q:
            for j, b in enumerate(g):
                rem[k + j] -= q * b
    up_trim(rem)
    return quot if not rem else None


def _zassenhaus(F):
    """Irreducible factors of a primitive squarefree F in Z[x], lc(F) > 0."""
    n = up_deg(F)
    if n == 1:
        return [F]
    lc = F[-1]
    A = max(abs(c) for c in F)
    B = (math.isqrt(n + 1) + 1) * (2**n) * A * abs(lc)
    chosen = None
    for p in _primes(3):
        if lc % p == 0:
            continue
        if up_sqf_p(F, p):
            chosen = p
            break
        if p > 200 * (B + n + 2):  # pragma: no cover - theory guarantees earlier
            raise LiftFailure("no usable prime for univariate factorization")
    p = chosen
    fbar = up_monic_p(up_mod(F, p), p)
    modular = berlekamp(fbar, p)
    if len(modular) == 1:
        return [F]
    l = 1
    while p**l < 2 * B + 1:
        l += 1
    lifted = _hensel_lift_univ(p, F, modular, l)
    pl = p**l
    indices = list(range(len(lifted)))
    factors = []
    current = F
    s = 1
    while 2 * s <= len(indices):
        found = True
        while found:
            found = False
            for S in combinations(indices, s):
                G = [current[-1] % pl]
                for i in S:
                    G = up_mul(G, lifted[i], pl)
                G = [_symmetric(c, pl) for c in G]
                up_trim(G)
                G = _up_primitive_z(G)
                if not G or up_deg(G) < 1:
                    continue
                quotient = _up_div_exact_z(current, G)
                if quotient is not None:
                    factors.append(G)
                    current = quotient
                    indices = [i for i in indices if i not in S]
                    found = True
                    break
            if 2 * s > len(indices):
                break
        s += 1
    if up_deg(current) >= 1:
        factors.append(_up_primitive_z(current))
    return factors


# ---------------------------------------------------------------------------
# univariate over Q


def _uq_trim(f):
    while f and not f[-1]:
        f.pop()
    return f


def _uq_divmod(f, g):
    rem = list(f)
    quot = [ZERO] * max(0, len(rem) - len(g) + 1)
    inv = ONE / g[-1]
    for k in range(len(rem) - len(g), -1, -1):
        c = rem[k + len(g) - 1]
        if not c:
            continue
        q = c * inv
        quot[k] = q
        for j, b in enumerate(g):
            rem[k + j] = rem[k + j] - q * b
    return _uq_trim(quot), _uq_trim(rem)


def _uq_gcd(f, g):
    a, b = _uq_trim(list(f)), _uq_trim(list(g))
    while b:
        _, r = _uq_divmod(a, b)
        a, b = b, r
    if a:
        inv = ONE / a[-1]
        a = [c * inv for c in a]
    return a


def _uq_deriv(f):
    return _uq_trim([c * i for i, c in enumerate(f)][1:])


def _uq_mul(f, g):
    if not f or not g:
        return []
    out = [ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return _uq_trim(out)


def _uq_sub(f, g):
    out = [ZERO] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = out[i] - c
    return _uq_trim(out)


def _yun_q(f):
    """Squarefree decomposition [(monic part, multiplicity)] of monic f."""
    fp = _uq_deriv(f)
    u = _uq_gcd(f, fp)
    if not u or len(u) == 1:
        return [(f, 1)]
    v, _ = _uq_divmod(f, u)
    w, _ = _uq_divmod(fp, u)
    out = []
    i = 1
    guard = len(f) + 2
    while len(v) > 1:
        guard -= 1
        if guard < 0:  # pragma: no cover
            raise LiftFailure("squarefree decomposition did not terminate")
        z = _uq_sub(w, _uq_deriv(v))
        if not z:
            out.append(([c / v[-1] for c in v], i))
            break
        h = _uq_gcd(v, z)
        if len(h) > 1:
            out.append((h, i))
        v, _ = _uq_divmod(v, h)
        w, _ = _uq_divmod(z, h)
        i += 1
    return out


def _sparse_to_uq(f):
    d = f.degree() or 0
    out = [ZERO] * (d + 1)
    for exps, c in f.terms.items():
        out[exps[0]] = c
    return _uq_trim(out)


def _uq_to_sparse(coeffs, n=1, slot=0):
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[slot] = i
            terms[tuple(e)] = c
    return SparsePoly(n, terms)


def _uq_clear_denominators(f):
    """(int list, denominator lcm) with int list = den * f."""
    den = 1
    for c in f:
        den = den * c.denominator // math.gcd(den, int(c.denominator))
    return [int(c.numerator) * (den // int(c.denominator)) for c in f], den


def _factor_univariate_pairs(f):
    """[(canonical irreducible, multiplicity)] for a univariate SparsePoly."""
    coeffs = _sparse_to_uq(f)
    if not coeffs:
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    if len(coeffs) == 1:
        return []
    monic = [c / coeffs[-1] for c in coeffs]
    pairs = []
    for part, mult in _yun_q(monic):
        ints, _ = _uq_clear_denominators(part)
        ints = _up_primitive_z(ints)
        for fac in _zassenhaus(ints):
            poly = _uq_to_sparse([Q(c) for c in fac], n=f.n, slot=0)
            pairs.append((poly.canonical(), mult))
    pairs.sort(key=lambda pm: factor_sort_key(pm[0]))
    return pairs


def factor_univariate_q(f):
    """Complete factorization over Q of a nonzero univariate SparsePoly."""
    if f.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    if f.is_constant():
        return FactorList.build(f.constant_value(), [])
    pairs = _factor_univariate_pairs(f)
    result = FactorList.build(f.leading_coefficient(), pairs)
    assert result.recompose() == f, "univariate recomposition failed"
    return result


# ---------------------------------------------------------------------------
# coefficient dictionaries for the multivariate lift: {ex*STRIDE + ew: int}
# (packed keys add componentwise under integer addition; reductions mod m are
# deferred to the end of each product)

STRIDE = 1 << 20


def cd_pack(ex, ew):
    return ex * STRIDE + ew


def cd_unpack(key):
    return key // STRIDE, key % STRIDE


def cd_mul(a, b, m):
    out = {}
    get = out.get
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = get(k, 0) + va * vb
    result = {}
    for k, v in out.items():
        v %= m
        if v:
            result[k] = v
    return result


def cd_add_into(acc, a, m, scale=1):
    for k, v in a.items():
        nv = (acc.get(k, 0) + scale * v) % m
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


def cd_sub(a, b, m):
    out = dict(a)
    cd_add_into(out, b, m, scale=-1)
    return out


# ---------------------------------------------------------------------------
# diophantine solvers


class _UniDioph:
    """Solve dA*b0 + dB*a0 = c mod m with deg dA < deg a0, for monic a0, b0."""

    def __init__(self, a0, b0, p, m):
        s, t, g = up_xgcd_p(a0, b0, p)
        if up_deg(g) != 0:
            raise _AttemptFailed("base factors not coprime mod p")
        self.a0, self.b0, self.m = a0, b0, m
        mu = p
        while mu < m:
            mu2 = mu * mu
            berr = up_mod(up_sub(up_add(up_mul(s, a0), up_mul(t, b0)), [1]), mu2)
            c, d = up_divmod(up_mul(s, berr), b0, mu2)
            s = up_mod(up_sub(s, d), mu2)
            t = up_mod(up_sub(t, up_add(up_mul(t, berr), up_mul(c, a0))), mu2)
            mu = mu2
        self.s = up_mod(s, m)
        self.t = up_mod(t, m)

    def solve(self, c):
        m = self.m
        q, da = up_divmod(up_mul(self.t, c, m), self.a0, m)
        db = up_add(up_mul(self.s, c, m), up_mul(q, self.b0, m), m)
        return da, db


def _cd_to_tau_series(d, w0, length, m):
    """(x, w) dict -> list over (w - w0)-order of x coefficient lists."""
    rows = [dict() for _ in range(length)]
    for key, v in d.items():
        ex, ew = cd_unpack(key)
        if w0 == 0:
            if ew < length:
                row = rows[ew]
                row[ex] = (row.get(ex, 0) + v) % m
        else:
            for ordv in range(min(ew, length - 1) + 1):
                contrib = (v * math.comb(ew, ordv)) % m * pow(w0 % m, ew - ordv, m) % m
                if contrib:
                    row = rows[ordv]
                    row[ex] = (row.get(ex, 0) + contrib) % m
    out = []
    for row in rows:
        if row:
            lst = [0] * (max(row) + 1)
            for ex, v in row.items():
                lst[ex] = v
            out.append(up_trim(lst))
        else:
            out.append([])
    return out


def _tau_series_to_cd(series, w0, m):
    """Inverse of _cd_to_tau_series: sum_ord coeffs * (w - w0)^ord."""
    out = {}
    for ordv, coeffs in enumerate(series):
        if not coeffs:
            continue
        if w0 == 0:
            for ex, v in enumerate(coeffs):
                if v:
                    key = cd_pack(ex, ordv)
                    out[key] = (out.get(key, 0) + v) % m
        else:
            for b in range(ordv + 1):
                scale = (math.comb(ordv, b) * pow(-w0 % m, ordv - b, m)) % m
                if not scale:
                    continue
                for ex, v in enumerate(coeffs):
                    if v:
                        key = cd_pack(ex, b)
                        out[key] = (out.get(key, 0) + v * scale) % m
    return {k: v for k, v in out.items() if v}


class _BiDioph:
    """Solve dA*B0 + dB*A0 = e for (x, w) dicts via (w - w0)-adic expansion."""

    def __init__(self, A0, B0, w0, wdeg, p, m):
        self.m = m
        self.w0 = w0
        self.length = 2 * wdeg + 3
        self.A0tau = _cd_to_tau_series(A0, w0, self.length, m)
        self.B0tau = _cd_to_tau_series(B0, w0, self.length, m)
        a0 = self.A0tau[0]
        b0 = self.B0tau[0]
        self.uni = _UniDioph(a0, b0, p, m)
        self.A0, self.B0 = A0, B0

    def solve(self, e):
        m = self.m
        L = self.length
        residual = _cd_to_tau_series(e, self.w0, L, m)
        dA = [[] for _ in range(L)]
        dB = [[] for _ in range(L)]
        for ordv in range(L):
            c = residual[ordv]
            if not c:
                continue
            da, db = self.uni.solve(c)
            dA[ordv] = da
            dB[ordv] = db
            for jj in range(L - ordv):
                upd = up_add(
                    up_mul(da, self.B0tau[jj], m), up_mul(db, self.A0tau[jj], m), m
                )
                if upd:
                    residual[ordv + jj] = up_sub(residual[ordv + jj], upd, m)
        if any(residual):
            raise _AttemptFailed("diophantine residual nonzero")
        return (
            _tau_series_to_cd(dA, self.w0, m),
            _tau_series_to_cd(dB, self.w0, m),
        )


class _UniDiophAdapter:
    """Present _UniDioph over (x, w=absent) coefficient dicts."""

    def __init__(self, A0, B0, p, m):
        a0 = _cd_to_tau_series(A0, 0, 1, m)[0]
        b0 = _cd_to_tau_series(B0, 0, 1, m)[0]
        self.uni = _UniDioph(a0, b0, p, m)
        self.m = m

    def solve(self, e):
        c = _cd_to_tau_series(e, 0, 1, self.m)[0]
        da, db = self.uni.solve(c)
        return (
            {cd_pack(i, 0): v for i, v in enumerate(da) if v},
            {cd_pack(i, 0): v for i, v in enumerate(db) if v},
        )


# ---------------------------------------------------------------------------
# series lift


def _series_mul(A, B, K, m):
    out = [dict() for _ in range(K)]
    for i, ai in enumerate(A):
        if not ai:
            continue
        for j, bj in enumerate(B):
            if i + j >= K:
                break
            if not bj:
                continue
            cd_add_into(out[i + j], cd_mul(ai, bj, m), m)
    return out


def _lift_pair(Fser, A0, B0, K, m, dioph):
    A = [dict(A0)] + [dict() for _ in range(K - 1)]
    B = [dict(B0)] + [dict() for _ in range(K - 1)]
    AB = [dict() for _ in range(K)]
    AB[0] = cd_mul(A0, B0, m)
    if cd_sub(AB[0], Fser[0], m):
        raise _AttemptFailed("base product mismatch")
    for j in range(1, K):
        E = cd_sub(Fser[j], AB[j], m)
        if not E:
            continue
        dA, dB = dioph.solve(E)
        for i in range(K - j):
            if A[i] and dB:
                cd_add_into(AB[i + j], cd_mul(dB, A[i], m), m)
            if B[i] and dA:
                cd_add_into(AB[i + j], cd_mul(dA, B[i], m), m)
        if 2 * j < K and dA and dB:
            cd_add_into(AB[2 * j], cd_mul(dA, dB, m), m)
        A[j] = dA
        B[j] = dB
    return A, B


def _lift_tree(Fser, groups, K, m, p, make_dioph):
    """groups: list of (x, w) dicts at the base point; returns lifted series."""
    if len(groups) == 1:
        return [Fser]
    h = len(groups) // 2
    A0 = groups[0]
    for g in groups[1:h]:
        A0 = cd_mul(A0, g, m)
    B0 = groups[h]
    for g in groups[h + 1 :]:
        B0 = cd_mul(B0, g, m)
    dioph = make_dioph(A0, B0)
    Aser, Bser = _lift_pair(Fser, A0, B0, K, m, dioph)
    return _lift_tree(Aser, groups[:h], K, m, p, make_dioph) + _lift_tree(
        Bser, groups[h:], K, m, p, make_dioph
    )


# ---------------------------------------------------------------------------
# multivariate attempt driver


def _eval_var(f, var, value):
    """Substitute z_var := value (int) and drop the slot."""
    i = var - 1
    terms = {}
    vq = Q(value)
    for exps, c in f.terms.items():
        e = exps[i]
        reduced = exps[:i] + exps[i + 1 :]
        contrib = c if not e else c * vq**e
        acc = terms.get(reduced)
        acc = contrib if acc is None else acc + contrib
        if acc:
            terms[reduced] = acc
        else:
            terms.pop(reduced, None)
    return SparsePoly(f.n - 1, terms)


def _eval_points():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _q_mod(c, m):
    den = int(c.denominator)
    num = int(c.numerator)
    return (num % m) * pow(den % m, -1, m) % m


def _poly_to_series(f, v, w, v0, K, m):
    """f (n vars, slots x=0, v, w opt) -> series in u=(z_v - v0) of (x,w) dicts."""
    iv = v - 1
    iw = None if w is None else w - 1
    ser = [dict() for _ in range(K)]
    for exps, c in f.terms.items():
        cm = _q_mod(c, m)
        ex = exps[0]
        ew = exps[iw] if iw is not None else 0
        ev = exps[iv]
        key = cd_pack(ex, ew)
        if v0 == 0:
            if ev < K:
                d = ser[ev]
                d[key] = (d.get(key, 0) + cm) % m
        else:
            for j in range(min(ev, K - 1) + 1):
                contrib = (cm * math.comb(ev, j)) % m * pow(v0 % m, ev - j, m) % m
                if contrib:
                    d = ser[j]
                    d[key] = (d.get(key, 0) + contrib) % m
    return [{k: val for k, val in d.items() if val} for d in ser]


def _series_to_qpoly(ser, v, w, v0, n, m):
    """u-series of (x, w) dicts back to an n-variable SparsePoly over Q."""
    ints = {}
    for j, d in enumerate(ser):
        if not d:
            continue
        if v0 == 0:
            for packed, val in d.items():
                key = (packed, j)
                ints[key] = (ints.get(key, 0) + val) % m
        else:
            for b in range(j + 1):
                scale = (math.comb(j, b) * pow(-v0 % m, j - b, m)) % m
                if not scale:
                    continue
                for packed, val in d.items():
                    key = (packed, b)
                    ints[key] = (ints.get(key, 0) + val * scale) % m
    iv = v - 1
    iw = None if w is None else w - 1
    terms = {}
    for (packed, ev), val in ints.items():
        val %= m
        if not val:
            continue
        q = _ratrec(val, m)
        if q is None:
            return None
        ex, ew = cd_unpack(packed)
        exps = [0] * n
        exps[0] = ex
        exps[iv] = ev
        if iw is not None:
            exps[iw] = ew
        terms[tuple(exps)] = q
    return SparsePoly(n, terms)


def _series_order_reconstructs(ser, j, m):
    """Cheap gate: can the single u-order j of a subset product be rationally
    reconstructed?  Junk subsets fail here long before a full product."""
    for val in ser.values():
        if _ratrec(val % m, m) is None:
            return False
    return True


def _cd_from_qpoly(f2, m):
    """(x, w) SparsePoly (2 or 1 vars) -> coefficient dict mod m."""
    out = {}
    for exps, c in f2.terms.items():
        ex = exps[0]
        ew = exps[1] if len(exps) > 1 else 0
        out[cd_pack(ex, ew)] = _q_mod(c, m)
    return {k: v for k, v in out.items() if v}


def _den_lcm(polys):
    den = 1
    for f in polys:
        for c in f.terms.values():
            d = int(c.denominator)
            den = den * d // math.gcd(den, d)
    return den


def _attempt_lift(f, v, w, v0, base, k_boost):
    """One (v0, modulus) attempt; returns [(factor, mult)] or None to retry
    with a larger modulus.  Raises _AttemptFailed on structural failure."""
    n = f.n
    dx = f.degree_in(1)
    dv = f.degree_in(v) or 0
    dw = (f.degree_in(w) or 0) if w is not None else 0
    K = dv + 1
    # Renormalize the base factors monic in x so their product is exactly the
    # image of f.  Factors of a monic-in-x polynomial always have a constant
    # x-leading coefficient.
    groups = []
    for u, mult in base:
        dxu = u.degree_in(1)
        lc = None
        for exps, c in u.terms.items():
            if exps[0] == dxu:
                if any(exps[1:]) or lc is not None:
                    raise _AttemptFailed("non-constant x-leading coefficient")
                lc = c
        groups.append((u.scale(ONE / lc), mult))
    cs = [u**mult for u, mult in groups]
    denom = _den_lcm([f] + [u for u, _ in groups])
    # prime: must avoid denominators and give pairwise-coprime base images
    chosen = None
    for p in _primes(3):
        if denom % p == 0:
            continue
        w0_range = range(2 * dw * len(cs) * len(cs) + 3) if w is not None else (0,)
        for w0 in w0_range:
            imgs = []
            ok = True
            for u, _ in groups:
                if w is not None:
                    g1 = _eval_var(u, 2, w0)  # slot 1 is w in the base polys
                else:
                    g1 = u
                lst = up_trim(_uq_ints(_sparse_to_uq(g1), p))
                if up_deg(lst) != u.degree_in(1):
                    ok = False
                    break
                imgs.append(up_monic_p(lst, p))
            if not ok:
                continue
            coprime = True
            for i in range(len(imgs)):
                for j in range(i + 1, len(imgs)):
                    if up_deg(up_gcd_p(imgs[i], imgs[j], p)) != 0:
                        coprime = False
                        break
                if not coprime:
                    break
            if coprime:
                chosen = (p, w0)
                break
        if chosen:
            break
        if p > 10000:  # pragma: no cover
            raise LiftFailure("no usable prime for multivariate lift")
    p, w0 = chosen
    # modulus size: coefficient-magnitude heuristic, doubled on reconstruction
    # failure by the caller via k_boost
    hbits = 1
    for c in f.terms.values():
        hbits = max(hbits, int(c.numerator).bit_length() + int(c.denominator).bit_length())
    total_deg = dx + dv + dw
    shift_bits = dv * (abs(v0).bit_length() + 1) + dw * (abs(w0).bit_length() + 1)
    bits_needed = (2 * (hbits + total_deg + shift_bits + 16) + 8) << k_boost
    k = max(2, (bits_needed + p.bit_length() - 1) // p.bit_length())
    m = p**k

    Fser = _poly_to_series(f, v, w, v0, K, m)
    group_cds = [_cd_from_qpoly(c, m) for c in cs]

    if w is None:
        make_dioph = lambda A0, B0: _UniDiophAdapter(A0, B0, p, m)
    else:
        make_dioph = lambda A0, B0: _BiDioph(A0, B0, w0, dw, p, m)

    leaves = _lift_tree(Fser, group_cds, K, m, p, make_dioph)

    indices = list(range(len(groups)))
    remaining = f
    results = []
    need_bigger = False
    size = 1
    while indices and size <= len(indices):
        progressed = True
        while progressed and size <= len(indices):
            progressed = False
            for S in combinations(indices, size):
                mults = {groups[i][1] for i in S}
                if len(mults) != 1:
                    continue
                mult = mults.pop()
                if size > 1:
                    # junk subsets have power-series tails already at low
                    # orders; reject them on a 3-order prefix product before
                    # paying for the full one
                    prefix = leaves[S[0]][:3]
                    for i in S[1:]:
                        prefix = _series_mul(prefix, leaves[i][:3], 3, m)
                    bad = False
                    for row in prefix[1:]:
                        if not _series_order_reconstructs(row, 0, m):
                            bad = True
                            break
                    if bad:
                        need_bigger = True
                        continue
                Wser = leaves[S[0]]
                for i in S[1:]:
                    Wser = _series_mul(Wser, leaves[i], K, m)
                Wq = _series_to_qpoly(Wser, v, w, v0, n, m)
                if Wq is None:
                    need_bigger = True
                    continue
                Wq = Wq.canonical()
                P = Wq.integer_root(mult) if mult > 1 else Wq
                if P is None:
                    continue
                count = 0
                cur = remaining
                while True:
                    quotient = cur.exact_divide(P)
                    if quotient is None:
                        break
                    cur = quotient
                    count += 1
                if count == 0:
                    continue
                results.append((P.canonical(), count))
                remaining = cur
                indices = [i for i in indices if i not in S]
                progressed = True
                break
        size += 1
    if indices or not remaining.is_constant():
        if need_bigger:
            return None
        raise _AttemptFailed("recombination incomplete")
    results.sort(key=lambda pm: factor_sort_key(pm[0]))
    return results


def _uq_ints(coeffs, p):
    out = []
    for c in coeffs:
        out.append(_q_mod(c, p))
    return out


_MAX_EVAL_ATTEMPTS = 400


def _factor_monic_sparse(f):
    """[(canonical irreducible, mult)] for f monic in variable 1, <=3 vars."""
    n = f.n
    if n == 1:
        return _factor_univariate_pairs(f)
    dx = f.degree_in(1)
    if dx is None or dx == 0:
        raise PolyError("input not monic in its main variable")
    side_degs = {i: (f.degree_in(i) or 0) for i in range(2, n + 1)}
    live = [i for i, d in side_degs.items() if d > 0]
    if not live:
        # really univariate in x; factor the profile and re-embed
        profile = SparsePoly(1, {(e[0],): c for e, c in f.terms.items()})
        pairs = _factor_univariate_pairs(profile)
        return [
            (g.map_variables([0], n).canonical(), mult) for g, mult in pairs
        ]
    v = max(live, key=lambda i: (side_degs[i], -i))
    w = None
    if n == 3:
        others = [i for i in (2, 3) if i != v]
        w = others[0] if side_degs.get(others[0], 0) > 0 else None
        if w is None:
            # only two effective variables; drop the dead slot and recurse
            dead = others[0]
            reduced = _drop_dead_var(f, dead)
            pairs = _factor_monic_sparse(reduced)
            return [
                (_restore_dead_var(g, dead, n).canonical(), mult)
                for g, mult in pairs
            ]
    survivors = [i for i in range(2, n + 1) if i != v]
    point_iter = _eval_points()
    consumed = 0
    boost = 0
    needk_points = 0
    probes = []  # [quality, arrival, v0, base]; quality = squarefree x-degree

    def refill(window):
        """Top up the probe pool; True when a probe certifies irreducibility."""
        nonlocal consumed
        while len(probes) < window and consumed < _MAX_EVAL_ATTEMPTS:
            v0 = next(point_iter)
            consumed += 1
            f0 = _eval_var(f, v, v0)
            # points that drop a surviving variable's degree force a finer
            # base split and a doomed lift; skip them before factoring
            degraded = False
            for i in survivors:
                after = i if i < v else i - 1
                if (f0.degree_in(after) or 0) != side_degs[i]:
                    degraded = True
                    break
            if degraded:
                continue
            base = _factor_monic_sparse(f0)
            if len(base) == 1 and base[0][1] == 1:
                return True
            quality = sum(u.degree_in(1) for u, _ in base)
            probes.append([quality, consumed, v0, base])
        return False

    while True:
        if refill(4):
            return [(f.canonical(), 1)]
        if not probes:  # pragma: no cover
            raise LiftFailure("no good evaluation point found")
        # prefer the point with the least factor merging (largest squarefree
        # part of the base image), then earliest
        probes.sort(key=lambda t: (-t[0], t[1]))
        _, _, v0, base = probes.pop(0)
        try:
            result = _attempt_lift(f, v, w, v0, base, boost)
        except _AttemptFailed:
            continue
        if result is not None:
            return result
        # reconstruction failures at two distinct points suggest the modulus
        # is genuinely too small rather than the point being degenerate
        needk_points += 1
        if needk_points >= 2 and boost < 3:
            boost += 1
            needk_points = 0


def _drop_dead_var(f, dead):
    i = dead - 1
    terms = {}
    for exps, c in f.terms.items():
        assert exps[i] == 0
        terms[exps[:i] + exps[i + 1 :]] = c
    return SparsePoly(f.n - 1, terms)


def _restore_dead_var(g, dead, n):
    i = dead - 1
    terms = {}
    for exps, c in g.terms.items():
        terms[exps[:i] + (0,) + exps[i:]] = c
    return SparsePoly(n, terms)


# ---------------------------------------------------------------------------
# public operations


def _require_monic_in_x(f):
    dx = f.degree_in(1)
    if dx is None or dx < 1:
        raise PolyError("expected a nonconstant polynomial, monic in x")
    for exps, c in f.terms.items():
        if exps[0] == dx:
            if any(exps[1:]) or c != ONE:
                raise PolyError("polynomial is not monic in x")


def factor_monic(f):
    """FactorList of a SparsePoly (<=3 vars) monic in variable 1."""
    _require_monic_in_x(f)
    pairs = _factor_monic_sparse(f)
    result = FactorList.build(f.leading_coefficient(), pairs)
    assert result.recompose() == f, "recomposition failed"
    return result


def factor_bivariate(f):
    """Complete factorization of a bivariate polynomial monic in x."""
    if isinstance(f, DensePoly3):
        f = from_dense(f, n=2)
    if f.n != 2:
        raise PolyError("expected a bivariate polynomial")
    return factor_monic(f)


def factor_trivariate(f):
    """Complete factorization of a trivariate polynomial monic in x."""
    if isinstance(f, DensePoly3):
        f = f.to_sparse()
    if f.n != 3:
        raise PolyError("expected a trivariate polynomial")
    return factor_monic(f)


def factor_lowvar(f):
    """Complete factorization of any nonconstant SparsePoly in <=3 variables.

    Non-monic inputs are sheared (z_j += c_j * z_1) until the z1-leading
    coefficient is constant, factored, and sheared back.
    """
    if f.n > 3:
        raise PolyError("dense factorization supports at most 3 variables")
    if f.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    if f.is_constant():
        return FactorList.build(f.constant_value(), [])
    if f.n == 1:
        return factor_univariate_q(f)
    d = f.degree()
    top = f.hom_component(d)
    shear = None
    for total in range(0, d * f.n + 2):
        for combo in _tuples_with_sum(f.n - 1, total):
            point = (ONE,) + tuple(Q(c) for c in combo)
            if top.eval_point(point):
                shear = combo
                break
        if shear is not None:
            break
    assignment = [SparsePoly.variable(f.n, 1)]
    for j, c in enumerate(shear, start=2):
        img = SparsePoly.variable(f.n, j)
        if c:
            img = img + SparsePoly.variable(f.n, 1).scale(c)
        assignment.append(img)
    sheared = f.substitute(assignment, m=f.n)
    lc = sheared.terms[(d,) + (0,) * (f.n - 1)]
    monic = sheared.scale(ONE / lc)
    pairs = _factor_monic_sparse(monic)
    back = [SparsePoly.variable(f.n, 1)]
    for j, c in enumerate(shear, start=2):
        img = SparsePoly.variable(f.n, j)
        if c:
            img = img - SparsePoly.variable(f.n, 1).scale(c)
        back.append(img)
    restored = [(g.substitute(back, m=f.n).canonical(), mult) for g, mult in pairs]
    result = FactorList.build(f.leading_coefficient(), restored)
    assert result.recompose() == f, "recomposition failed"
    return result


def _tuples_with_sum(k, total):
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _tuples_with_sum(k - 1, total - first):
            yield (first,) + rest


def is_irreducible_lowvar(f):
    """True iff the (<=3 variable, nonconstant) polynomial is irreducible."""
    if isinstance(f, DensePoly3):
        f = f.to_sparse()
    if f.is_constant():
        raise PolyError("irreducibility is for nonconstant polynomials")
    fl = factor_lowvar(f)
    return len(fl.factors) == 1 and fl.factors[0][1] == 1


# ---------------------------------------------------------------------------
# squarefree decomposition, derived from the factorization


from dataclasses import dataclass


@dataclass(frozen=True)
class SquarefreeDecomposition:
    parts: tuple  # of (SparsePoly, exponent), exponents strictly increasing
    content: object

    def recompose(self):
        if not self.parts:
            n = 1
        else:
            n = self.parts[0][0].n
        total = SparsePoly.const(n, self.content)
        for poly, e in self.parts:
            total = total * poly**e
        return total


def squarefree_decomposition(f):
    """Group the complete factorization by multiplicity."""
    fl = factor_lowvar(f)
    by_mult = {}
    for poly, mult in fl.factors:
        acc = by_mult.get(mult)
        by_mult[mult] = poly if acc is None else acc * poly
    parts = tuple((by_mult[mult], mult) for mult in sorted(by_mult))
    result = SquarefreeDecomposition(parts, fl.scalar)
    assert result.recompose() == f, "squarefree recomposition failed"
    return result
