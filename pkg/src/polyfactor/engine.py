"""The factoring pipelines: projected factoring, the promise and general
constant-degree factor algorithms, and oracle-driven sparse factor
extraction.

Projection schemes cannot be certified analytically at desk scale, so the
constant-degree pipelines walk a deterministic scheme ladder: a lost factor
shows up either as a failed recomposition (promise path) or as a nonconstant
residual that the next rung gets to work on.  Soundness never depends on the
scheme: every emitted factor passed an exact divisibility gate, and inverted
candidates whose inverse shift still involves x are discarded, which makes
every survivor provably irreducible.
"""

from dataclasses import dataclass

from .rational import Q, ONE
from .sparse import SparsePoly
from .dense import to_dense
from .factors import FactorList, factor_sort_key
from .errors import (
    CapError,
    InterpolationFailure,
    NotInCodomain,
    PolyError,
    PromiseViolation,
)
from .pit import find_nonzero_point, interpolation_plan, sparse_interpolate
from .isolation import psi_map, psi_invert, scheme_ladder
from .basefactor import factor_monic
from .divisibility import constant_degree_divides
from .config import DEFAULT as DEFAULT_CONFIG


@dataclass(frozen=True)
class MonicShift:
    alpha: tuple
    normalizer: object
    n: int
    degree: int


@dataclass(frozen=True)
class ProjectedFactorSet:
    s_proj_fac: tuple
    s_proj_fac_mult: tuple
    shift: object
    scheme: object


def monicize(f):
    """(MonicShift, f_alpha) with f_alpha = f(alpha x + z)/Hom[f](alpha),
    monic in the fresh variable x (slot 0 of the result)."""
    d = f.degree()
    if d is None or d < 1:
        raise PolyError("cannot monicize a constant")
    top = f.hom_component(d)
    alpha = find_nonzero_point(top, f.n, d, mode="whitebox")
    normalizer = top.eval_point(alpha)
    m = f.n + 1
    assignment = [
        SparsePoly.variable(m, i + 1) + SparsePoly.variable(m, 1).scale(alpha[i - 1])
        for i in range(1, f.n + 1)
    ]
    f_alpha = f.substitute(assignment, m=m).scale(ONE / normalizer)
    assert f_alpha.degree_in(1) == d
    assert f_alpha.terms.get((d,) + (0,) * f.n) == ONE
    return MonicShift(tuple(alpha), normalizer, f.n, d), f_alpha


def unmonicize(g_hat, shift):
    """Inverse of the monic shift: z_i -> z_i - alpha_i x, then x -> 0.

    For images of the shift the result is exact up to scalar; for junk
    candidates the x -> 0 projection simply yields another junk polynomial
    for the divisibility gate to reject.
    """
    m = shift.n + 1
    assignment = [SparsePoly.variable(m, 1)]
    for i in range(1, shift.n + 1):
        assignment.append(
            SparsePoly.variable(m, i + 1)
            - SparsePoly.variable(m, 1).scale(shift.alpha[i - 1])
        )
    sheared = g_hat.substitute(assignment, m=m)
    terms = {}
    for exps, c in sheared.terms.items():
        if exps[0] == 0:
            terms[exps[1:]] = c
    return SparsePoly(shift.n, terms), 1 in sheared.var_support()


def projected_factoring(f, delta, scheme=None, config=None):
    """All projected factors of f with x-degree <= delta, with multiplicities:
    monicize, project to three variables, factor densely, filter."""
    config = config or DEFAULT_CONFIG
    if delta < 1:
        raise ValueError("delta must be >= 1")
    if delta > config.max_delta:
        raise CapError("max_delta", delta, config.max_delta)
    if f.is_constant():
        raise PolyError("cannot factor a constant")
    shift, f_alpha = monicize(f)
    if scheme is None:
        scheme = scheme_ladder(
            f.n, delta, shift.degree, config.psi_g_degree_cap
        )[0]
    grid = psi_map(f_alpha, scheme, max_cells=config.max_dense_cells)
    degs = grid.true_degrees()
    assert degs[0] == shift.degree, "psi must preserve the x-degree"
    factor_list = factor_monic(grid.to_sparse())
    proj = []
    proj_mult = []
    for h, e in factor_list.factors:
        if (h.degree_in(1) or 0) <= delta:
            proj.append(h)
            proj_mult.append((h, e))
    return ProjectedFactorSet(tuple(proj), tuple(proj_mult), shift, scheme)


def _invert_candidate(h, proj, delta):
    """Trivariate factor -> candidate factor of f, or None."""
    try:
        g_hat = psi_invert(to_dense(h), proj.scheme, delta)
    except NotInCodomain:
        return None
    g, has_x = unmonicize(g_hat, proj.shift)
    if has_x or g.is_constant():
        return None
    if (g.degree() or 0) > delta:
        return None
    return g.canonical()


def factor_constant_degree_promise(f, delta, config=None):
    """Complete factorization under the promise that every irreducible factor
    has degree <= delta; PromiseViolation when the output cannot recompose."""
    config = config or DEFAULT_CONFIG
    if f.is_constant():
        raise PolyError("cannot factor a constant")
    last_error = None
    for scheme in scheme_ladder(
        f.n, delta, f.degree(), config.psi_g_degree_cap
    ):
        try:
            proj = projected_factoring(f, delta, scheme, config)
        except CapError:
            raise
        pairs = []
        ok = True
        for h, e in proj.s_proj_fac_mult:
            g = _invert_candidate(h, proj, delta)
            if g is None:
                ok = False
                last_error = "projected factor was not invertible"
                break
            pairs.append((g, e))
        if not ok:
            continue
        result = FactorList.build(f.leading_coefficient(), pairs)
        if result.recompose() == f:
            return result
        last_error = "recomposition mismatch"
    raise PromiseViolation(
        "input has a factor of degree > %d (%s)" % (delta, last_error)
    )


def factor_multiplicity(f, g):
    """Multiplicity of the irreducible g in f: the smallest e with g not
    dividing the e-th partial derivative along a variable g depends on."""
    if g.is_constant():
        raise PolyError("multiplicity of a constant is undefined")
    support = g.var_support()
    z = min(support)
    e = 0
    current = f
    while True:
        if not constant_degree_divides(current, g):
            return e
        e += 1
        current = current.derivative(z, 1)


def constant_degree_factors(f, delta, config=None):
    """All irreducible factors of f of degree <= delta with multiplicities
    (no promise); factors outside the degree bound are left in the residual."""
    config = config or DEFAULT_CONFIG
    if f.is_constant():
        raise PolyError("cannot factor a constant")
    found = {}
    remaining = f
    passes = 0
    for scheme in scheme_ladder(
        f.n, delta, f.degree(), config.psi_g_degree_cap
    ):
        if remaining.is_constant() or (remaining.degree() or 0) < 1:
            break
        passes += 1
        proj = projected_factoring(remaining, delta, scheme, config)
        candidates = []
        seen = set()
        for h in proj.s_proj_fac:
            g = _invert_candidate(h, proj, delta)
            if g is not None and g not in seen:
                seen.add(g)
                candidates.append(g)
        progressed = False
        for g in candidates:
            if g in found:
                continue
            if not constant_degree_divides(f, g):
                continue
            e = factor_multiplicity(f, g)
            assert e >= 1
            found[g] = e
            progressed = True
            for _ in range(e):
                quotient = remaining.exact_divide(g)
                if quotient is None:
                    break
                remaining = quotient
        # one rung may confirm another: stop after two passes in a row with
        # nothing new; a factor invisible to two schemes is past the
        # empirical design point (the divisibility gate keeps this sound)
        if not progressed and passes >= 2:
            break
    return FactorList.build(ONE, list(found.items()))


# ---------------------------------------------------------------------------
# sparse factors through projection oracles (Algorithm "search, slice,
# interpolate, verify")


def _project_bivariate(f, alpha, beta, gamma, normalizer):
    """f(alpha x + beta t + gamma) / normalizer over (x, t)."""
    m = 2
    assignment = []
    for i in range(1, f.n + 1):
        img = SparsePoly.variable(m, 1).scale(alpha[i - 1])
        if beta[i - 1]:
            img = img + SparsePoly.variable(m, 2).scale(beta[i - 1])
        if gamma[i - 1]:
            img = img + SparsePoly.const(m, gamma[i - 1])
        assignment.append(img)
    return f.substitute(assignment, m=m).scale(ONE / normalizer)


def _project_trivariate(f, alpha, beta, secondary, gamma, normalizer):
    """f(alpha x + beta t1 + secondary t2 + gamma) / normalizer."""
    m = 3
    assignment = []
    for i in range(1, f.n + 1):
        img = SparsePoly.variable(m, 1).scale(alpha[i - 1])
        if beta[i - 1]:
            img = img + SparsePoly.variable(m, 2).scale(beta[i - 1])
        if secondary[i - 1]:
            img = img + SparsePoly.variable(m, 3).scale(secondary[i - 1])
        if gamma[i - 1]:
            img = img + SparsePoly.const(m, gamma[i - 1])
        assignment.append(img)
    return f.substitute(assignment, m=m).scale(ONE / normalizer)


def sparse_irreducible_test(f, oracle, config=None):
    """Irreducibility for f in the oracle's class: f is reducible iff every
    projection f(alpha x + beta t + gamma) is reducible."""
    config = config or DEFAULT_CONFIG
    d = f.degree() or 0
    if d == 0:
        raise PolyError("irreducibility is for nonconstant polynomials")
    if d == 1:
        return True
    shift, _ = monicize(f)
    for pair in oracle.pairs(shift.alpha):
        image = _project_bivariate(
            f, shift.alpha, pair.beta, pair.gamma, shift.normalizer
        )
        fl = factor_monic(image)
        if len(fl.factors) == 1 and fl.factors[0][1] == 1:
            return True
    return False


def _rational_square_root(q):
    if q < 0:
        return None
    num, den = int(q.numerator), int(q.denominator)
    rn, rd = _isqrt(num), _isqrt(den)
    if rn is None or rd is None:
        return None
    return Q(rn, rd)


def _isqrt(v):
    import math

    r = math.isqrt(v)
    return r if r * r == v else None


def _poly_is_square(f):
    if f.is_zero():
        return True
    canon, unit = f.canonical_with_unit()
    if _rational_square_root(unit) is None:
        return False
    return canon.integer_root(2) is not None


def _quadratic_irreducible(g):
    """Exact irreducibility of a total-degree-2 polynomial: monic-shift to
    x^2 + b x + c and test whether b^2 - 4c is a perfect square."""
    shift, g_hat = monicize(g)
    n = g.n
    b = SparsePoly(n, {e[1:]: c for e, c in g_hat.terms.items() if e[0] == 1})
    c0 = SparsePoly(n, {e[1:]: c for e, c in g_hat.terms.items() if e[0] == 0})
    disc = b * b - c0.scale(4)
    return not _poly_is_square(disc)


def _certify_irreducible(g, oracle, config):
    """Irreducibility gate with exact fast paths; falls back to the
    projection-based test of the oracle's class."""
    d = g.degree() or 0
    if d == 1:
        return True
    if oracle.decide_irreducible is not None:
        return oracle.decide_irreducible(g)
    if d == 2:
        return _quadratic_irreducible(g)
    return sparse_irreducible_test(g, oracle, config)


def _slice_t2_zero(h):
    """Trivariate (x, t1, t2) -> bivariate (x, t1) at t2 = 0."""
    terms = {}
    for exps, c in h.terms.items():
        if exps[2] == 0:
            terms[(exps[0], exps[1])] = c
    return SparsePoly(2, terms)


def _eval_001(h):
    """Value of a trivariate (x, t1, t2) polynomial at (0, 0, 1)."""
    total = Q(0)
    for exps, c in h.terms.items():
        if exps[0] == 0 and exps[1] == 0:
            total = total + c
    return total


def sparse_factors(f, s, oracle, config=None):
    """All irreducible factors of f inside the oracle's class with sparsity
    <= s, with multiplicities.  The divisibility gate is unconditional: a
    degraded oracle can only lose factors, never emit a wrong one.

    Bookkeeping keeps the search affordable: projection pairs whose bivariate
    factors are all images of already-found factors (or the residual cofactor
    staying irreducible) cannot contribute and are skipped after one cheap
    factorization, and the residual itself is probed directly whenever it
    shrinks, which ends fully-in-class runs without exhausting the grid.
    """
    config = config or DEFAULT_CONFIG
    if f.is_constant():
        raise PolyError("cannot factor a constant")
    n = f.n
    d = f.degree()
    shift, _ = monicize(f)
    alpha = shift.alpha
    found = {}

    def slot_sparsity(deg):
        """Sparsity ceiling for a class factor of the given degree; None
        when the class has no member of that degree."""
        if oracle.class_degree_bound is not None and deg > oracle.class_degree_bound:
            return None
        if oracle.sparsity_for_degree is not None:
            return min(s, oracle.sparsity_for_degree(deg))
        return s

    def residual():
        product = SparsePoly.const(n, ONE)
        for g, e in found.items():
            product = product * g**e
        quotient = f.exact_divide(product)
        assert quotient is not None
        return quotient

    def probe_direct(h):
        """Admit the residual itself when it is an in-class irreducible."""
        if h.is_constant():
            return False
        hc = h.canonical()
        if hc in found or hc.sparsity() > s or not oracle.contains(hc):
            return False
        if not _certify_irreducible(hc, oracle, config):
            return False
        found[hc] = factor_multiplicity(f, hc)
        return True

    def residual_exhausted(h):
        """True when the residual provably holds no unfound class factor:
        every factor of f outside `found` divides it, so a certified
        irreducible residual (itself already probed) ends the search."""
        if h.is_constant():
            return True
        deg_h = h.degree() or 0
        if deg_h == 1:
            return True
        if deg_h == 2:
            return _quadratic_irreducible(h)
        if oracle.decide_irreducible is not None and oracle.contains(h):
            return oracle.decide_irreducible(h)
        return False

    remaining = residual()
    while probe_direct(remaining):
        remaining = residual()
    stall = 0
    for pair in oracle.pairs(alpha):
        if residual_exhausted(remaining):
            break
        if stall >= config.su_stall:
            break
        f_hat = _project_bivariate(f, alpha, pair.beta, pair.gamma, shift.normalizer)
        bivariate = factor_monic(f_hat)
        images = set()
        for g in found:
            img = _project_bivariate(g, alpha, pair.beta, pair.gamma, ONE)
            if not img.is_zero():
                images.add(img.canonical())
        residual_img = None
        if not remaining.is_constant():
            img = _project_bivariate(remaining, alpha, pair.beta, pair.gamma, ONE)
            if not img.is_zero():
                residual_img = img.canonical()
        deg_remaining = remaining.degree() or 0
        refs = []
        for h, e in bivariate.factors:
            if h in images:
                continue
            deg_slot = h.degree_in(1) or 0
            if deg_slot == deg_remaining:
                # a full-degree candidate could only be the residual itself,
                # which the direct probe has already ruled on
                continue
            s_slot = slot_sparsity(deg_slot)
            if s_slot is None:
                continue  # no class member has this degree
            refs.append((h, e, deg_slot, s_slot))
        if not refs or (
            residual_img is not None
            and len(refs) == 1
            and refs[0][0] == residual_img
        ):
            stall += 1
            continue
        # one shared point sequence; each slot consumes the prefix its own
        # sparsity ceiling requires (plans are nested by construction)
        max_points = 2 * max(entry[3] for entry in refs)
        plan = interpolation_plan((max_points + 1) // 2, n, d)
        point_lists = {j: [] for j in range(len(refs))}
        pair_ok = True

        def omega_slices(omega):
            secondary = tuple(omega[i] - pair.gamma[i] for i in range(n))
            f_omega = _project_trivariate(
                f, alpha, pair.beta, secondary, pair.gamma, shift.normalizer
            )
            trivariate = factor_monic(f_omega)
            slices = []
            for h3, e3 in trivariate.factors:
                raw = _slice_t2_zero(h3)
                if raw.is_zero():
                    continue
                unit = raw.leading_coefficient()
                slices.append((raw.scale(ONE / unit), unit, h3, e3))
            return slices

        points = plan.points[:max_points]
        if config.jobs > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=config.jobs) as pool:
                all_slices = list(pool.map(omega_slices, points))
        else:
            all_slices = [omega_slices(omega) for omega in points]
        for w_idx, slices in enumerate(all_slices):
            for j, (h2, e2, _, s_slot) in enumerate(refs):
                if w_idx >= 2 * s_slot:
                    continue
                matches = [entry for entry in slices if entry[0] == h2]
                if len(matches) > 1:
                    matches = [entry for entry in matches if entry[3] == e2]
                if len(matches) != 1:
                    pair_ok = False
                    break
                _, unit, h3, _ = matches[0]
                point_lists[j].append(_eval_001(h3) / unit)
            if not pair_ok:
                break
        if not pair_ok:
            stall += 1
            continue
        added = False
        for j, (h2, e2, deg_slot, s_slot) in enumerate(refs):
            try:
                candidate = sparse_interpolate(
                    point_lists[j], s_slot, n, deg_slot
                )
            except InterpolationFailure:
                continue
            if candidate.is_zero() or candidate.is_constant():
                continue
            candidate = candidate.canonical()
            if candidate in found:
                continue
            if candidate.sparsity() > s:
                continue
            if not oracle.contains(candidate):
                continue
            if f.exact_divide(candidate) is None:
                continue
            if not _certify_irreducible(candidate, oracle, config):
                continue
            found[candidate] = factor_multiplicity(f, candidate)
            added = True
        if added:
            stall = 0
            remaining = residual()
            while probe_direct(remaining):
                remaining = residual()
        else:
            stall += 1
    return FactorList.build(ONE, list(found.items()))


def factor_su(f, config=None):
    """Sum-of-univariate factors of a sparse polynomial: the sparse-factors
    pipeline instantiated with the support-grid oracle."""
    from .oracles import su_oracle

    config = config or DEFAULT_CONFIG
    n = f.n
    d = f.degree() or 0
    oracle = su_oracle(n, d, config)
    return sparse_factors(f, n * d + 1, oracle, config)
