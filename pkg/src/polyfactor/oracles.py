"""Irreducibility-preserving projection oracles.

An oracle, given the monic-shift direction alpha, yields projection pairs
(beta, gamma); its contract is that for every irreducible polynomial of its
class (monic-shiftable by alpha), some yielded pair keeps
g(alpha x + beta t + gamma) irreducible as a bivariate polynomial.

Two instantiations:

* constant-degree class: pairs ((a^{w_i})_i, (a^{w'_i})_i) for a = 1, 2, ...
  along the weight curve of an isolation scheme,
* sums of univariate polynomials: grids over two- and three-variable
  supports, the remaining coordinates zeroed so those variables collapse
  onto alpha x (the pair encodes the support projection exactly).

Grids at degree bounds above 1 explode; by default the generator yields a
graded prefix within a configured budget (sound: the consumer's divisibility
gate never admits a wrong factor; only completeness degrades), or raises
CapError in strict mode.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .rational import Q, ZERO, ONE
from .sparse import SparsePoly
from .errors import CapError
from .isolation import compact_scheme
from .config import DEFAULT as DEFAULT_CONFIG


@dataclass(frozen=True)
class ProjectionPair:
    beta: tuple
    gamma: tuple
    absorbed: frozenset = field(default_factory=frozenset)
    # absorbed: variables whose beta/gamma coordinates are zero so that the
    # projection sends them to alpha_i * x, as in the support-restricted
    # hitting sets; informational, application is uniform.


@dataclass(frozen=True)
class IrredProjOracle:
    name: str
    n: int
    membership: object  # SparsePoly -> bool
    generator: object  # alpha -> iterator of ProjectionPair
    decide_irreducible: object = None  # optional direct decision procedure
    class_degree_bound: object = None  # max degree of any class member
    sparsity_for_degree: object = None  # degree -> sparsity ceiling in class

    def contains(self, f):
        return self.membership(f)

    def pairs(self, alpha):
        return self.generator(alpha)


# ---------------------------------------------------------------------------
# constant-degree classes


def constant_degree_oracle(delta, n, d, config=None, scheme=None):
    """Projection pairs along the weight curve a -> (a^w, a^w')."""
    config = config or DEFAULT_CONFIG
    if delta > config.max_delta:
        raise CapError("max_delta", delta, config.max_delta)
    if scheme is None:
        scheme = compact_scheme(n, delta)
    curve_bound = 2 * delta**5 * max(max(scheme.w), max(scheme.w_prime))
    points = curve_bound + 1
    if points > config.oracle_points:
        if config.strict_caps:
            raise CapError("oracle_points", points, config.oracle_points)
        points = config.oracle_points

    def membership(f):
        return (f.degree() or 0) <= delta

    def generator(alpha):
        for a in range(1, points + 1):
            beta = tuple(Q(a) ** wi for wi in scheme.w)
            gamma = tuple(Q(a) ** wi for wi in scheme.w_prime)
            yield ProjectionPair(beta, gamma)

    import math

    return IrredProjOracle(
        "constant-degree:%d" % delta,
        n,
        membership,
        generator,
        None,
        delta,
        lambda deg: math.comb(n + deg, deg),
    )


# ---------------------------------------------------------------------------
# sums of univariates


def su_membership(f):
    """True iff every term involves at most one variable."""
    for exps in f.terms:
        if sum(1 for e in exps if e) > 1:
            return False
    return True


def su_is_irreducible_by_support(f):
    """True when an SU polynomial depends on >= 3 variables; None (unknown)
    otherwise -- the two-variable case needs the bivariate factorizer."""
    if not su_membership(f):
        raise ValueError("not a sum of univariate polynomials")
    if len(f.var_support()) >= 3:
        return True
    return None


def su_decide_irreducible(f):
    """Exact irreducibility for SU polynomials: >= 3 live variables are
    always irreducible, <= 2 go to the dense factorizer."""
    by_support = su_is_irreducible_by_support(f)
    if by_support is not None:
        return by_support
    from .basefactor import is_irreducible_lowvar

    support = sorted(f.var_support())
    if not support:
        return False
    compact = {var: slot for slot, var in enumerate(support)}
    terms = {}
    for exps, c in f.terms.items():
        new = [0] * len(support)
        for i, e in enumerate(exps):
            if e:
                new[compact[i + 1]] = e
        terms[tuple(new)] = c
    return is_irreducible_lowvar(SparsePoly(len(support), terms))


def _graded_tuples(width, radius_bound):
    """All tuples in {1..radius_bound}^width, by max coordinate then lex."""
    for radius in range(1, radius_bound + 1):
        for combo in _tuples_up_to(width, radius):
            if max(combo) == radius:
                yield combo


def _tuples_up_to(width, radius):
    if width == 0:
        yield ()
        return
    for first in range(1, radius + 1):
        for rest in _tuples_up_to(width - 1, radius):
            yield (first,) + rest


def su_oracle(n, d, config=None):
    """Support-grid oracle for sum-of-univariate factors.

    Branches over variable pairs (grid width 4) and triples (grid width 6)
    with values from {1 .. 2d^5+1}; coordinates outside the support are zero,
    matching the proof's projection of the remaining variables onto x.
    """
    config = config or DEFAULT_CONFIG
    radius = 2 * d**5 + 1
    pair_branches = list(combinations(range(1, n + 1), 2)) if n >= 2 else []
    triple_branches = list(combinations(range(1, n + 1), 3)) if n >= 3 else []
    full_size = len(pair_branches) * radius**4 + len(triple_branches) * radius**6
    budget = config.su_budget
    if full_size > budget and config.strict_caps:
        raise CapError("su_budget", full_size, budget)

    def generator(alpha):
        emitted = 0
        for r in range(1, radius + 1):
            for support, width in [(b, 4) for b in pair_branches] + [
                (b, 6) for b in triple_branches
            ]:
                k = width // 2
                for combo in _tuples_up_to(width, r):
                    if max(combo) != r:
                        continue
                    if emitted >= budget:
                        return
                    beta = [ZERO] * n
                    gamma = [ZERO] * n
                    for idx, var in enumerate(support):
                        beta[var - 1] = Q(combo[idx])
                        gamma[var - 1] = Q(combo[k + idx])
                    absorbed = frozenset(
                        v for v in range(1, n + 1) if v not in support
                    )
                    emitted += 1
                    yield ProjectionPair(tuple(beta), tuple(gamma), absorbed)
        if n == 1:
            # a univariate g(alpha x + beta t + gamma) factors exactly as g
            yield ProjectionPair((ONE,), (ONE,))

    return IrredProjOracle(
        "su",
        n,
        su_membership,
        generator,
        su_decide_irreducible,
        d,
        lambda deg: n * deg + 1,
    )
