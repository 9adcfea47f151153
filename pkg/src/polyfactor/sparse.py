"""Exact sparse multivariate polynomials over Q.

A polynomial is a term table mapping exponent tuples (one slot per variable,
variable i of z1..zn at slot i-1) to nonzero rational coefficients.  Values
are immutable after construction; every operation returns a fresh polynomial.

The monomial order used everywhere (leading terms, canonical scaling) is
graded lexicographic: compare total degree first, then the exponent tuple.
"""

from .rational import Q, ZERO, ONE
from .errors import VariableCountMismatch, ZeroDivisorError


def grlex_key(exps):
    return (sum(exps), exps)


class SparsePoly:
    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms):
        """Build from a variable count and a {exponents: coefficient} map.

        Zero coefficients are dropped; exponent tuples must have length n.
        """
        clean = {}
        for exps, coeff in terms.items():
            if len(exps) != n:
                raise VariableCountMismatch(
                    "exponent tuple %r does not match n=%d" % (exps, n)
                )
            if coeff:
                clean[tuple(exps)] = coeff
        self.n = n
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def const(cls, n, c):
        c = Q(c)
        if not c:
            return cls(n, {})
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n, i):
        """The variable z_i (1-based), as a polynomial in n variables."""
        if not 1 <= i <= n:
            raise IndexError("variable index %d out of range 1..%d" % (i, n))
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, n, exps, coeff=ONE):
        return cls(n, {tuple(exps): Q(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.n, ZERO)

    def degree(self):
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        """Degree in variable var (1-based); None for the zero polynomial."""
        if not self.terms:
            return None
        return max(e[var - 1] for e in self.terms)

    def sparsity(self):
        return len(self.terms)

    def var_support(self):
        """Indices (1-based) of variables the polynomial depends on."""
        support = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    support.add(i + 1)
        return support

    def leading_term(self):
        """(exponents, coefficient) maximal under graded lex; None if zero."""
        if not self.terms:
            return None
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def leading_coefficient(self):
        lt = self.leading_term()
        return ZERO if lt is None else lt[1]

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.n, frozenset(self.terms.items())))
            )
        return self._hash

    def __setattr__(self, name, value):
        if hasattr(self, "_hash") and name != "_hash":
            raise AttributeError("SparsePoly is immutable")
        object.__setattr__(self, name, value)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parse import render_poly

        return "SparsePoly(%d, %s)" % (self.n, render_poly(self))

    # -- ring arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise VariableCountMismatch(
                "variable counts differ: %d vs %d" % (self.n, other.n)
            )

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps)
            if acc is None:
                terms[exps] = coeff
            else:
                acc = acc + coeff
                if acc:
                    terms[exps] = acc
                else:
                    del terms[exps]
        return SparsePoly(self.n, terms)

    def __neg__(self):
        return SparsePoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        terms = {}
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(exps)
                prod = c1 * c2
                if acc is None:
                    terms[exps] = prod
                else:
                    acc = acc + prod
                    if acc:
                        terms[exps] = acc
                    else:
                        del terms[exps]
        return SparsePoly(self.n, terms)

    def scale(self, c):
        c = Q(c)
        if not c:
            return SparsePoly.zero(self.n)
        return SparsePoly(self.n, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    # -- calculus and structure ---------------------------------------------

    def hom_component(self, k):
        """Sum of the total-degree-k terms."""
        if k < 0:
            raise ValueError("negative degree")
        return SparsePoly(
            self.n, {e: c for e, c in self.terms.items() if sum(e) == k}
        )

    def top_component(self):
        d = self.degree()
        if d is None:
            return self
        return self.hom_component(d)

    def derivative(self, var, order=1):
        """order-th partial derivative in variable var (1-based)."""
        if not 1 <= var <= self.n:
            raise IndexError("variable index %d out of range 1..%d" % (var, self.n))
        if order < 0:
            raise ValueError("negative derivative order")
        result = self
        for _ in range(order):
            terms = {}
            i = var - 1
            for exps, coeff in result.terms.items():
                e = exps[i]
                if e:
                    reduced = exps[:i] + (e - 1,) + exps[i + 1 :]
                    acc = terms.get(reduced)
                    add = coeff * e
                    terms[reduced] = add if acc is None else acc + add
            result = SparsePoly(self.n, terms)
            if result.is_zero():
                break
        return result

    def eval_point(self, point):
        """Evaluate at a rational point (sequence of length n)."""
        if len(point) != self.n:
            raise VariableCountMismatch("point arity %d != %d" % (len(point), self.n))
        powers = [{0: ONE} for _ in range(self.n)]
        values = [Q(v) for v in point]
        total = ZERO
        for exps, coeff in self.terms.items():
            acc = coeff
            for i, e in enumerate(exps):
                if not e:
                    continue
                cache = powers[i]
                p = cache.get(e)
                if p is None:
                    p = values[i] ** e
                    cache[e] = p
                acc = acc * p
            total = total + acc
        return total

    def substitute(self, assignment, m=None):
        """Compose with an assignment mapping each variable to a polynomial.

        assignment: sequence of length n of SparsePoly over a common variable
        count m (taken from the first entry when m is None).  Constants are
        also accepted.
        """
        if len(assignment) != self.n:
            raise VariableCountMismatch(
                "assignment covers %d of %d variables" % (len(assignment), self.n)
            )
        if m is None:
            for img in assignment:
                if isinstance(img, SparsePoly):
                    m = img.n
                    break
            if m is None:
                raise ValueError("cannot infer target variable count")
        images = []
        for img in assignment:
            if isinstance(img, SparsePoly):
                if img.n != m:
                    raise VariableCountMismatch("assignment entries disagree on n")
                images.append(img)
            else:
                images.append(SparsePoly.const(m, img))
        power_cache = [[SparsePoly.const(m, 1)] for _ in range(self.n)]

        def power(i, e):
            cache = power_cache[i]
            while len(cache) <= e:
                cache.append(cache[-1] * images[i])
            return cache[e]

        total = SparsePoly.zero(m)
        for exps, coeff in self.terms.items():
            acc = SparsePoly.const(m, coeff)
            for i, e in enumerate(exps):
                if e:
                    acc = acc * power(i, e)
            total = total + acc
        return total

    def shift(self, offsets):
        """Translate z_i -> z_i + offsets[i]."""
        assignment = []
        for i, off in enumerate(offsets, start=1):
            assignment.append(
                SparsePoly.variable(self.n, i) + SparsePoly.const(self.n, off)
            )
        return self.substitute(assignment, m=self.n)

    def map_variables(self, positions, m):
        """Re-embed into m variables, sending slot i to slot positions[i]."""
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * m
            for i, e in enumerate(exps):
                if e:
                    new[positions[i]] += e
            terms[tuple(new)] = terms.get(tuple(new), ZERO) + coeff
        return SparsePoly(m, terms)

    # -- division ------------------------------------------------------------

    def exact_divide(self, g):
        """Quotient h with self = g*h, or None when g does not divide.

        Single-divisor multivariate division by leading-term elimination
        under graded lex; for an actual divisor the reduction always runs to
        a zero remainder.
        """
        if not isinstance(g, SparsePoly):
            raise TypeError("divisor must be a SparsePoly")
        self._check(g)
        if g.is_zero():
            raise ZeroDivisorError("division by the zero polynomial")
        if self.is_zero():
            return SparsePoly.zero(self.n)
        g_lt_exps, g_lt_coeff = g.leading_term()
        rem = dict(self.terms)
        quot = {}
        g_items = list(g.terms.items())
        while rem:
            r_exps = max(rem, key=grlex_key)
            r_coeff = rem[r_exps]
            q_exps = tuple(a - b for a, b in zip(r_exps, g_lt_exps))
            if any(e < 0 for e in q_exps):
                return None
            q_coeff = r_coeff / g_lt_coeff
            quot[q_exps] = q_coeff
            for e2, c2 in g_items:
                exps = tuple(a + b for a, b in zip(q_exps, e2))
                acc = rem.get(exps)
                sub = q_coeff * c2
                if acc is None:
                    rem[exps] = -sub
                else:
                    acc = acc - sub
                    if acc:
                        rem[exps] = acc
                    else:
                        del rem[exps]
        return SparsePoly(self.n, quot)

    def divides(self, other):
        return other.exact_divide(self) is not None

    # -- normalization -------------------------------------------------------

    def canonical(self):
        """Scale so the graded-lex leading coefficient is 1."""
        lt = self.leading_term()
        if lt is None or lt[1] == ONE:
            return self
        inv = ONE / lt[1]
        return SparsePoly(self.n, {e: c * inv for e, c in self.terms.items()})

    def canonical_with_unit(self):
        """(canonical polynomial, unit) with unit * canonical == self."""
        lt = self.leading_term()
        if lt is None:
            return self, ONE
        return self.canonical(), lt[1]

    def integer_root(self, k):
        """Monic-leading k-th root if self is an exact k-th power, else None."""
        if k == 1:
            return self
        if self.is_zero():
            return self
        d = self.degree()
        if d % k:
            return None
        lt_exps, lt_coeff = self.leading_term()
        if any(e % k for e in lt_exps) or lt_coeff != ONE:
            return None
        root_lt = tuple(e // k for e in lt_exps)
        root = SparsePoly(self.n, {root_lt: ONE})
        remainder = self - root**k
        # Descending graded-lex recovery: the top term of the residual is
        # k * LT(root)^(k-1) * (next missing root term), with no cancellation
        # possible at that key.  Iterations are bounded by the monomial count
        # of the candidate root's degree range.
        import math

        max_iters = math.comb(d // k + self.n, self.n) + 1
        guard = 0
        lead_part = tuple(e * (k - 1) for e in root_lt)
        while remainder:
            guard += 1
            if guard > max_iters:
                return None
            r_exps = max(remainder.terms, key=grlex_key)
            q_exps = tuple(a - b for a, b in zip(r_exps, lead_part))
            if any(e < 0 for e in q_exps):
                return None
            if grlex_key(q_exps) >= grlex_key(root_lt):
                return None
            coeff = remainder.terms[r_exps] / k
            root = root + SparsePoly.monomial(self.n, q_exps, coeff)
            remainder = self - root**k
        return root


def poly_from_terms(n, pairs):
    """Sum duplicate exponent tuples; pairs is an iterable of (exps, coeff)."""
    terms = {}
    for exps, coeff in pairs:
        exps = tuple(exps)
        acc = terms.get(exps)
        terms[exps] = coeff if acc is None else acc + coeff
    return SparsePoly(n, terms)
