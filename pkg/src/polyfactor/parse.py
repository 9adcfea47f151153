"""Text polynomial grammar shared by the CLI and test fixtures.

Terms joined by + and -, a term being [coeff][*var^exp ...].  Coefficients
are integers or a/b fractions, variables are z1..zN plus the reserved names
x, y, t.  Whitespace is insignificant.  Example:

    3*z1^2*z2 - 5/7*z3 + 1

parse_product additionally accepts parenthesized products and powers of the
base grammar, e.g. "(z1+z2)^2*(z1-1)"; the CLI exposes it as --expand.
"""

import re

from .rational import Q, ONE
from .sparse import SparsePoly
from .errors import PolyError


class ParseError(PolyError):
    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\s*/\s*\d+)?)"
    r"|(?P<var>z\d+|[xyt])"
    r"|(?P<op>[-+*^()]))"
)

RESERVED = {"x": 0, "y": 1, "t": 2}


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip():
                raise ParseError("unexpected character %r" % text[pos], pos)
            break
        if match.lastgroup == "number":
            tokens.append(("number", match.group("number").replace(" ", ""), pos))
        elif match.lastgroup == "var":
            tokens.append(("var", match.group("var"), pos))
        else:
            tokens.append(("op", match.group("op"), pos))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


def infer_arity(text, reserved_ok=True):
    """Variable count implied by the mention set: max z index, or the
    reserved-name convention (x,y,t -> slots 0,1,2) when only those occur."""
    zmax = 0
    reserved = False
    for kind, value, _ in tokenize(text)[:-1]:
        if kind == "var":
            if value in RESERVED:
                reserved = True
            else:
                zmax = max(zmax, int(value[1:]))
    if reserved:
        if not reserved_ok:
            raise ParseError("reserved variable used where z-variables expected", 0)
        if zmax:
            raise ParseError("cannot mix reserved names with z-variables", 0)
        return 3
    return max(zmax, 1)


def _var_slot(name, n, pos):
    if name in RESERVED:
        slot = RESERVED[name]
        if slot >= n:
            raise ParseError("variable %s needs arity > %d" % (name, slot), pos)
        return slot
    index = int(name[1:])
    if index < 1 or index > n:
        raise ParseError("variable %s out of range 1..%d" % (name, n), pos)
    return index - 1


class _Parser:
    def __init__(self, tokens, n, products):
        self.tokens = tokens
        self.i = 0
        self.n = n
        self.products = products

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError("expected %r" % op, pos)

    def parse_sum(self):
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.next()
            sign = -1 if value == "-" else 1
        total = self.parse_term().scale(sign)
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.next()
                term = self.parse_term()
                total = total - term if value == "-" else total + term
            else:
                return total

    def parse_term(self):
        factors = [self.parse_factor()]
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "*":
                self.next()
                factors.append(self.parse_factor())
            elif self.products and kind in ("var", "number"):
                # implicit product inside --expand expressions
                factors.append(self.parse_factor())
            elif self.products and kind == "op" and value == "(":
                factors.append(self.parse_factor())
            else:
                break
        result = factors[0]
        for f in factors[1:]:
            result = result * f
        return result

    def parse_factor(self):
        base = self.parse_atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.next()
            kind, value, pos = self.next()
            if kind != "number" or "/" in value:
                raise ParseError("exponent must be a non-negative integer", pos)
            base = base ** int(value)
        return base

    def parse_atom(self):
        kind, value, pos = self.next()
        if kind == "number":
            return SparsePoly.const(self.n, Q(*map(int, value.split("/"))) if "/" in value else Q(int(value)))
        if kind == "var":
            slot = _var_slot(value, self.n, pos)
            return SparsePoly.variable(self.n, slot + 1)
        if kind == "op" and value == "(" and self.products:
            inner = self.parse_sum()
            self.expect_op(")")
            return inner
        if kind == "op" and value == "-" and self.products:
            return -self.parse_atom()
        raise ParseError("unexpected token %r" % (value or "end of input"), pos)


def parse_poly(text, n=None):
    """Parse the flat term grammar into a canonical SparsePoly."""
    if n is None:
        n = infer_arity(text)
    tokens = tokenize(text)
    parser = _Parser(tokens, n, products=False)
    poly = parser.parse_sum()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input %r" % value, pos)
    return poly


def parse_product(text, n=None):
    """Parse the extended grammar with parentheses and products (--expand)."""
    if n is None:
        n = infer_arity(text)
    tokens = tokenize(text)
    parser = _Parser(tokens, n, products=True)
    poly = parser.parse_sum()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input %r" % value, pos)
    return poly


def _var_name(slot, n, reserved):
    if reserved:
        return "xyt"[slot]
    return "z%d" % (slot + 1)


def render_poly(f, reserved=None):
    """Canonical text form; graded-lex descending term order.

    reserved=True uses x,y,t names (3-variable grids); default uses z1..zn
    except for 3-variable polynomials explicitly flagged.
    """
    if reserved is None:
        reserved = False
    if f.is_zero():
        return "0"
    parts = []
    from .sparse import grlex_key

    for exps in sorted(f.terms, key=grlex_key, reverse=True):
        coeff = f.terms[exps]
        mono = "*".join(
            _var_name(i, f.n, reserved) + ("^%d" % e if e > 1 else "")
            for i, e in enumerate(exps)
            if e
        )
        num = coeff if coeff > 0 else -coeff
        mag = str(num)
        if mono:
            body = mono if mag == "1" else "%s*%s" % (mag, mono)
        else:
            body = mag
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)
