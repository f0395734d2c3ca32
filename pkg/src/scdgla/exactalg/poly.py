"""Sparse multivariate polynomials over Q with lex / grevlex orders."""

from fractions import Fraction

from .rational import Q, format_rational


class NotDivisible(ArithmeticError):
    """An exact division was requested but leaves a remainder."""


def lex_key(e):
    return e


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


ORDERS = {"lex": lex_key, "grevlex": grevlex_key}


def order_key(order):
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError("unknown monomial order %r" % (order,)) from None


class MPoly:
    """Polynomial over Q in a fixed ordered tuple of named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent vector %r has wrong length" % (e,))
                c = Q(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    @classmethod
    def _raw(cls, variables, terms):
        p = cls.__new__(cls)
        p.vars = variables
        p.terms = terms
        return p

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        c = Q(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables, i):
        variables = tuple(variables)
        if isinstance(i, str):
            i = variables.index(i)
        e = [0] * len(variables)
        e[i] = 1
        return cls._raw(variables, {tuple(e): Fraction(1)})

    @classmethod
    def gens(cls, variables):
        return [cls.var(variables, i) for i in range(len(variables))]

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError("variable sets differ: %r vs %r" % (self.vars, other.vars))
            return other
        return MPoly.const(self.vars, other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (MPoly, int, Fraction)):
            return not (self - other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction)):
                other = MPoly.const(self.vars, other)
            else:
                return NotImplemented
        elif other.vars != self.vars:
            raise ValueError("variable sets differ")
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MPoly._raw(self.vars, t)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly._raw(self.vars, {})
            return MPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.vars != self.vars:
            raise ValueError("variable sets differ")
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MPoly._raw(self.vars, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        r = MPoly.const(self.vars, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return used

    def leading(self, order="grevlex"):
        key = order_key(order)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order="grevlex"):
        _, c = self.leading(order)
        return self * (1 / c)

    def evaluate(self, values):
        """Substitute scalars for all variables."""
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for v, k in zip(values, e):
                if k:
                    m *= Q(v) ** k
            total += m
        return total

    def substitute(self, images):
        """Substitute MPolys (in a common ring) for the variables."""
        out = None
        for e, c in self.terms.items():
            m = None
            for img, k in zip(images, e):
                if k:
                    m = img ** k if m is None else m * img ** k
            term = m * c if m is not None else c
            out = term if out is None else out + term
        if out is None:
            base = next((i for i in images if isinstance(i, MPoly)), None)
            return MPoly.const(base.vars, 0) if base is not None else Fraction(0)
        return out

    def exact_div(self, g, order="lex"):
        """Quotient self / g; raises NotDivisible if g does not divide self."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        key = order_key(order)
        ge, gc = max(g.terms.items(), key=lambda t: key(t[0]))
        rem = MPoly._raw(self.vars, dict(self.terms))
        quot = {}
        while rem.terms:
            e, c = max(rem.terms.items(), key=lambda t: key(t[0]))
            if any(a < b for a, b in zip(e, ge)):
                raise NotDivisible("%s is not divisible by %s" % (self, g))
            qe = tuple(a - b for a, b in zip(e, ge))
            qc = c / gc
            quot[qe] = quot.get(qe, 0) + qc
            rem = rem - MPoly._raw(self.vars, {qe: qc}) * g
        return MPoly._raw(self.vars, {e: c for e, c in quot.items() if c})

    def to_json(self):
        return [[format_rational(c), list(e)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, variables, data):
        return cls(variables, {tuple(e): Q(c) for c, e in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True):
            mono = "*".join(v if k == 1 else "%s^%d" % (v, k)
                            for v, k in zip(self.vars, e) if k)
            cs = format_rational(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(cs + "*" + mono)
        return " + ".join(parts).replace("+ -", "- ")
