"""Elements of L (x) m_A for a graded Lie basis L, and their series calculus.

An element is a dict {(key, a): coeff}: `key` is a basis key of L and `a`
indexes the basis of m_A.  Coefficients are Fractions or MPolys; nothing else
about them is assumed beyond ring operations and truth testing.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exactalg import Eliminator


class LieBasis:
    """Interface: a graded Lie algebra with differential, on named basis keys."""

    def degree(self, key):
        raise NotImplementedError

    def d_key(self, key):
        raise NotImplementedError

    def bracket_key(self, k1, k2):
        raise NotImplementedError


def add_into(out, x, c=1):
    for k, v in x.items():
        nv = out.get(k, 0) + (v * c if c != 1 else v)
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def add(*xs):
    out = {}
    for x in xs:
        add_into(out, x)
    return out


def sub(x, y):
    return add_into(dict(x), y, -1)


def neg(x):
    return {k: -v for k, v in x.items()}


def scale(x, c):
    if not c:
        return {}
    return {k: v * c for k, v in x.items()}


def is_zero(x):
    return not any(x.values())


def clean(x):
    return {k: v for k, v in x.items() if v}


@lru_cache(maxsize=None)
def bernoulli(n):
    """Bernoulli numbers with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, k) * bernoulli(k) for k in range(n)) / Fraction(n + 1)


def compositions(n, parts):
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


class LieTensor:
    """L (x) m_A: bracket [u e_a, v e_b] = [u, v] e_a e_b (m_A sits in degree 0)."""

    def __init__(self, L, A):
        self.L, self.A = L, A
        self.N = A.nilpotency_index

    def degrees(self, x):
        return {self.L.degree(k) for (k, _), v in x.items() if v}

    def check_degree(self, x, deg, what="element"):
        ds = self.degrees(x)
        if ds and ds != {deg}:
            raise ValueError("%s must be homogeneous of degree %d, found %s"
                             % (what, deg, sorted(ds)))

    def d(self, x):
        out = {}
        L = self.L
        for (k, a), c in x.items():
            for k2, v in L.d_key(k).items():
                key = (k2, a)
                nv = out.get(key, 0) + c * v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def br(self, x, y):
        out = {}
        L, table = self.L, self.A.table
        for (k1, a), c1 in x.items():
            if not c1:
                continue
            row = table[a]
            for (k2, b), c2 in y.items():
                prod = row[b]
                if not prod or not c2:
                    continue
                bk = L.bracket_key(k1, k2)
                if not bk:
                    continue
                cc = c1 * c2
                for k3, v in bk.items():
                    for e, w in prod.items():
                        key = (k3, e)
                        nv = out.get(key, 0) + cc * (v * w)
                        if nv:
                            out[key] = nv
                        else:
                            out.pop(key, None)
        return out

    def mc_defect(self, x):
        return add_into(self.d(x), self.br(x, x), Fraction(1, 2))

    def twisted_d(self, x, v):
        """d_x v = dv + [x, v]."""
        return add_into(self.d(v), self.br(x, v))

    def ad_exp(self, a, v):
        """e^{ad a} v."""
        out = dict(v)
        term = v
        n = 1
        while True:
            term = self.br(a, term)
            if is_zero(term):
                return out
            add_into(out, term, Fraction(1, factorial(n)))
            n += 1

    def gauge(self, a, x):
        """e^a * x = x + sum_n ad_a^n/(n+1)! ([a, x] - da)."""
        term = sub(self.br(a, x), self.d(a))
        out = dict(x)
        n = 0
        while not is_zero(term):
            add_into(out, term, Fraction(1, factorial(n + 1)))
            term = self.br(a, term)
            n += 1
        return out

    def bch(self, x, y):
        """log(e^x e^y) by the Varadarajan recursion, truncated at m^N = 0."""
        if is_zero(x):
            return dict(y)
        if is_zero(y):
            return dict(x)
        s = add(x, y)
        diff = sub(x, y)
        Z = [None, s]
        for n in range(1, self.N - 1):
            acc = scale(self.br(diff, Z[n]), Fraction(1, 2))
            for p in range(1, n // 2 + 1):
                K = bernoulli(2 * p) / factorial(2 * p)
                for ks in compositions(n, 2 * p):
                    t = s
                    for k in reversed(ks):
                        t = self.br(Z[k], t)
                        if is_zero(t):
                            break
                    if not is_zero(t):
                        add_into(acc, t, K)
            Z.append(scale(acc, Fraction(1, n + 1)))
        out = {}
        for z in Z[1:]:
            add_into(out, z)
        return out

    def bch_many(self, *xs):
        out = {}
        for x in xs:
            out = self.bch(out, x)
        return out


def solve_combination(columns, target):
    """Coefficients c (dict j -> value) with sum_j c_j columns[j] = target, or None."""
    rows = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[j] = v
    el = Eliminator(len(columns))
    for r, row in rows.items():
        el.add_row(row, target.get(r, 0))
        if el.inconsistent:
            return None
    for r, v in target.items():
        if v and r not in rows:
            return None
    return el.particular()


def combine(basis, coeffs):
    out = {}
    for j, c in coeffs.items():
        add_into(out, basis[j], c)
    return out


def apply_functionals(x, functionals):
    """Coordinates of x in (L (x) m_A) / (L (x) m^k), given functionals cutting out m^k."""
    out = {}
    for (k, a), c in x.items():
        for i, f in enumerate(functionals):
            w = f.get(a)
            if w:
                key = (k, i)
                nv = out.get(key, 0) + c * w
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
    return out


class _Scalars:
    """Stand-in coefficient ring Q for brackets of plain (uncoefficiented) elements."""

    r = 1
    names = ("1",)
    table = [[{0: Fraction(1)}]]
    nilpotency_index = None


SCALARS = _Scalars()
