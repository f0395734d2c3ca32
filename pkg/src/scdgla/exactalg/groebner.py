"""Buchberger's algorithm with the product and chain criteria.

Used as a decision procedure: an ideal has a common zero over the algebraic
closure of Q exactly when its reduced Groebner basis is not {1}.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .poly import MPoly, order_key

DEFAULT_SPAIR_BUDGET = 20000


class DegreeBudgetExceeded(RuntimeError):
    """Resource guard tripped; the mathematical question is left undecided."""


@dataclass(frozen=True)
class PolyIdeal:
    variables: tuple
    generators: tuple = field(default_factory=tuple)
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        gens = tuple(self.generators)
        for g in gens:
            if g.vars != self.variables:
                raise ValueError("generator %r is not over %r" % (g, self.variables))
        object.__setattr__(self, "generators", gens)
        order_key(self.order)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class _Ring:
    def __init__(self, variables, order):
        self.vars = variables
        self.key = order_key(order)

    def lt(self, p):
        e = max(p.terms, key=self.key)
        return e, p.terms[e]

    def monic(self, p):
        _, c = self.lt(p)
        return p * (1 / c) if c != 1 else p

    def reduce(self, f, G, lts):
        """Full reduction of f modulo G (all terms, not just the head)."""
        r = {}
        p = dict(f.terms)
        key = self.key
        while p:
            e = max(p, key=key)
            c = p[e]
            for g, (ge, gc) in zip(G, lts):
                if _divides(ge, e):
                    shift = tuple(x - y for x, y in zip(e, ge))
                    q = c / gc
                    for ee, cc in g.terms.items():
                        m = tuple(x + y for x, y in zip(ee, shift))
                        v = p.get(m, 0) - q * cc
                        if v:
                            p[m] = v
                        else:
                            p.pop(m, None)
                    break
            else:
                r[e] = c
                del p[e]
        return MPoly._raw(self.vars, r)

    def spoly(self, f, g):
        fe, fc = self.lt(f)
        ge, gc = self.lt(g)
        m = _lcm(fe, ge)
        a = MPoly._raw(self.vars, {tuple(x - y for x, y in zip(m, fe)): 1 / fc})
        b = MPoly._raw(self.vars, {tuple(x - y for x, y in zip(m, ge)): 1 / gc})
        return a * f - b * g


def buchberger(ideal, budget=DEFAULT_SPAIR_BUDGET):
    """Return a (non-reduced) Groebner basis as a list of monic MPolys."""
    R = _Ring(ideal.variables, ideal.order)
    G = []
    lts = []
    for f in ideal.generators:
        if f:
            f = R.reduce(f, G, lts) if G else f
            if f:
                f = R.monic(f)
                G.append(f)
                lts.append(R.lt(f))
    pairs = set(combinations(range(len(G)), 2))
    processed = 0
    while pairs:
        # normal selection strategy: smallest lcm first
        i, j = min(pairs, key=lambda ij: R.key(_lcm(lts[ij[0]][0], lts[ij[1]][0])))
        pairs.discard((i, j))
        ei, ej = lts[i][0], lts[j][0]
        m = _lcm(ei, ej)
        if all(a + b == c for a, b, c in zip(ei, ej, m)):
            continue                      # product criterion
        if any(k not in (i, j) and _divides(lts[k][0], m)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue                      # chain criterion
        processed += 1
        if processed > budget:
            raise DegreeBudgetExceeded("S-pair budget %d exceeded" % budget)
        h = R.reduce(R.spoly(G[i], G[j]), G, lts)
        if h:
            h = R.monic(h)
            G.append(h)
            lts.append(R.lt(h))
            if len(h.terms) == 1 and not any(next(iter(h.terms))):
                return [h]                # unit ideal
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))
    return G


def reduce_basis(G, variables, order):
    """Minimalise and interreduce a Groebner basis; sorted, monic output."""
    R = _Ring(tuple(variables), order)
    G = [R.monic(g) for g in G if g]
    minimal = []
    for i, g in enumerate(G):
        ge = R.lt(g)[0]
        if any(_divides(R.lt(h)[0], ge) and (R.lt(h)[0] != ge or j < i)
               for j, h in enumerate(G) if j != i):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = R.reduce(g, others, [R.lt(h) for h in others])
        out.append(R.monic(r))
    out.sort(key=lambda p: R.key(R.lt(p)[0]))
    return out


def groebner(ideal, budget=DEFAULT_SPAIR_BUDGET):
    """Reduced Groebner basis of `ideal`, returned as a PolyIdeal."""
    if not ideal.variables:
        raise ValueError("groebner needs a nonempty variable set")
    G = buchberger(ideal, budget)
    return PolyIdeal(ideal.variables, tuple(reduce_basis(G, ideal.variables, ideal.order)),
                     ideal.order)


def is_unit_ideal_basis(G):
    return any(g and all(not any(e) for e in g.terms) for g in G)


def normal_form(f, basis):
    """Remainder of f modulo a Groebner basis (PolyIdeal)."""
    R = _Ring(basis.variables, basis.order)
    G = list(basis.generators)
    return R.reduce(f, G, [R.lt(g) for g in G])


def ideal_has_solution(ideal, budget=DEFAULT_SPAIR_BUDGET):
    """True iff 1 is not in the ideal (a common zero exists over Q-bar)."""
    gens = [g for g in ideal.generators if g]
    if not gens:
        return True
    if not ideal.variables:
        return False
    G = groebner(PolyIdeal(ideal.variables, tuple(gens), ideal.order), budget)
    return not is_unit_ideal_basis(G.generators)


def is_zero_dimensional(basis):
    """For a Groebner basis: every variable has a pure power as a leading monomial."""
    R = _Ring(basis.variables, basis.order)
    n = len(basis.variables)
    hit = set()
    for g in basis.generators:
        e = R.lt(g)[0]
        nz = [i for i in range(n) if e[i]]
        if len(nz) == 1:
            hit.add(nz[0])
    return len(hit) == n


def _rational_roots(p, i):
    """Rational roots of a polynomial that only involves variable i."""
    coeffs = {}
    for e, c in p.terms.items():
        coeffs[e[i]] = c
    deg = max(coeffs)
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = {k: int(c * den) for k, c in coeffs.items()}
    low = min(k for k in ints if ints[k])
    roots = set()
    if low > 0:
        roots.add(Fraction(0))
    a0 = abs(ints[low])
    an = abs(ints[deg])
    for pnum in _divisors(a0):
        for q in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * pnum, q)
                if sum(c * r ** k for k, c in coeffs.items()) == 0:
                    roots.add(r)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [0]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def find_rational_point(ideal, budget=DEFAULT_SPAIR_BUDGET):
    """Try to find a rational common zero of a consistent ideal.

    Variables are fixed one at a time: to the unique value forced by a
    univariate basis element when available, otherwise to 0 (or small
    integers) as long as the ideal stays consistent.  Returns a list of
    Fractions or None; None does not mean no point exists.
    """
    variables = ideal.variables
    lex_ideal = PolyIdeal(variables, ideal.generators, "lex")
    G = groebner(lex_ideal, budget) if ideal.generators else lex_ideal
    if is_unit_ideal_basis(G.generators):
        return None
    return _search_point(G, {}, budget)


def _search_point(G, fixed, budget):
    variables = G.variables
    n = len(variables)
    if len(fixed) == n:
        return [fixed[i] for i in range(n)]
    # prefer a variable pinned by a univariate element
    candidates = None
    for g in G.generators:
        used = g.variables_used() - set(fixed)
        if len(used) == 1:
            i = next(iter(used))
            if g.variables_used() <= set(fixed) | {i}:
                gi = _specialize(g, fixed)
                candidates = (i, _rational_roots(gi, i))
                break
    if candidates is None:
        free = [i for i in range(n) if i not in fixed]
        i = free[-1]
        cands = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2)]
    else:
        i, cands = candidates
    for v in cands:
        trial = dict(fixed)
        trial[i] = v
        gens = [h for h in (_specialize(g, trial) for g in G.generators) if h]
        if any(h.is_constant() for h in gens):
            continue
        H = groebner(PolyIdeal(variables, tuple(gens) or (MPoly.const(variables, 0),), "lex"),
                     budget) if gens else PolyIdeal(variables, (), "lex")
        if is_unit_ideal_basis(H.generators):
            continue
        pt = _search_point(H, trial, budget)
        if pt is not None:
            return pt
    return None


def _specialize(p, fixed):
    """Substitute fixed values for some variables (result in the same ring)."""
    out = {}
    for e, c in p.terms.items():
        m = c
        e2 = list(e)
        for i, v in fixed.items():
            if e2[i]:
                m *= Fraction(v) ** e2[i]
                e2[i] = 0
        if m:
            t = tuple(e2)
            out[t] = out.get(t, 0) + m
            if not out[t]:
                del out[t]
    return MPoly._raw(p.vars, out)
