"""Polynomial differential forms on standard simplices.

Omega_n is presented in the free coordinates t_0 .. t_{n-1}; the last
barycentric coordinate is eliminated by t_n = 1 - sum t_i, dt_n = -sum dt_i.
A monomial is a pair (exps, mask): exps is a tuple of n exponents and bit i of
mask records dt_i, wedged in increasing index order.  The weight of a
monomial is sum(exps) + popcount(mask); d preserves it, products add it and
faces never increase it, so capping the weight gives honest subcomplexes.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactalg import MPoly, Q, format_rational
from .exactalg.groebner import DegreeBudgetExceeded
from .lie import LieBasis


def popcount(m):
    return bin(m).count("1")


def weight(key):
    e, m = key
    return sum(e) + popcount(m)


def _bits(m):
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def mono_mul(k1, k2):
    """(key, sign) for the product of two monomials, or None when a dt repeats."""
    (e1, m1), (e2, m2) = k1, k2
    if m1 & m2:
        return None
    # sign of moving each dt of the right factor past the larger dts on the left
    inv = 0
    for j in _bits(m2):
        inv += popcount(m1 >> (j + 1))
    e = tuple(a + b for a, b in zip(e1, e2))
    return (e, m1 | m2), (-1 if inv % 2 else 1)


def mono_d(key):
    """d(t^e dt_S) as a dict of monomials."""
    e, m = key
    out = {}
    for i, p in enumerate(e):
        if p and not (m >> i) & 1:
            s = -1 if popcount(m & ((1 << i) - 1)) % 2 else 1
            e2 = e[:i] + (p - 1,) + e[i + 1:]
            out[(e2, m | (1 << i))] = Fraction(s * p)
    return out


def terms_add(out, terms, c=1):
    for k, v in terms.items():
        nv = out.get(k, 0) + v * c
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def terms_mul(f, g, cap=None):
    out = {}
    for k1, a in f.items():
        for k2, b in g.items():
            r = mono_mul(k1, k2)
            if r is None:
                continue
            k, s = r
            if cap is not None and weight(k) > cap:
                raise DegreeBudgetExceeded("form weight %d exceeds cap %d" % (weight(k), cap))
            nv = out.get(k, 0) + s * a * b
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def terms_d(f):
    out = {}
    for k, c in f.items():
        terms_add(out, mono_d(k), c)
    return out


def _unit(n):
    return ((0,) * n, 0)


def t_terms(n, i):
    """t_i on Delta^n, any 0 <= i <= n."""
    if not 0 <= i <= n:
        raise IndexError("vertex %d not in Delta^%d" % (i, n))
    if i < n:
        return {(tuple(int(j == i) for j in range(n)), 0): Fraction(1)}
    out = {_unit(n): Fraction(1)}
    for j in range(n):
        out[(tuple(int(k == j) for k in range(n)), 0)] = Fraction(-1)
    return out


def dt_terms(n, i):
    if not 0 <= i <= n:
        raise IndexError("vertex %d not in Delta^%d" % (i, n))
    if i < n:
        return {((0,) * n, 1 << i): Fraction(1)}
    return {((0,) * n, 1 << j): Fraction(-1) for j in range(n)}


def _pullback_mono(key, t_img, dt_img, target_n):
    e, m = key
    out = {_unit(target_n): Fraction(1)}
    for i, p in enumerate(e):
        for _ in range(p):
            out = terms_mul(out, t_img[i])
    for i in _bits(m):
        out = terms_mul(out, dt_img[i])
    return out


@lru_cache(maxsize=None)
def _face_images(k, n):
    """Images of t_i, dt_i (i < n) under the k-th face Omega_n -> Omega_{n-1}."""
    m = n - 1
    t_img, dt_img = [], []
    for i in range(n):
        if i < k:
            t_img.append(t_terms(m, i))
            dt_img.append(dt_terms(m, i))
        elif i == k:
            t_img.append({})
            dt_img.append({})
        else:
            t_img.append(t_terms(m, i - 1))
            dt_img.append(dt_terms(m, i - 1))
    return tuple(t_img), tuple(dt_img)


@lru_cache(maxsize=200000)
def face_mono(k, n, key):
    t_img, dt_img = _face_images(k, n)
    return _pullback_mono(key, t_img, dt_img, n - 1)


def terms_face(k, n, f):
    if not 0 <= k <= n:
        raise IndexError("face %d of Delta^%d" % (k, n))
    if n == 0:
        raise ValueError("Delta^0 has no faces")
    out = {}
    for key, c in f.items():
        terms_add(out, face_mono(k, n, key), c)
    return out


def terms_integrate(n, f):
    full = (1 << n) - 1
    total = Fraction(0)
    sign = -1 if n % 2 else 1
    for (e, m), c in f.items():
        if m != full:
            if c:
                raise ValueError("integrand has a component of degree %d < %d"
                                 % (popcount(m), n))
            continue
        num = 1
        for p in e:
            num *= factorial(p)
        total += c * sign * Fraction(num, factorial(n + sum(e)))
    return total


def form_degrees(f):
    return {popcount(m) for (_, m), c in f.items() if c}


class PolyForm:
    """An element of Omega_n with rational coefficients and a weight cap."""

    __slots__ = ("n", "cap", "terms")

    def __init__(self, n, terms=None, cap=None):
        self.n, self.cap = n, cap
        clean = {}
        for (e, m), c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or m >> n:
                raise ValueError("monomial %r does not live on Delta^%d" % ((e, m), n))
            c = Q(c)
            if c:
                if cap is not None and sum(e) + popcount(m) > cap:
                    raise DegreeBudgetExceeded("form weight exceeds cap %d" % cap)
                clean[(e, m)] = clean.get((e, m), 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def const(cls, n, c=1, cap=None):
        return cls(n, {_unit(n): c}, cap)

    @classmethod
    def t(cls, n, i, cap=None):
        return cls(n, t_terms(n, i), cap)

    @classmethod
    def dt(cls, n, i, cap=None):
        return cls(n, dt_terms(n, i), cap)

    def _wrap(self, terms, cap=None):
        return PolyForm(self.n, terms, self.cap if cap is None else cap)

    def _other(self, g):
        if isinstance(g, PolyForm):
            if g.n != self.n:
                raise ValueError("forms on Delta^%d and Delta^%d" % (self.n, g.n))
            return g
        return PolyForm.const(self.n, g)

    def __add__(self, g):
        g = self._other(g)
        return self._wrap(terms_add(dict(self.terms), g.terms))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -v for k, v in self.terms.items()})

    def __sub__(self, g):
        return self + (-self._other(g))

    def __rsub__(self, g):
        return (-self) + g

    def __mul__(self, g):
        if isinstance(g, (int, Fraction)):
            return self._wrap({k: v * g for k, v in self.terms.items()})
        g = self._other(g)
        cap = min(c for c in (self.cap, g.cap, 10 ** 9) if c is not None)
        return self._wrap(terms_mul(self.terms, g.terms, None if cap == 10 ** 9 else cap))

    def __rmul__(self, c):
        return self * c

    def __eq__(self, g):
        if isinstance(g, (PolyForm, int, Fraction)):
            return not (self - g).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return form_degrees(self.terms)

    def d(self):
        return self._wrap(terms_d(self.terms))

    def face(self, k):
        return PolyForm(self.n - 1, terms_face(k, self.n, self.terms), self.cap)

    def integrate(self):
        return terms_integrate(self.n, self.terms)

    def to_json(self):
        return {"n": self.n, "cap": self.cap,
                "terms": [[format_rational(c), list(e), list(_bits(m))]
                          for (e, m), c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data):
        n = data["n"]
        terms = {}
        for c, e, S in data["terms"]:
            m = 0
            for i in S:
                m |= 1 << i
            terms[(tuple(e), m)] = terms.get((tuple(e), m), 0) + Q(c)
        return cls(n, terms, data.get("cap"))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (e, m), c in sorted(self.terms.items()):
            mono = "*".join(("t%d" % i) if p == 1 else "t%d^%d" % (i, p)
                            for i, p in enumerate(e) if p)
            dts = "".join("dt%d" % i for i in _bits(m))
            body = "*".join(x for x in (mono, dts) if x)
            parts.append(format_rational(c) + ("*" + body if body else ""))
        return " + ".join(parts)


def omega_mul(f, g):
    return f * g


def omega_d(f):
    return f.d()


def face(k, f):
    return f.face(k)


def integrate(f):
    if f.degrees() - {f.n}:
        raise ValueError("only top-degree forms can be integrated")
    return f.integrate()


def whitney_terms(n, idx):
    idx = list(idx)
    if any(b <= a for a, b in zip(idx, idx[1:])) or not idx or idx[0] < 0 or idx[-1] > n:
        raise ValueError("Whitney form needs strictly increasing vertices in 0..%d" % n)
    k = len(idx) - 1
    out = {}
    for j, ij in enumerate(idx):
        term = t_terms(n, ij)
        for l in idx:
            if l != ij:
                term = terms_mul(term, dt_terms(n, l))
        terms_add(out, term, (-1) ** j * factorial(k))
    return out


def whitney_form(n, idx, cap=None):
    return PolyForm(n, whitney_terms(n, idx), cap)


def restrict_edge(f):
    """Pull a form on Delta^2 back along (s0, s1) = (t, 1 - t)."""
    if f.n != 2:
        raise ValueError("restrict_edge expects a form on Delta^2")
    return f.face(2)


def _as_mpoly(g, n):
    names = tuple("t%d" % i for i in range(n))
    if isinstance(g, MPoly):
        if len(g.vars) != n:
            raise ValueError("divisor has the wrong number of variables")
        return MPoly._raw(names, dict(g.terms))
    if isinstance(g, PolyForm):
        if g.degrees() - {0}:
            raise ValueError("divisor must be a function")
        return MPoly(names, {e: c for (e, _), c in g.terms.items()})
    return MPoly.const(names, g)


def terms_divide(n, f, g):
    """Exact quotient of every mask-coefficient of f by the polynomial g."""
    gp = _as_mpoly(g, n)
    names = gp.vars
    groups = {}
    for (e, m), c in f.items():
        groups.setdefault(m, {})[e] = c
    out = {}
    for m, coeffs in groups.items():
        q = MPoly(names, coeffs).exact_div(gp)
        for e, c in q.terms.items():
            out[(e, m)] = c
    return out


def poly_divide(f, g):
    return PolyForm(f.n, terms_divide(f.n, f.terms, g), f.cap)


def monomials(n, cap, form_degree=None):
    """All monomial keys on Delta^n of weight <= cap (optionally of fixed form degree)."""
    out = []

    def exps(k, budget):
        if k == 0:
            yield ()
            return
        for p in range(budget + 1):
            for rest in exps(k - 1, budget - p):
                yield (p,) + rest

    for m in range(1 << n):
        deg = popcount(m)
        if form_degree is not None and deg != form_degree:
            continue
        if deg > cap:
            continue
        for e in exps(n, cap - deg):
            out.append((e, m))
    return out


class FormTensor(LieBasis):
    """Omega_n (x) L with keys (exps, mask, g).

    d(w u) = dw u + (-1)^|w| w du and [w u, v h] = (-1)^{|u||v|} wv [u, h].
    """

    def __init__(self, n, L, cap):
        self.n, self.L, self.cap = n, L, cap
        self._dc, self._bc = {}, {}

    def degree(self, key):
        e, m, g = key
        return popcount(m) + self.L.degree(g)

    def d_key(self, key):
        r = self._dc.get(key)
        if r is None:
            e, m, g = key
            r = {}
            for (e2, m2), c in mono_d((e, m)).items():
                r[(e2, m2, g)] = c
            s = -1 if popcount(m) % 2 else 1
            for g2, c in self.L.d_key(g).items():
                k = (e, m, g2)
                r[k] = r.get(k, 0) + s * c
            r = {k: v for k, v in r.items() if v}
            self._dc[key] = r
        return r

    def bracket_key(self, k1, k2):
        r = self._bc.get((k1, k2))
        if r is None:
            e1, m1, g1 = k1
            e2, m2, g2 = k2
            r = {}
            bk = self.L.bracket_key(g1, g2)
            if bk:
                prod = mono_mul((e1, m1), (e2, m2))
                if prod is not None:
                    (e, m), s = prod
                    if sum(e) + popcount(m) > self.cap:
                        raise DegreeBudgetExceeded(
                            "form weight %d exceeds cap %d" % (sum(e) + popcount(m), self.cap))
                    if self.L.degree(g1) % 2 and popcount(m2) % 2:
                        s = -s
                    for g, c in bk.items():
                        r[(e, m, g)] = s * c
            self._bc[(k1, k2)] = r
        return r

    def keys(self, degree):
        """Basis keys of total degree `degree` within the cap."""
        out = []
        for j in range(0, self.n + 1):
            for g in self.L.basis(degree - j):
                for e, m in monomials(self.n, self.cap, j):
                    out.append((e, m, g))
        return out


def elt_from_constant(x, n):
    """A constant L-valued form from an element {(g, a): c} of L (x) m_A."""
    z = (0,) * n
    return {((z, 0, g), a): c for (g, a), c in x.items()}


def elt_face(k, n, x):
    """Apply the k-th face to an element {((e, m, g), a): c} of Omega_n (x) L (x) m_A."""
    out = {}
    for ((e, m, g), a), c in x.items():
        for (e2, m2), w in face_mono(k, n, (e, m)).items():
            key = ((e2, m2, g), a)
            nv = out.get(key, 0) + c * w
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


def elt_mul_form(f, x, cap=None):
    """Left multiplication w . (v u) = (w v) u by a scalar form (terms dict)."""
    out = {}
    for ((e, m, g), a), c in x.items():
        for k1, w in f.items():
            r = mono_mul(k1, (e, m))
            if r is None:
                continue
            (e2, m2), s = r
            if cap is not None and sum(e2) + popcount(m2) > cap:
                raise DegreeBudgetExceeded("form weight exceeds cap %d" % cap)
            key = ((e2, m2, g), a)
            nv = out.get(key, 0) + c * (s * w)
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


def elt_divide(n, x, g):
    """Exact division of the polynomial coefficients of x by g."""
    groups = {}
    for ((e, m, h), a), c in x.items():
        groups.setdefault((m, h, a), {})[(e, 0)] = c
    out = {}
    for (m, h, a), f in groups.items():
        for (e, _), c in terms_divide(n, f, g).items():
            out[((e, m, h), a)] = c
    return out


def elt_integrate(n, x):
    """Fibre integral over Delta^n of the top-degree part, as {(g, a): c}."""
    full = (1 << n) - 1
    out = {}
    for ((e, m, g), a), c in x.items():
        if m != full:
            continue
        v = terms_integrate(n, {(e, m): Fraction(1)}) * c
        key = (g, a)
        nv = out.get(key, 0) + v
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)
    return out


def elt_eval_vertex(x, n, vertex):
    """Restriction to a vertex of Delta^n, as an element {(g, a): c}."""
    y, dim = x, n
    for k in range(n, -1, -1):
        if k != vertex:
            y = elt_face(k, dim, y)
            dim -= 1
    return {(g, a): c for ((_, m, g), a), c in y.items() if not m}


def elt_pullback(x, t_img, dt_img, target_n):
    """Substitute forms for the coordinates of an element of Omega_n (x) L (x) m_A."""
    out = {}
    cache = {}
    for ((e, m, g), a), c in x.items():
        img = cache.get((e, m))
        if img is None:
            img = cache[(e, m)] = _pullback_mono((e, m), t_img, dt_img, target_n)
        for (e2, m2), w in img.items():
            key = ((e2, m2, g), a)
            nv = out.get(key, 0) + c * w
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out
