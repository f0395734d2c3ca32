"""Semicosimplicial DGLAs, Tot, the Thom-Whitney DGLA and MC normal forms.

A Thom-Whitney element is a list with one dict per level n; level n lives in
Omega_n (x) g_n (x) m_A with keys ((exps, mask, g), a) as in `forms`.
A Tot element is a dict {((i, g), a): c}.
"""

from fractions import Fraction
from itertools import combinations

from .dgla import Dgla, DglaError, DglaMorphism, zero_dgla
from .exactalg import Eliminator, Q, format_rational
from .forms import (FormTensor, elt_eval_vertex, elt_face, elt_from_constant, elt_integrate,
                    elt_mul_form, mono_d, popcount, whitney_terms)
from .graded import GradedMap, GradedSpace, complex_cohomology
from .lie import SCALARS, LieTensor, add, add_into, is_zero, sub


class ScDglaError(ValueError):
    pass


class ScDgla:
    """Levels g_0 .. g_M with cofaces d_{k,i}: g_{i-1} -> g_i, k = 0..i."""

    def __init__(self, levels, cofaces, check=True):
        self.levels = list(levels)
        self.M = len(self.levels) - 1
        self.cofaces = {}
        for i in range(1, self.M + 1):
            for k in range(i + 1):
                f = cofaces.get((k, i))
                if f is None:
                    f = DglaMorphism.zero(self.levels[i - 1], self.levels[i])
                self.cofaces[(k, i)] = f
        if check:
            self.validate()

    def coface(self, k, i):
        return self.cofaces[(k, i)]

    def validate(self):
        for (k, i), f in self.cofaces.items():
            if f.source is not self.levels[i - 1] or f.target is not self.levels[i]:
                if f.source.space != self.levels[i - 1].space or \
                        f.target.space != self.levels[i].space:
                    raise ScDglaError("coface (%d,%d) has the wrong source or target" % (k, i))
            f.validate()
        for i in range(1, self.M):
            for k in range(i + 1):
                for l in range(k + 1):
                    lhs = self.coface(k + 1, i + 1).compose(self.coface(l, i))
                    rhs = self.coface(l, i + 1).compose(self.coface(k, i))
                    if not lhs.equals(rhs):
                        raise ScDglaError("cosimplicial identity fails for k=%d, l=%d, i=%d"
                                          % (k, l, i))

    def to_json(self):
        return {"levels": [g.to_json() for g in self.levels],
                "cofaces": [{"i": i, "k": k, "map": f.to_json()}
                            for (k, i), f in sorted(self.cofaces.items(),
                                                    key=lambda t: (t[0][1], t[0][0]))
                            if f.sparse]}

    @classmethod
    def from_json(cls, data, check=True):
        levels = [Dgla.from_json(g, check=check) for g in data["levels"]]
        cof = {}
        for entry in data.get("cofaces", []):
            i, k = int(entry["i"]), int(entry["k"])
            if not (1 <= i < len(levels) and 0 <= k <= i):
                raise ScDglaError("coface index (%d,%d) out of range" % (k, i))
            cof[(k, i)] = DglaMorphism.from_json(levels[i - 1], levels[i], entry["map"],
                                                 check=False)
        return cls(levels, cof, check=check)


class AugmentedScDgla:
    def __init__(self, base, rest, d00, check=True):
        self.base, self.rest, self.d00 = base, rest, d00
        if check:
            d00.validate()
            if rest.M >= 1:
                a = rest.coface(0, 1).compose(d00)
                b = rest.coface(1, 1).compose(d00)
                if not a.equals(b):
                    raise ScDglaError("augmentation is not equalized by the two cofaces")

    def to_json(self):
        return {"base": self.base.to_json(), "rest": self.rest.to_json(),
                "augmentation": self.d00.to_json()}

    @classmethod
    def from_json(cls, data, check=True):
        base = Dgla.from_json(data["base"], check=check)
        rest = ScDgla.from_json(data["rest"], check=check)
        d00 = DglaMorphism.from_json(base, rest.levels[0], data["augmentation"], check=False)
        return cls(base, rest, d00, check)


def truncate(g, m1, m2):
    if not 0 <= m1 <= m2 <= g.M:
        raise ScDglaError("need 0 <= m1 <= m2 <= %d" % g.M)
    levels = [g.levels[i] if m1 <= i <= m2 else zero_dgla() for i in range(g.M + 1)]
    cof = {}
    for (k, i), f in g.cofaces.items():
        if m1 <= i - 1 and i <= m2:
            cof[(k, i)] = f
        else:
            cof[(k, i)] = DglaMorphism.zero(levels[i - 1], levels[i])
    return ScDgla(levels, cof, check=False)


def restrict_levels(g, top):
    """The first top+1 levels (the same Tot_TW as truncating above `top`)."""
    return ScDgla(g.levels[:top + 1],
                  {key: f for key, f in g.cofaces.items() if key[1] <= top}, check=False)


# ---------------------------------------------------------------- Tot

def tot_space(g):
    """GradedSpace of Tot with a flat index <-> (level, g index) table."""
    dims, table = {}, {}
    for i, L in enumerate(g.levels):
        for j in L.space.degrees:
            dims[i + j] = dims.get(i + j, 0) + L.space.dims[j]
    space = GradedSpace(dims)
    fill = {j: 0 for j in dims}
    for i, L in enumerate(g.levels):
        for gi in range(L.space.dim):
            j = i + L.space.deg_of[gi]
            table[(i, gi)] = space.offset[j] + fill[j]
            fill[j] += 1
    return space, table


def tot_differential(g, x):
    """d_Tot on {((i, g), a): c}: sum_k (-1)^k d_{k,i+1} + (-1)^i d_i."""
    out = {}
    for ((i, gi), a), c in x.items():
        L = g.levels[i]
        s = -1 if i % 2 else 1
        for g2, w in L.d_key(gi).items():
            add_into(out, {((i, g2), a): c * w * s})
        if i < g.M:
            for k in range(i + 2):
                f = g.coface(k, i + 1)
                for g2, w in f.sparse.get(gi, {}).items():
                    add_into(out, {((i + 1, g2), a): c * w * (-1) ** k})
    return out


def tot_complex(g):
    space, table = tot_space(g)
    sp = {}
    for (i, gi), flat in table.items():
        img = tot_differential(g, {((i, gi), 0): Fraction(1)})
        col = {table[key]: c for (key, _), c in img.items()}
        if col:
            sp[flat] = col
    d = GradedMap.from_sparse(space, space, 1, sp)
    return space, table, d


def tot_cohomology(g):
    space, _, d = tot_complex(g)
    return complex_cohomology(space, d)


def _span_rank(vectors, n):
    el = Eliminator(n)
    for v in vectors:
        el.add_row(v)
    return el


def _induced_rank(space_x, dx, space_y, dy, proj, j):
    """Rank of H^j(X) -> H^j(Y) for a chain map given as flat sparse `proj`."""
    HX = complex_cohomology(space_x, dx).get(j, (0, []))
    # coboundaries in Y^j
    el = Eliminator(space_y.dim)
    for i in (space_y.indices(j - 1) if space_y.dim_of(j - 1) else []):
        el.add_row(dy.sparse().get(i, {}))
    r = 0
    for z in HX[1]:
        img = {}
        for i, c in z.items():
            for k, w in proj.get(i, {}).items():
                img[k] = img.get(k, 0) + c * w
        if el.add_row({k: v for k, v in img.items() if v}):
            r += 1
    return r


def truncation_criterion(g):
    """(H^0 surjective, H^1 bijective, H^2 injective) for Tot(g) -> Tot(g truncated to [0,2])."""
    X, tx, dx = tot_complex(g)
    top = min(g.M, 2)
    h = restrict_levels(g, top)
    Y, ty, dy = tot_complex(h)
    proj = {flat: {ty[key]: Fraction(1)} for key, flat in tx.items() if key in ty}
    HX = complex_cohomology(X, dx)
    HY = complex_cohomology(Y, dy)
    dimx = {j: HX.get(j, (0,))[0] for j in (0, 1, 2)}
    dimy = {j: HY.get(j, (0,))[0] for j in (0, 1, 2)}
    rk = {j: _induced_rank(X, dx, Y, dy, proj, j) for j in (0, 1, 2)}
    return (rk[0] == dimy[0],
            rk[1] == dimx[1] and rk[1] == dimy[1],
            rk[2] == dimx[2])


# ---------------------------------------------------------------- Thom-Whitney

class TW:
    """Tot_TW(g) (x) m_A, levelwise, with every level capped at weight `cap`."""

    def __init__(self, g, A=None, cap=8):
        self.g, self.A, self.cap = g, A, cap
        self.M = g.M
        self.F = [FormTensor(n, g.levels[n], cap) for n in range(g.M + 1)]
        ring = A if A is not None else SCALARS
        self.T = [LieTensor(F, ring) for F in self.F]

    def zero(self):
        return [{} for _ in range(self.M + 1)]

    def is_zero(self, x):
        return all(is_zero(xn) for xn in x)

    def add(self, x, y):
        return [add(a, b) for a, b in zip(x, y)]

    def sub(self, x, y):
        return [sub(a, b) for a, b in zip(x, y)]

    def scale(self, x, c):
        return [{k: v * c for k, v in xn.items()} for xn in x]

    def d(self, x):
        return [T.d(xn) for T, xn in zip(self.T, x)]

    def br(self, x, y):
        return [T.br(a, b) for T, a, b in zip(self.T, x, y)]

    def mc_defect(self, x):
        return [T.mc_defect(xn) for T, xn in zip(self.T, x)]

    def gauge(self, a, x):
        return [T.gauge(an, xn) for T, an, xn in zip(self.T, a, x)]

    def bch(self, a, b):
        return [T.bch(an, bn) for T, an, bn in zip(self.T, a, b)]

    def degrees(self, x):
        out = set()
        for T, xn in zip(self.T, x):
            out |= T.degrees(xn)
        return out

    def face_defects(self, x):
        """List of (k, n) where the face condition fails."""
        bad = []
        for n in range(1, self.M + 1):
            for k in range(n + 1):
                lhs = elt_face(k, n, x[n])
                rhs = self.g.coface(k, n)(x[n - 1])
                if not is_zero(sub(lhs, rhs)):
                    bad.append((k, n))
        return bad

    def is_compatible(self, x):
        return not self.face_defects(x)

    def basis_keys(self, degree, n):
        return self.F[n].keys(degree)


def constant(x, n):
    return elt_from_constant(x, n)


def as_constant(x):
    """Strip the form part of a constant element (raises if not constant)."""
    out = {}
    for ((e, m, g), a), c in x.items():
        if m or any(e):
            raise ValueError("element is not constant")
        out[(g, a)] = c
    return out


def integration_map_I(tw, x):
    out = {}
    for n, xn in enumerate(x):
        for (g, a), c in elt_integrate(n, xn).items():
            out[((n, g), a)] = c
    return out


def _coface_chain(g, n, complement):
    """The composite coface g_n -> g_m skipping the sorted indices `complement`."""
    fs = []
    level = n
    for c in complement:
        level += 1
        fs.append(g.coface(c, level))
    return fs


def whitney_map_E(tw, y):
    g = tw.g
    out = tw.zero()
    per_level = {}
    for ((i, gi), a), c in y.items():
        per_level.setdefault(i, {})[(gi, a)] = c
    for i, yi in per_level.items():
        for m in range(i, tw.M + 1):
            for image in combinations(range(m + 1), i + 1):
                comp = [k for k in range(m + 1) if k not in image]
                v = yi
                for f in _coface_chain(g, i, comp):
                    v = f(v)
                if is_zero(v):
                    continue
                w = whitney_terms(m, image)
                add_into(out[m], elt_mul_form(w, elt_from_constant(v, m), tw.cap))
    return out


def augment_embed(ag, tw, x):
    """x in g_{-1} (x) m_A -> (d00 x, d11 d00 x, d22 d11 d00 x, ...) as constant forms."""
    out = []
    v = ag.d00(x)
    for n in range(tw.M + 1):
        if n > 0:
            v = ag.rest.coface(n, n)(v)
        out.append(elt_from_constant(v, n))
    return out


# ---------------------------------------------------------------- capped cohomology

def tw_capped_cohomology(g, cap, degrees):
    """dim H^j of the weight-capped face-compatible subcomplex of Tot_TW."""
    tw = TW(g, None, cap)

    def compatible_basis(j):
        keys = [(n, k) for n in range(tw.M + 1) for k in tw.F[n].keys(j)]
        index = {k: i for i, k in enumerate(keys)}
        rows = {}
        for col, (n, k) in enumerate(keys):
            x = tw.zero()
            x[n] = {(k, 0): Fraction(1)}
            for kk in range(n + 1):
                if n >= 1:
                    for key, c in elt_face(kk, n, x[n]).items():
                        rows.setdefault(("f", kk, n, key), {})[col] = c
            if n < tw.M:
                for kk in range(n + 2):
                    for key, c in tw.g.coface(kk, n + 1)(x[n]).items():
                        r = rows.setdefault(("f", kk, n + 1, key), {})
                        r[col] = r.get(col, 0) - c
        el = Eliminator(len(keys))
        for r in rows.values():
            el.add_row({c: v for c, v in r.items() if v})
        return keys, index, el.kernel_basis()

    def d_rank(keys, basis):
        imgs = []
        idx = {}
        for vec in basis:
            x = tw.zero()
            for col, c in vec.items():
                n, k = keys[col]
                x[n][(k, 0)] = c
            dx = tw.d(x)
            img = {}
            for n, dn in enumerate(dx):
                for (k, _), c in dn.items():
                    img[idx.setdefault((n, k), len(idx))] = c
            imgs.append(img)
        return _span_rank(imgs, len(idx)).rank

    out = {}
    cache = {}
    for j in sorted(set(degrees) | {j - 1 for j in degrees}):
        keys, _, basis = compatible_basis(j)
        cache[j] = (len(basis), d_rank(keys, basis))
    for j in degrees:
        dim, rk = cache[j]
        out[j] = dim - rk - cache[j - 1][1]
    return out


# ---------------------------------------------------------------- splittings and normal forms

class LinearSplitting:
    """L = M + C + dC for a finite Dgla; C and M given by homogeneous vectors."""

    def __init__(self, L, M, C):
        self.L = L
        self.M = [dict(v) for v in M]
        self.C = [dict(v) for v in C]
        self.D = [L.d_vec(v) for v in self.C]
        n = L.space.dim
        allv = self.M + self.C + self.D
        if len(allv) != n:
            raise DglaError("M, C, dC do not have total dimension %d" % n)
        el = Eliminator(n)
        for v in allv:
            if not el.add_row(v):
                raise DglaError("M, C, dC are not independent")
        for v in allv:
            degs = {L.space.deg_of[i] for i in v}
            if len(degs) != 1:
                raise DglaError("splitting vectors must be homogeneous")
        # M is a sub-DGLA
        mel = Eliminator(n)
        for v in self.M:
            mel.add_row(v)

        def in_M(v):
            return not mel.reduce(v)[0]
        for v in self.M:
            if not in_M(L.d_vec(v)):
                raise DglaError("M is not closed under d")
            for w in self.M:
                if not in_M(L.br_vec(v, w)):
                    raise DglaError("M is not closed under the bracket")
        # coordinates of each standard basis vector
        from .lie import solve_combination
        cols = [{(i, 0): c for i, c in v.items()} for v in allv]
        self._coords = []
        for i in range(n):
            self._coords.append(solve_combination(cols, {(i, 0): Fraction(1)}))
        self.nm, self.nc = len(self.M), len(self.C)

    def split(self, x):
        """(m, c, c') with x = m + c + d c' (elements keyed (g, a))."""
        m, c, cp = {}, {}, {}
        for (i, a), v in x.items():
            for j, w in self._coords[i].items():
                if j < self.nm:
                    add_into(m, {(g, a): v * w * u for g, u in self.M[j].items()})
                elif j < self.nm + self.nc:
                    add_into(c, {(g, a): v * w * u for g, u in self.C[j - self.nm].items()})
                else:
                    jj = j - self.nm - self.nc
                    add_into(cp, {(g, a): v * w * u for g, u in self.C[jj].items()})
        return m, c, cp


def _radial(x):
    """Radial antiderivative of the 1-form part: s^e ds_i -> s^(e+1_i)/(|e|+1)."""
    out = {}
    for ((e, m, g), a), c in x.items():
        if popcount(m) != 1:
            continue
        i = m.bit_length() - 1
        e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
        add_into(out, {((e2, 0, g), a): c * Fraction(1, sum(e) + 1)})
    return out


def _top_antiderivative(x):
    """s0^a s1^b ds0 ds1 -> s0^(a+1) s1^b/(a+1) ds1 on Delta^2."""
    out = {}
    for ((e, m, g), a), c in x.items():
        if m != 3:
            continue
        add_into(out, {(((e[0] + 1, e[1]), 2, g), a): c * Fraction(1, e[0] + 1)})
    return out


def _form_d_only(x):
    out = {}
    for ((e, m, g), a), c in x.items():
        for (e2, m2), w in mono_d((e, m)).items():
            add_into(out, {((e2, m2, g), a): c * w})
    return out


class FormSplitting:
    """M = constants, C = forms in the ideal of the vertex at the origin.

    n = 1: C = g[t] t.  n = 2: C = g[s] s0 + g[s] s1 + g[s] s0 ds1.  D = dC.
    The origin is the last vertex (all free coordinates zero).
    """

    def __init__(self, T, n):
        if n not in (0, 1, 2):
            raise ValueError("splittings are provided for n <= 2")
        self.T, self.n = T, n

    def split(self, x):
        T = self.T
        cp = {}
        if self.n == 2:
            c1 = _top_antiderivative(x)
            x = sub(x, T.d(c1))
            cp = c1
        if self.n >= 1:
            eta = {k: v for k, v in x.items() if popcount(k[0][1]) == 1}
            if self.n == 2:
                eta = sub(eta, _top_antiderivative(_form_d_only(eta)))
            P = _radial(eta)
            x = sub(x, T.d(P))
            add_into(cp, P)
        m, c = {}, {}
        for k, v in x.items():
            (e, mask, g), a = k
            if not mask and not any(e):
                m[k] = v
            else:
                c[k] = v
        return m, c, cp


def decompose_mc(T, y, splitting, max_steps=None):
    """The unique (x, c) with x in MC(M), c in C^0 (x) m_A and e^c * x = y."""
    steps = max_steps if max_steps is not None else (T.N or 1) + 1
    x, c = {}, {}
    for _ in range(steps + 1):
        rho = sub(y, T.gauge(c, x))
        if is_zero(rho):
            break
        m, cc, cp = splitting.split(rho)
        x = add(x, m)
        c = sub(c, cp)
    else:
        raise DglaError("decomposition did not converge; is the splitting valid?")
    m, cc, cp = splitting.split(x)
    if not is_zero(cc) or not is_zero(cp):
        raise DglaError("decomposition produced x outside M")
    m, cc, cp = splitting.split(c)
    if not is_zero(m) or not is_zero(cp):
        raise DglaError("decomposition produced c outside C")
    if not is_zero(T.mc_defect(x)):
        raise DglaError("decomposed x is not Maurer-Cartan")
    return x, c


def decompose_mc_dgla(L, A, y, splitting):
    return decompose_mc(LieTensor(L, A), y, splitting)


def _vertex(x, n, v):
    return elt_eval_vertex(x, n, v)


class NormalFormError(ValueError):
    pass


def _check_mc_tw(tw, y):
    if not tw.is_zero(tw.mc_defect(y)):
        raise NormalFormError("element is not Maurer-Cartan")
    bad = tw.face_defects(y)
    if bad:
        raise NormalFormError("face condition fails at %r" % (bad,))


def normal_form_01(tw, y, check=True):
    """(x, p) with y = (x, e^{p(t)} * d01 x); p in g_1^0[t] t (x) m_A."""
    if check:
        _check_mc_tw(tw, y)
    g = tw.g
    x = as_constant(y[0])
    z, p = decompose_mc(tw.T[1], y[1], FormSplitting(tw.T[1], 1))
    d01x = g.coface(0, 1)(x)
    if not is_zero(sub(as_constant(z), d01x)):
        raise NormalFormError("constant part at t = 0 is not d01 x")
    T1 = LieTensor(g.levels[1], tw.A)
    if not is_zero(sub(g.coface(1, 1)(x), T1.gauge(_vertex(p, 1, 0), d01x))):
        raise NormalFormError("face condition d11 x = e^{p(1)} * d01 x fails")
    return x, p


def edge_stabilizer_defect(tw, x, p, q, r):
    """e^{(-d22 p(t)) . (q(t,1-t) + r(t,1-t,dt)) . (-q(0,1))} * d22 d01 x - d22 d01 x."""
    g = tw.g
    F = FormTensor(1, g.levels[2], tw.cap)
    T = LieTensor(F, tw.A)
    d22p = g.coface(2, 2)(p)
    edge = add(elt_face(2, 2, q), elt_face(2, 2, r))
    q01 = elt_from_constant(_vertex(q, 2, 1), 1)
    w = T.bch_many({k: -v for k, v in d22p.items()}, edge, {k: -v for k, v in q01.items()})
    base = elt_from_constant(g.coface(2, 2)(g.coface(0, 1)(x)), 1)
    return sub(T.gauge(w, base), base)


def face_conditions_02(tw, x, p, q, r):
    """Names of the failing face conditions (empty when all hold)."""
    g = tw.g
    fails = []
    T1 = LieTensor(g.levels[1], tw.A)
    d01x = g.coface(0, 1)(x)
    if not is_zero(sub(g.coface(1, 1)(x), T1.gauge(_vertex(p, 1, 0), d01x))):
        fails.append("d11 x = e^{p(1)} * d01 x")
    if not is_zero(sub(g.coface(0, 2)(p), elt_face(0, 2, q))):
        fails.append("d02 p(t) = q(0,t)")
    if not is_zero(sub(g.coface(1, 2)(p), elt_face(1, 2, q))):
        fails.append("d12 p(t) = q(t,0)")
    if not is_zero(edge_stabilizer_defect(tw, x, p, q, r)):
        fails.append("edge stabilizer identity")
    return fails


def normal_form_02(tw, y, check=True):
    """(x, p, q, r): y = (x, e^p * d01 x, e^{q + r} * d02 d01 x)."""
    if check:
        _check_mc_tw(tw, y)
    g = tw.g
    x, p = normal_form_01(tw, y, check=False)
    z, c = decompose_mc(tw.T[2], y[2], FormSplitting(tw.T[2], 2))
    if not is_zero(sub(as_constant(z), g.coface(0, 2)(g.coface(0, 1)(x)))):
        raise NormalFormError("constant part at the origin is not d02 d01 x")
    q = {k: v for k, v in c.items() if not k[0][1]}
    r = {k: v for k, v in c.items() if k[0][1]}
    fails = face_conditions_02(tw, x, p, q, r)
    if fails:
        raise NormalFormError("face conditions fail: %s" % ", ".join(fails))
    return x, p, q, r


def assemble_01(tw, x, p):
    g = tw.g
    y1 = tw.T[1].gauge(p, elt_from_constant(g.coface(0, 1)(x), 1))
    return [elt_from_constant(x, 0), y1]


def assemble_02(tw, x, p, q, r):
    g = tw.g
    y = assemble_01(tw, x, p)
    base = elt_from_constant(g.coface(0, 2)(g.coface(0, 1)(x)), 2)
    y.append(tw.T[2].gauge(add(q, r), base))
    return y


# ---------------------------------------------------------------- serialization

def tw_element_to_json(x):
    """Per level, sorted [exponents, dt mask, basis index, m_A index, coeff] rows."""
    return [[[list(e), m, g, a, format_rational(c)]
             for ((e, m, g), a), c in sorted(xn.items()) if c] for xn in x]


def tw_element_from_json(data):
    return [{((tuple(int(v) for v in e), int(m), int(g)), int(a)): Q(c)
             for e, m, g, a, c in level} for level in data]
