"""Combinatorial Cech machinery: covers as nerves with local DGLAs and
restriction maps, their semicosimplicial DGLAs, refinements and the
augmented global-sections comparison.

Tuples of indices are always strictly increasing and have length 1..3.
"""

from fractions import Fraction
from itertools import combinations

from .dgla import Dgla, DglaError, DglaMorphism, irrelevant_stabilizer_membership
from .graded import GradedMap, GradedSpace, complex_cohomology
from .lie import LieTensor, add_into, is_zero, neg, sub
from .tw import ScDgla, ScDglaError, _induced_rank, tot_complex

MAX_DEPTH = 3


class CoverError(ValueError):
    pass


def _key(t):
    return "".join(str(i) for i in t) if all(len(str(i)) == 1 for i in t) else \
        ",".join(str(i) for i in t)


def faces_of(t):
    """[(j, t with its j-th index removed)]"""
    return [(j, t[:j] + t[j + 1:]) for j in range(len(t))]


class CoverData:
    """An ordered index set with a DGLA per intersection and a restriction per face.

    `locals` maps tuples to Dgla; `restrictions` maps (smaller, larger) tuple
    pairs, the smaller obtained by deleting one index, to DglaMorphisms
    L(U_smaller) -> L(U_larger).  Missing intersections are empty (zero DGLA).
    """

    def __init__(self, indices, locals, restrictions, check=True):
        self.indices = tuple(indices)
        if list(self.indices) != sorted(set(self.indices)):
            raise CoverError("indices must be strictly increasing")
        self.locals = {tuple(t): L for t, L in locals.items()}
        self.restrictions = {(tuple(a), tuple(b)): f for (a, b), f in restrictions.items()}
        for t in self.locals:
            if not 1 <= len(t) <= MAX_DEPTH or list(t) != sorted(set(t)) or \
                    any(i not in self.indices for i in t):
                raise CoverError("bad intersection tuple %r" % (t,))
        for t in self.locals:
            for _, s in faces_of(t):
                if len(s) and s not in self.locals:
                    raise CoverError("U%s is present but its face U%s is not" % (t, s))
                if len(s) and (s, t) not in self.restrictions:
                    raise CoverError("missing restriction U%s -> U%s" % (s, t))
        if check:
            self.validate()

    def tuples(self, k):
        """Present (k+1)-fold intersections, in lexicographic order."""
        return [t for t in combinations(self.indices, k + 1) if t in self.locals]

    def restrict(self, s, t):
        return self.restrictions[(s, t)]

    def validate(self):
        for f in self.restrictions.values():
            f.validate()
        for t in self.locals:
            if len(t) < 3:
                continue
            # every path from a point r through an edge s to t agrees
            for r in [(i,) for i in t]:
                paths = [self.restrict(s, t).compose(self.restrict(r, s))
                         for _, s in faces_of(t) if r[0] in s]
                if any(not p.equals(paths[0]) for p in paths[1:]):
                    raise CoverError("restrictions U%s -> U%s do not commute" % (r, t))

    def to_json(self):
        return {"indices": list(self.indices),
                "locals": {_key(t): L.to_json() for t, L in sorted(self.locals.items())},
                "restrictions": [{"from": _key(a), "to": _key(b), "map": f.to_json()}
                                 for (a, b), f in sorted(self.restrictions.items())]}

    @classmethod
    def from_json(cls, data, check=True):
        indices = [int(i) for i in data["indices"]]

        def parse(s):
            parts = s.split(",") if "," in s else list(s)
            return tuple(int(p) for p in parts)

        locals = {parse(k): Dgla.from_json(v, check=check) for k, v in data["locals"].items()}
        res = {}
        for e in data.get("restrictions", []):
            a, b = parse(e["from"]), parse(e["to"])
            if a not in locals or b not in locals:
                raise CoverError("restriction between unknown sets %r -> %r" % (a, b))
            res[(a, b)] = DglaMorphism.from_json(locals[a], locals[b], e["map"], check=False)
        return cls(indices, locals, res, check=check)


def constant_cover(indices, L, depth=MAX_DEPTH):
    """Every intersection up to `depth` indices carries L; restrictions are identities."""
    locals, res = {}, {}
    for k in range(1, depth + 1):
        for t in combinations(indices, k):
            locals[t] = L
    ident = {i: {i: Fraction(1)} for i in range(L.dim)}
    for t in locals:
        if len(t) > 1:
            for _, s in faces_of(t):
                res[(s, t)] = DglaMorphism.from_sparse(L, L, ident, check=False)
    return CoverData(indices, locals, res)


# ---------------------------------------------------------------- products

class Product:
    """The product DGLA of a list of factors, with the flat-index embeddings."""

    def __init__(self, factors):
        self.factors = list(factors)
        degs = sorted({j for L in self.factors for j in L.space.degrees})
        dims = {j: sum(L.space.dim_of(j) for L in self.factors) for j in degs}
        S = GradedSpace(dims)
        self.emb = []
        fill = {j: 0 for j in degs}
        for L in self.factors:
            e = []
            for idx in range(L.dim):
                j, i = L.space.local(idx)
                e.append(S.index(j, fill[j] + i))
            for j in L.space.degrees:
                fill[j] += L.space.dims[j]
            self.emb.append(e)
        self.owner = {}
        for c, e in enumerate(self.emb):
            for idx, flat in enumerate(e):
                self.owner[flat] = (c, idx)
        dsp, bracket = {}, []
        for c, L in enumerate(self.factors):
            e = self.emb[c]
            for x in range(L.dim):
                img = L.d_vec({x: 1})
                if img:
                    dsp[e[x]] = {e[k]: v for k, v in img.items()}
                for y in range(L.dim):
                    for k, v in L.br_vec({x: 1}, {y: 1}).items():
                        ja, ia = S.local(e[x])
                        jb, ib = S.local(e[y])
                        bracket.append((ja, ia, jb, ib, S.local(e[k])[1], v))
        self.dgla = Dgla(S, GradedMap.from_sparse(S, S, 1, dsp), bracket, check=False)

    def component(self, x, c):
        """Component c of an element keyed (flat, a), in the factor's own indices."""
        out = {}
        for (k, a), v in x.items():
            o = self.owner[k]
            if o[0] == c:
                out[(o[1], a)] = v
        return out

    def embed(self, x, c):
        e = self.emb[c]
        return {(e[k], a): v for (k, a), v in x.items()}


def cech_levels(cover):
    return [Product([cover.locals[t] for t in cover.tuples(k)]) for k in range(MAX_DEPTH)]


def cech_scdgla(cover, check=True):
    """Levels are products over intersections (empty products are zero); d_{j,k}
    restricts from the j-th face."""
    prods = cech_levels(cover)
    top = MAX_DEPTH - 1
    levels = [P.dgla for P in prods]
    cof = {}
    for k in range(1, top + 1):
        src_t = cover.tuples(k - 1)
        pos = {t: c for c, t in enumerate(src_t)}
        for j in range(k + 1):
            sp = {}
            for c, t in enumerate(cover.tuples(k)):
                s = t[:j] + t[j + 1:]
                f = cover.restrict(s, t)
                se, te = prods[k - 1].emb[pos[s]], prods[k].emb[c]
                for x, img in f.sparse.items():
                    for y, v in img.items():
                        sp.setdefault(se[x], {})[te[y]] = v
            cof[(j, k)] = DglaMorphism.from_sparse(levels[k - 1], levels[k], sp, check=False)
    try:
        g = ScDgla(levels, cof, check=check)
    except (ScDglaError, DglaError) as exc:
        raise CoverError("incoherent restrictions: %s" % exc) from exc
    g.products = prods
    g.cover = cover
    return g


def components(g, level, x):
    """{tuple: component} of an element of a Cech level."""
    P = g.products[level]
    return {t: P.component(x, c) for c, t in enumerate(g.cover.tuples(level))}


def assemble(g, level, comps):
    P = g.products[level]
    out = {}
    for c, t in enumerate(g.cover.tuples(level)):
        add_into(out, P.embed(comps.get(t, {}), c))
    return out


# ---------------------------------------------------------------- the deformation equations, unrolled

def local_equations(g, A, l, m, n=None):
    """The Cech-level conditions, written per open set and per intersection.

    Returns {condition name: bool}; n, when given, is checked as the witness
    of the homotopy cocycle equation on each triple intersection.
    """
    cover = g.cover
    out = {}
    lc = components(g, 0, l)
    mc = components(g, 1, m)
    for (i,) in cover.tuples(0):
        T = LieTensor(cover.locals[(i,)], A)
        out["mc %s" % i] = is_zero(T.mc_defect(lc[(i,)]))
    for t in cover.tuples(1):
        i, j = t
        T = LieTensor(cover.locals[t], A)
        li = cover.restrict((i,), t)(lc[(i,)])
        lj = cover.restrict((j,), t)(lc[(j,)])
        out["glue %s%s" % t] = is_zero(sub(li, T.gauge(mc[t], lj)))
    if len(g.levels) > 2:
        nc = components(g, 2, n) if n is not None else None
        for t in cover.tuples(2):
            i, j, k = t
            T = LieTensor(cover.locals[t], A)
            lj = cover.restrict((i, j), t)(cover.restrict((j,), (i, j))(lc[(j,)]))
            lhs = T.bch_many(cover.restrict((j, k), t)(mc[(j, k)]),
                             neg(cover.restrict((i, k), t)(mc[(i, k)])),
                             cover.restrict((i, j), t)(mc[(i, j)]))
            if nc is None:
                ok = irrelevant_stabilizer_membership(cover.locals[t], A, lj, lhs) is not None
            else:
                ok = is_zero(sub(lhs, T.twisted_d(lj, nc[t])))
            out["cocycle %s%s%s" % t] = ok
    return out


# ---------------------------------------------------------------- refinements

class Refinement:
    """A map phi: I' -> I with comparison maps L(U_{phi(tau)}) -> L(U'_tau).

    `maps` is keyed (source set, target tuple), the source set being the
    sorted tuple of distinct values of phi on the target tuple.  Several
    refinement functions may share one Refinement (a dict of named phis).
    """

    def __init__(self, source, target, phis, maps, check=True):
        self.source, self.target = source, target
        self.phis = {name: dict(p) for name, p in phis.items()}
        self.maps = {(tuple(a), tuple(b)): f for (a, b), f in maps.items()}
        for name, phi in self.phis.items():
            if set(phi) != set(target.indices) or \
                    any(v not in source.indices for v in phi.values()):
                raise CoverError("refinement function %r is not defined on I'" % name)
        if check:
            self.validate()

    def image(self, name, t):
        return tuple(sorted({self.phis[name][a] for a in t}))

    def comparison(self, s, t):
        f = self.maps.get((s, t))
        if f is None:
            raise CoverError("no comparison map U%s -> U'%s" % (s, t))
        return f

    def validate(self):
        for (s, t), f in self.maps.items():
            f.validate()
            if s not in self.source.locals or t not in self.target.locals:
                raise CoverError("comparison between unknown sets %r -> %r" % (s, t))
        # squares: restriction' o comparison = comparison o restriction
        for (s, t), f in self.maps.items():
            for (s2, t2), f2 in self.maps.items():
                if len(t2) != len(t) + 1 or (t, t2) not in self.target.restrictions:
                    continue
                if s == s2:
                    lhs = self.target.restrict(t, t2).compose(f)
                    if not lhs.equals(f2):
                        raise CoverError("comparison square fails for %r -> %r" % (t, t2))
                elif (s, s2) in self.source.restrictions:
                    lhs = self.target.restrict(t, t2).compose(f)
                    rhs = f2.compose(self.source.restrict(s, s2))
                    if not lhs.equals(rhs):
                        raise CoverError("comparison square fails for %r -> %r" % (t, t2))


def refinement_to_json(r):
    return {"source": r.source.to_json(), "target": r.target.to_json(),
            "phis": {name: {str(k): v for k, v in sorted(p.items())}
                     for name, p in sorted(r.phis.items())},
            "maps": [{"from": _key(a), "to": _key(b), "map": f.to_json()}
                     for (a, b), f in sorted(r.maps.items())]}


def refinement_from_json(data, check=True):
    src = CoverData.from_json(data["source"], check)
    tgt = CoverData.from_json(data["target"], check)

    def parse(s):
        parts = s.split(",") if "," in s else list(s)
        return tuple(int(p) for p in parts)

    maps = {}
    for e in data.get("maps", []):
        a, b = parse(e["from"]), parse(e["to"])
        if a not in src.locals or b not in tgt.locals:
            raise CoverError("comparison between unknown sets %r -> %r" % (a, b))
        maps[(a, b)] = DglaMorphism.from_json(src.locals[a], tgt.locals[b], e["map"],
                                              check=False)
    phis = {name: {int(k): int(v) for k, v in p.items()} for name, p in data["phis"].items()}
    return Refinement(src, tgt, phis, maps, check)


def _oriented_m(g, A, mc, i, j):
    """m_ij for any pair: m_ji = -m_ij and m_ii = 0."""
    if i == j:
        return {}
    if i < j:
        return mc[(i, j)]
    return neg(mc[(j, i)])


def _restrict_chain(cover, s, t):
    """Composite restriction L(U_s) -> L(U_t) for s a subset of t (s nonempty)."""
    s, t = tuple(s), tuple(t)
    if s == t:
        return None
    for _, u in faces_of(t):
        if set(s) <= set(u):
            inner = _restrict_chain(cover, s, u)
            outer = cover.restrict(u, t)
            return outer if inner is None else outer.compose(inner)
    raise CoverError("U%s is not contained in U%s" % (s, t))


def _apply(f, x):
    return x if f is None else f(x)


def refinement_map(r, g_src, g_tgt, A, z, name="phi"):
    """rho_phi(l, m) = (l_{phi a}|U'_a, m_{phi a, phi b}|U'_ab)."""
    from .h1sc import z1_check
    phi = r.phis[name]
    lc = components(g_src, 0, z.l)
    mc = components(g_src, 1, z.m)
    lt = {}
    for (a,) in r.target.tuples(0):
        s = (phi[a],)
        lt[(a,)] = r.comparison(s, (a,))(lc[s])
    mt = {}
    for t in r.target.tuples(1):
        a, b = t
        s = r.image(name, t)
        v = _oriented_m(g_src, A, mc, phi[a], phi[b])
        if len(s) == 2:
            mt[t] = r.comparison(s, t)(v)
        else:
            mt[t] = {}
    return z1_check(g_tgt, A, assemble(g_tgt, 0, lt), assemble(g_tgt, 1, mt))


def refinement_witness(r, g_src, g_tgt, A, z, phi="phi", psi="psi"):
    """The explicit a with a_alpha = m_{psi alpha, phi alpha} restricted to U'_alpha."""
    P, S = r.phis[phi], r.phis[psi]
    mc = components(g_src, 1, z.m)
    comps = {}
    for (a,) in r.target.tuples(0):
        i, j = S[a], P[a]
        v = _oriented_m(g_src, A, mc, i, j)
        if v:
            comps[(a,)] = r.comparison(tuple(sorted((i, j))), (a,))(v)
    return assemble(g_tgt, 0, comps)


def refinement_independence(r, g_src, g_tgt, A, z, phi="phi", psi="psi"):
    """(rho_phi z, rho_psi z, (a, b)) with the explicit a, checked; raises if it fails."""
    from .h1sc import Z1Error, check_equiv_witness, equiv_lhs
    z0 = refinement_map(r, g_src, g_tgt, A, z, phi)
    z1 = refinement_map(r, g_src, g_tgt, A, z, psi)
    a = refinement_witness(r, g_src, g_tgt, A, z, phi, psi)
    x01 = g_tgt.coface(0, 1)(z0.l)
    b = irrelevant_stabilizer_membership(g_tgt.levels[1], A, x01,
                                         equiv_lhs(g_tgt, A, z0.m, z1.m, a))
    if b is None or not check_equiv_witness(g_tgt, A, z0, z1, a, b):
        raise Z1Error("refinement witness", "the explicit refinement witness does not verify")
    return z0, z1, (a, b)


# ---------------------------------------------------------------- global sections

def global_sections_compare(ag, degrees=(0, 1, 2)):
    """Cohomology of g_{-1} against Tot(g) and whether the augmentation is an iso."""
    base, g = ag.base, ag.rest
    Y, table, dy = tot_complex(g)
    proj = {}
    for x, img in ag.d00.sparse.items():
        proj[x] = {table[(0, k)]: v for k, v in img.items()}
    HX = complex_cohomology(base.space, base.dmap)
    HY = complex_cohomology(Y, dy)
    report = {}
    for j in degrees:
        dx, dyj = HX.get(j, (0,))[0], HY.get(j, (0,))[0]
        rk = _induced_rank(base.space, base.dmap, Y, dy, proj, j)
        report[j] = {"global": dx, "tot": dyj, "iso": rk == dx == dyj}
    return report


def nerve_cohomology(cover, coeff_dim=1):
    """Simplicial cohomology dims of the nerve (up to triples) with Q^coeff_dim coefficients."""
    simp = [cover.tuples(k) for k in range(MAX_DEPTH)]
    dims = {k: len(simp[k]) * coeff_dim for k in range(MAX_DEPTH) if simp[k]}
    S = GradedSpace(dims)
    sp = {}
    for k in range(MAX_DEPTH - 1):
        if not simp[k + 1]:
            continue
        pos = {t: c for c, t in enumerate(simp[k])}
        for c, t in enumerate(simp[k + 1]):
            for j, s in faces_of(t):
                for e in range(coeff_dim):
                    src = S.index(k, pos[s] * coeff_dim + e)
                    dst = S.index(k + 1, c * coeff_dim + e)
                    sp.setdefault(src, {})[dst] = sp.get(src, {}).get(dst, 0) + (-1) ** j
    H = complex_cohomology(S, GradedMap.from_sparse(S, S, 1, sp))
    return {k: H[k][0] for k in H}
