"""Finite-dimensional DGLAs and Maurer-Cartan calculus over Artin coefficients.

Elements of L (x) m_A are dicts {(flat index, a): coeff}, exactly the sparse
form of `GradedElement`; see `lie.LieTensor` for the series calculus.
"""


from .exactalg import (DEFAULT_SPAIR_BUDGET, Eliminator, MPoly, PolyIdeal, Q,
                       find_rational_point, format_rational, groebner)
from .exactalg.groebner import is_unit_ideal_basis, is_zero_dimensional
from .graded import GradedElement, GradedMap, GradedSpace, complex_cohomology
from .lie import (LieBasis, LieTensor, add_into, is_zero,
                  solve_combination, sub)


class DglaError(ValueError):
    pass


def _sign(n):
    return -1 if n % 2 else 1


class Dgla(LieBasis):
    """A DGLA on a GradedSpace with structure constants.

    `bracket` is an iterable of (deg a, i, deg b, j, k, coeff) meaning that
    [e_a_i, e_b_j] has coefficient `coeff` on basis vector k of degree a+b.
    Missing mirrored entries are filled in by graded antisymmetry.
    """

    def __init__(self, space, d=None, bracket=(), check=True):
        self.space = space
        if d is None:
            d = GradedMap(space, space, 1)
        if d.shift != 1 or d.source != space or d.target != space:
            raise DglaError("d must be a degree-1 endomorphism of the space")
        self.dmap = d
        self._d = d.sparse()
        br = {}
        for entry in bracket:
            da, i, db, j, k, c = entry
            da, db = int(da), int(db)
            c = Q(c)
            if not c:
                continue
            if space.dim_of(da + db) == 0:
                raise DglaError("bracket lands in an empty degree %d" % (da + db))
            x, y = space.index(da, int(i)), space.index(db, int(j))
            z = space.index(da + db, int(k))
            self._set(br, x, y, z, c)
            if x != y or da % 2 == 0:
                self._set(br, y, x, z, -_sign(da * db) * c, mirror=True)
        self._br = {key: v for key, v in br.items() if v}
        if check:
            self.validate()

    @staticmethod
    def _set(br, x, y, z, c, mirror=False):
        row = br.setdefault((x, y), {})
        old = row.get(z)
        if old is None:
            row[z] = c
        elif old != c:
            if mirror:
                return
            raise DglaError("inconsistent bracket entries for %r" % ((x, y, z),))

    # LieBasis interface
    def degree(self, key):
        return self.space.deg_of[key]

    def d_key(self, key):
        return self._d.get(key, {})

    def bracket_key(self, k1, k2):
        return self._br.get((k1, k2), {})

    @property
    def dim(self):
        return self.space.dim

    def basis(self, deg=None):
        if deg is None:
            return list(range(self.space.dim))
        return list(self.space.indices(deg)) if self.space.dim_of(deg) else []

    def br_vec(self, u, v):
        """Bracket of plain sparse vectors {index: coeff}."""
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self._br.get((i, j), {}).items():
                    nv = out.get(k, 0) + a * b * c
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def d_vec(self, u):
        out = {}
        for i, a in u.items():
            for k, c in self._d.get(i, {}).items():
                nv = out.get(k, 0) + a * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def validate(self):
        n, deg = self.space.dim, self.space.deg_of
        for i in range(n):
            if self.d_vec(self.d_vec({i: 1})):
                raise DglaError("d o d != 0 on basis vector %d" % i)
        for (x, y), row in self._br.items():
            other = self._br.get((y, x), {})
            s = -_sign(deg[x] * deg[y])
            if any(other.get(k, 0) != s * c for k, c in row.items()) or \
                    any(row.get(k, 0) * s != c for k, c in other.items()):
                raise DglaError("bracket is not graded antisymmetric on %r" % ((x, y),))
        for x in range(n):
            ex = {x: 1}
            dx = self.d_vec(ex)
            for y in range(n):
                ey = {y: 1}
                lhs = self.d_vec(self.br_vec(ex, ey))
                rhs = add_into(self.br_vec(dx, ey), self.br_vec(ex, self.d_vec(ey)),
                               _sign(deg[x]))
                if lhs != rhs:
                    raise DglaError("Leibniz rule fails on %r" % ((x, y),))
        for x in range(n):
            for y in range(n):
                exy = self.br_vec({x: 1}, {y: 1})
                for z in range(n):
                    lhs = self.br_vec({x: 1}, self.br_vec({y: 1}, {z: 1}))
                    rhs = add_into(self.br_vec(exy, {z: 1}),
                                   self.br_vec({y: 1}, self.br_vec({x: 1}, {z: 1})),
                                   _sign(deg[x] * deg[y]))
                    if lhs != rhs:
                        raise DglaError("Jacobi identity fails on %r" % ((x, y, z),))

    def is_abelian(self):
        return not self._br

    def bracket_entries(self):
        out = []
        for (x, y), row in sorted(self._br.items()):
            da, i = self.space.local(x)
            db, j = self.space.local(y)
            for z, c in sorted(row.items()):
                out.append([da, i, db, j, self.space.local(z)[1], format_rational(c)])
        return out

    def to_json(self):
        return {"space": self.space.to_json(), "d": self.dmap.to_json(),
                "bracket": self.bracket_entries()}

    @classmethod
    def from_json(cls, data, check=True):
        space = GradedSpace.from_json(data["space"])
        d = GradedMap.from_json(space, space, data.get("d", {"shift": 1}))
        return cls(space, d, data.get("bracket", []), check=check)

    def element(self, data, A):
        """Parse a JSON element (degree -> list of m_A coordinate lists)."""
        return GradedElement.from_json(self.space, data, A).to_sparse()

    def element_json(self, x, A):
        return GradedElement.from_sparse(self.space, x, A).to_json()


def tensor(L, A):
    return LieTensor(L, A)


def _homog(T, x, deg, what):
    T.check_degree(x, deg, what)


def mc_defect(L, A, x):
    T = LieTensor(L, A)
    _homog(T, x, 1, "x")
    return T.mc_defect(x)


def is_mc(L, A, x):
    return is_zero(mc_defect(L, A, x))


def bch(L, A, a, b):
    T = LieTensor(L, A)
    _homog(T, a, 0, "a")
    _homog(T, b, 0, "b")
    return T.bch(a, b)


def gauge(L, A, a, x):
    T = LieTensor(L, A)
    _homog(T, a, 0, "a")
    _homog(T, x, 1, "x")
    return T.gauge(a, x)


def gauge_group_law_check(L, A, a, b, x):
    T = LieTensor(L, A)
    _homog(T, a, 0, "a")
    _homog(T, b, 0, "b")
    _homog(T, x, 1, "x")
    return is_zero(sub(T.gauge(T.bch(a, b), x), T.gauge(a, T.gauge(b, x))))


def unit_basis(L, A, deg, powers=1):
    """Basis {(i, a): 1} of L^deg (x) m_A^powers."""
    out = []
    for i in L.basis(deg):
        for v in A.power_basis(powers):
            out.append({(i, a): c for a, c in v.items()})
    return out


def irrelevant_stabilizer_membership(L, A, x, u):
    """A witness h in L^-1 (x) m_A with dh + [x, h] = u, or None."""
    T = LieTensor(L, A)
    _homog(T, x, 1, "x")
    _homog(T, u, 0, "u")
    basis = unit_basis(L, A, -1)
    if is_zero(u):
        return {}
    cols = [T.twisted_d(x, h) for h in basis]
    sol = solve_combination(cols, u)
    if sol is None:
        return None
    out = {}
    for j, c in sol.items():
        add_into(out, basis[j], c)
    return out


class TwistedDgla:
    """L (x) m_A with differential d_x = d + [x, -]."""

    def __init__(self, L, A, x, check=True):
        self.base, self.ring, self.twist = L, A, x
        self.T = LieTensor(L, A)
        _homog(self.T, x, 1, "x")
        if not is_zero(self.T.mc_defect(x)):
            raise DglaError("twisting element is not Maurer-Cartan")
        if check:
            for deg in L.space.degrees:
                for v in unit_basis(L, A, deg):
                    if not is_zero(self.d(self.d(v))):
                        raise DglaError("d_x o d_x != 0")

    def d(self, v):
        return self.T.twisted_d(self.twist, v)

    def bracket(self, u, v):
        return self.T.br(u, v)


def twisted(L, A, x):
    return TwistedDgla(L, A, x)


def _image_eliminator(L, deg):
    """Echelon form of the image of d: L^(deg-1) -> L^deg (plain vectors)."""
    el = Eliminator(L.space.dim)
    for i in L.basis(deg - 1):
        el.add_row(L.d_vec({i: 1}))
    return el


def class_normal_form(L, deg, v):
    """Canonical representative of v modulo the coboundaries in degree deg."""
    el = _image_eliminator(L, deg)
    row, _ = el.reduce(v)
    return row


def obstruction_class(L, ext, x, lift=None):
    """Obstruction to lifting the MC element x over ext.base to ext.total.

    Returns (cls, lifted): cls maps J basis index -> normal form of the
    class in H^2(L) (an empty dict when the class vanishes); lifted is an MC
    element over ext.total when the class vanishes, else None.
    """
    A, B = ext.base, ext.total
    TA, TB = LieTensor(L, A), LieTensor(L, B)
    _homog(TA, x, 1, "x")
    if not is_zero(TA.mc_defect(x)):
        raise DglaError("x is not Maurer-Cartan over the base")
    if lift is None:
        lift = {}
        per_index = {}
        for (i, a), c in x.items():
            per_index.setdefault(i, {})[a] = c
        for i, v in per_index.items():
            for b, c in ext.lift(v).items():
                lift[(i, b)] = c
    else:
        _homog(TB, lift, 1, "lift")
        per_index = {}
        for (i, b), c in lift.items():
            per_index.setdefault(i, {})[b] = c
        back = {}
        for i, v in per_index.items():
            for a, c in ext.project(v).items():
                back[(i, a)] = c
        if not is_zero(sub(back, x)):
            raise DglaError("the supplied lift does not project onto x")
    h = TB.mc_defect(lift)
    J = list(ext.kernel_basis)
    # coordinates of h in L^2 (x) J
    comps = {}
    for i in {k for (k, _) in h}:
        vec = {b: c for (k, b), c in h.items() if k == i}
        sol = solve_combination([{(0, b): c for b, c in j.items()} for j in J],
                                {(0, b): c for b, c in vec.items()})
        if sol is None:
            raise DglaError("MC defect of a lift does not lie in L (x) J")
        for t, c in sol.items():
            comps.setdefault(t, {})[i] = c
    cls, correction = {}, {}
    el = _image_eliminator(L, 2)
    for t, vec in comps.items():
        row, _ = el.reduce(vec)
        if row:
            cls[t] = row
            continue
        # solve du = -vec in L^1
        basis = L.basis(1)
        cols = [{(k, 0): c for k, c in L.d_vec({i: 1}).items()} for i in basis]
        sol = solve_combination(cols, {(k, 0): -c for k, c in vec.items()})
        for j, c in sol.items():
            for b, w in J[t].items():
                add_into(correction, {(basis[j], b): c * w})
    if cls:
        return cls, None
    fixed = add_into(dict(lift), correction)
    if not is_zero(TB.mc_defect(fixed)):
        raise AssertionError("corrected lift is not Maurer-Cartan")
    return {}, fixed


def _poly_unknowns(L, A, deg, prefix="a"):
    names, keys = [], []
    for i in L.basis(deg):
        for a in range(A.r):
            names.append("%s%d_%d" % (prefix, i, a))
            keys.append((i, a))
    return tuple(names), keys


def gauge_equation_ideal(L, A, x0, x1):
    """Polynomial ideal in the coordinates of a in L^0 (x) m_A cut out by e^a*x0 = x1."""
    names, keys = _poly_unknowns(L, A, 0)
    if not names:
        return None, keys
    gens = MPoly.gens(names)
    a = {k: g for k, g in zip(keys, gens)}
    T = LieTensor(L, A)
    eq = sub(T.gauge(a, x0), x1)
    polys = []
    for v in eq.values():
        p = v if isinstance(v, MPoly) else MPoly.const(names, v)
        if p:
            polys.append(p)
    return PolyIdeal(names, tuple(polys)), keys


def gauge_equiv_decide(L, A, x0, x1, budget=DEFAULT_SPAIR_BUDGET, want_witness=False):
    """(decision, witness a or None) for e^a * x0 = x1 with a in L^0 (x) m_A.

    The decision is over the algebraic closure.  A witness is searched for
    when the solution set is finite, or always if want_witness is set.
    """
    T = LieTensor(L, A)
    _homog(T, x0, 1, "x0")
    _homog(T, x1, 1, "x1")
    for x in (x0, x1):
        if not is_zero(T.mc_defect(x)):
            raise DglaError("inputs must be Maurer-Cartan")
    if is_zero(sub(x0, x1)):
        return True, {}
    ideal, keys = gauge_equation_ideal(L, A, x0, x1)
    if ideal is None:
        return False, None
    if not ideal.generators:
        return True, {}
    G = groebner(ideal, budget)
    if is_unit_ideal_basis(G.generators):
        return False, None
    witness = None
    if want_witness or is_zero_dimensional(G):
        pt = find_rational_point(G, budget)
        if pt is not None:
            witness = {k: v for k, v in zip(keys, pt) if v}
            if not is_zero(sub(T.gauge(witness, x0), x1)):
                raise AssertionError("gauge witness check failed")
    return True, witness


def tangent_space(L):
    """(dim H^1(L), representatives as flat sparse vectors)."""
    H = complex_cohomology(L.space, L.dmap)
    return H.get(1, (0, []))


def cohomology(L):
    return complex_cohomology(L.space, L.dmap)


def homotopy_path_dgla(L, cap):
    """L[t, dt]: L-valued polynomial forms on the interval, degree capped."""
    from .forms import FormTensor
    return FormTensor(1, L, cap)


class DglaMorphism:
    """A degree-0 linear map commuting with d and brackets."""

    def __init__(self, source, target, gmap=None, check=True):
        self.source, self.target = source, target
        if gmap is None:
            gmap = GradedMap(source.space, target.space, 0)
        if gmap.shift != 0:
            raise DglaError("a DGLA morphism has degree 0")
        self.gmap = gmap
        self.sparse = gmap.sparse()
        if check:
            self.validate()

    @classmethod
    def from_sparse(cls, source, target, sp, check=True):
        return cls(source, target, GradedMap.from_sparse(source.space, target.space, 0, sp),
                   check)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, None, check=False)

    def vec(self, u):
        out = {}
        for i, a in u.items():
            for k, c in self.sparse.get(i, {}).items():
                nv = out.get(k, 0) + a * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def __call__(self, x):
        """Apply to an element keyed (g, a) or ((e, m, g), a)."""
        out = {}
        sp = self.sparse
        for (k, a), c in x.items():
            if isinstance(k, tuple):
                e, m, g = k
                for g2, w in sp.get(g, {}).items():
                    key = ((e, m, g2), a)
                    nv = out.get(key, 0) + c * w
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
            else:
                for g2, w in sp.get(k, {}).items():
                    key = (g2, a)
                    nv = out.get(key, 0) + c * w
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return out

    def compose(self, other):
        """self o other"""
        sp = {i: self.vec(v) for i, v in other.sparse.items()}
        return DglaMorphism.from_sparse(other.source, self.target,
                                        {i: v for i, v in sp.items() if v}, check=False)

    def equals(self, other):
        keys = set(self.sparse) | set(other.sparse)
        return all(self.sparse.get(i, {}) == other.sparse.get(i, {}) for i in keys)

    def validate(self):
        S, T = self.source, self.target
        n = S.space.dim
        for i in range(n):
            if self.vec(S.d_vec({i: 1})) != T.d_vec(self.vec({i: 1})):
                raise DglaError("morphism does not commute with d on basis vector %d" % i)
        for i in range(n):
            fi = self.vec({i: 1})
            for j in range(n):
                if self.vec(S.br_vec({i: 1}, {j: 1})) != T.br_vec(fi, self.vec({j: 1})):
                    raise DglaError("morphism does not preserve the bracket on %r" % ((i, j),))

    def to_json(self):
        return self.gmap.to_json()

    @classmethod
    def from_json(cls, source, target, data, check=True):
        return cls(source, target, GradedMap.from_json(source.space, target.space, data), check)


def zero_dgla():
    return Dgla(GradedSpace({}), None, [])
