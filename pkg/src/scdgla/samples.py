"""Seeded random instances: DGLAs, Maurer-Cartan elements, Z^1 cocycles and
Thom-Whitney elements.  Everything is exact; randomness only picks small
integer coefficients.
"""

import random
from fractions import Fraction

from .dgla import Dgla, DglaError, unit_basis
from .exactalg import Eliminator
from .forms import dt_terms, elt_from_constant, elt_mul_form, t_terms
from .graded import GradedMap, GradedSpace
from .lie import LieTensor, add, add_into, apply_functionals, is_zero, sub


class SamplingError(RuntimeError):
    pass


def _coeff(rng, spread=2):
    return Fraction(rng.randint(-spread, spread))


# ---------------------------------------------------------------- DGLAs

def end_dgla(dims, dV=None):
    """End(V) for a graded space V (dims {degree: n}) with differential dV.

    dV is sparse over V's flat basis: {source: {target: coeff}}.
    """
    V = GradedSpace(dims)
    dV = dV or {}
    elems = [(a, b) for a in range(V.dim) for b in range(V.dim)]
    deg = {e: V.deg_of[e[1]] - V.deg_of[e[0]] for e in elems}
    degs = {}
    for e in elems:
        degs.setdefault(deg[e], []).append(e)
    S = GradedSpace({j: len(v) for j, v in degs.items()})
    pos = {}
    for j, v in degs.items():
        for i, e in enumerate(v):
            pos[e] = S.index(j, i)

    def compose(f, g):
        # f o g on sparse {elem: coeff}; E_ab sends a to b
        out = {}
        for (c, d), x in g.items():
            for (a, b), y in f.items():
                if d == a:
                    add_into(out, {(c, b): x * y})
        return out

    dmat = {}
    for s, row in dV.items():
        for t, c in row.items():
            dmat[(s, t)] = Fraction(c)

    def d_of(f):
        s = -1 if deg[next(iter(f))] % 2 else 1
        return add_into(compose(dmat, f), compose(f, dmat), -s)

    dsp = {}
    for e in elems:
        img = d_of({e: Fraction(1)})
        if img:
            dsp[pos[e]] = {pos[k]: c for k, c in img.items()}
    d = GradedMap.from_sparse(S, S, 1, dsp)
    bracket = []
    for e in elems:
        for f in elems:
            s = -1 if (deg[e] * deg[f]) % 2 else 1
            val = add_into(compose({e: 1}, {f: 1}), compose({f: 1}, {e: 1}), -s)
            for k, c in val.items():
                ja, ia = S.local(pos[e])
                jb, ib = S.local(pos[f])
                bracket.append((ja, ia, jb, ib, S.local(pos[k])[1], c))
    return Dgla(S, d, bracket, check=False)


def abelian_dgla(dims, d=None):
    S = GradedSpace(dims)
    return Dgla(S, GradedMap.from_sparse(S, S, 1, d or {}), [], check=False)


def direct_sum(L1, L2):
    degs = sorted(set(L1.space.degrees) | set(L2.space.degrees))
    S = GradedSpace({j: L1.space.dim_of(j) + L2.space.dim_of(j) for j in degs})

    def emb(L, idx, second):
        j, i = L.space.local(idx)
        return S.index(j, i + (L1.space.dim_of(j) if second else 0))

    dsp, bracket = {}, []
    for second, L in ((False, L1), (True, L2)):
        for x in range(L.dim):
            img = L.d_vec({x: 1})
            if img:
                dsp[emb(L, x, second)] = {emb(L, k, second): c for k, c in img.items()}
            for y in range(L.dim):
                for k, c in L.br_vec({x: 1}, {y: 1}).items():
                    ja, ia = S.local(emb(L, x, second))
                    jb, ib = S.local(emb(L, y, second))
                    bracket.append((ja, ia, jb, ib, S.local(emb(L, k, second))[1], c))
    return Dgla(S, GradedMap.from_sparse(S, S, 1, dsp), bracket, check=False)


def _unitriangular(n, rng):
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            P[i][j] = _coeff(rng, 1)
    Pinv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    # back substitution, column by column
    for col in range(n):
        for i in range(n - 1, -1, -1):
            s = Fraction(int(i == col))
            for j in range(i + 1, n):
                s -= P[i][j] * Pinv[j][col]
            Pinv[i][col] = s
    return P, Pinv


def change_basis(L, rng):
    """Transport L along a random unitriangular change of basis in each degree."""
    S = L.space
    P, Pinv = {}, {}
    for j in S.degrees:
        P[j], Pinv[j] = _unitriangular(S.dims[j], rng)

    def apply(M, v):
        out = {}
        for idx, c in v.items():
            j, i = S.local(idx)
            for r in range(S.dims[j]):
                w = M[j][r][i]
                if w:
                    add_into(out, {S.index(j, r): c * w})
        return out

    old = [apply(Pinv, {x: Fraction(1)}) for x in range(S.dim)]
    dsp, bracket = {}, []
    for x in range(S.dim):
        img = apply(P, L.d_vec(old[x]))
        if img:
            dsp[x] = img
        for y in range(S.dim):
            for k, c in apply(P, L.br_vec(old[x], old[y])).items():
                ja, ia = S.local(x)
                jb, ib = S.local(y)
                bracket.append((ja, ia, jb, ib, S.local(k)[1], c))
    return Dgla(S, GradedMap.from_sparse(S, S, 1, dsp), bracket, check=False)


def _random_abelian(rng):
    lo = rng.randint(-2, 1)
    hi = rng.randint(lo, 2)
    dims = {j: rng.randint(0, 3) for j in range(lo, hi + 1)}
    S = GradedSpace(dims)
    # d is a sum of disjoint unit arrows
    d = {}
    used = set()
    for j in S.degrees:
        for i in S.indices(j):
            if i in used or rng.random() < 0.5:
                continue
            free = [k for k in S.indices(j + 1) if k not in used] if S.dim_of(j + 1) else []
            if free:
                k = rng.choice(free)
                d[i] = {k: 1}
                used.update((i, k))
    return abelian_dgla(dims, d)


def _random_end(rng):
    shapes = [{0: 1, 1: 1}, {-1: 1, 0: 1}, {0: 1, 1: 1, 2: 1}, {0: 2}, {0: 1, 2: 1},
              {0: 1}, {0: 1, 1: 2}]
    dims = dict(rng.choice(shapes))
    V = GradedSpace(dims)
    dV = {}
    for j in V.degrees:
        if V.dim_of(j + 1) and rng.random() < 0.6:
            dV[V.index(j, 0)] = {V.index(j + 1, V.dims[j + 1] - 1): 1}
            break
    return end_dgla(dims, dV)


def _fits(L):
    return all(-2 <= j <= 2 and n <= 4 for j, n in L.space.dims.items())


def random_dgla(rng, validate=True):
    """A random DGLA with degrees in [-2, 2] and at most 4 basis vectors per degree."""
    for _ in range(50):
        kind = rng.choice(["abelian", "end", "end", "sum"])
        if kind == "abelian":
            L = _random_abelian(rng)
        elif kind == "end":
            L = _random_end(rng)
        else:
            L = direct_sum(_random_end(rng), _random_abelian(rng))
        if not _fits(L):
            continue
        if rng.random() < 0.7:
            L = change_basis(L, rng)
        if validate:
            L.validate()
        return L
    raise SamplingError("could not draw a DGLA within the size bounds")


# ---------------------------------------------------------------- elements

def random_element(L, A, deg, rng, power=1, spread=2):
    """Random element of L^deg (x) m_A^power with small integer coefficients."""
    out = {}
    for v in unit_basis(L, A, deg, power):
        c = _coeff(rng, spread)
        if c:
            add_into(out, v, c)
    return out


def _kernel_solve(columns, target):
    """(particular, kernel basis) of sum_j c_j columns[j] = target, or None."""
    rows = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[j] = v
    if any(v and r not in rows for r, v in target.items()):
        return None
    el = Eliminator(len(columns))
    for r, row in rows.items():
        el.add_row(row, target.get(r, 0))
    if el.inconsistent:
        return None
    return el.particular(), el.kernel_basis()


def solve_by_order(A, unknowns, F, rng, start=None, spread=1):
    """Find a zero of F order by order in the m-adic filtration.

    `unknowns` is a list of (slot, L, deg); F maps {slot: element} to a dict of
    named residual elements.  At each order a particular solution of the
    linearised equation plus a random kernel vector is added.  Returns the
    solution dict or None when an obstruction is met.
    """
    x = {s: dict((start or {}).get(s, {})) for s, _, _ in unknowns}
    for k in range(1, A.nilpotency_index):
        fun = A.quotient_functionals(k + 1)
        base = _flatten(F(x), fun)
        units = [(s, v) for s, L, deg in unknowns for v in unit_basis(L, A, deg, k)]
        cols = []
        for s, v in units:
            trial = dict(x)
            trial[s] = add(x[s], v)
            cols.append(sub(_flatten(F(trial), fun), base))
        sol = _kernel_solve(cols, {r: -c for r, c in base.items()})
        if sol is None:
            return None
        part, kern = sol
        coeffs = dict(part)
        for kv in kern:
            c = _coeff(rng, spread)
            if c:
                add_into(coeffs, kv, c)
        for j, c in coeffs.items():
            s, v = units[j]
            x[s] = add_into(x[s], v, c)
    if any(not is_zero(r) for r in F(x).values()):
        raise AssertionError("order-by-order solution does not solve the system")
    return x


def _flatten(res, fun):
    out = {}
    for name, r in res.items():
        for key, c in apply_functionals(r, fun).items():
            out[(name, key)] = c
    return out


def random_mc(L, A, rng, attempts=20):
    T = LieTensor(L, A)
    for _ in range(attempts):
        x = solve_by_order(A, [("x", L, 1)], lambda v: {"mc": T.mc_defect(v["x"])}, rng)
        if x is not None:
            return x["x"]
    raise SamplingError("no Maurer-Cartan element found within the resampling budget")


def random_z1(g, A, rng, attempts=20, nontrivial=True):
    """A random Z1Element (with homotopy witness) of the levels 0..2 of g."""
    from .h1sc import Z1Element, cocycle_lhs, twist_base, z1_check
    T0, T1, T2 = (LieTensor(g.levels[i], A) for i in range(3))

    def F(v):
        l, m, n = v["l"], v["m"], v["n"]
        return {"mc": T0.mc_defect(l),
                "face": sub(g.coface(1, 1)(l), T1.gauge(m, g.coface(0, 1)(l))),
                "homotopy": sub(cocycle_lhs(g, A, m), T2.twisted_d(twist_base(g, l), n))}

    unknowns = [("l", g.levels[0], 1), ("m", g.levels[1], 0), ("n", g.levels[2], -1)]
    best = None
    for _ in range(attempts):
        v = solve_by_order(A, unknowns, F, rng)
        if v is None:
            continue
        best = Z1Element(v["l"], v["m"], v["n"])
        if not nontrivial or not (is_zero(best.l) and is_zero(best.m)):
            break
    if best is None:
        raise SamplingError("no Z^1 element found within the resampling budget")
    z = z1_check(g, A, best.l, best.m)
    z.n = best.n
    return z


def random_equiv_move(g, A, rng):
    """Random (a, b) in g_0^0 (x) m_A and g_1^-1 (x) m_A."""
    return random_element(g.levels[0], A, 0, rng), random_element(g.levels[1], A, -1, rng)


# ---------------------------------------------------------------- Thom-Whitney elements

def _poly1(rng, deg):
    """Random polynomial in t on Omega_1 as a terms dict."""
    out = {}
    for p in range(deg + 1):
        c = _coeff(rng, 1)
        if c:
            out[((p,), 0)] = c
    return out


def random_degree0_01(g, A, rng, cap):
    """Random face-compatible (a0, a1) in Tot^0_TW(levels 0..1) (x) m_A."""
    L0, L1 = g.levels[0], g.levels[1]
    a0 = random_element(L0, A, 0, rng)
    t = t_terms(1, 0)
    one_minus_t = {((0,), 0): Fraction(1), ((1,), 0): Fraction(-1)}
    bump = elt_mul_form(t, elt_mul_form(one_minus_t, elt_from_constant(
        random_element(L1, A, 0, rng), 1), cap), cap)
    bump = elt_mul_form(_poly1(rng, 1) or {((0,), 0): Fraction(1)}, bump, cap)
    a1 = add(elt_mul_form(one_minus_t, elt_from_constant(g.coface(0, 1)(a0), 1), cap),
             elt_mul_form(t, elt_from_constant(g.coface(1, 1)(a0), 1), cap), bump)
    if L1.basis(-1):
        b = elt_mul_form(_poly1(rng, 1) or {((0,), 0): Fraction(1)},
                         elt_from_constant(random_element(L1, A, -1, rng), 1), cap)
        add_into(a1, elt_mul_form(dt_terms(1, 0), b, cap))
    return a0, a1


def face_bubble(g, A, rng, cap):
    """Random degree-0 element of Omega_2 (x) g_2 (x) m_A vanishing on every face."""
    L2 = g.levels[2]
    s0, s1 = t_terms(2, 0), t_terms(2, 1)
    s2 = {((0, 0), 0): Fraction(1), ((1, 0), 0): Fraction(-1), ((0, 1), 0): Fraction(-1)}

    def bubble(x):
        return elt_mul_form(s0, elt_mul_form(s1, elt_mul_form(s2, x, cap), cap), cap)

    out = bubble(elt_from_constant(random_element(L2, A, 0, rng), 2))
    if L2.basis(-1):
        h = elt_from_constant(random_element(L2, A, -1, rng), 2)
        add_into(out, elt_mul_form(dt_terms(2, rng.randint(0, 1)), bubble(h), cap))
    return out


def random_degree0_02(g, A, rng, cap):
    """Random face-compatible degree-0 element of Tot_TW(levels 0..2) (x) m_A."""
    from .h1sc import lift_gauge_degree0
    a0, a1 = random_degree0_01(g, A, rng, cap)
    a2 = lift_gauge_degree0(g, A, a0, a1, cap=cap)
    return [elt_from_constant(a0, 0), a1, add(a2, face_bubble(g, A, rng, cap))]


def random_tw_mc(g, A, rng, cap, z=None, variant="normalized"):
    """A random MC element of Tot_TW(levels 0..2) (x) m_A: a gauge move of a lifted cocycle."""
    from .h1sc import surjectivity_lift, tw02
    z = z or random_z1(g, A, rng)
    y = surjectivity_lift(g, A, z, variant, cap)
    tw = tw02(g, A, cap)
    return tw.gauge(random_degree0_02(g, A, rng, cap), y)


def rng_for(seed):
    return random.Random(seed)


def check_dgla(L):
    try:
        L.validate()
    except DglaError as exc:
        return str(exc)
    return None


__all__ = ["SamplingError", "end_dgla", "abelian_dgla", "direct_sum", "change_basis",
           "random_dgla", "random_element", "solve_by_order", "random_mc", "random_z1",
           "random_equiv_move", "random_degree0_01", "random_degree0_02", "face_bubble",
           "random_tw_mc", "rng_for", "check_dgla"]
