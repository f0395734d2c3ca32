"""Small named instances used by the CLI, the bundled data files and the tests."""

import json
from fractions import Fraction
from importlib import resources

from .artin import make_dual_numbers
from .cech import CoverData, Refinement, cech_scdgla, constant_cover, faces_of
from .dgla import Dgla, DglaMorphism, zero_dgla
from .graded import GradedMap, GradedSpace
from .tw import ScDgla


def heisenberg_like():
    """u (-1); h, e, c (0); w1, w2 (1) with du = c, [h,e] = e, [h,w1] = w1, [e,w2] = w1.

    H^-1 = 0, H^0 = span(h, e), H^1 = span(w1, w2).
    """
    S = GradedSpace({-1: 1, 0: 3, 1: 2},
                    {-1: ["u"], 0: ["h", "e", "c"], 1: ["w1", "w2"]})
    d = GradedMap.from_sparse(S, S, 1, {0: {3: 1}})
    return Dgla(S, d, [(0, 0, 0, 1, 1, 1), (0, 0, 1, 0, 0, 1), (0, 1, 1, 1, 0, 1)])


def heisenberg_like_closed():
    """The same bracket with d = 0, so H^-1 = span(u) is nonzero."""
    L = heisenberg_like()
    S = L.space
    return Dgla(S, GradedMap(S, S, 1), [tuple(e) for e in L.bracket_entries()])


def heisenberg_quotient():
    """heisenberg_like modulo the dg ideal span(u, c), with the projection."""
    L = heisenberg_like()
    S = GradedSpace({0: 2, 1: 2}, {0: ["h", "e"], 1: ["w1", "w2"]})
    Q = Dgla(S, GradedMap(S, S, 1), [(0, 0, 0, 1, 1, 1), (0, 0, 1, 0, 0, 1),
                                     (0, 1, 1, 1, 0, 1)])
    proj = DglaMorphism.from_sparse(L, Q, {1: {0: 1}, 2: {1: 1}, 4: {2: 1}, 5: {3: 1}})
    return L, Q, proj


def obstruction_dgla(with_u=False):
    """v (1), w (2), [v, v] = 2w; optionally u (1) with du = w."""
    if with_u:
        S = GradedSpace({1: 2, 2: 1}, {1: ["v", "u"], 2: ["w"]})
        d = GradedMap.from_sparse(S, S, 1, {1: {2: 1}})
    else:
        S = GradedSpace({1: 1, 2: 1}, {1: ["v"], 2: ["w"]})
        d = GradedMap(S, S, 1)
    return Dgla(S, d, [(1, 0, 1, 0, 0, 2)])


def _identity(L, M=None):
    M = M or L
    return DglaMorphism.from_sparse(L, M, {i: {i: Fraction(1)} for i in range(L.dim)})


def cech3_cover(L=None):
    return constant_cover([0, 1, 2], L or heisenberg_like())


def cech3_quotient_cover():
    """Three opens, L on opens and pairs, L/(u, c) on the triple intersection."""
    L, Q, proj = heisenberg_quotient()
    locals, res = {}, {}
    for t in [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]:
        locals[t] = L
    locals[(0, 1, 2)] = Q
    for t in locals:
        for _, s in faces_of(t):
            if s:
                res[(s, t)] = proj if len(t) == 3 else _identity(L)
    return CoverData([0, 1, 2], locals, res)


def pair_of_morphisms(L=None):
    """L (+) N => M with d01 = (0, g), d11 = (h, 0) and g_2 = 0; here L = N = M, g = h = id."""
    K = L or heisenberg_like()
    from .cech import Product
    P = Product([K, K])
    first = {P.emb[0][i]: {i: Fraction(1)} for i in range(K.dim)}
    second = {P.emb[1][i]: {i: Fraction(1)} for i in range(K.dim)}
    d01 = DglaMorphism.from_sparse(P.dgla, K, second)
    d11 = DglaMorphism.from_sparse(P.dgla, K, first)
    Z = zero_dgla()
    return ScDgla([P.dgla, K, Z], {(0, 1): d01, (1, 1): d11})


def trivial_scdgla():
    Z = zero_dgla()
    return ScDgla([Z, Z, Z], {})


def negative_control():
    return cech_scdgla(constant_cover([0, 1, 2], heisenberg_like_closed()))


def refinement_3_to_2(L=None):
    """A 3-set cover refining a 2-set cover, with two refinement functions."""
    L = L or heisenberg_like()
    src = constant_cover([0, 1], L)
    tgt = constant_cover([0, 1, 2], L)
    phis = {"phi": {0: 0, 1: 0, 2: 1}, "psi": {0: 0, 1: 1, 2: 1}}
    maps = {}
    for t in [u for k in range(3) for u in tgt.tuples(k)]:
        for s in [(0,), (1,), (0, 1)]:
            maps[(s, t)] = _identity(L)
    return Refinement(src, tgt, phis, maps)


BUNDLED = {
    "cech3": lambda: cech_scdgla(cech3_cover()),
    "pair": pair_of_morphisms,
    "cech3-quotient": lambda: cech_scdgla(cech3_quotient_cover()),
    "negative-control": negative_control,
    "trivial": trivial_scdgla,
}


def bundled_names():
    return sorted(BUNDLED)


def load_bundled(name):
    """Instance dict of a bundled data file (as parsed JSON)."""
    ref = resources.files("scdgla") / "data" / ("%s.json" % name)
    return json.loads(ref.read_text())


def instance_json(name, n=3, cover=None):
    """The JSON instance for a bundled name (written to the data directory)."""
    out = {"name": name, "artin": make_dual_numbers(n).to_json()}
    if cover is not None:
        out["cover"] = cover.to_json()
    else:
        out["scdgla"] = BUNDLED[name]().to_json()
    return out


def default_artin():
    return make_dual_numbers(3)



def augmented_interval(L=None):
    """Global sections L of a constant sheaf on a 2-set cover of an interval."""
    from .tw import AugmentedScDgla
    L = L or heisenberg_like()
    g = cech_scdgla(constant_cover([0, 1], L))
    P = g.products[0]
    diag = {i: {P.emb[0][i]: Fraction(1), P.emb[1][i]: Fraction(1)} for i in range(L.dim)}
    return AugmentedScDgla(L, g, DglaMorphism.from_sparse(L, g.levels[0], diag))


def augmented_broken(L=None):
    """The interval data with the zero augmentation: not a resolution."""
    from .tw import AugmentedScDgla
    L = L or heisenberg_like()
    g = cech_scdgla(constant_cover([0, 1], L))
    return AugmentedScDgla(L, g, DglaMorphism.zero(L, g.levels[0]))


def bundled_files():
    """{file name: JSON instance} for every bundled data file."""
    from .cech import refinement_to_json
    out = {}
    for name in ("cech3", "cech3-quotient"):
        cov = cech3_cover() if name == "cech3" else cech3_quotient_cover()
        out[name] = {"name": name, "artin": make_dual_numbers(3).to_json(),
                     "cover": cov.to_json()}
    out["negative-control"] = {"name": "negative-control",
                               "artin": make_dual_numbers(3).to_json(),
                               "cover": constant_cover([0, 1, 2],
                                                       heisenberg_like_closed()).to_json()}
    for name in ("pair", "trivial"):
        out[name] = instance_json(name, 3)
    out["refinement-3to2"] = {"name": "refinement-3to2", "artin": make_dual_numbers(3).to_json(),
                              "refinement": refinement_to_json(refinement_3_to_2())}
    A2 = make_dual_numbers(2)
    for name, with_u in (("obstruction-nolift", False), ("obstruction-lift", True)):
        L = obstruction_dgla(with_u)
        x = {(0, 0): Fraction(1)}
        out[name] = {"name": name, "artin": A2.to_json(), "dgla": L.to_json(),
                     "x": L.element_json(x, A2)}
    out["augmented-interval"] = {"name": "augmented-interval",
                                 "artin": make_dual_numbers(2).to_json(),
                                 "augmented": augmented_interval().to_json()}
    return out
