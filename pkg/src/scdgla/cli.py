"""Command-line interface.

    scdgla COMMAND [INSTANCE] [--degree-cap N] [--groebner-budget N]
                   [--w-variant {normalized,printed}] [--seed N] [--samples N]

INSTANCE is a JSON file or `bundled:NAME`.  Reports go to stdout as sorted
JSON; diagnostics go to stderr.  Exit codes: 0 when every check passes, 1
when a mathematical property fails, 2 on input or resource errors.
"""

import argparse
import json
import random
import sys
from importlib import resources

from .artin import ArtinAlgebra, ArtinError, make_dual_numbers, small_extension_chain
from .cech import (CoverData, CoverError, cech_scdgla, global_sections_compare,
                   local_equations, nerve_cohomology, refinement_from_json,
                   refinement_independence)
from .dgla import (Dgla, DglaError, gauge, gauge_equiv_decide, mc_defect,
                   obstruction_class)
from .exactalg import DEFAULT_SPAIR_BUDGET, DegreeBudgetExceeded, NotDivisible, format_rational
from .forms import elt_face
from .graded import complex_cohomology
from .h1sc import (HypothesisError, W_VARIANTS, Z1Element, Z1Error, adjudicate_w_variant,
                   check_equiv_witness, equiv_decide, equiv_move, lift_gauge_degree0, phi_01,
                   phi_02, psi_01, surjectivity_data, surjectivity_lift,
                   surjectivity_postconditions, tangent_h1sc, tw02, verify_main_theorem,
                   z1_check, z1_conditions, z1_transport)
from .lie import is_zero, sub
from .samples import (random_degree0_01, random_element, random_equiv_move, random_mc,
                      random_tw_mc, random_z1)
from .tw import (AugmentedScDgla, NormalFormError, ScDgla, ScDglaError, TW, as_constant,
                 face_conditions_02, normal_form_02, restrict_levels, tot_cohomology,
                 tw_element_from_json, tw_element_to_json)


class InputError(ValueError):
    pass


class PropertyFailed(Exception):
    """Carries a report whose named property failed (exit code 1)."""

    def __init__(self, report):
        super().__init__(report.get("failed", "property failed"))
        self.report = report


# ---------------------------------------------------------------- instances

class Instance:
    def __init__(self, data, name):
        self.data, self.name = data, name
        if "artin" in data:
            self.A = ArtinAlgebra.from_json(data["artin"])
        else:
            self.A = make_dual_numbers(int(data.get("artin_n", 3)))
        self.dgla = Dgla.from_json(data["dgla"]) if "dgla" in data else None
        self.cover = CoverData.from_json(data["cover"]) if "cover" in data else None
        if "scdgla" in data:
            self.g = ScDgla.from_json(data["scdgla"])
        elif self.cover is not None:
            self.g = cech_scdgla(self.cover)
        else:
            self.g = None
        self.refinement = refinement_from_json(data["refinement"]) \
            if "refinement" in data else None
        self.augmented = AugmentedScDgla.from_json(data["augmented"]) \
            if "augmented" in data else None

    def need_g(self):
        if self.g is None:
            raise InputError("instance has no scdgla or cover")
        if self.g.M < 2:
            raise InputError("instance needs levels 0..2")
        return self.g

    def need_dgla(self):
        if self.dgla is None:
            raise InputError("instance has no dgla")
        return self.dgla

    def elt(self, L, key, default=None):
        if key not in self.data:
            if default is not None:
                return default
            raise InputError("instance is missing %r" % key)
        return L.element(self.data[key], self.A)


def load_instance(spec):
    if spec is None:
        raise InputError("this command needs an instance file")
    if spec.startswith("bundled:"):
        name = spec.split(":", 1)[1]
        ref = resources.files("scdgla") / "data" / ("%s.json" % name)
        if not ref.is_file():
            raise InputError("no bundled instance %r" % name)
        return Instance(json.loads(ref.read_text()), name)
    try:
        with open(spec) as fh:
            return Instance(json.load(fh), spec)
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _ej(L, x, A):
    return L.element_json(x, A)


def _z1_json(g, A, z):
    out = {"l": _ej(g.levels[0], z.l, A), "m": _ej(g.levels[1], z.m, A)}
    if z.n is not None:
        out["n"] = _ej(g.levels[2], z.n, A)
    return out


def _fail(report, name):
    report["failed"] = name
    raise PropertyFailed(report)


# ---------------------------------------------------------------- commands

def cmd_check_dgla(inst, args):
    report = {}
    if inst.dgla is not None:
        inst.dgla.validate()
        report["dgla"] = "valid"
    if inst.g is not None:
        inst.g.validate()
        for L in inst.g.levels:
            L.validate()
        report["scdgla"] = "valid"
    if not report:
        raise InputError("nothing to check")
    return report


def _dims(H):
    return {str(j): H[j][0] for j in sorted(H)}


def cmd_cohomology(inst, args):
    report = {}
    if inst.dgla is not None:
        report["dgla"] = _dims(complex_cohomology(inst.dgla.space, inst.dgla.dmap))
    if inst.g is not None:
        report["tot"] = _dims(tot_cohomology(inst.g))
        report["levels"] = [_dims(complex_cohomology(L.space, L.dmap)) for L in inst.g.levels]
    if not report:
        raise InputError("nothing to compute")
    return report


def cmd_mc_check(inst, args):
    L = inst.need_dgla()
    x = inst.elt(L, "x")
    defect = mc_defect(L, inst.A, x)
    report = {"maurer_cartan": is_zero(defect), "defect": _ej(L, defect, inst.A)}
    if not report["maurer_cartan"]:
        _fail(report, "maurer-cartan")
    return report


def cmd_gauge_equiv(inst, args):
    L = inst.need_dgla()
    if "x0" in inst.data:
        x0, x1 = inst.elt(L, "x0"), inst.elt(L, "x1")
    else:
        rng = random.Random(args.seed)
        x0 = random_mc(L, inst.A, rng)
        x1 = gauge(L, inst.A, random_element(L, inst.A, 0, rng), x0)
    ok, w = gauge_equiv_decide(L, inst.A, x0, x1, args.groebner_budget, want_witness=True)
    return {"x0": _ej(L, x0, inst.A), "x1": _ej(L, x1, inst.A), "equivalent": ok,
            "witness": _ej(L, w, inst.A) if w is not None else None}


def _sample_y(inst, args, rng):
    g = inst.need_g()
    if "y" in inst.data:
        return tw_element_from_json(inst.data["y"])
    return random_tw_mc(g, inst.A, rng, args.degree_cap or 4 * inst.A.nilpotency_index,
                        variant=args.w_variant)


def cmd_tw_decompose(inst, args):
    g = inst.need_g()
    rng = random.Random(args.seed)
    y = _sample_y(inst, args, rng)
    tw = tw02(g, inst.A, args.degree_cap)
    try:
        x, p, q, r = normal_form_02(tw, y)
    except NormalFormError as exc:
        _fail({"error": str(exc)}, "normal form")
    return {"x": _ej(g.levels[0], x, inst.A),
            "p(1)": _ej(g.levels[1], as_constant(elt_face(1, 1, p)), inst.A),
            "face_conditions_failing": face_conditions_02(tw, x, p, q, r),
            "p": tw_element_to_json([p]), "q": tw_element_to_json([q]),
            "r": tw_element_to_json([r])}


def cmd_z1_check(inst, args):
    g = inst.need_g()
    l = inst.elt(g.levels[0], "l", {})
    m = inst.elt(g.levels[1], "m", {})
    failed, n = z1_conditions(g, inst.A, l, m)
    if failed:
        _fail({"in_z1": False}, failed)
    return {"in_z1": True, "n": _ej(g.levels[2], n, inst.A)}


def cmd_h1_equiv(inst, args):
    g = inst.need_g()
    A = inst.A
    if "l0" in inst.data:
        z0 = z1_check(g, A, inst.elt(g.levels[0], "l0"), inst.elt(g.levels[1], "m0"))
        z1 = z1_check(g, A, inst.elt(g.levels[0], "l1"), inst.elt(g.levels[1], "m1"))
    else:
        rng = random.Random(args.seed)
        z0 = random_z1(g, A, rng)
        z1 = z1_check(g, A, *equiv_move(g, A, z0, *random_equiv_move(g, A, rng)))
    ok, w = equiv_decide(g, A, z0, z1, args.groebner_budget)
    out = {"z0": _z1_json(g, A, z0), "z1": _z1_json(g, A, z1), "equivalent": ok,
           "witness": None}
    if w is not None:
        out["witness"] = {"a": _ej(g.levels[0], w[0], A), "b": _ej(g.levels[1], w[1], A)}
    return out


def cmd_phi(inst, args):
    g = inst.need_g()
    y = _sample_y(inst, args, random.Random(args.seed))
    if len(y) == 2:
        x, p1 = phi_01(g, inst.A, y, args.degree_cap)
        return {"l": _ej(g.levels[0], x, inst.A), "m": _ej(g.levels[1], p1, inst.A)}
    z = phi_02(g, inst.A, y, args.degree_cap)
    return _z1_json(g, inst.A, z)


def cmd_psi(inst, args):
    g = inst.need_g()
    l = inst.elt(g.levels[0], "l", {})
    m = inst.elt(g.levels[1], "m", {})
    y = psi_01(g, inst.A, l, m, args.degree_cap)
    tw = TW(restrict_levels(g, 1), inst.A, args.degree_cap or 4 * inst.A.nilpotency_index)
    report = {"y": tw_element_to_json(y), "maurer_cartan": tw.is_zero(tw.mc_defect(y)),
              "face_compatible": not tw.face_defects(y)}
    x, p1 = phi_01(g, inst.A, y, args.degree_cap)
    report["phi_psi_identity"] = is_zero(sub(x, l)) and is_zero(sub(p1, m))
    if not all(report[k] for k in ("maurer_cartan", "face_compatible", "phi_psi_identity")):
        _fail(report, "psi_01 postconditions")
    return report


def _z1_from_instance(inst, rng):
    g = inst.need_g()
    if "l" in inst.data or "m" in inst.data:
        z = z1_check(g, inst.A, inst.elt(g.levels[0], "l", {}), inst.elt(g.levels[1], "m", {}))
        if "n" in inst.data:
            z.n = inst.elt(g.levels[2], "n")
        return z
    return random_z1(g, inst.A, rng)


def cmd_lift_surjective(inst, args):
    g = inst.need_g()
    A = inst.A
    cap = args.degree_cap or 4 * A.nilpotency_index
    z = _z1_from_instance(inst, random.Random(args.seed))
    report = {"input": _z1_json(g, A, z), "adjudication": adjudicate_w_variant(g, A, z, cap),
              "w_variant": args.w_variant}
    try:
        R = surjectivity_data(g, A, z, args.w_variant, cap)
    except NotDivisible:
        _fail(report, "NotDivisible under the %s w variant" % args.w_variant)
    y = surjectivity_lift(g, A, z, args.w_variant, cap, check=False)
    fails = surjectivity_postconditions(g, A, z, R, y, cap)
    report["postconditions_failing"] = fails
    report["y"] = tw_element_to_json(y)
    if fails:
        _fail(report, "surjectivity postconditions")
    return report


def cmd_lift_gauge(inst, args):
    g = inst.need_g()
    A = inst.A
    cap = args.degree_cap or 4 * A.nilpotency_index
    if "a0" in inst.data:
        a0 = inst.elt(g.levels[0], "a0")
        a1 = tw_element_from_json([inst.data["a1"]])[0]
    else:
        a0, a1 = random_degree0_01(g, A, random.Random(args.seed), cap)
    a2 = lift_gauge_degree0(g, A, a0, a1, cap=cap, check=False)
    tw = tw02(g, A, cap)
    from .forms import elt_from_constant
    bad = tw.face_defects([elt_from_constant(a0, 0), a1, a2])
    report = {"a2": tw_element_to_json([a2])[0],
              "faces_failing": [list(b) for b in bad]}
    if bad:
        _fail(report, "face conditions")
    return report


def cmd_transport(inst, args):
    g = inst.need_g()
    N = max(inst.A.nilpotency_index, 3)
    rng = random.Random(args.seed)
    rows = []
    from .h1sc import elt_project
    for ext in small_extension_chain(N):
        z = random_z1(g, ext.total, rng)
        zb = Z1Element(elt_project(ext, z.l), elt_project(ext, z.m))
        a, b = random_equiv_move(g, ext.base, rng)
        l0, m0 = equiv_move(g, ext.base, zb, a, b)
        z0 = z1_check(g, ext.base, l0, m0)
        out = z1_transport(g, ext, z, z0, a, b)
        rows.append({"from": ext.total.nilpotency_index, "to": ext.base.nilpotency_index,
                     "preimage": _z1_json(g, ext.total, out)})
    return {"extensions": rows}


def cmd_tangent(inst, args):
    g = inst.need_g()
    tot, brute = tangent_h1sc(g)
    report = {"tot": tot, "brute_force": brute}
    if tot != brute:
        _fail(report, "tangent dimensions differ")
    return report


def cmd_obstruction(inst, args):
    L = inst.need_dgla()
    A = inst.A
    n = A.nilpotency_index
    ext = next(e for e in small_extension_chain(n + 1) if e.base.nilpotency_index == n)
    x = inst.elt(L, "x")
    cls, lift = obstruction_class(L, ext, x)
    return {"class_zero": not cls,
            "class": {str(t): {str(k): format_rational(c) for k, c in sorted(v.items())}
                      for t, v in sorted(cls.items())},
            "lift": _ej(L, lift, ext.total) if lift is not None else None}


def cmd_cech_build(inst, args):
    if inst.cover is None:
        raise InputError("instance has no cover")
    g = inst.g
    return {"scdgla": g.to_json(), "tot": _dims(tot_cohomology(g)),
            "nerve": {str(k): v for k, v in sorted(nerve_cohomology(inst.cover).items())}}


def cmd_refine(inst, args):
    r = inst.refinement
    if r is None:
        raise InputError("instance has no refinement")
    A = inst.A
    gs, gt = cech_scdgla(r.source), cech_scdgla(r.target)
    z = random_z1(gs, A, random.Random(args.seed))
    names = sorted(r.phis)
    z0, z1, (a, b) = refinement_independence(r, gs, gt, A, z, names[0], names[1])
    return {"z": _z1_json(gs, A, z), "rho_0": _z1_json(gt, A, z0), "rho_1": _z1_json(gt, A, z1),
            "witness": {"a": _ej(gt.levels[0], a, A), "b": _ej(gt.levels[1], b, A)},
            "verified": check_equiv_witness(gt, A, z0, z1, a, b)}


def cmd_verify_theorem(inst, args):
    g = inst.need_g()
    rep = verify_main_theorem(g, inst.A, random.Random(args.seed), args.samples,
                              args.degree_cap, args.w_variant, args.groebner_budget)
    rep["seed"] = args.seed
    if not rep["pass"]:
        _fail(rep, ", ".join(k for k, v in rep["checks"].items() if not v["pass"]))
    return rep


def cmd_selftest(inst, args):
    report = {}
    if inst.dgla is not None:
        inst.dgla.validate()
        report["dgla"] = "valid"
    if inst.g is not None:
        g = inst.need_g()
        report["tot"] = _dims(tot_cohomology(g))
        report["verify"] = cmd_verify_theorem(inst, args)
        if inst.cover is not None:
            z = random_z1(g, inst.A, random.Random(args.seed))
            eqs = local_equations(g, inst.A, z.l, z.m, z.n)
            report["local_equations"] = all(eqs.values())
            if not report["local_equations"]:
                _fail(report, "local equations")
    if inst.refinement is not None:
        report["refine"] = cmd_refine(inst, args)["verified"]
    if inst.augmented is not None:
        rep = global_sections_compare(inst.augmented)
        report["global_sections"] = {str(k): v for k, v in rep.items()}
    return report


COMMANDS = {
    "check-dgla": cmd_check_dgla, "cohomology": cmd_cohomology, "mc-check": cmd_mc_check,
    "gauge-equiv": cmd_gauge_equiv, "tw-decompose": cmd_tw_decompose,
    "z1-check": cmd_z1_check, "h1-equiv": cmd_h1_equiv, "phi": cmd_phi, "psi": cmd_psi,
    "lift-surjective": cmd_lift_surjective, "lift-gauge": cmd_lift_gauge,
    "transport": cmd_transport, "tangent": cmd_tangent, "obstruction": cmd_obstruction,
    "cech-build": cmd_cech_build, "refine": cmd_refine, "verify-theorem": cmd_verify_theorem,
    "selftest": cmd_selftest,
}


def build_parser():
    p = argparse.ArgumentParser(prog="scdgla", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("instance", nargs="?")
    p.add_argument("--degree-cap", type=int, default=None)
    p.add_argument("--groebner-budget", type=int, default=DEFAULT_SPAIR_BUDGET)
    p.add_argument("--w-variant", choices=W_VARIANTS, default="normalized")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=3)
    return p


def emit(report, out):
    out.write(json.dumps(report, sort_keys=True, indent=2, default=str))
    out.write("\n")


def run(argv, out=sys.stdout, err=sys.stderr):
    args = build_parser().parse_args(argv)
    try:
        inst = load_instance(args.instance)
        report = COMMANDS[args.command](inst, args)
    except PropertyFailed as exc:
        report = exc.report
        report.update(command=args.command, status="fail")
        emit(report, out)
        err.write("property failed: %s\n" % report["failed"])
        return 1
    except HypothesisError as exc:
        emit({"command": args.command, "status": "refused", "hypothesis": str(exc)}, out)
        err.write("hypothesis violated: %s\n" % exc)
        return 2
    except (Z1Error, DglaError, ScDglaError, CoverError, NormalFormError, NotDivisible,
            AssertionError) as exc:
        emit({"command": args.command, "status": "fail", "failed": str(exc)}, out)
        err.write("property failed: %s\n" % exc)
        return 1
    except (InputError, ArtinError, DegreeBudgetExceeded, KeyError, IndexError,
            json.JSONDecodeError, ValueError) as exc:
        err.write("input error: %s: %s\n" % (type(exc).__name__, exc))
        return 2
    report.update(command=args.command, status="pass")
    emit(report, out)
    return 0


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
