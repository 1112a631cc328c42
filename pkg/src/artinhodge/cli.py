"""Command-line interface: JSON in, JSON report out.

Exit codes: 0 when every requested check passes, 2 when a verification
fails, 1 on bad input.  The report always goes to stdout; a short summary
goes to stderr unless ``--json-only`` is given.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import algebra as alg
from .complexes import (BoundedComplex, DecreasingFiltration, cohomology, degeneration_check,
                        spectral_pages)
from .errors import (ArtinHodgeError, DecompositionFailure, InternalInconsistency,
                     PurityViolation, VerifyFailure)
from .hodge import (hodge_decomposition, structure_from_json, verify_mhs,
                    weil_restrict_structure)
from .modules import FinModule, ModuleMap, cokernel, free_module, is_free, map_from_r_matrix
from .rank import all_minors_ideals, constant_rank
from .scalars import QQI, fmt
from .snc import (DEMOS, ambient_from_json, assemble_mhs, banana_ambient, betti_numbers,
                  model_from_json, verify_theorem_free_singular, weight_ss)
from .weil import weil_restrict_algebra, weil_restrict_module

SCHEMAS = {
    "algebra": '{"field": "Qi", "vars": ["z"], "relations": [[{"mono": [2], "re": "1", "im": "0"}]], '
               '"nilpotency_bound": 3}',
    "module": '{"dim": d, "action": [<d x d matrix for each algebra basis element>]}',
    "map": '{"algebra": <algebra>, "source_rank": c, "target_rank": r, '
           '"entries": [[<coefficient vector over the algebra basis>, ...], ...]}',
    "filtered": '{"algebra": <algebra>, "complex": {"lo": 0, "ranks": [1, 1], '
                '"differentials": [<entries as in map>]}, '
                '"filtration": "trivial" | "stupid" | {"lo": 0, "hi": 1, "F": {"p,n": [[..]]}}}',
    "structure": '{"algebra": <algebra>, "lattice_dim": n, "weight"?: k, '
                 '"F": {"p": [generators]}, "W"?: {"m": [generators]}}',
    "model": '{"components": n, "strata": [{"I": [..], "hodge": {"p,q": rank}}], '
             '"faces": [{"from": I, "to": J, "matrices": {"p,q": [[..]]}}], "algebra"?: <algebra>}',
    "ambient": '{"hodge": {"p,q": rank}, "maps": [{"to": [i], "matrices": {"p,q": [[..]]}}]}',
}


WEIGHT_CONVENTION = ("e2_ranks keys are a,p,q: the cell E_2^{a,(p,q)} sits in H^{a+p+q} "
                     "with weight p+q, so W_m H^k collects the cells with p+q <= m")


class InputError(Exception):
    def __init__(self, message, schema=None):
        super().__init__(message)
        self.schema = schema


class Run:
    def __init__(self, argv):
        self.argv = list(argv)
        self.checks = []
        self.result = {}
        self.hashes = {}

    def check(self, name, passed, witness=None):
        entry = {"name": name, "pass": bool(passed)}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    def load(self, path, schema):
        try:
            raw = Path(path).read_bytes()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror}", schema) from None
        self.hashes[str(path)] = hashlib.sha256(raw).hexdigest()
        try:
            return json.loads(raw)
        except json.JSONDecodeError as e:
            raise InputError(f"{path} is not valid JSON: {e}", schema) from None


def _algebra_from(run: Run, args, embedded=None, default_trivial=False):
    if getattr(args, "algebra", None):
        obj = run.load(args.algebra, SCHEMAS["algebra"])
    elif embedded is not None:
        obj = embedded
    elif default_trivial:
        return alg.build_algebra(alg.presentation(QQI, 0, [], 1))
    else:
        raise InputError("no algebra given (use --algebra or embed one)", SCHEMAS["algebra"])
    try:
        pres = alg.presentation_from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed algebra: {e!r}", SCHEMAS["algebra"]) from None
    return alg.build_algebra(pres)


def _entries(A, raw):
    F = A.field
    out = []
    for row in raw:
        r = []
        for e in row:
            v = [F.parse(x) for x in e]
            if len(v) != A.dim:
                raise InputError(f"entry of length {len(v)} for an algebra of dimension {A.dim}",
                                 SCHEMAS["map"])
            r.append(v)
        out.append(r)
    return out


def _module_from(A, obj) -> FinModule:
    d = int(obj["dim"])
    action = [[[A.field.parse(x) for x in row] for row in X] for X in obj["action"]]
    if len(action) != A.dim:
        raise InputError(f"need one action matrix per basis element ({A.dim})", SCHEMAS["module"])
    return FinModule(A, d, action)


def _map_from(A, obj) -> ModuleMap:
    c, r = int(obj["source_rank"]), int(obj["target_rank"])
    ent = _entries(A, obj["entries"])
    if len(ent) != r or any(len(row) != c for row in ent):
        raise InputError("entries do not match the declared ranks", SCHEMAS["map"])
    return map_from_r_matrix(free_module(A, c), free_module(A, r), ent)


def _pq(d: dict) -> dict:
    return {f"{p},{q}": v for (p, q), v in sorted(d.items())}


# --- subcommands ---------------------------------------------------------

def cmd_algebra_check(run: Run, args):
    A = _algebra_from(run, args, run.load(args.file, SCHEMAS["algebra"]) if args.file else None)
    run.result = {"dim": A.dim, "basis": A.basis_names(), "nilpotency_index": A.nilpotency_index,
                  "residue_field": A.field.tag}
    run.check("local_artin", True)
    run.check("bound_valid", A.nilpotency_index <= A.presentation.nilpotency_bound)


def cmd_weil_restrict(run: Run, args):
    A = _algebra_from(run, args)
    W = weil_restrict_algebra(A, verify_presentation=args.verify_presentation)
    B = W.algebra
    names = B.presentation.var_names
    run.result = {
        "source_dim": A.dim, "dim": B.dim, "basis": B.basis_names(),
        "relations": [alg.format_poly(r, names) for r in W.relations],
        "nilpotency_index": B.nilpotency_index,
        "eta_matrix": [[QQI.dump(x) for x in row] for row in W.eta.matrix],
    }
    run.check("dimension_is_square", B.dim == A.dim ** 2, {"dim": B.dim, "source": A.dim})
    run.check("residue_field_Q", B.maximal_ideal_power(1).dim == B.dim - 1)
    if args.verify_presentation:
        run.check("presentation_matches", True)
    if args.module:
        M = _module_from(A, run.load(args.module, SCHEMAS["module"]))
        Mw = weil_restrict_module(M, W)
        fM, fW = is_free(M), is_free(Mw)
        run.result["module"] = {"dim": M.dim, "restricted_dim": Mw.dim, "free": fM.free,
                                "rank": fM.rank, "restricted_free": fW.free,
                                "restricted_rank": fW.rank}
        run.check("free_reflection", fM.free == fW.free)
        if fM.free:
            run.check("restricted_rank", fW.rank == 2 * fM.rank)


def cmd_module_rank(run: Run, args):
    obj = run.load(args.map, SCHEMAS["map"])
    A = _algebra_from(run, args, obj.get("algebra"))
    phi = _map_from(A, obj)
    ideals = all_minors_ideals(phi)
    cr = constant_rank(phi)
    coker = cokernel(phi)
    run.result = {
        "minors_ideal_dims": [I.span().dim for I in ideals],
        "rank": max(j for j, I in enumerate(ideals) if not I.is_zero()),
        "verdict": f"constant({cr.rank})" if cr.constant else "not_constant",
        "coker_dim": coker.dim, "coker_free": cr.coker_free,
    }
    run.check("minors_agree_with_cokernel", cr.constant == cr.coker_free)


def _complex_from(A, obj) -> BoundedComplex:
    lo = int(obj.get("lo", 0))
    ranks = [int(r) for r in obj["ranks"]]
    mods = [free_module(A, r) for r in ranks]
    diffs = []
    for i, ent in enumerate(obj.get("differentials", [])):
        e = _entries(A, ent)
        diffs.append(map_from_r_matrix(mods[i], mods[i + 1], e))
    return BoundedComplex(lo, mods, diffs)


def cmd_ss_compute(run: Run, args):
    obj = run.load(args.filtered, SCHEMAS["filtered"])
    A = _algebra_from(run, args, obj.get("algebra"))
    K = _complex_from(A, obj["complex"])
    fobj = obj.get("filtration", "trivial")
    if fobj == "trivial":
        F = DecreasingFiltration.trivial(K)
    elif fobj == "stupid":
        F = DecreasingFiltration.stupid(K)
    else:
        gens = {}
        for key, g in fobj.get("F", {}).items():
            p, n = (int(x) for x in key.split(","))
            gens[(p, n)] = [[A.field.parse(x) for x in v] for v in g]
        F = DecreasingFiltration.from_generators(K, int(fobj["lo"]), int(fobj["hi"]), gens)
    pages = spectral_pages(F, args.pages)
    run.result = {
        "cohomology_dims": {str(n): cohomology(K, n).dim for n in K.degrees},
        "pages": [{"r": P.r, "dims": _pq(P.dims()), "d_zero": P.is_degenerate()} for P in pages],
        "degenerates_at": next((r for r in range(len(pages)) if degeneration_check(pages, r)), None),
    }
    last = pages[-1]
    total = {n: sum(last.dim(p, n - p) for p in range(F.lo, F.hi + 1)) for n in K.degrees}
    run.check("length_additivity",
              all(total[n] == cohomology(K, n).dim for n in K.degrees) or
              not degeneration_check(pages, len(pages) - 1))


def _structure(run, args):
    obj = run.load(args.structure, SCHEMAS["structure"])
    A = _algebra_from(run, args, obj.get("algebra"))
    try:
        return structure_from_json(obj, A)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed structure: {e!r}", SCHEMAS["structure"]) from None


def cmd_hodge_verify(run: Run, args):
    H = _structure(run, args)
    rep = verify_mhs(H)
    for v in rep.verdicts:
        run.check(v.name, v.passed, v.witness if v.witness else None)
    run.result = {"graded_ranks": _pq(H.graded_ranks()) if rep.valid else None,
                  "fiber_hodge_numbers": _pq(H.central_fiber().hodge_numbers())}


def cmd_hodge_decompose(run: Run, args):
    H = _structure(run, args)
    rep = verify_mhs(H)
    run.check("input_valid", rep.valid, rep.failures() or None)
    if not rep.valid:
        return
    Hw = weil_restrict_structure(H)
    run.check("restricted_valid", verify_mhs(Hw).valid)
    dec = hodge_decomposition(Hw)
    sym = all(Hw.sigma_sub(P) == dec.pieces.get((q, p), Hw.H.zero_submodule())
              for (p, q), P in dec.pieces.items())
    run.check("conjugation_swaps_pieces", sym)
    run.result = {"weight": dec.weight, "ranks": _pq(dec.ranks),
                  "restricted_algebra_dim": Hw.algebra.dim}


def _model(run, args):
    obj = run.load(args.model, SCHEMAS["model"])
    A = _algebra_from(run, args, obj.get("algebra"), default_trivial=True)
    try:
        return model_from_json(obj, A)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed model: {e!r}", SCHEMAS["model"]) from None


def _mhs_summary(M, k):
    S = assemble_mhs(M, k)
    return S, {"k": k, "rank": S.rank, "weights": {str(m): r for m, r in sorted(S.weights().items())},
               "hodge_numbers": _pq(S.hodge_numbers()),
               "e2_ranks": {f"{a},{p},{q}": r for (a, p, q), r in sorted(S.e2_ranks.items())},
               "weight_convention": WEIGHT_CONVENTION}


def cmd_snc_mhs(run: Run, args):
    M = _model(run, args)
    S, summary = _mhs_summary(M, args.k)
    run.result = summary
    run.check("verify_mhs", verify_mhs(S.structure).valid)


def cmd_snc_pullback(run: Run, args):
    M = _model(run, args)
    X = ambient_from_json(run.load(args.ambient, SCHEMAS["ambient"]))
    rep = verify_theorem_free_singular(M, X, args.p, args.q)
    st = rep.steps
    run.result = {"rank": rep.rank, "failing_step": st.failing_step()}
    run.check("weight_transverse", rep.weight_transverse)
    run.check("splitting_contains_image", st.image_in_splitting)
    run.check("phi_constant_rank", st.phi_constant)
    run.check("eta_constant_rank", st.eta_constant)
    run.check("coker_free", rep.coker_free)


def cmd_demo(run: Run, args):
    A = _algebra_from(run, args, default_trivial=True)
    M = DEMOS[args.name](A)
    betti = betti_numbers(M)
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    run.result = {"model": args.name, "algebra_dim": A.dim, "betti": betti,
                  "euler_characteristic": M.euler_characteristic(), "cohomology": []}
    for k in range(len(betti)):
        S, summary = _mhs_summary(M, k)
        run.result["cohomology"].append(summary)
        run.check(f"H{k}_verify_mhs", verify_mhs(S.structure).valid)
    ss = weight_ss(M, 0)
    run.result["weight_ss_p0"] = {"e2": {f"{a},{q}": r for (a, q), r in sorted(ss.e2.items())},
                                  "degenerates_E1": ss.degenerates_e1,
                                  "degenerates_E2": ss.degenerates_e2}
    run.check("weight_ss_degenerates_E2", ss.degenerates_e2)
    chi = sum((-1) ** k * b for k, b in enumerate(betti))
    run.check("euler_inclusion_exclusion", chi == M.euler_characteristic())
    if args.name == "banana":
        rep = verify_theorem_free_singular(M, banana_ambient(), 1, 1)
        run.result["ambient_pullback"] = {"rank": rep.rank, "coker_free": rep.coker_free}
        run.check("free_singular_ambient", rep.passed)


def cmd_selfcheck(run: Run, args):
    from .randomized import random_algebra, random_free_map, rng_for, standard_algebras
    rng = rng_for(args.seed)
    agree = 0
    for _ in range(args.trials):
        A = rng.choice(standard_algebras())
        cr = constant_rank(random_free_map(rng, A))
        agree += cr.constant == cr.coker_free
    squares = 0
    for _ in range(args.trials):
        A = random_algebra(rng)
        squares += weil_restrict_algebra(A).algebra.dim == A.dim ** 2
    run.result = {"seed": args.seed, "trials": args.trials}
    run.check("constant_rank_equivalence", agree == args.trials, agree)
    run.check("weil_dimension_square", squares == args.trials, squares)


# --- driver --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-only", action="store_true", help="suppress the stderr summary")
    common.add_argument("--algebra", help="algebra JSON file (overrides embedded algebras)")

    p = argparse.ArgumentParser(prog="artinhodge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    a = sub.add_parser("algebra").add_subparsers(dest="action", required=True)
    c = a.add_parser("check", parents=[common])
    c.add_argument("--file", help="algebra JSON file")
    c.set_defaults(func=cmd_algebra_check)

    w = sub.add_parser("weil").add_subparsers(dest="action", required=True)
    c = w.add_parser("restrict", parents=[common])
    c.add_argument("--module", help="module JSON over the algebra to restrict as well")
    c.add_argument("--verify-presentation", action="store_true",
                   help="also rebuild the quotient from the split relations")
    c.set_defaults(func=cmd_weil_restrict)

    m = sub.add_parser("module").add_subparsers(dest="action", required=True)
    c = m.add_parser("rank", parents=[common])
    c.add_argument("--map", required=True)
    c.set_defaults(func=cmd_module_rank)

    s = sub.add_parser("ss").add_subparsers(dest="action", required=True)
    c = s.add_parser("compute", parents=[common])
    c.add_argument("--filtered", required=True)
    c.add_argument("--pages", type=int, default=None)
    c.set_defaults(func=cmd_ss_compute)

    h = sub.add_parser("hodge").add_subparsers(dest="action", required=True)
    for name, fn in (("verify", cmd_hodge_verify), ("decompose", cmd_hodge_decompose)):
        c = h.add_parser(name, parents=[common])
        c.add_argument("--structure", "--file", dest="structure", required=True)
        c.set_defaults(func=fn)

    n = sub.add_parser("snc").add_subparsers(dest="action", required=True)
    c = n.add_parser("mhs", parents=[common])
    c.add_argument("--model", required=True)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_snc_mhs)
    c = n.add_parser("pullback-rank", parents=[common])
    c.add_argument("--model", required=True)
    c.add_argument("--ambient", required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=cmd_snc_pullback)

    c = sub.add_parser("demo", parents=[common])
    c.add_argument("name", choices=sorted(DEMOS))
    c.set_defaults(func=cmd_demo)

    c = sub.add_parser("selfcheck", parents=[common])
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=20)
    c.set_defaults(func=cmd_selfcheck)
    return p


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return fmt(x)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) if e.code in (0, None) else 1
    r = Run(argv)
    t0 = time.perf_counter()
    error = None
    try:
        args.func(r, args)
    except (VerifyFailure, PurityViolation, DecompositionFailure, InternalInconsistency) as e:
        r.check(type(e).__name__, False, str(e))
    except InputError as e:
        error = {"type": "InputError", "message": str(e)}
        if e.schema:
            print(f"expected input shape: {e.schema}", file=err)
    except ArtinHodgeError as e:
        error = {"type": type(e).__name__, "message": str(e)}
    except (KeyError, TypeError, ValueError) as e:
        error = {"type": type(e).__name__, "message": str(e)}
    code = 1 if error else (0 if all(c["pass"] for c in r.checks) else 2)
    report = {"command": argv, "checks": _jsonable(r.checks), "result": _jsonable(r.result),
              "input_hashes": r.hashes, "exit_code": code,
              "timing": {"seconds": round(time.perf_counter() - t0, 6)}}
    if error:
        report["error"] = error
    out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    if not args.json_only:
        if error:
            print(f"error: {error['type']}: {error['message']}", file=err)
        else:
            failed = [c["name"] for c in r.checks if not c["pass"]]
            status = "all checks passed" if not failed else f"failed: {', '.join(failed)}"
            print(f"{' '.join(argv[:2])}: {status}", file=err)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
