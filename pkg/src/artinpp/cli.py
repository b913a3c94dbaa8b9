"""Command-line front end: ``artinpp <group> <command> ...``."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .dsl import ParseError, parse_pp, unparse
from .exactlin import Subspace, check_prime
from .functors import (
    annihilator_eval,
    d_functor_eval,
    dual_functor_eval,
    eval_pp_pair,
    eval_presentation,
    pair_to_presentation,
    predual_eval,
)
from .homology import NoRadicalKnown, ext_dims, transpose_and_tau
from .jsonio import FormatError, dumps, load_algebra, load_module, module_to_dict
from .modules import LEFT, SIDES, ModuleError, TensorProduct, dual_module, hom_space
from .pp import FormulaError, NotAPair, dual_formula, implies, make_pair, solution_set
from .verify import (
    REGISTRY,
    CheckSpec,
    Sizes,
    random_module,
    reports_json,
    reports_text,
    run_check,
)

FUNCTOR_KINDS = ("pp", "ann", "dual", "predual", "dF", "presentation", "dpair")


class UsageError(Exception):
    pass


def _emit(args, text: str, payload: dict):
    sys.stdout.write(dumps(payload) if args.json else text + "\n")


def _subspace_payload(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "p": s.p, "dim": s.dim, "basis": s.basis.tolist()}


def _rows(basis: np.ndarray) -> list[str]:
    return [" ".join(str(int(x)) for x in row) for row in basis]


def _formula(text: str, alg, side: str, n: int | None = None):
    try:
        return parse_pp(text, alg, side, n)
    except ParseError as exc:
        caret = " " * exc.position + "^"
        raise UsageError(f"formula: {exc}\n  {text}\n  {caret}") from None


# pp


def cmd_pp_eval(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    mod = load_module(args.module, alg)
    phi = _formula(args.formula, alg, mod.side)
    sol = solution_set(phi, mod)
    text = "\n".join([f"dim {sol.dim}"] + _rows(sol.basis))
    _emit(args, text, {"formula": unparse(phi), "solution_set": _subspace_payload(sol)})
    return 0


def cmd_pp_dual(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    phi = _formula(args.formula, alg, args.side)
    d = dual_formula(phi)
    text = unparse(d)
    ok = None
    if args.selfcheck:
        again = dual_formula(_formula(text, alg, d.side, phi.n))
        rng = np.random.default_rng(args.seed)
        ok = all(
            solution_set(again, m) == solution_set(phi, m)
            for m in (random_module(alg, phi.side, 6, rng) for _ in range(args.samples))
        )
        text += f"\nselfcheck {'ok' if ok else 'FAILED'} ({args.samples} modules)"
    _emit(args, text, {"formula": unparse(phi), "dual": unparse(d), "side": d.side, "selfcheck": ok})
    return 0 if ok in (None, True) else 1


def cmd_pp_implies(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    phi = _formula(args.phi, alg, args.side)
    psi = _formula(args.psi, alg, args.side, phi.n)
    if psi.n != phi.n:
        phi = _formula(args.phi, alg, args.side, psi.n)
    result = implies(phi, psi)
    _emit(args, "true" if result else "false", {"phi": unparse(phi), "psi": unparse(psi), "implies": result})
    return 0


# module


def cmd_module_validate(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    mod = load_module(args.module, alg)
    _emit(args, f"valid {mod.side} module of dim {mod.dim}", {"valid": True, "side": mod.side, "dim": mod.dim})
    return 0


def cmd_module_dual(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    mod = dual_module(load_module(args.module, alg))
    sys.stdout.write(dumps(module_to_dict(mod)))
    return 0


def cmd_module_hom(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    m, n = load_module(args.source, alg), load_module(args.target, alg)
    h = hom_space(m, n)
    text = "\n".join([f"dim {h.dim}"] + _rows(h.space.basis))
    _emit(args, text, {"dim": h.dim, "shape": list(h.shape), "basis": h.matrices.tolist()})
    return 0


def cmd_module_tensor(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    n, m = load_module(args.right, alg), load_module(args.left, alg)
    t = TensorProduct(n, m)
    _emit(args, f"dim {t.dim}", {"dim": t.dim, "space_dim": t.space_dim})
    return 0


def cmd_module_ext(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    n, m = load_module(args.source, alg), load_module(args.target, alg)
    dims = ext_dims(n, m, args.degree)
    text = "\n".join(f"Ext^{k} {d}" for k, d in enumerate(dims))
    _emit(args, text, {"ext_dims": dims})
    return 0


def cmd_module_tau(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    n = load_module(args.module, alg)
    res = transpose_and_tau(n)
    lines = [f"Tr dim {res.transpose.dim} ({res.transpose.side})", f"tau dim {res.tau.dim}"]
    if res.projective_input:
        lines.append("warning: module is projective, so Tr and tau vanish")
    _emit(
        args,
        "\n".join(lines),
        {"transpose": module_to_dict(res.transpose), "tau": module_to_dict(res.tau), "projective": res.projective_input},
    )
    return 0


# functor


def _functor_cell(kind: str, pair, f, m):
    if kind == "pp":
        return eval_pp_pair(pair, m).dim
    if kind == "ann":
        return annihilator_eval(pair, m).dim
    if kind == "dual":
        return dual_functor_eval(f, m).dim
    if kind == "presentation":
        return eval_presentation(f, m).dim
    if kind == "predual":
        # F_*(M*) = F(M**) = F(M)
        return predual_eval(f, dual_module(m)).dim
    if kind == "dF":
        return d_functor_eval(f, dual_module(m)).dim
    if kind == "dpair":
        return eval_pp_pair(pair.dual(), dual_module(m)).dim
    raise UsageError(f"unknown functor kind {kind!r}")


def cmd_functor_eval(args) -> int:
    alg = load_algebra(args.algebra, args.p)
    kinds = args.kinds.split(",")
    for k in kinds:
        if k not in FUNCTOR_KINDS:
            raise UsageError(f"unknown functor kind {k!r}; choose from {', '.join(FUNCTOR_KINDS)}")
    mods = [(path, load_module(path, alg)) for path in args.modules]
    rng = np.random.default_rng(args.seed)
    side = mods[0][1].side if mods else args.side
    mods += [(f"random{i}", random_module(alg, side, args.max_dim, rng)) for i in range(args.random_modules)]
    if not mods:
        raise UsageError("no modules given (pass module files or --random-modules)")
    phi = _formula(args.phi, alg, side)
    psi = _formula(args.psi, alg, side, phi.n)
    try:
        pair = make_pair(phi, psi)
    except NotAPair as exc:
        raise UsageError(f"not a pp pair: {exc}") from None
    f = pair_to_presentation(pair)
    rows = []
    mismatch = False
    for name, m in mods:
        cells = []
        for k in kinds:
            try:
                cells.append(_functor_cell(k, pair, f, m))
            except (ModuleError, FormulaError) as exc:
                cells.append(f"error: {exc}")
        ints = [c for c in cells if isinstance(c, int)]
        mismatch |= len(set(ints)) > 1 or len(ints) != len(cells)
        rows.append((name, m.dim, cells))
    header = ["module", "dim"] + kinds
    table = [header] + [[n, str(d)] + [str(c) for c in cells] for n, d, cells in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    text = "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in table)
    payload = {
        "pair": [unparse(pair.phi), unparse(pair.psi)],
        "kinds": kinds,
        "rows": [{"module": n, "dim": d, "values": cells} for n, d, cells in rows],
    }
    if args.assert_equal:
        payload["columns_equal"] = not mismatch
        text += "\ncolumns " + ("equal" if not mismatch else "DIFFER")
    _emit(args, text, payload)
    return 1 if args.assert_equal and mismatch else 0


# check


def cmd_check(args) -> int:
    if args.list:
        for name, chk in REGISTRY.items():
            print(f"{name:28s} {chk.description}")
        return 0
    if args.name is None:
        raise UsageError("check needs a name or 'all' (see --list)")
    names = list(REGISTRY) if args.name == "all" else [args.name]
    for n in names:
        if n not in REGISTRY:
            raise UsageError(f"unknown check {n!r}; known: all, {', '.join(REGISTRY)}")
    try:
        sizes = Sizes.parse(args.sizes) if args.sizes else Sizes()
    except ValueError as exc:
        raise UsageError(f"--sizes: {exc}") from None
    if args.p is not None:
        sizes = Sizes(**{**sizes.to_dict(), "p": args.p})
    reports = [run_check(CheckSpec(n, args.seed, sizes)) for n in names]
    sys.stdout.write(reports_json(reports) if args.json else reports_text(reports))
    return 0 if all(r.passed for r in reports) else 1


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=_prime, default=None, help="prime field size (2..97); must match input files")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="artinpp", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    pp = groups.add_parser("pp", help="pp formulas").add_subparsers(dest="command", required=True)
    c = pp.add_parser("eval", parents=[common], help="solution set of a formula in a module")
    c.add_argument("algebra")
    c.add_argument("module")
    c.add_argument("formula")
    c.set_defaults(func=cmd_pp_eval)
    c = pp.add_parser("dual", parents=[common], help="the dual formula")
    c.add_argument("algebra")
    c.add_argument("formula")
    c.add_argument("--side", choices=SIDES, default=LEFT)
    c.add_argument("--selfcheck", action="store_true", help="check DD phi = phi on sampled modules")
    c.add_argument("--samples", type=int, default=5)
    c.set_defaults(func=cmd_pp_dual)
    c = pp.add_parser("implies", parents=[common], help="whether phi implies psi in every module")
    c.add_argument("algebra")
    c.add_argument("phi")
    c.add_argument("psi")
    c.add_argument("--side", choices=SIDES, default=LEFT)
    c.set_defaults(func=cmd_pp_implies)

    mod = groups.add_parser("module", help="modules").add_subparsers(dest="command", required=True)
    c = mod.add_parser("validate", parents=[common])
    c.add_argument("algebra")
    c.add_argument("module")
    c.set_defaults(func=cmd_module_validate)
    c = mod.add_parser("dual", parents=[common], help="print the dual module as JSON")
    c.add_argument("algebra")
    c.add_argument("module")
    c.set_defaults(func=cmd_module_dual)
    c = mod.add_parser("hom", parents=[common])
    c.add_argument("algebra")
    c.add_argument("source")
    c.add_argument("target")
    c.set_defaults(func=cmd_module_hom)
    c = mod.add_parser("tensor", parents=[common], help="N (x)_R M for N right, M left")
    c.add_argument("algebra")
    c.add_argument("right")
    c.add_argument("left")
    c.set_defaults(func=cmd_module_tensor)
    c = mod.add_parser("ext", parents=[common], help="dims of Ext^0..Ext^degree(N, M)")
    c.add_argument("algebra")
    c.add_argument("source")
    c.add_argument("target")
    c.add_argument("--degree", type=int, default=2)
    c.set_defaults(func=cmd_module_ext)
    c = mod.add_parser("tau", parents=[common], help="transpose and AR translate")
    c.add_argument("algebra")
    c.add_argument("module")
    c.set_defaults(func=cmd_module_tau)

    fun = groups.add_parser("functor", help="functors of a pp pair").add_subparsers(dest="command", required=True)
    c = fun.add_parser("eval", parents=[common], help="dimension table, one column per evaluator")
    c.add_argument("algebra")
    c.add_argument("modules", nargs="*")
    c.add_argument("--phi", required=True)
    c.add_argument("--psi", required=True)
    c.add_argument("--kinds", default="pp,ann,dual", help=f"comma-separated subset of {','.join(FUNCTOR_KINDS)}")
    c.add_argument("--side", choices=SIDES, default=LEFT, help="side when only random modules are used")
    c.add_argument("--random-modules", type=int, default=0)
    c.add_argument("--max-dim", type=int, default=6)
    c.add_argument("--assert", dest="assert_equal", action="store_true", help="exit 1 unless all columns agree")
    c.set_defaults(func=cmd_functor_eval)

    c = groups.add_parser("check", parents=[common], help="run named identity checks")
    c.add_argument("name", nargs="?", help="check name or 'all'")
    c.add_argument("--sizes", help="e.g. 'instances=50,module_dim=8,algebra_dim=6,arity=4'")
    c.add_argument("--list", action="store_true")
    c.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"artinpp: error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, FormulaError, ModuleError, NoRadicalKnown, ValueError) as exc:
        print(f"artinpp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
