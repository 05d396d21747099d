"""Command-line front end: ``qgf <command> ...``.

Exit codes: 0 all checks pass, 1 some check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import os
import sys
from pathlib import Path

import numpy as np

from .azb import azb_commutation_report
from .crossed import (
    ActionError,
    crossed_coproduct_checks,
    crossed_structure_checks,
    load_action,
    parse_semidirect,
    semidirect_compare,
    validate_action,
)
from .frame import (
    Frame,
    FrameHypothesisError,
    antipode_flip_residual,
    antipode_space_check,
    c_slice_check,
    commutation_scalar,
    equivalence_report,
    irreducibility_scalar,
    selfadjointness_check,
    validate_frame,
    wbar_wtilde_checks,
)
from .groups import (
    FiniteGroup,
    GroupError,
    catalog,
    fourier_check,
    group_frame,
    group_to_spec,
    load_group,
    named_group,
    structure_report,
)
from .multiplicative import NotMultiplicativeError, pentagon_residual
from .report import CheckResult, build_report, check, predicate, to_json, to_text
from .tensor import DEFAULT_TOL, LayoutError, random_functional, unitarity_defect

INPUT_ERRORS = (GroupError, ActionError, LayoutError, NotMultiplicativeError, FrameHypothesisError,
                json.JSONDecodeError, OSError, ValueError)


class InputError(Exception):
    pass


# --- suites (also used by the tests) ------------------------------------------


def pentagon_suite(g: FiniteGroup, tol: float) -> list[CheckResult]:
    f = group_frame(g)
    w = f.w.w
    return [
        check("pentagon.W", "W₁₂W₁₃W₂₃ = W₂₃W₁₂ for W_G", pentagon_residual(w), tol),
        check("pentagon.W_unitary", "W_G unitary", unitarity_defect(w), tol),
        check("pentagon.What", "Ŵ = ΣW*Σ multiplicative", pentagon_residual(f.w.dual().w), tol),
    ]


def frame_suite(f: Frame, tol: float, seed: int, samples: int = 20, prefix: str = "") -> list[CheckResult]:
    """Frame axioms, slice structure, antipode, k and λ for one frame."""
    rng = np.random.default_rng(seed)
    mu = f.w
    out = list(validate_frame(f, tol))
    out += selfadjointness_check(f)
    out += antipode_space_check(f)
    out += c_slice_check(f)
    flip_res = max(antipode_flip_residual(f, mu.M.random_element(rng)) for _ in range(samples))
    out.append(check("antipode.flip", "Φ(R(m)) = σ(R⊗R)Φ(m) on seeded elements of M", flip_res, tol))
    dual_res = 0.0
    for _ in range(samples):
        fs = [random_functional(f.n, rng) for _ in range(3)]
        dual_res = max(dual_res, *mu.duality_residuals(*fs))
    out.append(check("duality.pairing", "⟨Φ(m) | m̂₁⊗m̂₂⟩ = ⟨m | m̂₁m̂₂⟩ and the dual identity", dual_res, tol))
    out += equivalence_report(f, tol)
    out += wbar_wtilde_checks(f, tol)
    k = irreducibility_scalar(f, tol)
    out.append(check("scalar.k", "(1⊗ĴJ)ΣW̄WW̃ = k·1", k.defect, tol, value=k.value))
    out.append(check("scalar.k_modulus", "|k| = 1", k.modulus_defect, tol))
    lam = commutation_scalar(f, tol)
    out.append(check("scalar.lambda", "JĴ = λĴJ", lam.defect, tol, value=lam.value))
    out.append(check("scalar.lambda_modulus", "|λ| = 1", lam.modulus_defect, tol, value=abs(lam.value)))
    out.append(predicate("scalar.lambda_arg", "arg λ (recorded)", True, value=cmath.phase(lam.value)))
    if prefix:
        out = [CheckResult(prefix + r.check_id, r.description, r.residual, r.threshold, r.passed, r.value)
               for r in out]
    return out


def frame_check_suite(g: FiniteGroup, tol: float, seed: int) -> list[CheckResult]:
    f = group_frame(g)
    fd = f.dual()
    out = frame_suite(f, tol, seed, prefix="group.") + frame_suite(fd, tol, seed, prefix="dual.")
    k, kd = irreducibility_scalar(f, tol).value, irreducibility_scalar(fd, tol).value
    out.append(check("scalar.k_dual_conj", "k of the dual frame = conj(k)", abs(kd - k.conjugate()), tol))
    return out


def structure_suite(g: FiniteGroup, tol: float) -> list[CheckResult]:
    rec = structure_report(g, tol)
    n = rec["order"]
    pair = np.array(rec["pairing_point_masses"])
    return [
        predicate("structure.frame_valid", "group frame validates", rec["frame_valid"]),
        predicate("structure.dim_M", "dim M (recorded)", True, value=rec["dim_M"]),
        predicate("structure.dim_Mhat", "dim M̂ (recorded)", True, value=rec["dim_Mhat"]),
        predicate("structure.M_commutative", "M commutative (recorded, value 1 = yes)", True,
                  value=int(rec["M_commutative"])),
        predicate("structure.Mhat_commutative", "M̂ commutative (recorded, value 1 = yes)", True,
                  value=int(rec["Mhat_commutative"])),
        predicate("structure.trim_dim", "dim span S·Ŝ* (recorded)", True, value=rec["trim_dim"]),
        predicate("structure.k", "k (recorded)", True, value=rec["k"]),
        predicate("structure.lambda", "λ (recorded)", True, value=rec["lambda"]),
        check("structure.point_mass_pairing", "⟨δ_r | λ(δ_s)⟩ = Σ_p δ_r(p)δ_s(p)",
              float(np.abs(pair - np.eye(n)).max()), tol),
    ]


def crossed_suite(action, tol: float) -> list[CheckResult]:
    out = list(validate_action(action, tol))
    if not all(r.passed for r in out):
        return out
    return out + crossed_structure_checks(action, tol) + crossed_coproduct_checks(action, tol)


def semidirect_suite(h, g, alpha, tol: float) -> list[CheckResult]:
    try:
        match = semidirect_compare(h, g, alpha, tol)
    except ActionError as exc:
        return [predicate("semidirect.match", str(exc), False)]
    out = [check("semidirect.match", f"crossed frame = dual group frame of H⋊G via {match.candidate}",
                 match.residual, tol)]
    for name, res in sorted(match.all_residuals.items()):
        out.append(predicate(f"semidirect.candidate.{name}", "residual of candidate identification (recorded)",
                             True, value=res))
    return out


# --- argument handling ----------------------------------------------------------


def _default_tol() -> float:
    env = os.environ.get("QGF_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise InputError(f"QGF_TOL is not a number: {env!r}") from None


def _group_arg(arg: str) -> tuple[FiniteGroup, object]:
    path = Path(arg)
    if path.exists():
        g = load_group(path)
        return g, json.loads(path.read_text())
    names = {k.lower(): k for k in catalog()}
    if arg.lower() in names or arg == "trivial":
        g = named_group(names.get(arg.lower(), arg))
        return g, group_to_spec(g)
    raise InputError(f"{arg}: no such file or catalog group")


def _read_json(path: str):
    p = Path(path)
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def run(argv: list[str] | None = None) -> tuple[dict, int, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    tol = args.tol if args.tol is not None else _default_tol()
    seed = args.seed
    cmd = args.command
    if cmd == "pentagon":
        g, spec = _group_arg(args.group)
        results, inputs = pentagon_suite(g, tol), spec
    elif cmd == "frame-check":
        g, spec = _group_arg(args.group)
        results, inputs = frame_check_suite(g, tol, seed), spec
    elif cmd == "structure":
        g, spec = _group_arg(args.group)
        results, inputs = structure_suite(g, tol), spec
    elif cmd == "crossed":
        inputs = _read_json(args.action)
        results = crossed_suite(load_action(args.action), tol)
    elif cmd == "semidirect":
        inputs = _read_json(args.spec)
        h, g, alpha = parse_semidirect(inputs, Path(args.spec).parent)
        results = semidirect_suite(h, g, alpha, tol)
    elif cmd == "pontryagin":
        if any(n < 1 for n in args.factors):
            raise InputError("cyclic factors must be positive")
        inputs = {"cyclic": args.factors}
        results = [check("pontryagin.fourier", "(F⊗F)Ŵ_G(F⊗F)* = W_Ĝ", fourier_check(args.factors), tol)]
    elif cmd == "azb":
        if args.n < 1:
            raise InputError("n must be at least 1")
        inputs = {"n": args.n}
        results = azb_commutation_report(args.n, tol)
    else:  # pragma: no cover - argparse enforces the choices
        raise InputError(f"unknown command {cmd}")
    report = build_report(cmd, inputs, tol, seed, results)
    code = 0 if report["summary"]["failed"] == 0 else 1
    return report, code, args


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="residual threshold (default 1e-10, or $QGF_TOL)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled functionals and elements")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--report", help="also write the report to this path")
    p = argparse.ArgumentParser(prog="qgf", description="Checks for multiplicative unitaries and quantum group frames.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (("pentagon", "Pentagon equation for W_G"),
                           ("frame-check", "frame axioms and derived structure for the group frame and its dual"),
                           ("structure", "measured structure of the group frame")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("group", help="group JSON file or catalog name (Z1..Z6, Z2xZ3, S3, D4, Q8, trivial)")
    sp = sub.add_parser("crossed", parents=[common], help="crossed-product frame of an action")
    sp.add_argument("action", help="action JSON file")
    sp = sub.add_parser("semidirect", parents=[common], help="crossed frame vs semidirect product group")
    sp.add_argument("spec", help='JSON file {"h": ..., "g": ..., "alpha": [...]}')
    sp = sub.add_parser("pontryagin", parents=[common], help="Fourier transform intertwines Ŵ_G and W_Ĝ")
    sp.add_argument("factors", type=int, nargs="+", help="cyclic factors n₁ … n_k")
    sp = sub.add_parser("azb", parents=[common], help="discrete az+b legs J₂, Ĵ₂")
    sp.add_argument("n", type=int)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        report, code, args = run(argv)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"qgf: error: {exc}", file=sys.stderr)
        return 2
    text = to_json(report) if args.format == "json" else to_text(report)
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_text(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
