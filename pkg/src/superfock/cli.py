"""Command-line front end: verification suites, characters, coefficients.

Every subcommand emits either human-readable lines or a versioned JSON
report; identical configurations produce byte-identical output.  Exit codes:
0 all checks passed, 1 at least one check failed (or anything skipped
without --allow-skip), 2 configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import delta as delta_mod
from .checks import borcherds_check
from .errors import SuperfockError
from .fock import FockSpaceSpec, TruncatedSpace, character
from .scalars import ExactScalar, parse_rational
from .series import Series, substitute_root_phase
from .superalgebra import (
    Element,
    PRESENTATIONS,
    corrupted_virasoro_quintic,
    mirror_map_on_generator,
    rescaled_virasoro,
    verify_algebra,
    verify_automorphism,
)
from .twisted import (
    MirrorModule,
    SigmaModule,
    corollary2_check,
    mirror_equivariance_report,
    mirror_subalgebra_reports,
    mirror_table_report,
    mirror_twisted_jacobi_report,
    sigma_ramond_report,
    sigma_twisted_jacobi_report,
    sigma_virasoro_report,
)
from .vosa import (
    TensorVosa,
    Vosa,
    calibrate_n2,
    creation_report,
    grading_report,
    kappa_automorphism_report,
    n1_table_report,
    translation_report,
)

SCHEMA = 1
HALF = Fraction(1, 2)


def _thread_cap() -> int:
    raw = os.environ.get("SUPERFOCK_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise SuperfockError(f"SUPERFOCK_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


class Check:
    """One named pass/fail observation inside a suite."""

    def __init__(self, name: str, passed: bool, **info):
        self.name = name
        self.passed = bool(passed)
        self.info = info

    def to_json(self):
        return {"name": self.name, "pass": self.passed, **self.info}

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = " ".join(f"{k}={v}" for k, v in self.info.items())
        return f"  {status} {self.name}" + (f" ({extra})" if extra else "")


def _suite_payload(name: str, checks: list[Check], skipped: bool = False):
    return {
        "name": name,
        "skipped": skipped,
        "checks": [] if skipped else [c.to_json() for c in checks],
        "pass": (not skipped) and all(c.passed for c in checks),
    }


# ---------------------------------------------------------------------------
# delta
# ---------------------------------------------------------------------------

def cmd_delta(args) -> int:
    coeffs = delta_mod.delta_coefficients(args.k, args.terms)
    payload = {
        "schema": SCHEMA,
        "command": "delta",
        "k": args.k,
        "a": [str(c) for c in coeffs],
        "residual": None,
    }
    ok = True
    lines = [f"a_1..a_{args.terms} for k={args.k}: " + ", ".join(str(c) for c in coeffs)]
    if args.verify_order:
        residual = delta_mod.verify_delta_equation(
            args.k, max(args.terms, args.verify_order - 1), args.verify_order)
        payload["residual"] = residual.to_json()
        ok = residual.is_zero()
        lines.append(f"flow-equation residual through x^{args.verify_order}: "
                     + ("0" if ok else repr(residual)))
    _emit(args, payload, lines)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# verify algebra / vosa / twisted
# ---------------------------------------------------------------------------

def cmd_verify_algebra(args) -> int:
    name = args.name
    if name in PRESENTATIONS:
        pres = PRESENTATIONS[name]
    elif name == "virasoro-corrupted-quintic":
        pres = corrupted_virasoro_quintic()
    elif name.startswith("virasoro-rescaled-"):
        pres = rescaled_virasoro(int(name.rsplit("-", 1)[1]))
    else:
        print(f"unknown algebra {name!r}; choices: "
              + ", ".join(sorted(PRESENTATIONS)), file=sys.stderr)
        return 2
    report = verify_algebra(pres, args.window)
    payload = {"schema": SCHEMA, "command": "verify-algebra", **report.to_json()}
    status = "PASS" if report.passed else "FAIL"
    _emit(args, payload, [
        f"{status} {pres.name} window={args.window} "
        f"pairs={report.pairs_checked} triples={report.triples_checked} "
        f"violations={len(report.violations)}"
    ])
    return 0 if report.passed else 1


def _vosa_suite(max_weight: Fraction, window: int) -> list[Check]:
    V = Vosa(max_weight)
    checks = []
    rep = creation_report(V)
    checks.append(Check("creation-axiom", rep.passed, checked=rep.checked))
    rep = grading_report(V)
    checks.append(Check("l0-grading", rep.passed, checked=rep.checked))
    rep = translation_report(V)
    checks.append(Check("translation-axiom", rep.passed, checked=rep.checked,
                        filtered=rep.filtered))
    col_max = max_weight - 2
    gens = {"b": V.vec_of(V.b_state), "f": V.vec_of(V.f_state)}
    for nu, u in gens.items():
        for nv, v in gens.items():
            rep = borcherds_check(V, u, v, window, col_max, f"jacobi-{nu}{nv}")
            checks.append(Check(f"jacobi-{nu}{nv}", rep.passed,
                                checked=rep.checked, filtered=rep.filtered))
    rep = borcherds_check(V, V.omega_vec, V.tau_vec, window, col_max, "jacobi-omega-tau")
    checks.append(Check("jacobi-omega-tau", rep.passed, checked=rep.checked,
                        filtered=rep.filtered))
    # bracket tables use the index window 2: structure constants have degree
    # at most 3 in the indices, and weight-4 truncation checks it completely
    table = n1_table_report(V, min(window, 2), col_max)
    checks.append(Check("n1-table-c-3/2", table.passed, checked=table.checked,
                        filtered=table.filtered))
    bad = Vosa(min(max_weight, 4), psi_delta=2)
    bad_grading = grading_report(bad)
    bad_table = n1_table_report(bad, 1, Fraction(1))
    checks.append(Check("negative-control-psi-normalization",
                        (not bad_grading.passed) and (not bad_table.passed)))
    return checks


def cmd_verify_vosa(args) -> int:
    checks = _vosa_suite(Fraction(args.max_weight), args.window)
    payload = {"schema": SCHEMA, "command": "verify-vosa",
               "config": {"max_weight": str(args.max_weight), "window": args.window},
               **_suite_payload("vosa", checks)}
    _emit(args, payload, ["vosa verification:"] + [c.line() for c in checks])
    return 0 if payload["pass"] else 1


_stack_cache: dict = {}


def _build_stack(levels: int):
    """Shared tower (V, tensor square, calibration, twisted sectors).

    Cached per level bound: everything is deterministic and immutable after
    construction, so reuse across suites changes no output.
    """
    hit = _stack_cache.get(levels)
    if hit is not None:
        return hit
    V = Vosa(5)
    tensor = TensorVosa(V, 5)
    n2 = calibrate_n2(tensor)
    sigma = SigmaModule(V, levels=levels)
    mirror = MirrorModule(sigma, tensor, n2)
    stack = (V, tensor, n2, sigma, mirror)
    _stack_cache[levels] = stack
    return stack


def _twisted_suite(window: int, max_level: Fraction, levels: int) -> list[Check]:
    V, tensor, n2, sigma, mirror = _build_stack(levels)
    checks = []
    ground = sigma.ground_eigenvalue()
    checks.append(Check("sigma-ground-weight-1/16", ground == Fraction(1, 16),
                        value=str(ground)))
    rep = sigma_virasoro_report(sigma, window, max_level)
    checks.append(Check("sigma-virasoro-c-3/2", rep.passed, checked=rep.checked,
                        filtered=rep.filtered))
    rep = sigma_ramond_report(sigma, window, max_level)
    checks.append(Check("sigma-n1-ramond-table", rep.passed, checked=rep.checked,
                        filtered=rep.filtered))
    rep = sigma_twisted_jacobi_report(sigma, window, Fraction(1))
    checks.append(Check("sigma-twisted-jacobi", rep.passed, checked=rep.checked,
                        filtered=rep.filtered))
    checks.append(Check("mirror-same-underlying-space",
                        mirror.space is sigma.space
                        and mirror.space.basis_dump() == sigma.space.basis_dump()))
    kground = mirror.ground_eigenvalue()
    checks.append(Check("mirror-ground-weight-1/8", kground == Fraction(1, 8),
                        value=str(kground)))
    rep = mirror.mode_lattice_report(window, Fraction(1))
    checks.append(Check("mirror-mode-lattices", rep.passed, checked=rep.checked))
    table = mirror_table_report(mirror, window, max_level)
    checks.append(Check("mirror-twisted-n2-table", table.passed,
                        checked=table.checked, filtered=table.filtered,
                        complete=table.complete))
    for sub in mirror_subalgebra_reports(mirror, window, max_level):
        checks.append(Check(sub.name, sub.passed, checked=sub.checked,
                            filtered=sub.filtered))
    rep = mirror_twisted_jacobi_report(mirror, 1, Fraction(1))
    checks.append(Check("mirror-twisted-jacobi", rep.passed, checked=rep.checked,
                        filtered=rep.filtered))
    rep = mirror_equivariance_report(mirror, Fraction(2), window, max_level)
    checks.append(Check("mirror-equivariance", rep.passed, checked=rep.checked,
                        filtered=rep.filtered))
    return checks


def cmd_verify_twisted(args) -> int:
    levels = args.levels if args.levels else 4 * args.window + 1
    checks = _twisted_suite(args.window, Fraction(args.max_weight), levels)
    payload = {"schema": SCHEMA, "command": "verify-twisted",
               "config": {"window": args.window, "max_weight": str(args.max_weight),
                          "levels": levels},
               **_suite_payload("twisted", checks)}
    _emit(args, payload, ["twisted-sector verification:"] + [c.line() for c in checks])
    return 0 if payload["pass"] else 1


def cmd_verify(args) -> int:
    return args.verify_func(args)


# ---------------------------------------------------------------------------
# calibrate n2
# ---------------------------------------------------------------------------

def cmd_calibrate(args) -> int:
    V = Vosa(5)
    tensor = TensorVosa(V, 5)
    n2 = calibrate_n2(tensor, window=args.window)
    from .operators import v_scale

    sign_ok = (tensor.kappa(n2.tau1) == n2.tau1
               and tensor.kappa(n2.tau2) == v_scale(n2.tau2, -1)
               and tensor.kappa(n2.jvec) == v_scale(n2.jvec, -1))
    payload = {"schema": SCHEMA, "command": "calibrate-n2",
               **n2.to_json(), "mirror_signs": sign_ok}
    ok = n2.table.passed and sign_ok
    _emit(args, payload, [
        f"calibrated scalars: c1 = {n2.c1}, c2 = {n2.c2}, cJ = {n2.cJ}",
        f"n2 table (central 3): {'PASS' if n2.table.passed else 'FAIL'} "
        f"checked={n2.table.checked}",
        f"mirror-map signs (tau1 fixed, tau2 and J negated): "
        f"{'PASS' if sign_ok else 'FAIL'}",
    ])
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# character / corollary2
# ---------------------------------------------------------------------------

def cmd_character(args) -> int:
    trunc = parse_rational(args.trunc)
    if args.space == "vosa":
        space = TruncatedSpace(FockSpaceSpec("vosa", trunc))
        series = character(space, Fraction(3, 2))
    elif args.space == "ns-fermion":
        space = TruncatedSpace(FockSpaceSpec("ns-fermion", trunc))
        series = character(space, Fraction(1, 2))
    elif args.space == "ramond":
        levels = int(trunc)
        sigma = SigmaModule(Vosa(5), levels=levels)
        series = sigma.graded_dimension()
    else:  # twisted
        levels = int(trunc)
        _, _, _, _, mirror = _build_stack(levels)
        series = mirror.graded_dimension()
    payload = {"schema": SCHEMA, "command": "character", "space": args.space,
               "series": series.to_json()}
    _emit(args, payload, [f"character of {args.space}: {series!r}"])
    if args.dump_basis:
        if args.space in ("vosa", "ns-fermion"):
            for line in space.basis_dump():
                print(line)
        else:
            print("basis dump is only available for untwisted spaces",
                  file=sys.stderr)
            return 2
    return 0


def cmd_corollary2(args) -> int:
    levels = 2 * int(args.trunc)
    _, _, _, _, mirror = _build_stack(max(levels, 4))
    result = corollary2_check(mirror, Fraction(args.trunc) * 2)
    payload = {"schema": SCHEMA, "command": "corollary2", **result.to_json()}
    _emit(args, payload, [
        f"dim_q (parity-twisted): {result.sigma_series!r}",
        f"dim_q (mirror-twisted): {result.mirror_series!r}",
        f"ground weights: sigma={result.sigma_ground}, mirror={result.mirror_ground}",
        f"dim_q sigma == dim_(q^2) mirror: {'PASS' if result.matches else 'FAIL'}",
    ])
    return 0 if result.matches else 1


# ---------------------------------------------------------------------------
# all
# ---------------------------------------------------------------------------

def _scalar_series_suite(seed: int) -> list[Check]:
    rng = random.Random(seed)

    def rand_scalar():
        return ExactScalar(*(Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                             for _ in range(4)))

    field_ok = True
    for _ in range(40):
        a, b, c = rand_scalar(), rand_scalar(), rand_scalar()
        if (a + b) * c != a * c + b * c or a * (b * c) != (a * b) * c:
            field_ok = False
        if not a.is_zero() and a * a.inv() != ExactScalar(1):
            field_ok = False
        if (a * b).conj_i() != a.conj_i() * b.conj_i():
            field_ok = False
        if (a * b).conj_sqrt2() != a.conj_sqrt2() * b.conj_sqrt2():
            field_ok = False

    def rand_series():
        terms = [(Fraction(rng.randint(-4, 8), 2), rand_scalar()) for _ in range(4)]
        return Series("x", Fraction(5), terms)

    series_ok = True
    for _ in range(25):
        f, g, h = rand_series(), rand_series(), rand_series()
        if f * g != g * f or (f * g) * h != f * (g * h):
            series_ok = False
        if substitute_root_phase(substitute_root_phase(f, 1), 1) != f:
            series_ok = False
    return [Check("scalar-field-axioms", field_ok, samples=40),
            Check("series-ring-axioms", series_ok, samples=25)]


def _delta_suite() -> list[Check]:
    closed = all(
        delta_mod.delta_coefficients(k, 2)
        == (Fraction(1 - k, 2), Fraction(k * k - 1, 12))
        for k in range(1, 13))
    residuals = all(delta_mod.verify_delta_equation(k, 10, 10).is_zero()
                    for k in range(1, 7))
    perturbed = list(delta_mod.delta_coefficients(2, 3))
    perturbed[1] = Fraction(1, 3)
    control = not delta_mod.residual_for_coefficients(2, perturbed, 4).is_zero()
    return [Check("closed-forms-k-1..12", closed),
            Check("flow-residuals-k-1..6-order-10", residuals),
            Check("negative-control-perturbed-a2", control)]


def _algebra_suite(window: int) -> list[Check]:
    checks = []
    names = sorted(PRESENTATIONS)
    cap = _thread_cap()
    if cap > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            reports = list(pool.map(
                lambda n: verify_algebra(PRESENTATIONS[n], window), names))
    else:
        reports = [verify_algebra(PRESENTATIONS[n], window) for n in names]
    for name, rep in zip(names, reports):
        checks.append(Check(f"algebra-{name}", rep.passed,
                            triples=rep.triples_checked))
    # a quintic cocycle first violates Jacobi on index-3 triples
    bad = verify_algebra(corrupted_virasoro_quintic(), max(window, 3))
    checks.append(Check("negative-control-quintic-cocycle", not bad.passed,
                        violations=len(bad.violations)))
    rescaled = verify_algebra(rescaled_virasoro(11), window)
    checks.append(Check("rescaled-cocycle-still-lie-algebra", rescaled.passed))
    auto = verify_automorphism(PRESENTATIONS["n2-ns"], mirror_map_on_generator, window)
    checks.append(Check("mirror-map-automorphism", auto.passed,
                        pairs=auto.pairs_checked))

    def bad_map(g):
        e = Element.of(g)
        return e.scale(-1) if g.family == "G1" else e

    bad_auto = verify_automorphism(PRESENTATIONS["n2-ns"], bad_map, min(window, 2))
    checks.append(Check("negative-control-g1-flip-not-automorphism",
                        not bad_auto.passed))
    return checks


def _calibration_suite() -> list[Check]:
    from .operators import v_scale

    V = Vosa(5)
    tensor = TensorVosa(V, 5)
    ka = kappa_automorphism_report(tensor)
    n2 = calibrate_n2(tensor)
    signs = (tensor.kappa(n2.tau1) == n2.tau1
             and tensor.kappa(n2.tau2) == v_scale(n2.tau2, -1)
             and tensor.kappa(n2.jvec) == v_scale(n2.jvec, -1))
    return [
        Check("kappa-vertex-compatibility", ka.passed, checked=ka.checked),
        Check("n2-calibration-table", n2.table.passed, c1=str(n2.c1),
              c2=str(n2.c2), cJ=str(n2.cJ)),
        Check("n2-mirror-signs", signs),
    ]


def _corollary2_suite(levels: int) -> list[Check]:
    _, _, _, _, mirror = _build_stack(levels)
    result = corollary2_check(mirror)
    sigma_series = result.sigma_series
    expected = {Fraction(n): c for n, c in
                zip(range(4), (2, 4, 8, 16))}
    low_ok = all(sigma_series.coefficient(e) == ExactScalar(c)
                 for e, c in expected.items())
    return [
        Check("sigma-character-2-4-8-16", low_ok),
        Check("mirror-leading-exponent-0",
              result.mirror_series.min_exponent() == 0),
        Check("corollary2-identity", result.matches),
        Check("ground-weights-1/16-1/8",
              result.sigma_ground == Fraction(1, 16)
              and result.mirror_ground == Fraction(1, 8)),
    ]


ALL_SUITES = ("scalars", "delta", "algebra", "vosa", "calibration", "twisted",
              "corollary2")


def cmd_all(args) -> int:
    window = args.window
    max_weight = Fraction(args.max_weight)
    only = set(args.only.split(",")) if args.only else set(ALL_SUITES)
    unknown = only - set(ALL_SUITES)
    if unknown:
        print(f"unknown suites: {sorted(unknown)}", file=sys.stderr)
        return 2
    levels = 4 * window + 1
    suites = []

    def run(name, fn):
        if name not in only:
            suites.append(_suite_payload(name, [], skipped=True))
            return
        suites.append(_suite_payload(name, fn()))

    run("scalars", lambda: _scalar_series_suite(args.seed))
    run("delta", _delta_suite)
    run("algebra", lambda: _algebra_suite(max(window, 2)))
    run("vosa", lambda: _vosa_suite(Fraction(4), min(window, 3)))
    run("calibration", _calibration_suite)
    run("twisted", lambda: _twisted_suite(window, max_weight, levels))
    run("corollary2", lambda: _corollary2_suite(max(levels, 6)))

    skipped = sum(1 for s in suites if s["skipped"])
    failed = sum(1 for s in suites if (not s["skipped"]) and not s["pass"])
    overall = failed == 0 and (skipped == 0 or args.allow_skip)
    payload = {
        "schema": SCHEMA,
        "command": "all",
        "config": {"window": window, "max_weight": str(max_weight),
                   "seed": args.seed, "levels": levels,
                   "threads": _thread_cap()},
        "suites": suites,
        "summary": {"total": len(suites), "failed": failed, "skipped": skipped},
        "pass": overall,
    }
    lines = []
    for s in suites:
        if s["skipped"]:
            lines.append(f"SKIP {s['name']}")
            continue
        status = "PASS" if s["pass"] else "FAIL"
        lines.append(f"{status} {s['name']} "
                     f"({sum(1 for c in s['checks'] if c['pass'])}/{len(s['checks'])} checks)")
    lines.append(f"summary: {len(suites) - failed - skipped} passed, "
                 f"{failed} failed, {skipped} skipped")
    _emit(args, payload, lines)
    return 0 if overall else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superfock",
        description="Exact verification suite for free-field superconformal "
                    "structures and order-two twisted sectors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", help="twist-operator coefficients")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--verify-order", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_delta)

    v = sub.add_parser("verify", help="run a verification suite")
    vsub = v.add_subparsers(dest="target", required=True)

    p = vsub.add_parser("algebra", help="structure-constant presentations")
    p.add_argument("--name", required=True)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_algebra)

    p = vsub.add_parser("vosa", help="free-field vertex algebra axioms")
    p.add_argument("--max-weight", default="4")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_vosa)

    p = vsub.add_parser("twisted", help="twisted sectors")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--max-weight", default="2",
                   help="largest level above ground used for check columns")
    p.add_argument("--levels", type=int, default=0,
                   help="level truncation of the twisted space (default 4*window+1)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_twisted)

    c = sub.add_parser("calibrate", help="solve for generator normalizations")
    csub = c.add_subparsers(dest="target", required=True)
    p = csub.add_parser("n2", help="N=2 generators on the tensor square")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("character", help="graded dimensions")
    p.add_argument("--space", choices=("vosa", "ns-fermion", "ramond", "twisted"),
                   required=True)
    p.add_argument("--trunc", required=True,
                   help="weight truncation (levels for twisted sectors)")
    p.add_argument("--dump-basis", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("corollary2", help="the character identity")
    p.add_argument("--trunc", type=int, default=4,
                   help="compare coefficients of q^0..q^(trunc-1) on the "
                        "parity-twisted side")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corollary2)

    p = sub.add_parser("all", help="every suite in dependency order")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--max-weight", default="2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", default="",
                   help="comma-separated subset of suites; the rest are skipped")
    p.add_argument("--allow-skip", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SuperfockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
