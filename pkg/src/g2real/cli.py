"""Command-line front end.

Subcommands: axioms, counterexample, cdk, companion, norms, report.
Exit codes: 0 all pass, 1 assertion failure (a theorem-level check failed,
which signals an implementation bug), 2 usage error, 3 budget-exhausted
unknowns present.
"""

import argparse
import random
import sys
import time

from . import linalg, reports
from .fields import (
    CubicAlgebra,
    FieldError,
    PrimeField,
    QuadraticEtale,
    cubic_is_irreducible,
    ground_field,
    norm_quotient_report,
)


class UsageError(Exception):
    pass


_CONFIG_KEYS = {
    "axioms": {"field", "samples", "seed", "json"},
    "counterexample": {"kind", "q", "budget", "exhaustive", "json"},
    "cdk": {"q", "trials", "seed", "json"},
    "companion": {"q", "trials", "seed", "json"},
    "norms": {"q", "json"},
}


def config_to_args(scenario, text):
    """Parse plain-text key=value lines into argv fragments; unknown keys are
    rejected.  Flags given on the command line take precedence by appearing
    later in the argv."""
    known = _CONFIG_KEYS.get(scenario)
    if known is None:
        raise UsageError(f"scenario {scenario!r} takes no config file")
    argv = []
    positional = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        if key == "kind":
            positional.append(value)
        elif key == "exhaustive":
            if value.lower() in ("1", "true", "yes"):
                argv.append("--exhaustive")
        else:
            argv.extend([f"--{key}", value])
    return positional + argv


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        argv = _expand_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, ok = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if report is not None:
        reports.dump_report(report, getattr(args, "json", None))
        if getattr(args, "json", None):
            print(f"report written to {args.json}")
        print(reports.render(report))
        unknowns = any(v["status"] == "unknown" for v in report["verdicts"])
        if not ok:
            return 1
        if unknowns:
            return 3
    return 0 if ok else 1


def _expand_config(argv):
    """Replace `--config PATH` by the flags it encodes, keeping explicit
    command-line flags after them so they win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a path")
    path = argv[i + 1]
    scenario = argv[0] if argv else ""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    extra = config_to_args(scenario, text)
    rest = argv[1:i] + argv[i + 2 :]
    return [scenario] + extra + rest


def build_parser():
    p = argparse.ArgumentParser(
        prog="g2real",
        description="Exact octonion algebras and reality tests for their "
        "automorphism groups",
        epilog="Every scenario subcommand also accepts --config FILE with "
        "plain-text key=value lines; explicit flags win.",
    )
    sub = p.add_subparsers(required=True)

    ax = sub.add_parser("axioms", help="composition/minimal-equation/frame suites")
    ax.add_argument("--field", required=True, help="odd prime p or Q")
    ax.add_argument("--samples", type=int, default=100000)
    ax.add_argument("--seed", type=int, default=0)
    ax.add_argument("--json", default=None)
    ax.set_defaults(func=cmd_axioms)

    ce = sub.add_parser("counterexample", help="build and verify a non-real element")
    ce.add_argument("kind", choices=["sl3", "su"])
    ce.add_argument("--q", type=int, required=True)
    ce.add_argument("--budget", type=int, default=10**8)
    ce.add_argument("--exhaustive", action="store_true")
    ce.add_argument("--json", default=None)
    ce.set_defaults(func=cmd_counterexample)

    cd = sub.add_parser(
        "cdk", help="semisimple sampling: every element real with involutions"
    )
    cd.add_argument("--q", type=int, required=True)
    cd.add_argument("--trials", type=int, default=200)
    cd.add_argument("--seed", type=int, default=0)
    cd.add_argument("--json", default=None)
    cd.set_defaults(func=cmd_cdk)

    co = sub.add_parser("companion", help="self-dual cubic factorization suite")
    co.add_argument("--q", type=int, required=True)
    co.add_argument("--trials", type=int, default=100)
    co.add_argument("--seed", type=int, default=0)
    co.add_argument("--json", default=None)
    co.set_defaults(func=cmd_companion)

    no = sub.add_parser("norms", help="norm-quotient triviality by enumeration")
    no.add_argument("--q", type=int, required=True)
    no.add_argument("--json", default=None)
    no.set_defaults(func=cmd_norms)

    re = sub.add_parser("report", help="render (and optionally verify) a report")
    re.add_argument("--input", required=True)
    re.add_argument("--verify", action="store_true")
    re.set_defaults(func=cmd_report)
    return p


def _add(report, name, passed, detail=None):
    report["verdicts"].append(
        {"name": name, "status": "pass" if passed else "fail", "detail": detail}
    )
    return passed


def cmd_axioms(args):
    from .composition import (
        alternative_law_sample,
        composition_law_sample,
        peirce_frame,
        zorn_algebra,
    )
    from .sweeps import batch_minimal_equation, batch_zorn_composition

    if args.field not in ("Q",) and int(args.field) == 2:
        raise UsageError("characteristic 2 is excluded")
    start = time.perf_counter()
    F = ground_field(args.field)
    rep = reports.new_report(
        "axioms", {"field": args.field, "samples": args.samples}, args.seed
    )
    ok = True
    fails = batch_zorn_composition(
        args.field if args.field == "Q" else int(args.field), args.samples, args.seed
    )
    ok &= _add(rep, "composition_law", fails == 0, f"{fails} failures / {args.samples}")

    alg = zorn_algebra(F)
    if F.kind == "prime":
        mfails = batch_minimal_equation(alg, min(args.samples, 10000), args.seed + 1)
    else:
        rng = random.Random(args.seed + 1)
        mfails = sum(
            0 if alg.minimal_equation_holds(alg.random(rng)) else 1
            for _ in range(min(args.samples, 1000))
        )
    ok &= _add(rep, "minimal_equation", mfails == 0, f"{mfails} failures")

    rng = random.Random(args.seed + 2)
    conj_ok = True
    for _ in range(200):
        x = alg.random(rng)
        if not alg.eq(alg.conj(alg.conj(x)), x):
            conj_ok = False
        prod = alg.mul(x, alg.conj(x))
        if not alg.eq(prod, alg.scale(alg.norm(x), alg.one)):
            conj_ok = False
    ok &= _add(rep, "conjugation", conj_ok)

    alt = alternative_law_sample(alg, 200, args.seed + 3)
    ok &= _add(rep, "alternative_laws", alt == 0, f"{alt} failures")

    e = alg.basis_vec(7)
    pf = peirce_frame(alg, e)
    closure = True
    for u in pf.U:
        for u2 in pf.U:
            prod = alg.mul(u, u2)
            if linalg.rank(F, linalg.mat(pf.W + (prod,))) != 3:
                closure = False
    ok &= _add(rep, "peirce", len(pf.U) == 3 and len(pf.W) == 3 and closure)

    reports.finalize(rep, time.perf_counter() - start)
    return rep, ok


def cmd_counterexample(args):
    from .reality import (
        RealityError,
        brute_force_reality_oracle,
        build_counterexample_sl3,
        build_counterexample_su,
        reality_sl3,
        reality_su,
        symmetric_decomposition,
    )

    start = time.perf_counter()
    rep = reports.new_report(
        "counterexample",
        {"kind": args.kind, "q": args.q, "exhaustive": bool(args.exhaustive)},
        None,
    )
    ok = True
    try:
        if args.kind == "sl3":
            ce = build_counterexample_sl3(args.q)
        else:
            ce = build_counterexample_su(args.q)
    except RealityError as exc:
        raise UsageError(f"q = {args.q} is not admissible: {exc}") from exc

    if args.kind == "sl3":
        k = ce["field"]
        r = reality_sl3(k, ce["B"], args.budget)
        ok &= _add(
            rep,
            "verdict_not_real",
            r.verdict == "not_real",
            f"verdict={r.verdict}",
        )
        rep["obstruction"] = r.obstruction
        # the triangular base matrix does decompose; the twisted one must not
        decA = symmetric_decomposition(k, ce["A"], args.budget)
        ok &= _add(rep, "base_matrix_decomposes", decA["ok"])
        T = ((k.zero, k.zero, k.one), (k.zero, k.neg(k.one), k.zero), (k.one, k.zero, k.zero))
        lhs = linalg.mat_mul(k, T, ce["A"])
        rhs = linalg.mat_mul(k, linalg.transpose(ce["A"]), T)
        ok &= _add(rep, "antidiagonal_conjugates_to_transpose", linalg.mat_eq(k, lhs, rhs))
        orc = brute_force_reality_oracle(ce["t"], ce["frame"], args.budget, level="matrix")
        agree = orc["verdict"] == r.verdict
        rep["oracle_agreement"] = agree
        ok &= _add(
            rep,
            "oracle_agreement",
            agree,
            f"{orc['checked']} candidates per coset checked",
        )
        rep["witnesses"].append(
            {
                "kind": "not_real_instance",
                "field": str(args.q),
                "omega": k.to_text(ce["omega"]),
                "b": k.to_text(ce["b"]),
                "B": reports.mat_text(k, ce["B"]),
            }
        )
    else:
        L = ce["L"]
        k = ce["field"]
        r = reality_su(L, ce["B"], ce["frame"].H, args.budget, args.exhaustive)
        ok &= _add(rep, "verdict_not_real", r.verdict == "not_real", f"verdict={r.verdict}")
        rep["obstruction"] = r.obstruction
        b2 = L.mul(ce["b"], ce["b"])
        cube_exp = (args.q * args.q - 1) // 3
        ok &= _add(
            rep,
            "b_squared_not_a_cube",
            not L.eq(L.pow(b2, cube_exp), L.one),
        )
        if args.exhaustive:
            hits = r.case.get("exhaustive_hits")
            rep["oracle_agreement"] = hits == 0
            ok &= _add(
                rep,
                "exhaustive_sweep",
                hits == 0,
                f"{r.case.get('exhaustive_candidates')} candidates, {hits} conjugators",
            )
        else:
            rep["oracle_agreement"] = None
        rep["witnesses"].append(
            {
                "kind": "not_real_instance",
                "field": str(args.q),
                "omega": L.to_text(ce["omega"]),
                "b": L.to_text(ce["b"]),
                "B": [[L.to_text(x) for x in row] for row in ce["B"]],
            }
        )
    reports.finalize(rep, time.perf_counter() - start)
    return rep, ok


def cmd_cdk(args):
    from .automorphisms import quadratic_subfield_frame, random_sl3, random_su, su_embed, sl3_embed
    from .composition import hermitian_space, octonion_from_hermitian, zorn_algebra
    from .automorphisms import zorn_split_frame
    from .reality import reality_sl3, reality_su, two_involution_witness

    start = time.perf_counter()
    q = args.q
    rep = reports.new_report("cdk", {"q": q, "trials": args.trials}, args.seed)
    ok = True
    k = PrimeField(q)
    rng = random.Random(args.seed)

    # SL(3, q) family on the Zorn frame
    alg = zorn_algebra(k)
    fr = zorn_split_frame(alg)
    passed = 0
    torus_types = {"indecomposable": 0, "decomposable": 0}
    for _ in range(args.trials):
        A = random_sl3(k, rng, avoid_eigenvalue_one=True, separable=True)
        chi = linalg.charpoly3(k, A)
        irr = cubic_is_irreducible(k, chi)
        torus_types["indecomposable" if irr else "decomposable"] += 1
        r = reality_sl3(k, A)
        if r.verdict != "real" or r.witness["type"] != "symmetric_pair":
            continue
        t = sl3_embed(A, fr)
        i1, i2 = two_involution_witness(t, fr, r)
        passed += 1
        if len(rep["witnesses"]) < 3:
            rep["witnesses"].append(
                {
                    "kind": "symmetric_pair",
                    "field": str(q),
                    "A": reports.mat_text(k, A),
                    "S1": reports.mat_text(k, r.witness["S1"]),
                    "S2": reports.mat_text(k, r.witness["S2"]),
                }
            )
    ok &= _add(
        rep,
        "sl3_family_real_with_involutions",
        passed == args.trials,
        f"{passed}/{args.trials}; torus types {torus_types}",
    )

    # SU(3, q^2/q) family on a hermitian-model frame
    c = k.nonsquare()
    L = QuadraticEtale(k, c)
    algu = octonion_from_hermitian(hermitian_space(L, (1, 1, 1)))
    fru = quadratic_subfield_frame(algu, algu.basis_vec(1))
    passed_u = 0
    torus_types_u = {"indecomposable": 0, "decomposable": 0}
    for _ in range(args.trials):
        A = random_su(L, fru.H, rng, separable=True)
        chi = linalg.charpoly3(L, A)
        irr = cubic_is_irreducible(L, chi)
        torus_types_u["indecomposable" if irr else "decomposable"] += 1
        r = reality_su(L, A, fru.H)
        if r.verdict != "real" or r.witness["type"] != "unitary_pair":
            continue
        t = su_embed(A, fru)
        i1, i2 = two_involution_witness(t, fru, r)
        passed_u += 1
        if len(rep["witnesses"]) < 6:
            rep["witnesses"].append(
                {
                    "kind": "unitary_pair",
                    "field": str(q),
                    "c": int(c),
                    "H": [k.to_text(h) for h in fru.H],
                    "A": [[L.to_text(x) for x in row] for row in A],
                    "A1": [[L.to_text(x) for x in row] for row in r.witness["A1"]],
                    "A2": [[L.to_text(x) for x in row] for row in r.witness["A2"]],
                }
            )
    ok &= _add(
        rep,
        "su_family_real_with_involutions",
        passed_u == args.trials,
        f"{passed_u}/{args.trials}; torus types {torus_types_u}",
    )
    reports.finalize(rep, time.perf_counter() - start)
    return rep, ok


def cmd_companion(args):
    from .reality import companion_factorization

    start = time.perf_counter()
    q = args.q
    rep = reports.new_report("companion", {"q": q, "trials": args.trials}, args.seed)
    k = PrimeField(q)
    L = QuadraticEtale(k, k.nonsquare())
    rng = random.Random(args.seed)
    passed = 0
    anti_ok = True
    for _ in range(args.trials):
        a = L.random(rng)
        chi = (L.neg(L.one), a, L.neg(L.sigma(a)))
        A1, A2 = companion_factorization(L, chi)
        expected_A2 = (
            (L.zero, L.zero, L.neg(L.one)),
            (L.zero, L.neg(L.one), L.zero),
            (L.neg(L.one), L.zero, L.zero),
        )
        if not linalg.mat_eq(L, A2, expected_A2):
            anti_ok = False
        passed += 1
    ok = _add(rep, "companion_identities", passed == args.trials, f"{passed}/{args.trials}")
    ok &= _add(rep, "second_factor_antidiagonal", anti_ok)
    reports.finalize(rep, time.perf_counter() - start)
    return rep, ok


def cmd_norms(args):
    start = time.perf_counter()
    q = args.q
    rep = reports.new_report("norms", {"q": q}, None)
    k = PrimeField(q)
    L = QuadraticEtale(k, k.nonsquare())
    chi = None
    for a1 in range(q):
        for a0 in range(1, q):
            if cubic_is_irreducible(k, (a0, a1, 0)):
                chi = (a0, a1, 0)
                break
        if chi:
            break
    E = CubicAlgebra(L, chi)
    q1, q2 = norm_quotient_report(E)
    ok = _add(rep, "norm_one_quotient_trivial", q1 == 1, f"|L^1/N(E^1)| = {q1}")
    ok &= _add(rep, "base_norm_quotient_trivial", q2 == 1, f"|k*/N(F*)| = {q2}")
    reports.finalize(rep, time.perf_counter() - start)
    return rep, ok


def cmd_report(args):
    import json

    try:
        with open(args.input) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        print(
            f"schema error at /: not valid JSON (line {exc.lineno}, col {exc.colno})",
            file=sys.stderr,
        )
        return None, False
    try:
        reports.validate_report(data)
    except Exception as exc:
        path = "/".join(str(p) for p in getattr(exc, "absolute_path", []) or [])
        print(f"schema error at /{path}: {getattr(exc, 'message', exc)}", file=sys.stderr)
        return None, False
    print(reports.render(data))
    if args.verify:
        n = reports.verify_witnesses(data)
        print(f"witnesses re-verified: {n}")
    return None, True


if __name__ == "__main__":
    sys.exit(main())
