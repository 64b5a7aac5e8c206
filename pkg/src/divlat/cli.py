"""divlat command-line interface.

File-based JSON in, JSON (--json) or human-readable text out.  Exit codes:
0 success, 1 domain error (bad input values, schema violations), 2 usage
error.  The --threads flag changes speed only, never any output byte;
--seed drives corpus generation only.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import corpus as corpus_mod
from .classify import classify_operator
from .divisibility import divisibility_spectrum, root_search
from .exactalg import IntMatrix, snf
from .fitting import fitting_decompose
from .numberring import IntegerRing, unit_group
from .serialize import (
    InputError,
    canonical_dumps,
    classify_to_json,
    fitting_to_json,
    matrix_from_json,
    matrix_to_json,
    outcome_to_json,
    primeset_from_json,
    primeset_to_json,
    problem_from_json,
    problem_to_json,
    ring_from_json,
    sdescriptor_from_json,
    spectrum_to_json,
    supernatural_from_json,
    supernatural_to_json,
    theorem_report_to_json,
    unit_group_to_json,
)
from .supernat import additive_hypothesis, gcd_sn, lcm_sn, mul_sn, pi_S
from .verifier import verify

MATRIX_SCHEMA = 'matrix file: {"rows": 2, "cols": 2, "entries": [[0, -1], [1, -1]]}'
PROBLEM_SCHEMA = (
    'problem file: {"ring": "Z" | {"quadratic": {"d": -5}}, "module": {"z_rank": 4, '
    '"omega_action": [[...]]}, "operator": MATRIX, "S": DESCRIPTOR, '
    '"witnesses": [{"s": 2, "matrix": MATRIX}], "name": "..."}'
)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _load_operator(path: str):
    """Accept either a bare matrix file or a problem file with an operator."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "operator" in obj:
        problem = problem_from_json(obj)
        return problem["operator"], problem["module"]
    T = matrix_from_json(obj)
    return T, None


def _emit(args, payload: dict, text: str) -> int:
    if args.json:
        sys.stdout.write(canonical_dumps(payload))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def _cmd_fitting(args) -> int:
    T, module = _load_operator(args.file)
    split = fitting_decompose(T, module=module)
    text = (
        f"m = {split.exponent_m}\n"
        f"gen kernel (rank {split.gen_kernel.rank}): {split.gen_kernel.basis.nested()}\n"
        f"image part (rank {split.image_part.rank}): {split.image_part.basis.nested()}\n"
        f"direct and full: {'yes' if split.is_direct else 'no'}\n"
        f"restriction invertible: {'yes' if split.restriction_invertible else 'no'}\n"
        f"restriction: {split.restriction.nested()}"
    )
    return _emit(args, fitting_to_json(split), text)


def _cmd_classify(args) -> int:
    T, module = _load_operator(args.file)
    report = classify_operator(T, module=module)
    lines = [
        f"semisimple: {'yes' if report.semisimple else 'no'}",
        f"eigenvalues all roots of unity: {'yes' if report.all_eigen_roots_of_unity else 'no'}",
    ]
    if report.cyclotomic_factorization is not None:
        factors = " * ".join(f"Phi_{k}^{e}" if e > 1 else f"Phi_{k}" for k, e in report.cyclotomic_factorization)
        lines.append(f"cyclotomic factorization: {factors if factors else '1'}")
    lines.append(f"order: {report.order if report.order is not None else 'none (infinite or undefined)'}")
    lines.append(f"semisimple part: {[[str(x) for x in report.jordan_semisimple_part.row(i)] for i in range(T.rows)]}")
    lines.append(f"nilpotent part: {[[str(x) for x in report.jordan_nilpotent_part.row(i)] for i in range(T.rows)]}")
    return _emit(args, classify_to_json(report), "\n".join(lines))


def _cmd_root(args) -> int:
    T, module = _load_operator(args.file)
    outcome = root_search(
        T,
        args.s,
        args.bound,
        module=module,
        threads=args.threads,
        timeout_ms=args.timeout_ms,
    )
    payload = outcome_to_json(outcome)
    if "found" in payload:
        text = f"FOUND witness {payload['found']['witness']['entries']} (re-multiplied exactly)"
    elif "proved_impossible" in payload:
        text = f"IMPOSSIBLE: {payload['proved_impossible']['statement']}"
    else:
        ex = payload["exhausted"]
        text = f"EXHAUSTED bound {ex['bound']}" + ("" if ex["complete"] else " (budget cut the scan)")
    return _emit(args, payload, text)


def _cmd_spectrum(args) -> int:
    T, module = _load_operator(args.file)
    table = divisibility_spectrum(
        T, args.s_max, args.bound, module=module, threads=args.threads
    )
    lines = [f"order of invertible part: {table.order if table.order is not None else 'none'}"]
    if table.sufficient_set:
        lines.append(f"guaranteed divisible for {table.sufficient_set}")
    for row in table.rows:
        out = outcome_to_json(row.outcome)
        if "found" in out:
            detail = f"witness {out['found']['witness']['entries']}"
        elif "proved_impossible" in out:
            detail = out["proved_impossible"]["statement"]
        else:
            detail = f"exhausted at bound {out['exhausted']['bound']}"
        lines.append(f"s={row.s}: {row.verdict} ({detail})")
    return _emit(args, spectrum_to_json(table), "\n".join(lines))


def _cmd_verify(args) -> int:
    problem = problem_from_json(_load_json(args.file))
    report = verify(
        problem["ring"], problem["module"], problem["operator"], problem["S"], problem["witnesses"]
    )
    lines = []
    if problem["name"]:
        lines.append(f"problem: {problem['name']}")
    for c in report.hypothesis_checks.witnesses:
        lines.append(f"witness s={c.s}: {c.reason}")
    lines.append(f"additive hypothesis: {report.hypothesis_checks.additive_ok}")
    lines.append(f"multiplicative hypothesis: {report.hypothesis_checks.mult_ok}")
    lines.append(f"clause 1 (zero (+) invertible split): {'holds' if report.clause1.holds else 'fails'}")
    lines.append(f"clause 2 (semisimple restriction): {'holds' if report.clause2.holds else 'fails'}")
    d = report.clause3.order
    lines.append(f"clause 3 (finite order): {d if d is not None else 'no finite order'}"
                 + (f", coprime to Pi_S: {report.clause3.order_coprime_to_pi_s}" if report.clause3.pi_s is not None else ""))
    lines.append(f"clause 4 roots constructed: {[n for n, _ in report.clause4.constructed_roots]}")
    lines.append(f"verdict: {report.verdict} ({report.reason})")
    payload = theorem_report_to_json(report)
    if args.json:
        return _emit(args, payload, "")
    # default mode prints the summary followed by the full report
    sys.stdout.write("\n".join(lines) + "\n")
    sys.stdout.write(canonical_dumps(payload))
    return 0


def _cmd_units(args) -> int:
    obj = _load_json(args.file)
    ring = ring_from_json(obj.get("ring", obj) if isinstance(obj, dict) else obj)
    if isinstance(ring, IntegerRing):
        raise InputError("units: need a quadratic ring, e.g. {\"ring\": {\"quadratic\": {\"d\": 2}}}")
    desc = unit_group(ring)
    text = (
        f"{ring}\n"
        f"torsion order: {desc.torsion_order}, generator {list(desc.torsion_generator)}\n"
        + (
            f"fundamental unit: {list(desc.fundamental_unit)} (norm {ring.norm(desc.fundamental_unit)})"
            if desc.fundamental_unit is not None
            else "fundamental unit: none (imaginary field)"
        )
    )
    return _emit(args, unit_group_to_json(desc), text)


def _cmd_snf(args) -> int:
    obj = _load_json(args.file)
    M = matrix_from_json(obj)
    if not isinstance(M, IntMatrix):
        raise InputError("snf: matrix must be integral")
    D, U, V = snf(M)
    payload = {"D": matrix_to_json(D), "U": matrix_to_json(U), "V": matrix_to_json(V)}
    text = f"D = {D.nested()}\nU = {U.nested()}\nV = {V.nested()}"
    return _emit(args, payload, text)


def _cmd_supernat(args) -> int:
    obj = _load_json(args.file)
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(
            "supernat file: exactly one of pi_s, nu, lcm, gcd, mul, additive"
        )
    (op, value), = obj.items()
    if op == "pi_s":
        result = pi_S(sdescriptor_from_json(value))
        return _emit(args, primeset_to_json(result), str(result))
    if op == "nu":
        if not isinstance(value, dict) or set(value) != {"p", "n"}:
            raise InputError('nu takes {"p": prime, "n": SUPERNATURAL}')
        x = supernatural_from_json(value["n"])
        e = x.nu(value["p"])
        payload = {"nu": "inf" if e == float("inf") else int(e)}
        return _emit(args, payload, str(payload["nu"]))
    if op in ("lcm", "gcd", "mul"):
        if not isinstance(value, list) or len(value) != 2:
            raise InputError(f"{op} takes a pair of supernaturals")
        a = supernatural_from_json(value[0])
        b = supernatural_from_json(value[1])
        fn = {"lcm": lcm_sn, "gcd": gcd_sn, "mul": mul_sn}[op]
        result = fn(a, b)
        return _emit(args, supernatural_to_json(result), str(result))
    if op == "additive":
        if not isinstance(value, dict) or set(value) != {"S", "lchar"}:
            raise InputError('additive takes {"S": DESCRIPTOR, "lchar": PRIMESET}')
        S = sdescriptor_from_json(value["S"])
        ps = primeset_from_json(value["lchar"])
        result = additive_hypothesis(S, ps)
        return _emit(args, {"additive_hypothesis": result}, str(result).lower())
    raise InputError(f"unknown supernat operation {op!r}")


def _cmd_corpus(args) -> int:
    problems = corpus_mod.gen_corpus(args.kind, args.seed)
    from .numberring import ZZ

    payload = [
        problem_to_json(ZZ, None, p.operator, p.exponent_set, p.witnesses, name=p.name)
        for p in problems
    ]
    sys.stdout.write(canonical_dumps(payload))
    return 0


class _Parser(argparse.ArgumentParser):
    """Usage errors print the full help, including the schema epilog."""

    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(2, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for searches (never changes results)")
    common.add_argument("--seed", type=int, default=1, help="PRNG seed (corpus generation only)")

    parser = _Parser(
        prog="divlat",
        description="Exact divisibility analysis for integer and quadratic-ring matrices.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fitting", parents=[common], epilog=MATRIX_SCHEMA,
                       help="kernel/image split of an operator")
    p.add_argument("file")
    p.set_defaults(func=_cmd_fitting)

    p = sub.add_parser("classify", parents=[common], epilog=MATRIX_SCHEMA,
                       help="semisimplicity, spectrum, order, Jordan parts")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("root", parents=[common], epilog=MATRIX_SCHEMA,
                       help="search for an s-th root")
    p.add_argument("file")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--timeout-ms", type=int, default=None)
    p.set_defaults(func=_cmd_root)

    p = sub.add_parser("spectrum", parents=[common], epilog=MATRIX_SCHEMA,
                       help="per-exponent divisibility table")
    p.add_argument("file")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], epilog=PROBLEM_SCHEMA,
                       help="clause-by-clause report for a problem file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("units", parents=[common],
                       epilog='ring file: {"ring": {"quadratic": {"d": 2}}}',
                       help="unit group of a quadratic order")
    p.add_argument("file")
    p.set_defaults(func=_cmd_units)

    p = sub.add_parser("snf", parents=[common], epilog=MATRIX_SCHEMA,
                       help="Smith normal form with transforms")
    p.add_argument("file")
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("supernat", parents=[common],
                       epilog='file: {"pi_s": {"geometric": {"base": 2, "scale": 3}}} etc.',
                       help="supernatural arithmetic and Pi_S")
    p.add_argument("file")
    p.set_defaults(func=_cmd_supernat)

    p = sub.add_parser("corpus", parents=[common],
                       help="emit a deterministic problem corpus as JSON")
    p.add_argument("kind", choices=corpus_mod.KINDS)
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
