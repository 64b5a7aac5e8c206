"""JSON forms for every type that crosses the CLI boundary.

Strict parsing: objects are schema-checked and unknown fields are rejected.
Rational entries travel as "p/q" strings, never as floats; the infinite
supernatural exponent travels as the string "inf".
"""
from __future__ import annotations

import json
from fractions import Fraction

from .classify import ClassifyReport, UnipotentCheck
from .divisibility import (
    CertKind,
    Found,
    ProvedImpossible,
    RootSearchOutcome,
    SpectrumTable,
)
from .exactalg import IntMatrix, Lattice, QMatrix
from .fitting import CleanSplit, FittingSplit
from .numberring import IntegerRing, OKModule, QuadraticOrder, UnitGroupDesc, ZZ
from .supernat import (
    INF,
    AllFrom,
    Factorials,
    FiniteSet,
    Geometric,
    PrimeSet,
    Residue,
    SDescriptor,
    Supernatural,
)
from .verifier import TheoremReport


class InputError(ValueError):
    """Malformed or schema-violating input."""


def _expect_keys(obj: dict, required: set[str], optional: set[str] = frozenset(), what: str = "object"):
    if not isinstance(obj, dict):
        raise InputError(f"{what}: expected a JSON object, got {type(obj).__name__}")
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise InputError(f"{what}: missing field(s) {sorted(missing)}")
    if unknown:
        raise InputError(f"{what}: unknown field(s) {sorted(unknown)}")


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what}: expected an integer, got {value!r}")
    return value


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- matrices ----------------------------------------------------------


def matrix_to_json(m: IntMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.nested()}


def _entry_value(x, what: str, allow_rational: bool):
    if isinstance(x, bool):
        raise InputError(f"{what}: boolean entry")
    if isinstance(x, int):
        return x
    if allow_rational and isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{what}: bad rational entry {x!r}") from exc
    raise InputError(f"{what}: bad entry {x!r} (integers only; rationals as 'p/q' strings where allowed)")


def matrix_from_json(obj, what: str = "matrix", allow_rational: bool = False):
    """Parse {"rows", "cols", "entries"}; entries may be flat or nested and
    are normalized.  With allow_rational, returns a QMatrix when any entry
    is fractional."""
    _expect_keys(obj, {"rows", "cols", "entries"}, what=what)
    rows = _int(obj["rows"], f"{what}.rows")
    cols = _int(obj["cols"], f"{what}.cols")
    raw = obj["entries"]
    if not isinstance(raw, list):
        raise InputError(f"{what}.entries: expected a list")
    if raw and isinstance(raw[0], list):
        flat = [x for row in raw for x in (row if isinstance(row, list) else [row])]
    else:
        flat = list(raw)
    if len(flat) != rows * cols:
        raise InputError(f"{what}: expected {rows * cols} entries, got {len(flat)}")
    values = [_entry_value(x, what, allow_rational) for x in flat]
    if any(isinstance(v, Fraction) and v.denominator != 1 for v in values):
        return QMatrix(rows, cols, tuple(Fraction(v) for v in values))
    return IntMatrix(rows, cols, tuple(int(v) for v in values))


def _fraction_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qmatrix_to_json(m: QMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[_fraction_json(m[i, j]) for j in range(m.cols)] for i in range(m.rows)],
    }


def lattice_to_json(lat: Lattice) -> dict:
    return {"ambient_rank": lat.ambient_rank, "basis": lat.basis.nested()}


# -- supernatural numbers and descriptors -------------------------------


def supernatural_to_json(x: Supernatural) -> dict:
    factors = {}
    for p, e in x.factors:
        factors[str(p)] = "inf" if e == INF else int(e)
    return {"factors": factors}


def supernatural_from_json(obj, what: str = "supernatural") -> Supernatural:
    _expect_keys(obj, {"factors"}, what=what)
    factors = {}
    for key, e in obj["factors"].items():
        try:
            p = int(key)
        except ValueError as exc:
            raise InputError(f"{what}: bad prime key {key!r}") from exc
        if e == "inf":
            factors[p] = INF
        else:
            factors[p] = _int(e, f"{what}.factors[{key}]")
    try:
        return Supernatural.of(factors)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from exc


def sdescriptor_to_json(S: SDescriptor) -> dict:
    if isinstance(S, FiniteSet):
        return {"finite": list(S.elements)}
    if isinstance(S, Geometric):
        return {"geometric": {"base": S.base, "scale": S.scale}}
    if isinstance(S, Factorials):
        return {"factorials": True}
    if isinstance(S, Residue):
        return {"residue": {"a": S.a, "m": S.m}}
    if isinstance(S, AllFrom):
        return {"all_from": S.start}
    raise TypeError(f"unknown descriptor {S!r}")


def sdescriptor_from_json(obj, what: str = "S") -> SDescriptor:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(f"{what}: expected an object with exactly one descriptor key")
    (key, value), = obj.items()
    try:
        if key == "finite":
            return FiniteSet(tuple(_int(v, what) for v in value))
        if key == "geometric":
            _expect_keys(value, {"base"}, {"scale"}, what=f"{what}.geometric")
            return Geometric(_int(value["base"], what), _int(value.get("scale", 1), what))
        if key == "factorials":
            if value is not True:
                raise InputError(f"{what}: factorials takes the value true")
            return Factorials()
        if key == "residue":
            _expect_keys(value, {"a", "m"}, what=f"{what}.residue")
            return Residue(_int(value["a"], what), _int(value["m"], what))
        if key == "all_from":
            return AllFrom(_int(value, what))
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from exc
    raise InputError(f"{what}: unknown descriptor kind {key!r}")


def primeset_to_json(ps: PrimeSet) -> dict:
    if ps.kind == "finite":
        return {"finite": list(ps.primes)}
    if ps.kind == "all":
        return {"all_primes": True}
    return {"all_except": list(ps.primes)}


def primeset_from_json(obj, what: str = "primes") -> PrimeSet:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(f"{what}: expected an object with exactly one key")
    (key, value), = obj.items()
    try:
        if key == "finite":
            return PrimeSet.finite(_int(v, what) for v in value)
        if key == "all_primes":
            return PrimeSet.all_primes()
        if key == "all_except":
            return PrimeSet.all_except(_int(v, what) for v in value)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from exc
    raise InputError(f"{what}: unknown prime-set kind {key!r}")


# -- rings and modules ---------------------------------------------------


def ring_to_json(ring):
    if isinstance(ring, IntegerRing):
        return "Z"
    if isinstance(ring, QuadraticOrder):
        return {"quadratic": {"d": ring.d}}
    raise TypeError(f"unsupported ring {ring!r}")


def ring_from_json(obj, what: str = "ring"):
    if obj == "Z":
        return ZZ
    if isinstance(obj, dict) and set(obj) == {"quadratic"}:
        _expect_keys(obj["quadratic"], {"d"}, what=f"{what}.quadratic")
        try:
            return QuadraticOrder(_int(obj["quadratic"]["d"], what))
        except ValueError as exc:
            raise InputError(f"{what}: {exc}") from exc
    raise InputError(f"{what}: expected \"Z\" or {{\"quadratic\": {{\"d\": ...}}}}")


def okmodule_to_json(module: OKModule) -> dict:
    return {"z_rank": module.z_rank, "omega_action": module.omega_action.nested()}


def okmodule_from_json(obj, order: QuadraticOrder, what: str = "module") -> OKModule:
    _expect_keys(obj, {"z_rank", "omega_action"}, what=what)
    z_rank = _int(obj["z_rank"], f"{what}.z_rank")
    W = matrix_from_json(
        {"rows": z_rank, "cols": z_rank, "entries": obj["omega_action"]},
        what=f"{what}.omega_action",
    )
    try:
        return OKModule(order, z_rank, W)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from exc


# -- problem files --------------------------------------------------------


def problem_from_json(obj, what: str = "problem") -> dict:
    """Parse a problem file {ring, module, operator, S, witnesses, name}.

    Returns a dict with keys ring, module, operator, S, witnesses, name; the
    witnesses keep QMatrix entries so non-integral ones can be reported
    rather than rejected at the parse stage."""
    _expect_keys(obj, {"operator"}, {"ring", "module", "S", "witnesses", "name"}, what=what)
    ring = ring_from_json(obj.get("ring", "Z"), what=f"{what}.ring")
    module = None
    if isinstance(ring, QuadraticOrder):
        if "module" not in obj:
            raise InputError(f"{what}: quadratic ring requires a module")
        module = okmodule_from_json(obj["module"], ring, what=f"{what}.module")
    elif "module" in obj:
        raise InputError(f"{what}: module only makes sense for a quadratic ring")
    operator = matrix_from_json(obj["operator"], what=f"{what}.operator")
    S = sdescriptor_from_json(obj["S"], what=f"{what}.S") if "S" in obj else None
    witnesses = []
    for i, w in enumerate(obj.get("witnesses", [])):
        _expect_keys(w, {"s", "matrix"}, what=f"{what}.witnesses[{i}]")
        s = _int(w["s"], f"{what}.witnesses[{i}].s")
        X = matrix_from_json(w["matrix"], what=f"{what}.witnesses[{i}].matrix", allow_rational=True)
        witnesses.append((s, X))
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError(f"{what}.name: expected a string")
    return {
        "ring": ring,
        "module": module,
        "operator": operator,
        "S": S,
        "witnesses": tuple(witnesses),
        "name": name,
    }


def problem_to_json(ring, module, operator: IntMatrix, S, witnesses, name=None) -> dict:
    out = {"ring": ring_to_json(ring), "operator": matrix_to_json(operator)}
    if module is not None:
        out["module"] = okmodule_to_json(module)
    if S is not None:
        out["S"] = sdescriptor_to_json(S)
    if witnesses:
        out["witnesses"] = [
            {"s": s, "matrix": matrix_to_json(X) if isinstance(X, IntMatrix) else qmatrix_to_json(X)}
            for s, X in witnesses
        ]
    if name is not None:
        out["name"] = name
    return out


# -- results ---------------------------------------------------------------


def certificate_to_json(cert: CertKind) -> dict:
    out = {"kind": type(cert).__name__, "statement": cert.statement()}
    for field in getattr(cert, "__dataclass_fields__", {}):
        out[field] = getattr(cert, field)
    return out


def outcome_to_json(outcome: RootSearchOutcome) -> dict:
    if isinstance(outcome, Found):
        return {"found": {"witness": matrix_to_json(outcome.witness), "power": matrix_to_json(outcome.power)}}
    if isinstance(outcome, ProvedImpossible):
        return {"proved_impossible": certificate_to_json(outcome.certificate)}
    return {"exhausted": {"bound": outcome.bound, "complete": outcome.complete}}


def fitting_to_json(split: FittingSplit) -> dict:
    return {
        "exponent_m": split.exponent_m,
        "gen_kernel": lattice_to_json(split.gen_kernel),
        "image_part": lattice_to_json(split.image_part),
        "is_direct": split.is_direct,
        "restriction_invertible": split.restriction_invertible,
        "restriction": matrix_to_json(split.restriction),
    }


def clean_split_to_json(cs: CleanSplit) -> dict:
    return {
        "split": cs.split,
        "kernel": lattice_to_json(cs.kernel),
        "image": lattice_to_json(cs.image),
        "change_of_basis": None if cs.change_of_basis is None else matrix_to_json(cs.change_of_basis),
        "restriction": None if cs.restriction is None else matrix_to_json(cs.restriction),
        "reason": cs.reason,
    }


def classify_to_json(report: ClassifyReport) -> dict:
    return {
        "semisimple": report.semisimple,
        "all_eigen_roots_of_unity": report.all_eigen_roots_of_unity,
        "order": report.order,
        "cyclotomic_factorization": (
            None
            if report.cyclotomic_factorization is None
            else [[k, e] for k, e in report.cyclotomic_factorization]
        ),
        "jordan_semisimple_part": qmatrix_to_json(report.jordan_semisimple_part),
        "jordan_nilpotent_part": qmatrix_to_json(report.jordan_nilpotent_part),
    }


def unipotent_check_to_json(check: UnipotentCheck) -> dict:
    return {
        "is_identity": check.is_identity,
        "witness_reports": [[s, status] for s, status in check.witness_reports],
        "max_verified_s": check.max_verified_s,
        "note": check.note,
    }


def spectrum_to_json(table: SpectrumTable) -> dict:
    return {
        "order": table.order,
        "sufficient_set": table.sufficient_set,
        "rows": [
            {
                "s": row.s,
                "outcome": outcome_to_json(row.outcome),
                "theorem_root": None if row.theorem_root is None else matrix_to_json(row.theorem_root),
                "verdict": row.verdict,
            }
            for row in table.rows
        ],
    }


def unit_group_to_json(desc: UnitGroupDesc) -> dict:
    return {
        "torsion_order": desc.torsion_order,
        "torsion_generator": list(desc.torsion_generator),
        "fundamental_unit": None if desc.fundamental_unit is None else list(desc.fundamental_unit),
    }


def theorem_report_to_json(report: TheoremReport) -> dict:
    return {
        "hypothesis_checks": {
            "witnesses": [
                {"s": c.s, "valid": c.valid, "reason": c.reason, "in_exponent_set": c.in_exponent_set}
                for c in report.hypothesis_checks.witnesses
            ],
            "all_witnesses_valid": report.hypothesis_checks.all_witnesses_valid,
            "additive_ok": report.hypothesis_checks.additive_ok,
            "mult_ok": report.hypothesis_checks.mult_ok,
            "mult_trace": report.hypothesis_checks.mult_trace,
            "s_symbolic_infinite": report.hypothesis_checks.s_symbolic_infinite,
        },
        "clause1": {
            "clean_split": report.clause1.holds,
            "reason": report.clause1.reason,
            "forced_by_witnesses": report.clause1.forced_by_witnesses,
        },
        "clause2": {"semisimple": report.clause2.holds},
        "clause3": {
            "finite_order": report.clause3.order,
            "pi_s": None if report.clause3.pi_s is None else primeset_to_json(report.clause3.pi_s),
            "order_coprime_to_pi_s": report.clause3.order_coprime_to_pi_s,
        },
        "clause4": {
            "applicable": report.clause4.applicable,
            "constructed_roots": [
                {"n": n, "root": matrix_to_json(X)} for n, X in report.clause4.constructed_roots
            ],
        },
        "verdict": report.verdict,
        "reason": report.reason,
        "notes": list(report.notes),
    }
