"""End-to-end checking of the zero/invertible split, semisimplicity,
finite-order, and coprime-root conclusions for a single problem instance.

The verdict taxonomy keeps proof and evidence apart.  Finitely many verified
root witnesses can never establish divisibility for an infinite exponent
set, so a failing conclusion normally yields INCONCLUSIVE.  The
COUNTEREXAMPLE-CANDIDATE verdict is reserved for states the verified
evidence already excludes; reaching it means a bug in this artifact, and the
test suite treats any occurrence as fatal.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .classify import finite_order, is_semisimple
from .divisibility import coprime_root
from .exactalg import (
    IntMatrix,
    QMatrix,
    image_lattice,
    kernel_complement_columns,
    restrict_to_lattice,
)
from .fitting import clean_split, fitting_decompose
from .numberring import IntegerRing, OKModule, QuadraticOrder, ZZ, lchar, mult_hypothesis
from .primes import prime_factors
from .supernat import FiniteSet, PrimeSet, SDescriptor, additive_hypothesis, pi_S


@dataclass(frozen=True)
class WitnessCheck:
    s: int
    valid: bool
    reason: str
    in_exponent_set: bool | None


@dataclass(frozen=True)
class HypothesisChecks:
    witnesses: tuple[WitnessCheck, ...]
    all_witnesses_valid: bool
    additive_ok: bool | None
    mult_ok: bool | None
    mult_trace: str | None
    s_symbolic_infinite: bool | None


@dataclass(frozen=True)
class Clause1:
    holds: bool
    reason: str
    forced_by_witnesses: bool


@dataclass(frozen=True)
class Clause2:
    holds: bool


@dataclass(frozen=True)
class Clause3:
    order: int | None
    pi_s: PrimeSet | None
    order_coprime_to_pi_s: bool | None

    @property
    def holds(self) -> bool:
        return self.order is not None and self.order_coprime_to_pi_s is not False


@dataclass(frozen=True)
class Clause4:
    constructed_roots: tuple[tuple[int, IntMatrix], ...]
    applicable: bool


@dataclass(frozen=True)
class TheoremReport:
    hypothesis_checks: HypothesisChecks
    clause1: Clause1
    clause2: Clause2
    clause3: Clause3
    clause4: Clause4
    verdict: str
    reason: str
    notes: tuple[str, ...]


def order_is_outside(d: int, primes: PrimeSet) -> bool:
    """True when no prime factor of d lies in the given prime set."""
    return all(not primes.contains(p) for p in prime_factors(d))


def _quotient_determinant(T: IntMatrix) -> int:
    """Determinant of the map induced by T on Z^n / ker T (an integer, since
    the kernel is saturated and the complement basis is unimodular)."""
    kernel, complement = kernel_complement_columns(T)
    r = len(complement)
    if r == 0:
        return 1
    n = T.rows
    cols = complement + [kernel.basis.row(i) for i in range(kernel.rank)]
    B = QMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])
    Binv = B.inverse()
    entries = []
    for i in range(r):
        for j in range(r):
            w = T.apply(complement[j])
            val = sum(Binv[i, t] * w[t] for t in range(n))
            assert val.denominator == 1
            entries.append(int(val))
    return IntMatrix(r, r, tuple(entries)).det()


def _check_witness(T, s, X, module, S) -> WitnessCheck:
    in_set = S.contains(s) if S is not None else None
    if s < 2:
        return WitnessCheck(s, False, "exponent below 2", in_set)
    if isinstance(X, QMatrix):
        if not X.is_integral():
            return WitnessCheck(s, False, "witness not integral", in_set)
        X = X.to_int_matrix()
    if X.rows != T.rows or X.cols != T.cols:
        return WitnessCheck(s, False, "witness shape mismatch", in_set)
    if module is not None and not module.endomorphism_ok(X):
        return WitnessCheck(s, False, "witness does not commute with the ring action", in_set)
    if X ** s != T:
        return WitnessCheck(s, False, "re-multiplication failed", in_set)
    return WitnessCheck(s, True, "verified", in_set)


def verify(ring, module, T: IntMatrix, S: SDescriptor | None, witnesses) -> TheoremReport:
    """Validate hypotheses, run the full pipeline, and report clause by
    clause.  Bad witnesses do not abort the run: the pipeline continues in
    diagnostic mode and the verdict says why nothing can be concluded."""
    if not T.is_square or T.rows == 0:
        raise ValueError("operator must be square and nonempty")
    if isinstance(ring, QuadraticOrder):
        if module is None:
            raise ValueError("quadratic rings need an explicit module (omega action)")
        module.require_endomorphism(T)
    elif isinstance(ring, IntegerRing):
        module = None
    else:
        raise TypeError(f"unsupported ring {ring!r}")

    notes = [
        "witnesses are finite evidence: divisibility for the full exponent set is never proven by a run",
        "root witnesses are taken in the base ring only; extension-ring witnesses are out of scope",
    ]
    checks = tuple(_check_witness(T, s, X, module, S) for s, X in witnesses)
    all_valid = all(c.valid for c in checks)
    has_valid = any(c.valid for c in checks)

    s_infinite = None if S is None else S.infinite
    additive_ok = mult_ok = None
    mult_trace = None
    if S is None:
        notes.append("no exponent-set descriptor supplied; hypothesis checks skipped")
    elif isinstance(S, FiniteSet):
        notes.append("finite exponent set: hypothesis checks are evidence, not proof")
    else:
        additive_ok = additive_hypothesis(S, lchar(ring))
        mult_ok, mult_trace = mult_hypothesis(S, ring)

    # clause 1: the split, plus what the verified witnesses already force.
    cs = clean_split(T, module=module)
    fit = fitting_decompose(T, module=module)
    g = fit.gen_kernel.rank
    qdet = _quotient_determinant(T)
    cond_kernel = g == 0 or any(c.valid and c.s >= g for c in checks)
    cond_det = abs(qdet) == 1 or any(c.valid and 2 ** c.s > abs(qdet) for c in checks)
    clause1 = Clause1(cs.split, cs.reason, cond_kernel and cond_det)

    # clause 2: semisimplicity of the restriction to the honest image.
    restriction = cs.restriction if cs.split else restrict_to_lattice(T, image_lattice(T))
    clause2 = Clause2(is_semisimple(restriction))

    # clause 3: finite order outside Pi_S.
    d = finite_order(restriction) if restriction.rows else 1
    pset = None
    coprime = None
    if S is not None and S.infinite:
        pset = pi_S(S)
        if d is not None:
            coprime = order_is_outside(d, pset)
    clause3 = Clause3(d, pset, coprime)

    # clause 4: construct roots for a sample of exponents coprime to d.
    roots: list[tuple[int, IntMatrix]] = []
    applicable = d is not None and cs.split
    if applicable:
        sample = []
        n_exp = 2
        while len(sample) < 4:
            if gcd(n_exp, d) == 1:
                sample.append(n_exp)
            n_exp += 1
        for n_exp in sample:
            roots.append((n_exp, coprime_root(T, d, n_exp)))
    clause4 = Clause4(tuple(roots), applicable)

    conclusions_hold = (
        clause1.holds
        and clause2.holds
        and d is not None
        and coprime is not False
        and (not applicable or len(roots) > 0)
    )
    if conclusions_hold:
        verdict = "CONSISTENT"
        reason = "every conclusion holds for this operator"
    else:
        failing = []
        if not clause1.holds:
            failing.append("(1)")
        if not clause2.holds:
            failing.append("(2)")
        if d is None or coprime is False:
            failing.append("(3)")
        hypotheses_pass = has_valid and all_valid and additive_ok is True and mult_ok is True
        if not clause1.holds and hypotheses_pass and clause1.forced_by_witnesses:
            verdict = "COUNTEREXAMPLE-CANDIDATE"
            reason = (
                "verified witnesses force the split, yet the computed split fails; "
                "this state is unreachable without an artifact bug"
            )
        else:
            verdict = "INCONCLUSIVE"
            if not has_valid:
                why = "no verified witnesses"
            elif not all_valid:
                why = "some witnesses failed verification"
            else:
                why = "finite witness evidence cannot establish divisibility for the whole exponent set"
            reason = f"conclusion clause(s) {', '.join(failing)} fail; {why}"

    hyp = HypothesisChecks(checks, all_valid, additive_ok, mult_ok, mult_trace, s_infinite)
    return TheoremReport(hyp, clause1, clause2, clause3, clause4, verdict, reason, tuple(notes))


# ---------------------------------------------------------------------------
# Canned scenarios


@dataclass(frozen=True)
class Scenario:
    name: str
    ring: object
    module: OKModule | None
    operator: IntMatrix
    exponent_set: SDescriptor
    witnesses: tuple[tuple[int, IntMatrix], ...]
    report: TheoremReport


def intro_scenarios() -> list[Scenario]:
    """Five concrete runs over Z covering the motivating questions: infinite
    exponent sets (sign flip with odd exponents), all-but-finitely-many
    exponents (identity), finite order from infinitely many exponents, order
    coprime to the exponents' prime support, and the singular split case."""
    from .supernat import AllFrom, Geometric, Residue

    eye2 = IntMatrix.identity(2)
    minus_one = IntMatrix.from_rows([[-1]])
    rot3 = IntMatrix.from_rows([[0, -1], [1, -1]])  # order 3
    hex6 = IntMatrix.from_rows([[0, -1], [1, 1]])  # order 6 (companion of x^2 - x + 1)
    sing = IntMatrix.diagonal([0, 1])

    runs = [
        ("minus-one-odd", minus_one, Residue(1, 2), ((3, minus_one), (5, minus_one))),
        ("cavachi-identity", eye2, Geometric(2, 1), ((2, eye2), (4, eye2))),
        ("finite-order-rotation", rot3, Residue(1, 3), ((4, rot3), (7, rot3))),
        ("order-coprime-exponents", hex6, Geometric(5, 1), ((5, hex6 ** 5), (25, hex6))),
        ("singular-idempotent", sing, AllFrom(2), ((2, sing), (3, sing))),
    ]
    out = []
    for name, T, S, ws in runs:
        report = verify(ZZ, None, T, S, ws)
        out.append(Scenario(name, ZZ, None, T, S, ws, report))
    return out
