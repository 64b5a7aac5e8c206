"""Spectral classification of integer operators.

Semisimplicity via squarefree minimal polynomials, root-of-unity spectra via
exhaustive cyclotomic trial division (no numerics: the candidate list with
phi(k) <= n is provably complete), finite orders, and the exact
semisimple-plus-nilpotent splitting computed by Newton iteration.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .exactalg import (
    IntMatrix,
    QMatrix,
    cyclotomics_up_to_degree,
    char_poly,
    min_poly,
    poly_gcd,
    squarefree_part,
)
from .primes import prime_factors


def is_semisimple(T) -> bool:
    """True iff the minimal polynomial is squarefree (exact gcd test)."""
    mu = min_poly(T)
    return poly_gcd(mu, mu.derivative()).degree <= 0


def roots_of_unity_spectrum(T: IntMatrix):
    """Try to factor char(T) as a product of cyclotomic polynomials.

    Returns (True, ((k, multiplicity), ...)) on success and (False, None)
    when a non-cyclotomic factor remains.  Requires det T != 0.
    """
    if not T.is_square:
        raise ValueError("square matrix required")
    if T.rows and T.det() == 0:
        raise ValueError("zero eigenvalue: not invertible")
    chi = char_poly(T)
    remaining = chi
    factorization = []
    for k, phi_k in cyclotomics_up_to_degree(max(T.rows, 1)):
        e = 0
        while remaining.degree >= phi_k.degree:
            q, r = divmod(remaining, phi_k)
            if not r.is_zero():
                break
            remaining = q
            e += 1
        if e:
            factorization.append((k, e))
    if remaining.degree == 0:
        return True, tuple(factorization)
    return False, None


def finite_order(T: IntMatrix) -> int | None:
    """Multiplicative order of T, or None when T has infinite order or a
    zero eigenvalue.  The candidate order is the lcm of the cyclotomic
    indices; it is verified by exact exponentiation and checked minimal over
    the maximal proper divisors."""
    if not T.is_square:
        raise ValueError("square matrix required")
    if T.rows == 0:
        return 1
    if T.det() == 0 or not is_semisimple(T):
        return None
    ok, factorization = roots_of_unity_spectrum(T)
    if not ok:
        return None
    d = lcm(*(k for k, _ in factorization))
    eye = IntMatrix.identity(T.rows)
    assert T ** d == eye, "candidate order failed re-verification"
    for p in prime_factors(d):
        assert T ** (d // p) != eye, "candidate order not minimal"
    return d


def jordan_chevalley(T: IntMatrix) -> tuple[QMatrix, QMatrix]:
    """Exact additive splitting T = S + N with S semisimple, N nilpotent,
    S N = N S, both rational polynomials in T.

    Newton iteration x <- x - mu(x) * mu'(x)^{-1} on the squarefree part mu
    of the minimal polynomial; mu'(x) stays invertible over Q along the way
    and every iterate lives in the commutative algebra Q[T].  Integrality of
    the output is not guaranteed and not claimed.
    """
    if not T.is_square:
        raise ValueError("square matrix required")
    n = T.rows
    X = QMatrix.from_int_matrix(T)
    if n == 0:
        return X, X
    mu = min_poly(T)
    reduced = squarefree_part(mu)
    reduced_d = reduced.derivative()
    # Quadratic convergence: the nilpotency degree is at most n, so
    # ceil(log2 n) + 2 steps suffice; exceeding the cap is a bug, not an
    # input property.
    cap = max(1, (n - 1).bit_length()) + 2
    for _ in range(cap):
        value = reduced.eval_matrix(X)
        if value.is_zero():
            break
        X = X - value * reduced_d.eval_matrix(X).inverse()
    if not reduced.eval_matrix(X).is_zero():
        raise AssertionError("Newton iteration failed to converge within the cap")
    S = X
    N = QMatrix.from_int_matrix(T) - S
    assert (N ** n).is_zero(), "nilpotent part is not nilpotent"
    assert S * N == N * S, "parts do not commute"
    mu_s = min_poly(S)
    assert poly_gcd(mu_s, mu_s.derivative()).degree <= 0, "semisimple part not semisimple"
    return S, N


@dataclass(frozen=True)
class ClassifyReport:
    semisimple: bool
    all_eigen_roots_of_unity: bool
    order: int | None
    cyclotomic_factorization: tuple[tuple[int, int], ...] | None
    jordan_semisimple_part: QMatrix
    jordan_nilpotent_part: QMatrix


def classify_operator(T: IntMatrix, module=None) -> ClassifyReport:
    """Full spectral report for one operator."""
    if not T.is_square:
        raise ValueError("square matrix required")
    if module is not None:
        module.require_endomorphism(T)
    semisimple = is_semisimple(T)
    if T.rows == 0:
        roots, factorization = True, ()
    elif T.det() == 0:
        roots, factorization = False, None
    else:
        roots, factorization = roots_of_unity_spectrum(T)
    order = finite_order(T)
    assert (order is not None) == (semisimple and roots)
    S, N = jordan_chevalley(T)
    return ClassifyReport(semisimple, roots, order, factorization, S, N)


@dataclass(frozen=True)
class UnipotentCheck:
    """Finite-evidence verdict for divisibility of a unipotent operator."""

    is_identity: bool
    witness_reports: tuple[tuple[int, str], ...]
    max_verified_s: int | None
    note: str


def unipotent_divisible_is_identity_check(T: IntMatrix, witnesses) -> UnipotentCheck:
    """Check supplied root witnesses of a unipotent operator.

    Witnesses may be rational matrices; non-integral ones are rejected in
    the verdict (a root taken outside the integers does not witness
    divisibility in the endomorphism ring).  An integral witness that fails
    re-multiplication is an error naming the offending exponent.
    """
    if not T.is_square:
        raise ValueError("square matrix required")
    n = T.rows
    eye = IntMatrix.identity(n)
    if not ((T - eye) ** n).is_zero():
        raise ValueError("operator is not unipotent")
    reports = []
    max_verified = None
    for s, X in witnesses:
        if s < 2:
            raise ValueError(f"witness exponent {s} must be at least 2")
        if isinstance(X, QMatrix):
            if not X.is_integral():
                reports.append((s, "rejected: witness not integral"))
                continue
            X = X.to_int_matrix()
        if X ** s != T:
            raise ValueError(f"witness for s={s} fails re-multiplication")
        reports.append((s, "verified"))
        max_verified = s if max_verified is None else max(max_verified, s)
    if T == eye:
        note = "operator is the identity; every verified witness is consistent"
    elif max_verified is not None:
        note = (
            f"unipotent, not the identity, with divisibility verified up to s={max_verified}; "
            "no integral witness family can cover exponents with unbounded prime support"
        )
    else:
        note = "unipotent, not the identity; no witnesses verified"
    return UnipotentCheck(T == eye, tuple(reports), max_verified, note)
