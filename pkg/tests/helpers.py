"""Independent oracles for cross-checking the library.

Everything here is deliberately re-implemented from scratch on nested lists
and Fractions, without importing the code paths under test, so the checks
stay two-sided.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product


# -- naive matrix arithmetic on nested lists ------------------------------


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_pow(a, s):
    n = len(a)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(s):
        result = mat_mul(result, a)
    return result


def mat_eq(a, b):
    return a == b


def brute_root_search(T, s, bound):
    """First s-th root of T (nested list) in lexicographic entry order over
    the box [-bound, bound]; full enumeration, no pruning."""
    n = len(T)
    for cand in product(range(-bound, bound + 1), repeat=n * n):
        X = [list(cand[i * n : (i + 1) * n]) for i in range(n)]
        if mat_pow(X, s) == T:
            return X
    return None


def brute_all_roots(T, s, bound):
    n = len(T)
    out = []
    for cand in product(range(-bound, bound + 1), repeat=n * n):
        X = [list(cand[i * n : (i + 1) * n]) for i in range(n)]
        if mat_pow(X, s) == T:
            out.append(X)
    return out


# -- fraction linear algebra ----------------------------------------------


def frac_rank(rows):
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for j in range(cols):
        pivot = next((i for i in range(rank, len(work)) if work[i][j]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][j]
        work[rank] = [x / pv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][j]:
                f = work[i][j]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def frac_det(rows):
    n = len(rows)
    work = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for j in range(n):
        pivot = next((i for i in range(j, n) if work[i][j]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != j:
            work[j], work[pivot] = work[pivot], work[j]
            det = -det
        det *= work[j][j]
        pv = work[j][j]
        for i in range(j + 1, n):
            if work[i][j]:
                f = work[i][j] / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[j])]
    return det


def frac_inverse(rows):
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [r[n:] for r in aug]


def oracle_direct_and_full(kernel_rows, image_rows, n):
    """Independent check that the two lattices intersect trivially and sum
    to Z^n: Grassmann rank count over Q for the intersection, then
    integrality of the inverse of the stacked basis for the covering."""
    stacked = [list(r) for r in kernel_rows] + [list(r) for r in image_rows]
    if len(stacked) != n:
        return False
    ra = frac_rank(kernel_rows) if kernel_rows else 0
    rb = frac_rank(image_rows) if image_rows else 0
    if frac_rank(stacked) != ra + rb:
        return False  # rational intersection is nontrivial
    inv = frac_inverse(stacked)
    if inv is None:
        return False
    # e_i = z * stacked needs integer z; z-rows are the columns of inv
    return all(x.denominator == 1 for row in inv for x in row)


def oracle_intersection_rank(a_rows, b_rows):
    """dim over Q of span(a) intersect span(b), by Grassmann."""
    if not a_rows or not b_rows:
        return 0
    ra, rb = frac_rank(a_rows), frac_rank(b_rows)
    return ra + rb - frac_rank(list(a_rows) + list(b_rows))


# -- char poly oracle -------------------------------------------------------


def char_poly_cofactor(T):
    """det(xI - T) by direct cofactor expansion over polynomial coefficient
    lists (ascending); independent of the library implementation."""

    def poly_mul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, c in enumerate(p):
            for j, d in enumerate(q):
                out[i + j] += c * d
        return out

    def poly_add(p, q):
        n = max(len(p), len(q))
        return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]

    def poly_scale(p, c):
        return [c * x for x in p]

    def det_poly(m):
        k = len(m)
        if k == 0:
            return [1]
        if k == 1:
            return m[0][0]
        acc = [0]
        for j in range(k):
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            term = poly_mul(m[0][j], det_poly(minor))
            acc = poly_add(acc, poly_scale(term, (-1) ** j))
        return acc

    n = len(T)
    m = [[[-T[i][j], 1] if i == j else [-T[i][j]] for j in range(n)] for i in range(n)]
    coeffs = det_poly(m)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


# -- Pell / fundamental unit oracle ----------------------------------------


def brute_fundamental_unit(d):
    """Minimal unit greater than 1 of the ring of integers of Q(sqrt(d)),
    by unbounded ascending search on the omega coefficient; exact sign
    comparisons only."""
    if d % 4 == 1:
        t, c = 1, (d - 1) // 4
        radicand = d
    else:
        t, c = 0, d
        radicand = 4 * d

    def norm(a, b):
        return a * a + t * a * b - c * b * b

    def greater_than_one(a, b):
        # sign of (2a + t b - 2) + b * sqrt(radicand)
        p, q = 2 * a + t * b - 2, b
        if q == 0:
            return p > 0
        if p >= 0 and q > 0:
            return (p, q) != (0, 0)
        if p <= 0 and q < 0:
            return False
        if q > 0:  # p < 0
            return q * q * radicand > p * p
        return p * p > q * q * radicand  # q < 0, p > 0

    def embeds_less(u, v):
        a, b = u[0] - v[0], u[1] - v[1]
        p, q = 2 * a + t * b, b
        if q == 0:
            return p < 0
        if p <= 0 and q < 0:
            return True
        if p >= 0 and q > 0:
            return False
        if q > 0:
            return p * p > q * q * radicand
        return q * q * radicand > p * p

    from math import isqrt

    b = 1
    while True:
        hits = []
        for rhs in (1, -1):
            disc = t * t * b * b + 4 * (c * b * b + rhs)
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc:
                continue
            for sgn in (1, -1):
                num = -t * b + sgn * r
                if num % 2 == 0:
                    a = num // 2
                    if norm(a, b) in (1, -1):
                        hits.append((a, b))
        candidates = []
        for a, bb in hits:
            for u in ((a, bb), (-a, -bb)):
                if greater_than_one(*u):
                    candidates.append(u)
        if candidates:
            best = candidates[0]
            for u in candidates[1:]:
                if embeds_less(u, best):
                    best = u
            return best
        b += 1


# -- Pi_S enumeration oracles -----------------------------------------------


def residue_class_max_exponents(a, m, limit, primes):
    """max nu_p over the class {n > 0 : n == a mod m} up to limit, per prime."""
    out = {p: 0 for p in primes}
    start = a if a > 0 else m
    for n in range(start, limit + 1, m):
        for p in primes:
            if n % p == 0:
                e = 0
                q = n
                while q % p == 0:
                    q //= p
                    e += 1
                if e > out[p]:
                    out[p] = e
    return out


def residue_pi_estimate(a, m, limit, primes):
    """Primes judged unbounded over the class, by enumeration: p qualifies
    iff the class up to limit contains a multiple of p^k for every k with
    m * p^k <= limit (a CRT solution exists below m * p^k when one exists
    at all, so the verdict is exact for p with m * p^(nu_p(m)+1) <= limit)."""
    maxes = residue_class_max_exponents(a, m, limit, primes)
    verdict = {}
    for p in primes:
        k_max = 0
        while m * p ** (k_max + 1) <= limit:
            k_max += 1
        verdict[p] = maxes[p] >= k_max
    return verdict
