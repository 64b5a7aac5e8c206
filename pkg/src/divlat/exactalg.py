"""Exact linear algebra over the integers and rationals.

Dense, immutable, arbitrary-precision matrices; Hermite and Smith normal
forms; saturated kernels and honest images as canonical lattices; and exact
characteristic/minimal polynomials.  Nothing here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .primes import divisors, euler_phi


@dataclass(frozen=True)
class IntMatrix:
    """Row-major integer matrix.  Zero-row matrices are allowed so that
    rank-0 lattices (kernels of injective maps) have a representation."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"non-integer entry {e!r}")

    # -- construction -------------------------------------------------
    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values) -> "IntMatrix":
        values = list(values)
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    # -- access --------------------------------------------------------
    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def nested(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # -- algebra ---------------------------------------------------------
    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return IntMatrix(self.rows, self.cols, tuple(a * other for a in self.entries))
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            n, m, k = self.rows, other.cols, self.cols
            a, b = self.entries, other.entries
            out = []
            for i in range(n):
                arow = a[i * k : (i + 1) * k]
                for j in range(m):
                    out.append(sum(arow[t] * b[t * m + j] for t in range(k)))
            return IntMatrix(n, m, tuple(out))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "IntMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum(self.entries[i * (self.cols + 1)] for i in range(self.rows))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def apply(self, vec) -> tuple[int, ...]:
        """Act on a column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.row(i)[j] * vec[j] for j in range(self.cols)) for i in range(self.rows))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(self.row(i)) for i in range(n)]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = pivot
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        H = hnf(self)
        return sum(1 for i in range(self.rows) if any(H.row(i)))

    def __str__(self) -> str:
        return "[" + ", ".join(str(list(self.row(i))) for i in range(self.rows)) + "]"

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"non-rational entry {x!r}")


@dataclass(frozen=True)
class QMatrix:
    """Dense matrix over the rationals (exact Fraction entries)."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(_frac(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows) -> "QMatrix":
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(_frac(x) for r in rows for x in r))

    @classmethod
    def from_int_matrix(cls, m: IntMatrix) -> "QMatrix":
        return cls(m.rows, m.cols, tuple(Fraction(x) for x in m.entries))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QMatrix(self.rows, self.cols, tuple(a * other for a in self.entries))
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            n, m, k = self.rows, other.cols, self.cols
            a, b = self.entries, other.entries
            out = []
            for i in range(n):
                arow = a[i * k : (i + 1) * k]
                for j in range(m):
                    out.append(sum(arow[t] * b[t * m + j] for t in range(k)))
            return QMatrix(n, m, tuple(out))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "QMatrix":
        if k < 0:
            raise ValueError("negative matrix power")
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    def to_int_matrix(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols, tuple(int(a) for a in self.entries))

    def inverse(self) -> "QMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            scale = aug[col][col]
            aug[col] = [x / scale for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        return QMatrix.from_rows([r[n:] for r in aug])


# ---------------------------------------------------------------------------
# Canonical forms


def hnf(M: IntMatrix) -> IntMatrix:
    """Row Hermite normal form (unimodular row operations only).

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    and zero rows sink to the bottom.  The result is the canonical
    representative of the row span, so lattices compare entry-wise.
    """
    m, n = M.rows, M.cols
    work = [list(M.row(i)) for i in range(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if work[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(work[i][j]), i))
            if i0 != r:
                work[r], work[i0] = work[i0], work[r]
            if work[r][j] < 0:
                work[r] = [-x for x in work[r]]
            p = work[r][j]
            done = True
            for i in range(r + 1, m):
                q = work[i][j] // p
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                if work[i][j]:
                    done = False
            if done:
                break
        if work[r][j]:
            p = work[r][j]
            for i in range(r):
                q = work[i][j] // p
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
            r += 1
    return IntMatrix.from_rows(work, cols=n)


def snf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (D, U, V) with U*M*V = D, U and V
    unimodular, D diagonal with non-negative d_1 | d_2 | ... entries."""
    m, n = M.rows, M.cols
    A = [list(M.row(i)) for i in range(m)]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_sub(i, k, q):
        A[i] = [a - q * b for a, b in zip(A[i], A[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    def col_sub(j, k, q):
        for row in A:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        while True:
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            if A[t][t] < 0:
                negate_row(t)
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        row_sub(i, t, q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        col_sub(j, t, q)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % A[t][t] != 0), None)
                if bad is None:
                    break
                row_sub(t, bad[0], -1)  # row t += row bad
                dirty = True
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        t += 1
    D = IntMatrix.from_rows(A, cols=n)
    return D, IntMatrix.from_rows(U, cols=m), IntMatrix.from_rows(V, cols=n)


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank, stored as an HNF basis (rows) with
    zero rows dropped; equality is therefore structural."""

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_rank:
            raise ValueError("basis column count must equal the ambient rank")
        H = hnf(self.basis)
        if any(not any(H.row(i)) for i in range(H.rows)):
            raise ValueError("basis rows must be independent (no zero HNF rows)")
        if H != self.basis:
            raise ValueError("basis must be in Hermite normal form")

    @classmethod
    def from_generators(cls, ambient: int, gens) -> "Lattice":
        gens = [list(g) for g in gens]
        if not gens:
            return cls(ambient, IntMatrix(0, ambient, ()))
        H = hnf(IntMatrix.from_rows(gens, cols=ambient))
        rows = [H.row(i) for i in range(H.rows) if any(H.row(i))]
        return cls(ambient, IntMatrix.from_rows(rows, cols=ambient))

    @classmethod
    def zero(cls, ambient: int) -> "Lattice":
        return cls(ambient, IntMatrix(0, ambient, ()))

    @classmethod
    def full(cls, ambient: int) -> "Lattice":
        return cls(ambient, IntMatrix.identity(ambient))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def coords_of(self, vec) -> tuple[int, ...] | None:
        """Integer coordinates of vec in the basis, or None if vec is not in
        the lattice.  Greedy back-substitution against the HNF pivots."""
        if len(vec) != self.ambient_rank:
            raise ValueError("vector length mismatch")
        work = list(vec)
        coords = []
        for i in range(self.basis.rows):
            row = self.basis.row(i)
            pivot = next(j for j, x in enumerate(row) if x)
            c, rem = divmod(work[pivot], row[pivot])
            if rem:
                return None
            if c:
                work = [a - c * b for a, b in zip(work, row)]
            coords.append(c)
        return tuple(coords) if all(x == 0 for x in work) else None

    def contains(self, vec) -> bool:
        return self.coords_of(vec) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(other.basis.row(i)) for i in range(other.rank))

    def add(self, other: "Lattice") -> "Lattice":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        gens = [self.basis.row(i) for i in range(self.rank)]
        gens += [other.basis.row(i) for i in range(other.rank)]
        return Lattice.from_generators(self.ambient_rank, gens)

    def intersect(self, other: "Lattice") -> "Lattice":
        """Exact lattice intersection via the integer kernel of the stacked
        relation matrix."""
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        if self.rank == 0 or other.rank == 0:
            return Lattice.zero(self.ambient_rank)
        stacked = IntMatrix.from_rows(
            [self.basis.row(i) for i in range(self.rank)]
            + [other.basis.row(i) for i in range(other.rank)],
            cols=self.ambient_rank,
        )
        relations = kernel_saturated(stacked.transpose())
        gens = []
        for i in range(relations.rank):
            z = relations.basis.row(i)
            x = z[: self.rank]
            gens.append(tuple(sum(x[t] * self.basis[t, j] for t in range(self.rank))
                              for j in range(self.ambient_rank)))
        return Lattice.from_generators(self.ambient_rank, gens)

    def is_full(self) -> bool:
        return self.basis == IntMatrix.identity(self.ambient_rank)


def kernel_saturated(T: IntMatrix) -> Lattice:
    """The lattice {v in Z^cols : T v = 0}.  Kernels of integer matrices are
    automatically saturated: the quotient by them is torsion-free."""
    D, U, V = snf(T)
    r = sum(1 for i in range(min(T.rows, T.cols)) if D[i, i] != 0)
    gens = [V.column(j) for j in range(r, T.cols)]
    return Lattice.from_generators(T.cols, gens)


def image_lattice(T: IntMatrix) -> Lattice:
    """The honest image T * Z^cols (not saturated by design)."""
    return Lattice.from_generators(T.rows, [T.column(j) for j in range(T.cols)])


def kernel_complement_columns(T: IntMatrix) -> tuple[Lattice, list[tuple[int, ...]]]:
    """Saturated kernel of T together with a basis of a complementary direct
    summand (the remaining columns of the SNF change of basis)."""
    D, U, V = snf(T)
    r = sum(1 for i in range(min(T.rows, T.cols)) if D[i, i] != 0)
    kernel = Lattice.from_generators(T.cols, [V.column(j) for j in range(r, T.cols)])
    complement = [V.column(j) for j in range(r)]
    return kernel, complement


def restrict_to_lattice(T: IntMatrix, lat: Lattice) -> IntMatrix:
    """Matrix of T on the basis of a T-invariant lattice (column-vector
    convention).  Raises if the lattice is not invariant."""
    k = lat.rank
    if k == 0:
        return IntMatrix(0, 0, ())
    cols = []
    for i in range(k):
        image = T.apply(lat.basis.row(i))
        coords = lat.coords_of(image)
        if coords is None:
            raise ValueError("lattice is not invariant under the operator")
        cols.append(coords)
    return IntMatrix.from_rows([[cols[j][i] for j in range(k)] for i in range(k)], cols=k)


# ---------------------------------------------------------------------------
# Polynomials


@dataclass(frozen=True)
class RatPoly:
    """Polynomial over Q, coefficients ascending, trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [_frac(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, *coeffs) -> "RatPoly":
        return cls(tuple(Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading == 1

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return RatPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __neg__(self) -> "RatPoly":
        return RatPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatPoly(tuple(c * other for c in self.coeffs))
        if isinstance(other, RatPoly):
            if self.is_zero() or other.is_zero():
                return RatPoly(())
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, c in enumerate(self.coeffs):
                if c:
                    for j, d in enumerate(other.coeffs):
                        out[i + j] += c * d
            return RatPoly(tuple(out))
        return NotImplemented

    __rmul__ = __mul__

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        d = other.coeffs
        while len(r) >= len(d) and any(r):
            if r[-1] == 0:
                r.pop()
                continue
            shift = len(r) - len(d)
            f = r[-1] / d[-1]
            q[shift] = f
            for i, c in enumerate(d):
                r[shift + i] -= f * c
            r.pop()
        return RatPoly(tuple(q)), RatPoly(tuple(r))

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[1]

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        lead = self.leading
        return RatPoly(tuple(c / lead for c in self.coeffs))

    def derivative(self) -> "RatPoly":
        return RatPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, M: QMatrix) -> QMatrix:
        """Horner evaluation at a square rational matrix."""
        n = M.rows
        acc = QMatrix.zeros(n, n)
        eye = QMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc * M + eye * c
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                x = "x" if i == 1 else f"x^{i}"
                body = x if mag == 1 else f"{mag}*{x}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over Q by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_part(p: RatPoly) -> RatPoly:
    """p divided by gcd(p, p'), made monic: the radical of p."""
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    q, r = divmod(p, g)
    assert r.is_zero()
    return q.monic()


def char_poly(T: IntMatrix) -> RatPoly:
    """Characteristic polynomial det(xI - T), monic with integer
    coefficients, by the Faddeev-LeVerrier recurrence (exact divisions)."""
    if not T.is_square:
        raise ValueError("char_poly requires a square matrix")
    n = T.rows
    cs: list[int] = []
    M = IntMatrix.identity(n)
    for k in range(1, n + 1):
        N = T * M
        tr = N.trace()
        if tr % k:
            raise AssertionError("Faddeev-LeVerrier division failed")
        c = -(tr // k)
        cs.append(c)
        M = N + IntMatrix.identity(n) * c
    if n and not (T * M).is_zero():
        raise AssertionError("Faddeev-LeVerrier recurrence did not terminate at zero")
    ascending = [Fraction(c) for c in reversed(cs)] + [Fraction(1)]
    return RatPoly(tuple(ascending))


def min_poly(T) -> RatPoly:
    """Monic minimal polynomial, found as the first exact linear dependence
    among I, T, T^2, ... (Krylov search over Q)."""
    if isinstance(T, IntMatrix):
        T = QMatrix.from_int_matrix(T)
    if T.rows != T.cols:
        raise ValueError("min_poly requires a square matrix")
    n = T.rows
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = QMatrix.identity(n)
    for k in range(n + 1):
        vec = list(power.entries)
        combo = [Fraction(0)] * k + [Fraction(1)]
        for pivot, bvec, bcombo in basis:
            f = vec[pivot]
            if f:
                vec = [a - f * b for a, b in zip(vec, bvec)]
                for i, c in enumerate(bcombo):
                    combo[i] -= f * c
        if all(a == 0 for a in vec):
            return RatPoly(tuple(combo))
        pivot = next(i for i, a in enumerate(vec) if a)
        scale = vec[pivot]
        vec = [a / scale for a in vec]
        combo = [c / scale for c in combo]
        basis.append((pivot, vec, combo))
        power = power * T
    raise AssertionError("no annihilating polynomial up to degree n")


def companion_matrix(p: RatPoly) -> IntMatrix:
    """Companion matrix of a monic integer polynomial."""
    if not (p.is_monic() and p.is_integer() and p.degree >= 1):
        raise ValueError("companion matrix needs a monic integer polynomial of degree >= 1")
    n = p.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -int(p.coeffs[i])
    return IntMatrix.from_rows(rows)


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> RatPoly:
    """The k-th cyclotomic polynomial, by iterated exact division of x^k - 1."""
    if k < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = RatPoly(tuple([Fraction(-1)] + [Fraction(0)] * (k - 1) + [Fraction(1)]))
    for d in divisors(k):
        if d < k:
            poly, rem = divmod(poly, cyclotomic(d))
            assert rem.is_zero()
    return poly


def cyclotomics_up_to_degree(n: int) -> list[tuple[int, RatPoly]]:
    """All (k, Phi_k) with phi(k) <= n, sorted by k.

    phi(k)^2 >= k/2 for every k, so scanning k <= 2n^2 + 1 is exhaustive.
    """
    if n < 1:
        raise ValueError("degree bound must be positive")
    out = []
    for k in range(1, 2 * n * n + 2):
        if euler_phi(k) <= n:
            out.append((k, cyclotomic(k)))
    return out
