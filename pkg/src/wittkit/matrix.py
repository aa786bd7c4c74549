"""Dense matrices over a quotient ring, division-free throughout.

Entries are RingElements kept in normal form, so matrix equality is
entrywise syntactic equality.
"""

from __future__ import annotations

from functools import lru_cache

from .ring import NotUnit, Ring, RingElement, RingMismatch


class NotAlternating(ValueError):
    pass


class Mat:
    """Immutable rows x cols matrix over one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries):
        entries = tuple(ring(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "Mat":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(ring, 0, 0, ())
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(ring, len(rows), n, [e for r in rows for e in r])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        one, zero = ring.one, ring.zero
        return cls(ring, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int | None = None) -> "Mat":
        cols = rows if cols is None else cols
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    @classmethod
    def diag(cls, ring: Ring, values) -> "Mat":
        values = list(values)
        n = len(values)
        z = ring.zero
        return cls(ring, n, n, [values[i] if i == j else z for i in range(n) for j in range(n)])

    # access

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Mat":
        return Mat(self.ring, self.cols, self.rows,
                   [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def submatrix(self, rows, cols) -> "Mat":
        rows, cols = list(rows), list(cols)
        return Mat(self.ring, len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    # arithmetic

    def _check(self, other: "Mat"):
        if other.ring is not self.ring and other.ring.spec != self.ring.spec:
            raise RingMismatch("matrices over different rings")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.ring, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.ring, self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat":
        return Mat(self.ring, self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "Mat":
        c = self.ring(c)
        return Mat(self.ring, self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ring = self.ring
        n, m, k = self.rows, other.cols, self.cols
        # accumulate raw polynomials, reduce once per entry
        out = []
        A, B = self.entries, other.entries
        for i in range(n):
            for j in range(m):
                acc = ring.poly_ring.zero
                for t in range(k):
                    a = A[i * k + t]
                    if a:
                        b = B[t * m + j]
                        if b:
                            acc = acc + a.value * b.value
                out.append(RingElement(ring, ring.reduce(acc)))
        return Mat(ring, n, m, out)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def first_difference(self, other: "Mat"):
        """First (i, j) in row-major order where the matrices differ, else None."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        for idx, (a, b) in enumerate(zip(self.entries, other.entries)):
            if a != b:
                return divmod(idx, self.cols)
        return None

    def is_constant(self) -> bool:
        return all(e.is_constant() for e in self.entries)

    def is_alternating(self) -> bool:
        if not self.is_square:
            return False
        n = self.rows
        for i in range(n):
            if self[i, i]:
                return False
            for j in range(i + 1, n):
                if self[j, i] != -self[i, j]:
                    return False
        return True

    def __repr__(self):
        return f"Mat({self.to_strings()})"

    def to_strings(self) -> list:
        return [[str(e) for e in r] for r in self.to_rows()]

    # determinants and friends

    def charpoly(self) -> list:
        return charpoly(self)

    def det(self) -> RingElement:
        return det_division_free(self)

    def pfaffian(self) -> RingElement:
        return pfaffian(self)


def _require_square(M: Mat):
    if not M.is_square:
        raise ValueError(f"expected a square matrix, got {M.rows}x{M.cols}")


def charpoly(M: Mat) -> list:
    """Coefficients [1, c1, ..., cn] of det(xI - M), by Berkowitz's algorithm."""
    _require_square(M)
    ring = M.ring
    n = M.rows
    if n == 0:
        return [ring.one]
    # work from the bottom-right corner outwards
    coeffs = [ring.one, -M[n - 1, n - 1]]
    for k in range(n - 2, -1, -1):
        size = n - k - 1
        a = M[k, k]
        R = [M[k, j] for j in range(k + 1, n)]
        C = [M[i, k] for i in range(k + 1, n)]
        A = [[M[i, j] for j in range(k + 1, n)] for i in range(k + 1, n)]
        # first column of the Toeplitz matrix: 1, -a, -R C, -R A C, ...
        col = [ring.one, -a]
        v = C
        for _ in range(size):
            s = ring.zero
            for r, x in zip(R, v):
                s = s + r * x
            col.append(-s)
            v = [sum((A[i][j] * v[j] for j in range(size)), ring.zero) for i in range(size)]
        # new coefficients = Toeplitz(col) @ coeffs, (size + 2) x (size + 1)
        new = []
        for i in range(size + 2):
            s = ring.zero
            for j in range(min(i, size) + 1):
                s = s + col[i - j] * coeffs[j]
            new.append(s)
        coeffs = new
    return coeffs


def det_division_free(M: Mat) -> RingElement:
    """Determinant without division; safe over rings with zero divisors."""
    _require_square(M)
    n = M.rows
    if n == 0:
        return M.ring.one
    if n == 1:
        return M[0, 0]
    if n == 2:
        return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    c = charpoly(M)[-1]
    return c if n % 2 == 0 else -c


def pfaffian(G: Mat) -> RingElement:
    """Pfaffian by first-row expansion, normalized so that Pf(psi_2) = 1."""
    if not G.is_alternating():
        raise NotAlternating("Pfaffian needs an alternating matrix")
    n = G.rows
    if n % 2:
        return G.ring.zero
    ring = G.ring

    @lru_cache(maxsize=None)
    def pf(idx: tuple) -> RingElement:
        if not idx:
            return ring.one
        i = idx[0]
        total = ring.zero
        for k in range(1, len(idx)):
            g = G[i, idx[k]]
            if not g:
                continue
            rest = idx[1:k] + idx[k + 1:]
            term = g * pf(rest)
            total = total + term if k % 2 == 1 else total - term
        return total

    return pf(tuple(range(n)))


def adjugate(M: Mat) -> Mat:
    """Classical adjoint via Cayley-Hamilton: M adj(M) = det(M) I."""
    _require_square(M)
    ring = M.ring
    n = M.rows
    if n == 0:
        return M
    c = charpoly(M)
    # adj(M) = (-1)^(n-1) (M^(n-1) + c1 M^(n-2) + ... + c_(n-1) I)
    acc = Mat.identity(ring, n)
    for k in range(1, n):
        acc = (M @ acc) + Mat.identity(ring, n).scale(c[k])
    return acc if n % 2 == 1 else -acc


def adjugate_inverse(M: Mat) -> Mat:
    """Exact inverse; raises NotUnit when det(M) is not a unit."""
    _require_square(M)
    d = det_division_free(M)
    try:
        u = M.ring.invert_unit(d)
    except NotUnit:
        raise NotUnit(f"determinant {d} is not a unit") from None
    return adjugate(M).scale(u)


def perp(M: Mat, N: Mat) -> Mat:
    """Block diagonal sum ``M ⊥ N``."""
    M._check(N)
    _require_square(M)
    _require_square(N)
    ring = M.ring
    m, n = M.rows, N.rows
    z = ring.zero
    entries = []
    for i in range(m + n):
        for j in range(m + n):
            if i < m and j < m:
                entries.append(M[i, j])
            elif i >= m and j >= m:
                entries.append(N[i - m, j - m])
            else:
                entries.append(z)
    return Mat(ring, m + n, m + n, entries)


def perp_all(mats) -> Mat:
    mats = list(mats)
    out = mats[0]
    for M in mats[1:]:
        out = perp(out, M)
    return out


def make_standard(ring: Ring, kind: str, r: int) -> Mat:
    """``psi`` gives psi_(2r) (size 2r); ``sigma`` gives sigma_r (size 2r).

    ``r = 0`` gives the empty matrix.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if kind == "psi":
        block = Mat.from_rows(ring, [[0, 1], [-1, 0]])
    elif kind == "sigma":
        block = Mat.from_rows(ring, [[0, 1], [1, 0]])
    else:
        raise ValueError(f"unknown standard form {kind!r}")
    out = Mat(ring, 0, 0, ())
    for _ in range(r):
        out = perp(out, block)
    return out


def psi(ring: Ring, size: int) -> Mat:
    """psi of the given even size."""
    if size % 2:
        raise ValueError("psi needs an even size")
    return make_standard(ring, "psi", size // 2)


def congruence(E: Mat, G: Mat) -> Mat:
    """E^t G E."""
    _require_square(E)
    _require_square(G)
    if E.rows != G.rows:
        raise ValueError(f"size mismatch: {E.rows} vs {G.rows}")
    return E.T @ G @ E


class AltMat(Mat):
    """Invertible alternating matrix of even size; its Pfaffian is a unit."""

    __slots__ = ("pf",)

    def __init__(self, ring: Ring, rows: int, cols: int, entries):
        super().__init__(ring, rows, cols, entries)
        if rows != cols or rows % 2:
            raise NotAlternating(f"alternating matrices are square of even size, got {rows}x{cols}")
        if not self.is_alternating():
            raise NotAlternating("matrix is not alternating")
        self.pf = pfaffian(self)
        if not ring.is_unit(self.pf):
            raise NotUnit(f"Pfaffian {self.pf} is not a unit")

    @classmethod
    def of(cls, M: Mat) -> "AltMat":
        if isinstance(M, AltMat):
            return M
        return cls(M.ring, M.rows, M.cols, M.entries)
