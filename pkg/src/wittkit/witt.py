"""Elementary words, equivalence certificates and the Witt-group operations.

Conventions, pinned by tests:

* ``Transvection(n, i, j, r)`` is ``I + r*e_ij`` with 1-based ``i != j``.
  Right multiplication by it adds ``r`` times column ``i`` to column ``j``.
* A word evaluates to the left-to-right product of its transvections.
* A certificate ``(t, E)`` for ``G`` (size 2n) against ``G'`` (size 2m) asserts
  ``G ⊥ psi_(2(m+t)) == E^t (G' ⊥ psi_(2(n+t))) E``.

The Whitehead factorization used for ``diag(A, A^-1)`` is

    diag(A, A^-1) = U(A) L(-A^-1) U(A) W,    W = U(-I) L(I) U(-I)

with ``U(X) = [[I, X], [0, I]]`` and ``L(Y) = [[I, 0], [Y, I]]``. Each block
factor expands into the commuting scalar transvections of its nonzero entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import AltMat, Mat, adjugate_inverse, congruence, det_division_free, make_standard, perp, psi
from .ring import NotUnit, Ring, RingElement, RingMismatch


class CertificateError(ValueError):
    """Certificate whose sizes do not fit the representatives."""


class NotConstant(ValueError):
    """A field-only construction was given non-constant entries."""


@dataclass(frozen=True)
class Transvection:
    n: int
    i: int
    j: int
    r: RingElement

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("transvection indices must differ")
        if not (1 <= self.i <= self.n and 1 <= self.j <= self.n):
            raise ValueError(f"indices ({self.i}, {self.j}) out of range for size {self.n}")

    def matrix(self) -> Mat:
        ring = self.r.ring
        entries = list(Mat.identity(ring, self.n).entries)
        entries[(self.i - 1) * self.n + (self.j - 1)] = self.r
        return Mat(ring, self.n, self.n, entries)


class ElementaryWord:
    """Ordered product of transvections of one ambient size."""

    __slots__ = ("ring", "n", "word")

    def __init__(self, ring: Ring, n: int, word=()):
        word = tuple(word)
        for T in word:
            if T.n != n:
                raise ValueError(f"transvection of size {T.n} in a word of size {n}")
            if T.r.ring is not ring and T.r.ring.spec != ring.spec:
                raise RingMismatch("transvection over another ring")
        self.ring = ring
        self.n = n
        self.word = word

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "ElementaryWord":
        return cls(ring, n, ())

    @classmethod
    def from_triples(cls, ring: Ring, n: int, triples) -> "ElementaryWord":
        return cls(ring, n, [Transvection(n, i, j, ring(r)) for i, j, r in triples])

    def triples(self) -> list:
        return [(T.i, T.j, T.r) for T in self.word]

    def __len__(self):
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __eq__(self, other):
        if not isinstance(other, ElementaryWord):
            return NotImplemented
        return self.n == other.n and self.triples() == other.triples()

    def __hash__(self):
        return hash((self.n, tuple(self.triples())))

    def __repr__(self):
        return f"ElementaryWord(n={self.n}, len={len(self.word)})"

    def __add__(self, other: "ElementaryWord") -> "ElementaryWord":
        """Concatenation; evaluates to the product of the two evaluations."""
        if other.n != self.n:
            raise ValueError("words of different sizes")
        return ElementaryWord(self.ring, self.n, self.word + other.word)

    def evaluate(self) -> Mat:
        ring = self.ring
        n = self.n
        cols = [[ring.one if i == j else ring.zero for i in range(n)] for j in range(n)]
        for T in self.word:
            src, dst = cols[T.i - 1], cols[T.j - 1]
            cols[T.j - 1] = [d + T.r * s if s else d for d, s in zip(dst, src)]
        return Mat(ring, n, n, [cols[j][i] for i in range(n) for j in range(n)])

    def inverse(self) -> "ElementaryWord":
        return ElementaryWord(
            self.ring, self.n,
            [Transvection(self.n, T.i, T.j, -T.r) for T in reversed(self.word)],
        )

    def embed(self, n: int, index_map=None, offset: int = 0) -> "ElementaryWord":
        """Same word inside size ``n``: index k goes to ``index_map[k-1]`` (1-based
        targets) or, without a map, to ``k + offset``."""
        if index_map is None:
            index_map = [k + offset for k in range(1, self.n + 1)]
        index_map = list(index_map)
        if len(index_map) != self.n:
            raise ValueError("index map has the wrong length")
        return ElementaryWord(
            self.ring, n,
            [Transvection(n, index_map[T.i - 1], index_map[T.j - 1], T.r) for T in self.word],
        )

    def conjugate_by(self, other: "ElementaryWord") -> "ElementaryWord":
        """Word for ``F^-1 E F`` where F is ``other``."""
        return other.inverse() + self + other


@dataclass(frozen=True)
class EquivCert:
    """Stabilization level ``t`` and word ``E`` of size ``left + right + 2t``.

    ``left`` and ``right`` are the sizes of the two representatives.
    """

    t: int
    word: ElementaryWord
    left: int
    right: int

    def __post_init__(self):
        if self.t < 0:
            raise CertificateError("stabilization level must be nonnegative")
        if self.left % 2 or self.right % 2:
            raise CertificateError("representative sizes must be even")
        if self.word.n != self.ambient:
            raise CertificateError(
                f"word of size {self.word.n} does not match ambient size {self.ambient}")

    @property
    def ambient(self) -> int:
        return self.left + self.right + 2 * self.t

    @classmethod
    def identity(cls, ring: Ring, left: int, right: int, t: int = 0) -> "EquivCert":
        return cls(t, ElementaryWord.identity(ring, left + right + 2 * t), left, right)


class WittRep:
    """Representative of a class in W'_E(R): an invertible alternating matrix."""

    __slots__ = ("G",)

    def __init__(self, G):
        self.G = AltMat.of(G)

    @property
    def ring(self) -> Ring:
        return self.G.ring

    @property
    def size(self) -> int:
        return self.G.rows

    @property
    def pf(self) -> RingElement:
        return self.G.pf

    @property
    def in_WE(self) -> bool:
        """True when the Pfaffian is 1, i.e. the class lies in W_E(R)."""
        return self.pf == self.ring.one

    def __eq__(self, other):
        if not isinstance(other, WittRep):
            return NotImplemented
        return self.G == other.G

    def __hash__(self):
        return hash(self.G)

    def __repr__(self):
        return f"WittRep({self.G.to_strings()})"


def as_rep(G) -> WittRep:
    return G if isinstance(G, WittRep) else WittRep(G)


def neutral(ring: Ring) -> WittRep:
    return WittRep(psi(ring, 2))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a certificate check; truthy exactly when accepted.

    ``mismatch`` is the first differing entry as 1-based (row, col).
    """

    accepted: bool
    reason: str = ""
    mismatch: tuple | None = None
    lhs: RingElement | None = None
    rhs: RingElement | None = None

    def __bool__(self):
        return self.accepted


def stabilize(G, s: int) -> WittRep:
    G = as_rep(G)
    if s < 0:
        raise ValueError("stabilization count must be nonnegative")
    if s == 0:
        return G
    return WittRep(perp(G.G, psi(G.ring, 2 * s)))


def witt_sum(a, b) -> WittRep:
    a, b = as_rep(a), as_rep(b)
    return WittRep(perp(a.G, b.G))


def witt_neg(G) -> WittRep:
    """sigma_r G^-1 sigma_r for G of size 2r."""
    G = as_rep(G)
    sigma = make_standard(G.ring, "sigma", G.size // 2)
    return WittRep(sigma @ adjugate_inverse(G.G) @ sigma)


def _sides(G: WittRep, Gp: WittRep, cert: EquivCert):
    if (cert.left, cert.right) != (G.size, Gp.size):
        raise CertificateError(
            f"certificate is for sizes ({cert.left}, {cert.right}), "
            f"representatives have sizes ({G.size}, {Gp.size})")
    ring = G.ring
    lhs = perp(G.G, psi(ring, Gp.size + 2 * cert.t))
    rhs = congruence(cert.word.evaluate(), perp(Gp.G, psi(ring, G.size + 2 * cert.t)))
    return lhs, rhs


def verify_equiv(G, Gp, cert: EquivCert) -> Verdict:
    """Check ``G ⊥ psi = E^t (G' ⊥ psi) E`` entrywise after normal-form reduction."""
    G, Gp = as_rep(G), as_rep(Gp)
    if G.ring is not Gp.ring and G.ring.spec != Gp.ring.spec:
        raise RingMismatch("representatives over different rings")
    if cert.word.ring is not G.ring and cert.word.ring.spec != G.ring.spec:
        raise RingMismatch("certificate over another ring")
    lhs, rhs = _sides(G, Gp, cert)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return Verdict(True)
    i, j = diff
    return Verdict(
        False,
        f"entry ({i + 1}, {j + 1}) differs: {lhs[i, j]} != {rhs[i, j]}",
        (i + 1, j + 1),
        lhs[i, j],
        rhs[i, j],
    )


def eta(G: Mat) -> WittRep:
    """G^t psi G for even size, (G ⊥ 1)^t psi (G ⊥ 1) for odd size."""
    if not G.is_square:
        raise ValueError("eta needs a square matrix")
    ring = G.ring
    if G.rows % 2:
        G = perp(G, Mat.identity(ring, 1))
    if not ring.is_unit(det_division_free(G)):
        raise NotUnit("eta needs an invertible matrix")
    return WittRep(congruence(G, psi(ring, G.rows)))


def _block_word(X: Mat, upper: bool, n: int) -> list:
    """Scalar transvections of U(X) (upper) or L(X) inside size 2n."""
    out = []
    for i in range(n):
        for j in range(n):
            x = X[i, j]
            if x:
                if upper:
                    out.append(Transvection(2 * n, i + 1, n + j + 1, x))
                else:
                    out.append(Transvection(2 * n, n + i + 1, j + 1, x))
    return out


def whitehead_factor(A: Mat) -> ElementaryWord:
    """Word of size 2n evaluating exactly to diag(A, A^-1)."""
    if not A.is_square:
        raise ValueError("whitehead_factor needs a square matrix")
    ring = A.ring
    n = A.rows
    Ainv = adjugate_inverse(A)
    I = Mat.identity(ring, n)
    word = (
        _block_word(A, True, n)
        + _block_word(-Ainv, False, n)
        + _block_word(A, True, n)
        + _block_word(-I, True, n)
        + _block_word(I, False, n)
        + _block_word(-I, True, n)
    )
    return ElementaryWord(ring, 2 * n, word)


def eta_product_cert(A: Mat, B: Mat) -> EquivCert:
    """Certificate for eta(AB ⊥ I) ~ eta(A ⊥ B).

    With C = diag(B, B^-1) one has (A ⊥ B) C = AB ⊥ I, hence
    eta(AB ⊥ I) = C^t eta(A ⊥ B) C, and E = C ⊥ I with t = 0.
    """
    if not (A.is_square and B.is_square) or A.rows != B.rows:
        raise ValueError("A and B must be square of the same size")
    n = A.rows
    return EquivCert(0, whitehead_factor(B).embed(4 * n), 2 * n, 2 * n)


def eta_product_pair(A: Mat, B: Mat):
    """The two representatives ``eta(AB ⊥ I)`` and ``eta(A ⊥ B)``."""
    ring = A.ring
    I = Mat.identity(ring, A.rows)
    return eta(perp(A @ B, I)), eta(perp(A, B))


# constant-entry (field) constructions


def _constants(G: Mat) -> list:
    if not G.is_constant():
        raise NotConstant("symplectic reduction needs constant entries")
    f = G.ring.field
    return [[f.norm(G[i, j].constant()) if G[i, j] else f.norm(0) for j in range(G.cols)]
            for i in range(G.rows)]


def symplectic_reduce(G) -> tuple:
    """Return ``(E, C)`` with ``E^t G E == C == [[0, Pf], [-Pf, 0]] ⊥ psi``.

    Symplectic Gram-Schmidt by congruence with transvections, followed by
    moving every block's scalar into the first block with diag(d, 1/d) words.
    """
    G = as_rep(G).G
    ring = G.ring
    f = ring.field
    N = G.rows
    g = _constants(G)
    ops = []

    def apply(i, j, r):
        # congruence by I + r e_ij: column j += r col i, then row j += r row i
        for k in range(N):
            g[k][j] = f.norm(g[k][j] + r * g[k][i])
        for k in range(N):
            g[j][k] = f.norm(g[j][k] + r * g[i][k])
        ops.append((i + 1, j + 1, r))

    scalars = []
    for base in range(0, N, 2):
        x, y = base, base + 1
        if g[x][y] == 0:
            k = next((k for k in range(y + 1, N) if g[x][k] != 0), None)
            if k is None:
                raise NotUnit("matrix is singular")
            apply(k, y, f.norm(1))
        u = g[x][y]
        uinv = f.inv(u)
        for k in range(y + 1, N):
            if g[x][k] != 0:
                apply(y, k, f.norm(-g[x][k] * uinv))
        for k in range(y + 1, N):
            if g[y][k] != 0:
                apply(x, k, f.norm(g[y][k] * uinv))
        scalars.append(u)

    word = ElementaryWord.from_triples(ring, N, ops)
    for k in range(1, len(scalars)):
        if scalars[k] == 1:
            continue
        d = ring(scalars[k])
        w = whitehead_factor(Mat(ring, 1, 1, [d]))
        word = word + w.embed(N, [2, 2 * k + 1])

    pf = f.norm(1)
    for u in scalars:
        pf = f.norm(pf * u)
    canonical = perp(Mat.from_rows(ring, [[0, pf], [-pf, 0]]), psi(ring, N - 2)) if N > 2 \
        else Mat.from_rows(ring, [[0, pf], [-pf, 0]])
    return word, canonical


def field_equiv_cert(G, Gp, t: int = 0) -> EquivCert:
    """Certificate for G ~ G' over a field; needs Pf(G) == Pf(G')."""
    G, Gp = as_rep(G), as_rep(Gp)
    ring = G.ring
    if G.pf != Gp.pf:
        raise CertificateError(f"Pfaffians differ ({G.pf} vs {Gp.pf}); no elementary certificate exists")
    lhs = perp(G.G, psi(ring, Gp.size + 2 * t))
    rhs = perp(Gp.G, psi(ring, G.size + 2 * t))
    E1, C1 = symplectic_reduce(lhs)
    E2, C2 = symplectic_reduce(rhs)
    assert C1 == C2
    return EquivCert(t, E2 + E1.inverse(), G.size, Gp.size)


def permutation_word(ring: Ring, perm) -> ElementaryWord:
    """Word evaluating to the permutation matrix P with ``P e_k = e_perm[k]``.

    ``perm`` is a 0-based list and must be an even permutation.
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    # cols[k] = (index of the unit vector in column k, sign)
    cols = [(k, 1) for k in range(n)]
    triples = []
    for k in range(n):
        c = next(c for c in range(k, n) if cols[c][0] == perm[k])
        if c != k:
            # signed swap e_kc(1) e_ck(-1) e_kc(1): new col k = -col c, new col c = col k
            triples += [(k + 1, c + 1, 1), (c + 1, k + 1, -1), (k + 1, c + 1, 1)]
            ck, cc = cols[k], cols[c]
            cols[k] = (cc[0], -cc[1])
            cols[c] = ck
    negs = [k for k in range(n) if cols[k][1] < 0]
    if len(negs) % 2:
        raise ValueError("odd permutation has no elementary word")
    word = ElementaryWord.from_triples(ring, n, triples)
    minus = whitehead_factor(Mat(ring, 1, 1, [ring(-1)]))
    for a, b in zip(negs[::2], negs[1::2]):
        word = word + minus.embed(n, [a + 1, b + 1])
    return word


def swap_cert(a, b) -> EquivCert:
    """Certificate for a ⊥ b ~ b ⊥ a via the block-swap permutation."""
    a, b = as_rep(a), as_rep(b)
    ring = a.ring
    m, n = a.size, b.size
    perm = [k + n if k < m else k - m for k in range(m + n)]
    P = permutation_word(ring, perm)
    return EquivCert(0, P.embed(2 * (m + n)), m + n, m + n)


def factor_sl_field(M: Mat) -> ElementaryWord:
    """Transvection word for a constant-entry matrix of determinant 1."""
    if not M.is_square:
        raise ValueError("square matrix expected")
    ring = M.ring
    f = ring.field
    N = M.rows
    m = _constants(M)
    ops = []

    def colop(i, j, r):
        # column j += r column i
        if r == 0:
            return
        for k in range(N):
            m[k][j] = f.norm(m[k][j] + r * m[k][i])
        ops.append((i + 1, j + 1, r))

    for k in range(N):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, N) if m[k][j] != 0), None)
            if j is None:
                raise NotUnit("matrix is singular")
            colop(j, k, f.norm(1))
        if m[k][k] != 1:
            if k == N - 1:
                raise ValueError("determinant is not 1")
            l = k + 1
            colop(k, l, f.norm((1 - m[k][l]) * f.inv(m[k][k])))
            colop(l, k, f.norm(1 - m[k][k]))
        for j in range(N):
            if j != k and m[k][j] != 0:
                colop(k, j, f.norm(-m[k][j]))
    # M * T1 ... Tk = I, so M is the inverse word
    return ElementaryWord.from_triples(ring, N, ops).inverse()
