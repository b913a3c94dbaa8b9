"""Exact linear algebra over the prime field GF(p).

Matrices are plain ``numpy`` integer arrays whose entries are kept reduced
into ``[0, p)``.  Every routine takes the prime explicitly; nothing here
uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering

import numpy as np

DEFAULT_PRIME = 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p) or not 2 <= p <= 97:
        raise ValueError(f"p must be a prime in [2, 97], got {p}")
    return p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, -1, p)


@total_ordering
@dataclass(frozen=True)
class FieldElement:
    """A residue class modulo the prime ``p``."""

    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("elements of different fields")
            return other
        return FieldElement(int(other), self.p)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other).value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other).value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other).value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> "FieldElement":
        return FieldElement(inv(self.value, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._coerce(other).value

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    """Return ``m`` as a 2-d int64 array reduced mod ``p``."""
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, cols or 0), dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    if a.size == 0 and cols is not None:
        a = a.reshape(a.shape[0], cols) if a.shape[0] else np.zeros((0, cols), dtype=np.int64)
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form of ``m`` and its pivot columns.

    The returned matrix has the same shape as ``m``; rows past the rank are zero.
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = a[r] * inv(lead, p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank(m, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(m, p: int) -> np.ndarray:
    """Basis of ``{v : m v = 0}`` as the rows of a matrix."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, c in enumerate(pivots):
            basis[i, c] = -r[row, f] % p
    return basis


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b`` (``b`` a vector or matrix), or ``None``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    n = a.shape[1]
    if a.shape[0] == 0:
        if np.any(b % p):
            return None
        x = zeros(n, b.shape[1])
        return x[:, 0] if vector else x
    r, pivots = rref(np.hstack([a, b]), p)
    if pivots and pivots[-1] >= n:
        return None
    x = zeros(n, b.shape[1])
    for row, c in enumerate(pivots):
        x[c] = r[row, n:]
    return x[:, 0] if vector else x


def is_invertible(m, p: int) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``GF(p)^ambient_dim`` held by its canonical RREF basis.

    Two subspaces are equal as sets exactly when their ``basis`` arrays are
    identical, so ``==`` compares those.
    """

    ambient_dim: int
    basis: np.ndarray
    p: int = DEFAULT_PRIME
    pivots: tuple[int, ...] = field(default=(), repr=False)

    @classmethod
    def span(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.size == 0:
            return cls.zero(ambient_dim, p)
        v = v.reshape(-1, ambient_dim)
        r, pivots = rref(v, p)
        basis = r[: len(pivots)].copy()
        basis.setflags(write=False)
        return cls(ambient_dim, basis, p, pivots)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        basis = zeros(0, ambient_dim)
        basis.setflags(write=False)
        return cls(ambient_dim, basis, p, ())

    @classmethod
    def whole(cls, ambient_dim: int, p: int) -> "Subspace":
        basis = identity(ambient_dim)
        basis.setflags(write=False)
        return cls(ambient_dim, basis, p, tuple(range(ambient_dim)))

    @classmethod
    def column_span(cls, m, p: int) -> "Subspace":
        m = np.asarray(m, dtype=np.int64)
        return cls.span(m.T, m.shape[0], p)

    @classmethod
    def kernel(cls, m, p: int) -> "Subspace":
        m = np.asarray(m, dtype=np.int64)
        return cls.span(nullspace(m, p), m.shape[1], p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.p == other.p
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.p, self.basis.tobytes()))

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise ValueError(
                f"ambient mismatch: GF({self.p})^{self.ambient_dim} vs GF({other.p})^{other.ambient_dim}"
            )

    def reduce(self, vectors) -> np.ndarray:
        """Reduce row vectors modulo this subspace (zero exactly on members)."""
        v = np.asarray(vectors, dtype=np.int64) % self.p
        if not self.pivots:
            return v
        return (v - v[..., list(self.pivots)] @ self.basis) % self.p

    def contains(self, vector) -> bool:
        return not np.any(self.reduce(vector))

    def contains_all(self, vectors) -> bool:
        v = np.asarray(vectors, dtype=np.int64)
        if v.size == 0:
            return True
        v = v.reshape(-1, self.ambient_dim)
        return not np.any(self.reduce(v))

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.contains_all(self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim, self.p)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        perp = np.vstack([self.complement_basis(), other.complement_basis()])
        return Subspace.kernel(perp, self.p) if perp.shape[0] else Subspace.whole(self.ambient_dim, self.p)

    def complement_basis(self) -> np.ndarray:
        """Basis of the orthogonal space under the standard dot product."""
        if self.dim == 0:
            return identity(self.ambient_dim)
        return nullspace(self.basis, self.p)

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates of member vectors with respect to ``basis``."""
        v = np.asarray(vectors, dtype=np.int64) % self.p
        return v[..., list(self.pivots)]

    def image(self, m) -> "Subspace":
        """Image of this subspace under the column-vector map ``m``."""
        m = np.asarray(m, dtype=np.int64)
        return Subspace.span((self.basis @ m.T) % self.p, m.shape[0], self.p)

    def preimage(self, m) -> "Subspace":
        """``{v : m v in self}``."""
        m = np.asarray(m, dtype=np.int64)
        perp = self.complement_basis()
        if perp.shape[0] == 0:
            return Subspace.whole(m.shape[1], self.p)
        return Subspace.kernel((perp @ m) % self.p, self.p)


def subspace_ops(u: Subspace, v: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection of two subspaces of the same ambient space."""
    return u + v, u & v


@dataclass(frozen=True)
class RrefDecomposition:
    rref: np.ndarray
    rank: int
    kernel: Subspace
    image: Subspace


def rref_decompose(m, p: int) -> RrefDecomposition:
    m = np.asarray(m, dtype=np.int64) % p
    r, pivots = rref(m, p)
    return RrefDecomposition(r, len(pivots), Subspace.kernel(m, p), Subspace.column_span(m, p))


def pairing_annihilator(s: Subspace, pairing) -> Subspace:
    """``{f : f^T P a = 0 for all a in s}`` for a nondegenerate bilinear form ``P``."""
    pairing = np.asarray(pairing, dtype=np.int64) % s.p
    if pairing.shape != (s.ambient_dim, s.ambient_dim):
        raise ValueError(f"pairing must be {s.ambient_dim}x{s.ambient_dim}, got {pairing.shape}")
    if rank(pairing, s.p) != s.ambient_dim:
        raise ValueError("degenerate pairing")
    if s.dim == 0:
        return Subspace.whole(s.ambient_dim, s.p)
    return Subspace.kernel((s.basis @ pairing.T) % s.p, s.p)


def annihilator(s: Subspace) -> Subspace:
    """Annihilator under the standard dot pairing."""
    return Subspace.span(s.complement_basis(), s.ambient_dim, s.p)


class Quotient:
    """The subquotient ``total / relations`` of ``GF(p)^n``.

    Classes are represented by canonical coset representatives that vanish on
    the pivot columns of ``relations``; ``coords`` and ``lift`` convert between
    ambient vectors and coordinates in ``GF(p)^dim``.
    """

    def __init__(self, total: Subspace, relations: Subspace):
        total._check(relations)
        if not relations.issubspace(total):
            raise ValueError("relations are not contained in total")
        self.total = total
        self.relations = relations
        self.p = total.p
        reduced = relations.reduce(total.basis)
        self.reps = Subspace.span(reduced, total.ambient_dim, self.p)

    @classmethod
    def of(cls, ambient_dim: int, relations: Subspace) -> "Quotient":
        return cls(Subspace.whole(ambient_dim, relations.p), relations)

    @property
    def dim(self) -> int:
        return self.reps.dim

    @property
    def ambient_dim(self) -> int:
        return self.total.ambient_dim

    def coords(self, vectors) -> np.ndarray:
        return self.reps.coordinates(self.relations.reduce(vectors))

    def lift(self, coords) -> np.ndarray:
        return (np.asarray(coords, dtype=np.int64) @ self.reps.basis) % self.p

    def projection_matrix(self) -> np.ndarray:
        """``dim x ambient`` matrix sending column vectors to coordinates."""
        return self.coords(identity(self.ambient_dim)).T.copy()

    def lift_matrix(self) -> np.ndarray:
        """``ambient x dim`` matrix sending coordinates to representatives."""
        return self.reps.basis.T.copy()

    def induced(self, m, target: "Quotient") -> np.ndarray:
        """Matrix of the map on classes induced by the column-vector map ``m``.

        Raises ``ValueError`` unless ``m`` carries total into total and
        relations into relations.
        """
        m = np.asarray(m, dtype=np.int64)
        if not target.total.contains_all((self.total.basis @ m.T) % self.p):
            raise ValueError("map does not preserve the total space")
        if not target.relations.contains_all((self.relations.basis @ m.T) % self.p):
            raise ValueError("map does not preserve the relations")
        images = (self.reps.basis @ m.T) % self.p
        return target.coords(images).T.copy().reshape(target.dim, self.dim)
