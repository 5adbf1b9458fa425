"""Exact dense linear algebra over Q and prime fields.

Scalars are `fractions.Fraction` for the rationals and plain ints in
``[0, p)`` for a prime field.  Matrices are dense numpy arrays of dtype
``object``, so every operation is exact.  Subspaces are stored with a
reduced row-echelon basis and no zero rows, which makes set equality of
subspaces the same as matrix equality of their bases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class DimensionMismatch(ValueError):
    """Operands live over different ambients, fields, or shapes."""


class ScalarFormatError(ValueError):
    """A scalar string does not match the field's exact format."""


# ---------------------------------------------------------------------------
# fields


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the bases 2,3,5,7 cover n < 3.2e9.
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")
_MOD_RE = re.compile(r"^(\d+) mod (\d+)$")


class RationalField:
    """The field Q; scalars are Fractions in lowest terms.

    Integral values are held as plain ints (Fraction and int mix exactly
    and print identically); fractions only appear after division.
    """

    kind = "rationals"
    zero = 0
    one = 1

    def normalize(self, x):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f

    def inv(self, x: Fraction) -> Fraction:
        return 1 / Fraction(x)

    def reduce_array(self, a: np.ndarray) -> np.ndarray:
        return a

    def demote_array(self, a: np.ndarray) -> np.ndarray:
        # Turn integral Fractions back into ints; keeps later arithmetic fast.
        flat = a.ravel()
        for k in range(flat.size):
            x = flat[k]
            if type(x) is Fraction and x.denominator == 1:
                flat[k] = x.numerator
        return a

    def parse(self, s: str) -> Fraction:
        if not _RATIONAL_RE.match(s):
            raise ScalarFormatError(f"not a rational scalar: {s!r}")
        return Fraction(s)

    def format(self, x) -> str:
        return str(Fraction(x))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p for a prime p < 2**31; scalars are ints in [0, p)."""

    kind = "prime-field"

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= 2**31 or not _is_prime(p):
            raise ValueError(f"prime field needs a prime p < 2**31, got {p}")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def normalize(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator % self.p
            return x.numerator % self.p * self.inv(x.denominator % self.p) % self.p
        return int(x) % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(x, self.p - 2, self.p)

    def reduce_array(self, a: np.ndarray) -> np.ndarray:
        return a % self.p

    def demote_array(self, a: np.ndarray) -> np.ndarray:
        return a

    def parse(self, s: str) -> int:
        m = _MOD_RE.match(s)
        if m:
            if int(m.group(2)) != self.p:
                raise ScalarFormatError(f"scalar {s!r} is not mod {self.p}")
            return int(m.group(1)) % self.p
        if re.match(r"^[+-]?\d+$", s):
            return int(s) % self.p
        raise ScalarFormatError(f"not a prime-field scalar: {s!r}")

    def format(self, x) -> str:
        return f"{int(x) % self.p} mod {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime-field", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> RationalField | PrimeField:
    """Build a field from its JSON form: "Q" or {"Fp": p}."""
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return PrimeField(spec["Fp"])
    raise ScalarFormatError(f"unknown field spec: {spec!r}")


def field_to_spec(field) -> object:
    return "Q" if field == QQ else {"Fp": field.p}


# ---------------------------------------------------------------------------
# matrices


def _as_object_array(field, rows) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        a = rows.astype(object, copy=True)
    else:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        a = np.empty((len(rows), ncols), dtype=object)
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            for j, x in enumerate(r):
                a[i, j] = x
    norm = field.normalize
    flat = a.ravel()
    for k in range(flat.size):
        flat[k] = norm(flat[k])
    return a


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "a")

    def __init__(self, field, rows):
        a = _as_object_array(field, rows)
        a.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field, a: np.ndarray) -> "Matrix":
        # Trusted constructor: entries already normalized field scalars.
        m = object.__new__(cls)
        a = np.asarray(a, dtype=object)
        if a.flags.writeable:
            field.demote_array(a)
            a.flags.writeable = False
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "a", a)
        return m

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        a = np.full((n, n), field.zero, dtype=object)
        for i in range(n):
            a[i, i] = field.one
        return cls._raw(field, a)

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls._raw(field, np.full((rows, cols), field.zero, dtype=object))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def entries(self) -> list:
        """Row-major flat list of scalars."""
        return list(self.a.ravel())

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.a]

    def to_strings(self) -> list[list[str]]:
        f = self.field.format
        return [[f(x) for x in r] for r in self.a]

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise DimensionMismatch("field mismatch")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            return Matrix._raw(self.field, self.field.reduce_array(np.dot(self.a, other.a)))
        return NotImplemented

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix times a 1-D coordinate vector."""
        if self.cols != len(v):
            raise DimensionMismatch(f"{self.shape} applied to length {len(v)}")
        return self.field.reduce_array(np.dot(self.a, v))

    def __add__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.shape != other.shape:
                raise DimensionMismatch(f"{self.shape} + {other.shape}")
            return Matrix._raw(self.field, self.field.reduce_array(self.a + other.a))
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.shape != other.shape:
                raise DimensionMismatch(f"{self.shape} - {other.shape}")
            return Matrix._raw(self.field, self.field.reduce_array(self.a - other.a))
        return NotImplemented

    def __neg__(self):
        return Matrix._raw(self.field, self.field.reduce_array(-self.a))

    def scale(self, c) -> "Matrix":
        c = self.field.normalize(c)
        return Matrix._raw(self.field, self.field.reduce_array(self.a * c))

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.field, self.a.T.copy())

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(self.field, self.field.reduce_array(np.kron(self.a, other.a)))

    def row(self, i: int) -> np.ndarray:
        return self.a[i].copy()

    def col(self, j: int) -> np.ndarray:
        return self.a[:, j].copy()

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.a.ravel())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.to_lists()!r})"


def vstack(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    return Matrix._raw(field, np.vstack([m.a for m in mats]))


def hstack(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    return Matrix._raw(field, np.hstack([m.a for m in mats]))


def vector(field, items: Iterable) -> np.ndarray:
    v = np.array([field.normalize(x) for x in items], dtype=object)
    return v


def unit_vector(field, n: int, i: int) -> np.ndarray:
    v = np.full(n, field.zero, dtype=object)
    v[i] = field.one
    return v


# ---------------------------------------------------------------------------
# reduced row-echelon form and kernels


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    pivots: tuple[int, ...]
    rank: int


def _rref_inplace(field, a: np.ndarray) -> list[int]:
    rows, cols = a.shape
    reduce = field.reduce_array
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        if a[r, c] != field.one:
            a[r] = reduce(a[r] * field.inv(a[r, c]))
        for i in range(rows):
            f = a[i, c]
            if i != r and f != 0:
                a[i] = reduce(a[i] - f * a[r])
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row-echelon form of m, with pivot columns and rank."""
    a = m.a.copy()
    a.flags.writeable = True
    pivots = _rref_inplace(m.field, a)
    return RrefResult(Matrix._raw(m.field, a), tuple(pivots), len(pivots))


def kernel(m: Matrix) -> "Subspace":
    """Right kernel {v : m v = 0} as a subspace of the column space."""
    field = m.field
    res = rref(m)
    piv = set(res.pivots)
    free = [c for c in range(m.cols) if c not in piv]
    rows = []
    R = res.matrix.a
    for f in free:
        v = np.full(m.cols, field.zero, dtype=object)
        v[f] = field.one
        for j, c in enumerate(res.pivots):
            v[c] = -R[j, f]
        rows.append(v)
    if not rows:
        return Subspace.zero(field, m.cols)
    return Subspace.from_spanning(field, m.cols, rows)


def solve(m: Matrix, b: np.ndarray):
    """One solution x of m x = b, or None if inconsistent."""
    field = m.field
    aug = np.hstack([m.a, np.asarray(b, dtype=object).reshape(-1, 1)])
    aug = aug.copy()
    pivots = _rref_inplace(field, aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = np.full(m.cols, field.zero, dtype=object)
    for j, c in enumerate(pivots):
        x[c] = aug[j, -1]
    return x


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class QuotientMaps:
    """Surjection q with kernel U and a section s with q @ s = identity.

    The section selects the free coordinates of U's echelon basis, so
    induced operators on the quotient can be assembled from submatrices
    instead of two dense products.
    """

    projection: Matrix
    section: Matrix
    dim: int
    pivots: tuple[int, ...]
    free: tuple[int, ...]

    def induced(self, op: Matrix) -> Matrix:
        """q @ op @ s for an operator that descends to the quotient."""
        a = op.a
        f, p = list(self.free), list(self.pivots)
        block = a[np.ix_(f, f)].copy()
        if p:
            w = self.projection.a[:, p]
            block = op.field.reduce_array(block + np.dot(w, a[np.ix_(p, f)]))
        return Matrix._raw(op.field, block)


class Subspace:
    """Subspace of K^n held as an RREF basis with no zero rows."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim: int, basis: Matrix):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, *_):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_spanning(cls, field, ambient_dim: int, rows) -> "Subspace":
        rows = list(rows)
        if not rows:
            return cls.zero(field, ambient_dim)
        m = Matrix(field, rows) if not isinstance(rows[0], np.ndarray) else Matrix._raw(
            field, np.array([np.asarray(r, dtype=object) for r in rows], dtype=object)
        )
        if m.cols != ambient_dim:
            raise DimensionMismatch(f"vectors of length {m.cols} in ambient {ambient_dim}")
        res = rref(m)
        return cls(field, ambient_dim, Matrix._raw(field, res.matrix.a[: res.rank].copy()))

    @classmethod
    def zero(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.zeros(field, 0, ambient_dim))

    @classmethod
    def full(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def basis_vectors(self) -> list[np.ndarray]:
        return [self.basis.a[i].copy() for i in range(self.dim)]

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambients")

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residual of v after elimination against the basis; 0 iff v is a member."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        v = np.asarray(v, dtype=object).copy()
        B = self.basis.a
        pivots = _pivot_cols(B)
        for j, c in enumerate(pivots):
            f = v[c]
            if f != 0:
                v = self.field.reduce_array(v - f * B[j])
        return v

    def contains(self, v: np.ndarray) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def contains_all(self, rows: np.ndarray) -> bool:
        """Membership for a whole stack of row vectors at once."""
        rows = np.asarray(rows, dtype=object)
        if rows.shape[1] != self.ambient_dim:
            raise DimensionMismatch("row length does not match the ambient")
        if rows.shape[0] == 0:
            return True
        if self.is_zero():
            return not rows.any()
        pivots = list(_pivot_cols(self.basis.a))
        resid = rows - np.dot(rows[:, pivots], self.basis.a)
        return not resid.any()

    def is_subset(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return all(other.contains(b) for b in self.basis.a)

    def __le__(self, other):
        return self.is_subset(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        return Subspace.from_spanning(
            self.field, self.ambient_dim, np.vstack([self.basis.a, other.basis.a])
        )

    def __and__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient_dim)
        k = self.dim
        stacked = Matrix._raw(self.field, np.hstack([self.basis.a.T, -other.basis.a.T]))
        coeffs = kernel(stacked)
        vecs = [
            self.field.reduce_array(np.dot(w[:k], self.basis.a))
            for w in coeffs.basis.a
        ]
        return Subspace.from_spanning(self.field, self.ambient_dim, vecs)

    def quotient(self) -> QuotientMaps:
        """Projection onto the ambient modulo this subspace, plus a section.

        The free coordinates of the RREF basis index the quotient; the
        projection subtracts each vector's component along the basis rows.
        """
        field = self.field
        n = self.ambient_dim
        B = self.basis.a
        pivots = _pivot_cols(B)
        free = [c for c in range(n) if c not in set(pivots)]
        qdim = len(free)
        q = np.full((qdim, n), field.zero, dtype=object)
        s = np.full((n, qdim), field.zero, dtype=object)
        for t, f in enumerate(free):
            q[t, f] = field.one
            for j, c in enumerate(pivots):
                q[t, c] = -B[j, f]
            s[f, t] = field.one
        return QuotientMaps(
            Matrix._raw(field, q),
            Matrix._raw(field, s),
            qdim,
            tuple(pivots),
            tuple(free),
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _pivot_cols(rref_rows: np.ndarray) -> list[int]:
    pivots = []
    for i in range(rref_rows.shape[0]):
        for c in range(rref_rows.shape[1]):
            if rref_rows[i, c] != 0:
                pivots.append(c)
                break
    return pivots


# ---------------------------------------------------------------------------
# operator-driven constructions


def closure_under(operators: Sequence[Matrix], seed: Subspace) -> Subspace:
    """Smallest subspace containing seed and invariant under every operator.

    Image-append iteration; the dimension strictly grows until the fixed
    point, so it stops after at most ambient_dim passes.
    """
    n = seed.ambient_dim
    for op in operators:
        if op.shape != (n, n):
            raise DimensionMismatch(f"operator {op.shape} on ambient {n}")
    current = seed
    while True:
        if current.is_full() or current.is_zero():
            return current
        blocks = [current.basis.a]
        for op in operators:
            blocks.append(op.field.reduce_array(np.dot(current.basis.a, op.a.T)))
        bigger = Subspace.from_spanning(seed.field, n, np.vstack(blocks))
        if bigger.dim == current.dim:
            return bigger
        current = bigger


def preimage(operator: Matrix, target: Subspace) -> Subspace:
    """{v : operator v in target}, a subspace of the operator's source."""
    if operator.rows != target.ambient_dim:
        raise DimensionMismatch(
            f"operator maps into dim {operator.rows}, target ambient {target.ambient_dim}"
        )
    if target.is_full():
        return Subspace.full(operator.field, operator.cols)
    q = target.quotient().projection
    return kernel(q @ operator)


def joint_kernel(operators: Sequence[Matrix]) -> Subspace:
    """Intersection of the kernels of every operator (common source dim)."""
    if not operators:
        raise ValueError("joint_kernel needs at least one operator")
    n = operators[0].cols
    field = operators[0].field
    current = Subspace.full(field, n)
    for op in operators:
        if op.cols != n:
            raise DimensionMismatch("operators disagree on source dimension")
        if current.is_zero():
            return current
        restricted = Matrix._raw(field, field.reduce_array(np.dot(op.a, current.basis.a.T)))
        coeffs = kernel(restricted)
        vecs = [
            field.reduce_array(np.dot(w, current.basis.a)) for w in coeffs.basis.a
        ]
        current = Subspace.from_spanning(field, n, vecs)
    return current
