"""Exact linear algebra over Q and GF(p).

Scalars are plain Python values: ``fractions.Fraction`` for the rationals and
``int`` residues in ``[0, p)`` for prime fields.  Vectors are sparse dicts
``{index: nonzero scalar}``.  Every subspace is stored by its reduced row
echelon form, so two subspaces are equal exactly when their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Scalar = Union[Fraction, int]
Vector = Dict[int, Scalar]


class KernelError(ValueError):
    pass


class FieldMismatch(KernelError):
    pass


class ShapeError(KernelError):
    pass


class NotContained(KernelError):
    pass


class NoSolution(KernelError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if p % q == 0:
            return p == q
    d = 17
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base field: ``FieldSpec("rational")`` or ``FieldSpec("prime", p)``."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_prime else Fraction(1)

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction or string like ``"-3/2"`` into the field."""
        if isinstance(x, bool) or isinstance(x, float):
            raise TypeError(f"refusing inexact or boolean scalar {x!r}")
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.is_prime:
            q = Fraction(x)
            if q.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return q.numerator * pow(q.denominator, -1, self.p) % self.p
        return Fraction(x)

    def owns(self, x) -> bool:
        """True if ``x`` is already in canonical form for this field."""
        if self.is_prime:
            return type(x) is int and 0 <= x < self.p
        return type(x) is Fraction

    def inv(self, x: Scalar) -> Scalar:
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime:
            return pow(x, -1, self.p)
        return 1 / x

    def neg(self, x: Scalar) -> Scalar:
        return (-x) % self.p if self.is_prime else -x

    def add(self, x: Scalar, y: Scalar) -> Scalar:
        return (x + y) % self.p if self.is_prime else x + y

    def sub(self, x: Scalar, y: Scalar) -> Scalar:
        return (x - y) % self.p if self.is_prime else x - y

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        return (x * y) % self.p if self.is_prime else x * y

    def format(self, x: Scalar) -> str:
        return str(x)

    def __str__(self):
        return "QQ" if self.kind == "rational" else f"GF({self.p})"


QQ = FieldSpec("rational")


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


# --- sparse vector helpers -------------------------------------------------

def axpy(field: FieldSpec, y: Vector, a: Scalar, x: Mapping[int, Scalar]) -> None:
    """In place ``y += a*x``, dropping entries that cancel."""
    if field.is_prime:
        p = field.p
        for k, v in x.items():
            w = (y.get(k, 0) + a * v) % p
            if w:
                y[k] = w
            else:
                y.pop(k, None)
    else:
        for k, v in x.items():
            w = y.get(k, 0) + a * v
            if w:
                y[k] = w
            else:
                y.pop(k, None)


def scale(field: FieldSpec, a: Scalar, x: Mapping[int, Scalar]) -> Vector:
    if not a:
        return {}
    if field.is_prime:
        return {k: (a * v) % field.p for k, v in x.items()}
    return {k: a * v for k, v in x.items()}


def dot(field: FieldSpec, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Scalar:
    if len(x) > len(y):
        x, y = y, x
    s = 0
    for k, v in x.items():
        w = y.get(k)
        if w is not None:
            s += v * w
    return s % field.p if field.is_prime else Fraction(s)


def linear_combination(field: FieldSpec, terms: Iterable[Tuple[Scalar, Mapping[int, Scalar]]]) -> Vector:
    out: Vector = {}
    for a, x in terms:
        if a:
            axpy(field, out, a, x)
    return out


# --- matrices --------------------------------------------------------------

class Matrix:
    """Immutable sparse matrix; rows are dicts of nonzero entries."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int,
                 rows: Optional[Sequence[Mapping[int, Scalar]]] = None):
        if nrows < 0 or ncols < 0:
            raise ShapeError("negative dimension")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{}] * nrows
        if len(rows) != nrows:
            raise ShapeError(f"expected {nrows} rows, got {len(rows)}")
        clean = []
        for r in rows:
            d = {}
            for k, v in r.items():
                if not 0 <= k < ncols:
                    raise ShapeError(f"column {k} out of range for {ncols} columns")
                if not field.owns(v):
                    raise FieldMismatch(f"entry {v!r} is not a canonical element of {field}")
                if v:
                    d[k] = v
            clean.append(d)
        self._rows = tuple(clean)

    @classmethod
    def _trusted(cls, field, nrows, ncols, rows) -> "Matrix":
        m = object.__new__(cls)
        m.field, m.nrows, m.ncols, m._rows = field, nrows, ncols, tuple(rows)
        return m

    @classmethod
    def from_dense(cls, field: FieldSpec, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        out = []
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged matrix")
            out.append({j: field(v) for j, v in enumerate(r) if field(v)})
        return cls._trusted(field, len(out), ncols, out)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls._trusted(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls._trusted(field, nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def from_columns(cls, field: FieldSpec, nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> "Matrix":
        rows: List[Vector] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls._trusted(field, nrows, len(columns), rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> Tuple[Vector, ...]:
        return self._rows

    def row(self, i: int) -> Vector:
        return dict(self._rows[i])

    def column(self, j: int) -> Vector:
        return {i: r[j] for i, r in enumerate(self._rows) if j in r}

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, self.field.zero)

    def to_dense(self) -> List[List[Scalar]]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self._rows]

    def transpose(self) -> "Matrix":
        cols: List[Vector] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return Matrix._trusted(self.field, self.ncols, self.nrows, cols)

    def apply(self, v: Mapping[int, Scalar]) -> Vector:
        """Matrix times column vector."""
        f = self.field
        out: Vector = {}
        for i, r in enumerate(self._rows):
            s = dot(f, r, v)
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        out = []
        for r in self._rows:
            acc: Vector = {}
            for k, a in r.items():
                axpy(f, acc, a, other._rows[k])
            out.append(acc)
        return Matrix._trusted(f, self.nrows, other.ncols, out)

    def vstack(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.ncols != other.ncols:
            raise ShapeError("column count mismatch in vstack")
        return Matrix._trusted(self.field, self.nrows + other.nrows, self.ncols, self._rows + other._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def rank(self) -> int:
        return len(rref(self)[1])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.field, self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_dense()})"


def _same_field(*objs) -> FieldSpec:
    f = objs[0].field
    for o in objs[1:]:
        if o.field != f:
            raise FieldMismatch(f"{o.field} vs {f}")
    return f


# --- incremental reduced echelon form --------------------------------------

class Echelon:
    """Mutable RREF builder.  Pivot rows are normalized to 1 and vanish on
    every other pivot column, so the final state is the canonical RREF of
    the span of everything added, independent of insertion order."""

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: Dict[int, Vector] = {}

    def reduce(self, v: Mapping[int, Scalar]) -> Vector:
        r = dict(v)
        f = self.field
        for c in [c for c in r if c in self.rows]:
            a = r.get(c)
            if a:
                axpy(f, r, f.neg(a), self.rows[c])
        return r

    def add(self, v: Mapping[int, Scalar]) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        f = self.field
        c = min(r)
        lead = r[c]
        if lead != 1:
            r = scale(f, f.inv(lead), r)
        for row in self.rows.values():
            a = row.get(c)
            if a:
                axpy(f, row, f.neg(a), r)
        self.rows[c] = r
        return True

    def __contains__(self, v) -> bool:
        return not self.reduce(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def matrix(self) -> Matrix:
        piv = self.pivots()
        return Matrix._trusted(self.field, len(piv), self.ncols, [dict(self.rows[c]) for c in piv])

    def subspace(self) -> "Subspace":
        return Subspace._from_echelon(self)


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Canonical reduced row echelon form and its pivot columns."""
    e = Echelon(m.field, m.ncols)
    for r in m.rows:
        if r:
            e.add(r)
    return e.matrix(), e.pivots()


# --- subspaces -------------------------------------------------------------

class Subspace:
    """A subspace of ``field^ambient_dim`` held in canonical RREF."""

    __slots__ = ("field", "ambient_dim", "_pivot_rows", "_pivots", "_hash")

    def __init__(self, field: FieldSpec, ambient_dim: int, vectors: Iterable[Mapping[int, Scalar]] = ()):
        e = Echelon(field, ambient_dim)
        for v in vectors:
            for k, x in v.items():
                if not 0 <= k < ambient_dim:
                    raise ShapeError(f"coordinate {k} outside ambient dimension {ambient_dim}")
                if not field.owns(x):
                    raise FieldMismatch(f"entry {x!r} is not a canonical element of {field}")
            e.add(v)
        self._load(e)

    def _load(self, e: Echelon):
        self.field = e.field
        self.ambient_dim = e.ncols
        self._pivots = tuple(e.pivots())
        self._pivot_rows = {c: e.rows[c] for c in self._pivots}
        self._hash = None

    @classmethod
    def _from_echelon(cls, e: Echelon) -> "Subspace":
        s = object.__new__(cls)
        s._load(e)
        return s

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n)

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, ({i: field.one} for i in range(n)))

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Subspace":
        """Row space of ``m``."""
        return cls(m.field, m.ncols, m.rows)

    @property
    def dim(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return self._pivots

    @property
    def basis(self) -> Matrix:
        return Matrix._trusted(self.field, self.dim, self.ambient_dim,
                               [dict(self._pivot_rows[c]) for c in self._pivots])

    def vectors(self) -> List[Vector]:
        return [dict(self._pivot_rows[c]) for c in self._pivots]

    def echelon(self) -> Echelon:
        e = Echelon(self.field, self.ambient_dim)
        e.rows = {c: dict(r) for c, r in self._pivot_rows.items()}
        return e

    def reduce(self, v: Mapping[int, Scalar]) -> Vector:
        r = dict(v)
        f = self.field
        for c in [c for c in r if c in self._pivot_rows]:
            a = r.get(c)
            if a:
                axpy(f, r, f.neg(a), self._pivot_rows[c])
        return r

    def __contains__(self, v) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping[int, Scalar]) -> List[Scalar]:
        """Coordinates of ``v`` in the RREF basis (read off at the pivots)."""
        if self.reduce(v):
            raise NotContained("vector is not in the subspace")
        z = self.field.zero
        return [v.get(c, z) for c in self._pivots]

    def from_coordinates(self, coords: Sequence[Scalar]) -> Vector:
        return linear_combination(self.field, zip(coords, (self._pivot_rows[c] for c in self._pivots)))

    def is_zero(self) -> bool:
        return not self._pivots

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self._pivots == other._pivots and self._pivot_rows == other._pivot_rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.basis)
        return self._hash

    def __le__(self, other: "Subspace") -> bool:
        return subspace_contains(other, self)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.to_dense()})"


def kernel(m: Matrix) -> Subspace:
    """Null space ``{v : m v = 0}`` inside ``field^cols``."""
    f = m.field
    red, piv = rref(m)
    pivset = set(piv)
    # column -> [(pivot column, entry)] over the RREF rows
    by_col: Dict[int, List[Tuple[int, Scalar]]] = {}
    for c, row in zip(piv, red.rows):
        for j, v in row.items():
            if j != c:
                by_col.setdefault(j, []).append((c, v))
    vecs = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = {free: f.one}
        for c, a in by_col.get(free, ()):
            v[c] = f.neg(a)
        vecs.append(v)
    return Subspace(f, m.ncols, vecs)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` inside ``field^rows``."""
    return Subspace.from_matrix(m.transpose())


def solve(m: Matrix, b: Mapping[int, Scalar]) -> Vector:
    """Some ``x`` with ``m x = b``; raises NoSolution if none exists."""
    if any(not 0 <= i < m.nrows for i in b):
        raise ShapeError("right-hand side longer than the matrix")
    aug = m.ncols
    e = Echelon(m.field, aug + 1)
    for i, r in enumerate(m.rows):
        row = dict(r)
        if i in b and b[i]:
            row[aug] = b[i]
        if row:
            e.add(row)
    if aug in e.rows:
        raise NoSolution("inconsistent linear system")
    return {c: r[aug] for c, r in e.rows.items() if aug in r}


def _check_ambient(a: Subspace, b: Subspace) -> None:
    _same_field(a, b)
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.dim < b.dim:
        a, b = b, a
    e = a.echelon()
    for v in b.vectors():
        e.add(v)
    return e.subspace()


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce rows ``(a_i | a_i)`` and ``(b_j | 0)``; the rows with
    empty left half carry a basis of the intersection in their right half."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.is_zero() or b.is_zero():
        return Subspace.zero(a.field, n)
    e = Echelon(a.field, 2 * n)
    for v in a.vectors():
        row = dict(v)
        row.update({k + n: x for k, x in v.items()})
        e.add(row)
    for v in b.vectors():
        e.add(v)
    out = [{k - n: x for k, x in row.items()} for c, row in e.rows.items() if c >= n]
    return Subspace(a.field, n, out)


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """True when ``b`` is a subspace of ``a``."""
    _check_ambient(a, b)
    if b.dim > a.dim or not set(b.pivots) <= set(a.pivots):
        return False
    return all(v in a for v in b.vectors())


def complement(a: Subspace, b: Subspace) -> Subspace:
    """Complement of ``a`` inside ``b``: the RREF rows of ``b`` whose pivot
    column is not a pivot of ``a``."""
    _check_ambient(a, b)
    if not subspace_contains(b, a):
        raise NotContained("first subspace is not contained in the second")
    taken = set(a.pivots)
    rows = [v for c, v in zip(b.pivots, b.vectors()) if c not in taken]
    return Subspace(b.field, b.ambient_dim, rows)


def annihilator(s: Subspace) -> Subspace:
    """Linear functionals (as coordinate vectors) vanishing on ``s``."""
    return kernel(s.basis)


def apply_to_subspace(m: Matrix, s: Subspace) -> Subspace:
    """Image ``m(s)``; ``m`` maps ``field^s.ambient_dim`` to ``field^m.nrows``."""
    _same_field(m, s)
    if m.ncols != s.ambient_dim:
        raise ShapeError("matrix does not act on this subspace")
    return Subspace(m.field, m.nrows, (m.apply(v) for v in s.vectors()))


def permute_subspace(s: Subspace, perm: Sequence[int]) -> Subspace:
    """Relabel coordinates: old index ``k`` becomes ``perm[k]``."""
    return Subspace(s.field, s.ambient_dim, ({perm[k]: x for k, x in v.items()} for v in s.vectors()))
