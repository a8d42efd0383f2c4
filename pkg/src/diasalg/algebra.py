"""Diassociative algebras given by structure constants.

A diassociative algebra carries two associative products, written ``⊣``
(index 0, ``LEFT``) and ``⊢`` (index 1, ``RIGHT``), tied together by

    x⊣(y⊣z) = x⊣(y⊢z),  (x⊢y)⊣z = x⊢(y⊣z),  (x⊣y)⊢z = (x⊢y)⊢z.

Structure constants are sparse: ``products[side][(i, j)]`` is the vector
``x_i * x_j`` as ``{k: c}`` with zero products omitted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .kernel import (
    Echelon, FieldMismatch, FieldSpec, Matrix, Scalar, ShapeError, Subspace, Vector,
    axpy, kernel,
)

LEFT, RIGHT = 0, 1
SIDES = (LEFT, RIGHT)
SIDE_SYMBOL = {LEFT: "⊣", RIGHT: "⊢"}

AXIOMS = (
    "left_assoc",    # (x⊣y)⊣z = x⊣(y⊣z)
    "right_assoc",   # (x⊢y)⊢z = x⊢(y⊢z)
    "mixed_left",    # x⊣(y⊣z) = x⊣(y⊢z)
    "mixed_middle",  # (x⊢y)⊣z = x⊢(y⊣z)
    "mixed_right",   # (x⊣y)⊢z = (x⊢y)⊢z
)

ProductTable = Dict[Tuple[int, int], Vector]


class NotIdeal(ValueError):
    pass


class NotCentralIdeal(ValueError):
    pass


def _clean_table(field: FieldSpec, dim: int, table) -> ProductTable:
    out: ProductTable = {}
    if isinstance(table, Mapping):
        items = table.items()
    else:
        # dense tensor t[i][j][k]
        if len(table) != dim or any(len(row) != dim for row in table):
            raise ShapeError("structure tensor must be dim x dim x dim")
        items = (((i, j), dict(enumerate(table[i][j]))) for i in range(dim) for j in range(dim))
    for (i, j), vec in items:
        if not (0 <= i < dim and 0 <= j < dim):
            raise ShapeError(f"product index ({i}, {j}) out of range")
        if not isinstance(vec, Mapping):
            if len(vec) != dim:
                raise ShapeError("structure tensor must be dim x dim x dim")
            vec = dict(enumerate(vec))
        d = {}
        for k, v in vec.items():
            if not 0 <= k < dim:
                raise ShapeError(f"basis index {k} out of range")
            if not field.owns(v):
                v = field(v)
            if v:
                d[k] = v
        if d:
            out[(i, j)] = d
    return out


class DiasAlgebra:
    """Finite-dimensional algebra with products ``⊣`` and ``⊢``.

    ``left`` and ``right`` are either dense ``dim x dim x dim`` tensors
    (``t[i][j][k]`` is the coefficient of ``x_k`` in ``x_i * x_j``) or
    sparse mappings ``{(i, j): {k: c}}``.  Instances are immutable and
    hashable, which lets the cohomology layer cache results per algebra.
    """

    __slots__ = ("field", "dim", "products", "labels", "_key")

    def __init__(self, field: FieldSpec, dim: int, left=None, right=None,
                 labels: Optional[Sequence[str]] = None):
        if dim < 0:
            raise ShapeError("negative dimension")
        self.field = field
        self.dim = dim
        self.products = (
            _clean_table(field, dim, left if left is not None else {}),
            _clean_table(field, dim, right if right is not None else {}),
        )
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != dim:
                raise ShapeError("one label per basis vector required")
        self.labels = labels
        self._key = None

    @property
    def left(self) -> ProductTable:
        return self.products[LEFT]

    @property
    def right(self) -> ProductTable:
        return self.products[RIGHT]

    def product(self, side: int, i: int, j: int) -> Vector:
        return self.products[side].get((i, j), {})

    def coefficient(self, side: int, i: int, j: int, k: int) -> Scalar:
        return self.products[side].get((i, j), {}).get(k, self.field.zero)

    def mul(self, side: int, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
        """Product of two coordinate vectors."""
        f = self.field
        table = self.products[side]
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                p = table.get((i, j))
                if p:
                    axpy(f, out, f.mul(a, b), p)
        return out

    def tensor(self, side: int) -> List[List[List[Scalar]]]:
        z = self.field.zero
        n = self.dim
        t = self.products[side]
        return [[[t.get((i, j), {}).get(k, z) for k in range(n)] for j in range(n)] for i in range(n)]

    def is_abelian(self) -> bool:
        return not self.products[LEFT] and not self.products[RIGHT]

    def basis_vector(self, i: int) -> Vector:
        return {i: self.field.one}

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def relabel(self, labels: Optional[Sequence[str]]) -> "DiasAlgebra":
        return DiasAlgebra(self.field, self.dim, self.left, self.right, labels)

    def _canonical(self):
        if self._key is None:
            self._key = (self.field, self.dim) + tuple(
                tuple(sorted((ij, tuple(sorted(v.items()))) for ij, v in t.items()))
                for t in self.products)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, DiasAlgebra):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        nnz = sum(len(t) for t in self.products)
        return f"DiasAlgebra(dim={self.dim}, field={self.field}, nonzero_products={nnz})"


@dataclass
class Violation:
    axiom: str
    triple: Tuple[int, int, int]
    residual: Vector


@dataclass
class ValidationReport:
    violations: List[Violation] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_axiom(self) -> Dict[str, List[Violation]]:
        out: Dict[str, List[Violation]] = {a: [] for a in AXIOMS}
        for v in self.violations:
            out[v.axiom].append(v)
        return out

    def __bool__(self):
        return self.ok


def _outer_left(L: DiasAlgebra, inner: int, outer: int, sign, acc) -> None:
    # (x_i inner x_j) outer x_k
    f, n = L.field, L.dim
    tab = L.products[outer]
    for (i, j), p in L.products[inner].items():
        for k in range(n):
            r = acc.setdefault((i, j, k), {})
            for l, c in p.items():
                q = tab.get((l, k))
                if q:
                    axpy(f, r, sign * c, q)


def _outer_right(L: DiasAlgebra, outer: int, inner: int, sign, acc) -> None:
    # x_i outer (x_j inner x_k)
    f, n = L.field, L.dim
    tab = L.products[outer]
    for (j, k), p in L.products[inner].items():
        for i in range(n):
            r = acc.setdefault((i, j, k), {})
            for l, c in p.items():
                q = tab.get((i, l))
                if q:
                    axpy(f, r, sign * c, q)


def validate_axioms(L: DiasAlgebra) -> ValidationReport:
    """Check both associativity laws and the three mixed laws on all basis
    triples.  Bilinearity makes this a complete check."""
    one = L.field.one
    minus = L.field.neg(one)
    plan = {
        "left_assoc": [(_outer_left, LEFT, LEFT, one), (_outer_right, LEFT, LEFT, minus)],
        "right_assoc": [(_outer_left, RIGHT, RIGHT, one), (_outer_right, RIGHT, RIGHT, minus)],
        "mixed_left": [(_outer_right, LEFT, LEFT, one), (_outer_right, LEFT, RIGHT, minus)],
        "mixed_middle": [(_outer_left, RIGHT, LEFT, one), (_outer_right, RIGHT, LEFT, minus)],
        "mixed_right": [(_outer_left, LEFT, RIGHT, one), (_outer_left, RIGHT, RIGHT, minus)],
    }
    report = ValidationReport()
    for axiom in AXIOMS:
        acc: Dict[Tuple[int, int, int], Vector] = {}
        for fn, a, b, sign in plan[axiom]:
            fn(L, a, b, sign, acc)
        for triple in sorted(acc):
            if acc[triple]:
                report.violations.append(Violation(axiom, triple, acc[triple]))
    return report


def _check_subspace(L: DiasAlgebra, *spaces: Subspace) -> None:
    for s in spaces:
        if s.field != L.field:
            raise FieldMismatch(f"{s.field} vs {L.field}")
        if s.ambient_dim != L.dim:
            raise ShapeError(f"subspace of {s.ambient_dim}-space used in a {L.dim}-dimensional algebra")


def box_product(L: DiasAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """Span of ``a⊣b`` and ``a⊢b`` over basis vectors of ``A`` and ``B``."""
    _check_subspace(L, A, B)
    e = Echelon(L.field, L.dim)
    bvecs = B.vectors()
    for a in A.vectors():
        for b in bvecs:
            for side in SIDES:
                e.add(L.mul(side, a, b))
    return e.subspace()


def derived_subalgebra(L: DiasAlgebra) -> Subspace:
    e = Echelon(L.field, L.dim)
    for table in L.products:
        for p in table.values():
            e.add(p)
    return e.subspace()


def center(L: DiasAlgebra) -> Subspace:
    """Elements killed on both sides by both products."""
    rows: Dict[tuple, Vector] = {}
    for side, table in enumerate(L.products):
        for (i, j), p in table.items():
            for k, c in p.items():
                # z * x_j: coefficient of x_k picks up z_i * c
                rows.setdefault((side, 0, j, k), {})[i] = c
                # x_i * z: picks up z_j * c
                rows.setdefault((side, 1, i, k), {})[j] = c
    m = Matrix(L.field, len(rows), L.dim, list(rows.values()))
    return kernel(m)


def _multiplies_into(L: DiasAlgebra, I: Subspace, target: Subspace) -> bool:
    for v in I.vectors():
        for b in range(L.dim):
            x = {b: L.field.one}
            for side in SIDES:
                if L.mul(side, x, v) not in target or L.mul(side, v, x) not in target:
                    return False
    return True


def is_ideal(L: DiasAlgebra, I: Subspace) -> bool:
    _check_subspace(L, I)
    return _multiplies_into(L, I, I)


def is_central_ideal(L: DiasAlgebra, I: Subspace) -> bool:
    _check_subspace(L, I)
    return _multiplies_into(L, I, L.zero_space())


class Quotient(NamedTuple):
    algebra: DiasAlgebra
    projection: Matrix  # (dim L/I) x (dim L)
    section: Matrix     # (dim L) x (dim L/I)


def quotient_maps(I: Subspace) -> Tuple[Matrix, Matrix]:
    """Projection and section for ``V/I``.  The quotient basis is the images
    of the standard vectors at the non-pivot columns of ``I``."""
    f, n = I.field, I.ambient_dim
    piv = set(I.pivots)
    free = [j for j in range(n) if j not in piv]
    pos = {j: a for a, j in enumerate(free)}
    rows = {c: r for c, r in zip(I.pivots, I.vectors())}
    cols: List[Vector] = []
    for l in range(n):
        if l in pos:
            cols.append({pos[l]: f.one})
        else:
            cols.append({pos[j]: f.neg(v) for j, v in rows[l].items() if j in pos})
    projection = Matrix.from_columns(f, len(free), cols)
    section = Matrix.from_columns(f, n, [{j: f.one} for j in free])
    return projection, section


def quotient_algebra(L: DiasAlgebra, I: Subspace) -> Quotient:
    if not is_ideal(L, I):
        raise NotIdeal("subspace is not a two-sided ideal for both products")
    P, S = quotient_maps(I)
    q = P.nrows
    sec = [S.column(a) for a in range(q)]
    tables = []
    for side in SIDES:
        t = {}
        for a in range(q):
            for b in range(q):
                v = P.apply(L.mul(side, sec[a], sec[b]))
                if v:
                    t[(a, b)] = v
        tables.append(t)
    labels = None
    if L.labels is not None:
        free = [j for j in range(L.dim) if j not in set(I.pivots)]
        labels = [L.labels[j] for j in free]
    return Quotient(DiasAlgebra(L.field, q, tables[0], tables[1], labels), P, S)


def direct_sum(L1: DiasAlgebra, L2: DiasAlgebra) -> DiasAlgebra:
    if L1.field != L2.field:
        raise FieldMismatch(f"{L1.field} vs {L2.field}")
    n1 = L1.dim
    tables = []
    for side in SIDES:
        t = dict(L1.products[side])
        for (i, j), p in L2.products[side].items():
            t[(i + n1, j + n1)] = {k + n1: c for k, c in p.items()}
        tables.append(t)
    labels = None
    if L1.labels is not None or L2.labels is not None:
        l1 = L1.labels or [f"a{i}" for i in range(L1.dim)]
        l2 = L2.labels or [f"b{i}" for i in range(L2.dim)]
        labels = list(l1) + list(l2)
    return DiasAlgebra(L1.field, n1 + L2.dim, tables[0], tables[1], labels)


@dataclass(frozen=True)
class AlgebraMorphismCheck:
    source: DiasAlgebra
    target: DiasAlgebra
    matrix: Matrix  # target.dim x source.dim


def check_homomorphism(m: AlgebraMorphismCheck) -> bool:
    """Whether the linear map commutes with both products on basis pairs."""
    S, T, phi = m.source, m.target, m.matrix
    if S.field != T.field or phi.field != S.field:
        raise FieldMismatch("source, target and matrix must share a field")
    if phi.shape != (T.dim, S.dim):
        raise ShapeError(f"matrix shape {phi.shape} does not map {S.dim} -> {T.dim}")
    images = [phi.column(i) for i in range(S.dim)]
    for side in SIDES:
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = phi.apply(S.product(side, i, j))
                rhs = T.mul(side, images[i], images[j])
                if lhs != rhs:
                    return False
    return True


def derived_dimension_bound_holds(K: DiasAlgebra) -> bool:
    """dim K' <= 2 (dim K - dim Z(K))^2."""
    n = K.dim - center(K).dim
    return derived_subalgebra(K).dim <= 2 * n * n
