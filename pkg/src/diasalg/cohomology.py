"""Second cohomology with central coefficients and the low-degree maps.

A 2-cochain of ``B`` (dim ``n``) with values in ``A = F^m`` is a pair of
bilinear maps ``(f⊣, f⊢)``.  As a flat vector it lives in ``F^(2 n^2 m)``
with coordinate ``((side*n + i)*n + j)*m + a`` holding the ``a``-th
component of ``f_side(x_i, x_j)``.  Cocycles are the solutions of

    C1  f⊣(i, j⊣k) = f⊣(i, j⊢k)
    C2  f⊣(i⊢j, k) = f⊢(i, j⊣k)
    C3  f⊢(i⊣j, k) = f⊢(i⊢j, k)
    C4  f⊣(i, j⊣k) = f⊣(i⊣j, k)
    C5  f⊢(i, j⊢k) = f⊢(i⊢j, k)

and coboundaries are ``(-ε∘⊣, -ε∘⊢)`` for linear ``ε: B -> A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    LEFT, RIGHT, SIDES, DiasAlgebra, NotCentralIdeal, derived_subalgebra,
    is_central_ideal, quotient_algebra, quotient_maps,
)
from .kernel import (
    FieldSpec, Matrix, Scalar, Subspace, Vector, annihilator, axpy, complement, dot,
    image, kernel, permute_subspace, subspace_contains,
)

CONDITIONS = ("C1", "C2", "C3", "C4", "C5")


class NotACocycle(ValueError):
    pass


class CohomologyError(RuntimeError):
    """An identity that holds for every valid input failed; indicates a bug."""


def cochain_index(n: int, m: int, side: int, i: int, j: int, a: int) -> int:
    return ((side * n + i) * n + j) * m + a


@dataclass(frozen=True)
class CocyclePair:
    """``left``/``right`` are ``(n*n) x m`` matrices; row ``i*n + j`` holds
    ``f(x_i, x_j)`` in coordinates of the coefficient space."""

    field: FieldSpec
    base_dim: int
    coeff_dim: int
    left: Matrix
    right: Matrix

    @property
    def sides(self) -> Tuple[Matrix, Matrix]:
        return (self.left, self.right)

    def value(self, side: int, i: int, j: int) -> Vector:
        return self.sides[side].rows[i * self.base_dim + j]

    def evaluate(self, side: int, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
        f = self.field
        rows = self.sides[side].rows
        n = self.base_dim
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                r = rows[i * n + j]
                if r:
                    axpy(f, out, f.mul(a, b), r)
        return out

    def vector(self) -> Vector:
        n, m = self.base_dim, self.coeff_dim
        out: Vector = {}
        for side, mat in enumerate(self.sides):
            for ij, row in enumerate(mat.rows):
                base = (side * n * n + ij) * m
                for a, v in row.items():
                    out[base + a] = v
        return out

    @classmethod
    def from_vector(cls, field: FieldSpec, n: int, m: int, v: Mapping[int, Scalar]) -> "CocyclePair":
        rows = ([{} for _ in range(n * n)], [{} for _ in range(n * n)])
        for idx, x in v.items():
            if not x:
                continue
            rest, a = divmod(idx, m)
            side, ij = divmod(rest, n * n)
            rows[side][ij][a] = x
        return cls(field, n, m,
                   Matrix._trusted(field, n * n, m, rows[0]),
                   Matrix._trusted(field, n * n, m, rows[1]))

    @classmethod
    def from_values(cls, field: FieldSpec, n: int, m: int,
                    left: Mapping[Tuple[int, int], Mapping[int, Scalar]],
                    right: Mapping[Tuple[int, int], Mapping[int, Scalar]]) -> "CocyclePair":
        sides = []
        for table in (left, right):
            rows: List[Vector] = [{} for _ in range(n * n)]
            for (i, j), vec in table.items():
                rows[i * n + j] = {a: field(x) if not field.owns(x) else x for a, x in vec.items()}
            sides.append(Matrix(field, n * n, m, rows))
        return cls(field, n, m, sides[0], sides[1])

    @classmethod
    def zero(cls, field: FieldSpec, n: int, m: int) -> "CocyclePair":
        return cls(field, n, m, Matrix.zeros(field, n * n, m), Matrix.zeros(field, n * n, m))

    def component(self, a: int) -> "CocyclePair":
        """The scalar cochain ``x, y -> f(x, y)_a``."""
        sides = []
        for mat in self.sides:
            rows = []
            for r in mat.rows:
                x = r.get(a)
                rows.append({0: x} if x else {})
            sides.append(Matrix._trusted(self.field, len(rows), 1, rows))
        return CocyclePair(self.field, self.base_dim, 1, sides[0], sides[1])

    def compose(self, chi: Matrix) -> "CocyclePair":
        """``chi ∘ f`` for a linear map ``chi`` given as a ``k x m`` matrix."""
        t = chi.transpose()
        return CocyclePair(self.field, self.base_dim, chi.nrows, self.left @ t, self.right @ t)

    def pullback(self, proj: Matrix) -> "CocyclePair":
        """``f(proj x, proj y)`` where ``proj`` maps ``F^N -> F^base_dim``."""
        N = proj.ncols
        cols = [proj.column(l) for l in range(N)]
        sides = []
        for side in SIDES:
            rows = [self.evaluate(side, cols[x], cols[y]) for x in range(N) for y in range(N)]
            sides.append(Matrix._trusted(self.field, N * N, self.coeff_dim, rows))
        return CocyclePair(self.field, N, self.coeff_dim, sides[0], sides[1])

    def __add__(self, other: "CocyclePair") -> "CocyclePair":
        v = self.vector()
        axpy(self.field, v, self.field.one, other.vector())
        return CocyclePair.from_vector(self.field, self.base_dim, self.coeff_dim, v)


# --- cocycles and coboundaries ---------------------------------------------

def cocycle_constraints(B: DiasAlgebra, m: int) -> List[Vector]:
    """One sparse row per nontrivial instance of C1..C5."""
    n = B.dim
    one = B.field.one
    minus = B.field.neg(one)
    # inner_right(s, t): f_s(i, x_j t x_k);  inner_left(s, t): f_s(x_i t x_j, k)
    plan = {
        "C1": [("R", LEFT, LEFT, one), ("R", LEFT, RIGHT, minus)],
        "C2": [("L", LEFT, RIGHT, one), ("R", RIGHT, LEFT, minus)],
        "C3": [("L", RIGHT, LEFT, one), ("L", RIGHT, RIGHT, minus)],
        "C4": [("R", LEFT, LEFT, one), ("L", LEFT, LEFT, minus)],
        "C5": [("R", RIGHT, RIGHT, one), ("L", RIGHT, RIGHT, minus)],
    }
    rows: List[Vector] = []
    f = B.field
    for cond in CONDITIONS:
        eqs: Dict[Tuple[int, int, int], Vector] = {}
        for kind, s, t, sign in plan[cond]:
            for (x, y), p in B.products[t].items():
                for other in range(n):
                    if kind == "R":
                        key = (other, x, y)
                        terms = {(s * n + other) * n + l: c for l, c in p.items()}
                    else:
                        key = (x, y, other)
                        terms = {(s * n + l) * n + other: c for l, c in p.items()}
                    r = eqs.setdefault(key, {})
                    axpy(f, r, sign, terms)
        for key in sorted(eqs):
            r = eqs[key]
            if r:
                for a in range(m):
                    rows.append({k * m + a: v for k, v in r.items()})
    return rows


@lru_cache(maxsize=None)
def cocycle_space(B: DiasAlgebra, m: int = 1) -> Subspace:
    N = 2 * B.dim * B.dim * m
    rows = cocycle_constraints(B, m)
    return kernel(Matrix._trusted(B.field, len(rows), N, rows))


def coboundary_generators(B: DiasAlgebra, m: int) -> List[Vector]:
    """Images of the elementary maps ``ε = e_a ⊗ x_l^*``."""
    n, f = B.dim, B.field
    gens = []
    for l in range(n):
        for a in range(m):
            v: Vector = {}
            for side in SIDES:
                for (i, j), p in B.products[side].items():
                    c = p.get(l)
                    if c:
                        v[cochain_index(n, m, side, i, j, a)] = f.neg(c)
            gens.append(v)
    return gens


@lru_cache(maxsize=None)
def coboundary_space(B: DiasAlgebra, m: int = 1) -> Subspace:
    return Subspace(B.field, 2 * B.dim * B.dim * m, coboundary_generators(B, m))


def coboundary(B: DiasAlgebra, eps: Matrix) -> CocyclePair:
    """``(-ε∘⊣, -ε∘⊢)`` for ``eps`` an ``m x n`` matrix."""
    f, n, m = B.field, B.dim, eps.nrows
    v: Vector = {}
    cols = [eps.column(l) for l in range(n)]
    for side in SIDES:
        for (i, j), p in B.products[side].items():
            acc: Vector = {}
            for l, c in p.items():
                axpy(f, acc, f.neg(c), cols[l])
            for a, x in acc.items():
                v[cochain_index(n, m, side, i, j, a)] = x
    return CocyclePair.from_vector(f, n, m, v)


def cocycle_residuals(B: DiasAlgebra, c: CocyclePair) -> Dict[str, List[Tuple[int, int, int]]]:
    """Evaluate C1..C5 directly on basis triples; returns failing triples.

    Deliberately independent of the constraint matrix used by
    :func:`cocycle_space`."""
    n = B.dim
    out: Dict[str, List[Tuple[int, int, int]]] = {k: [] for k in CONDITIONS}
    e = [{i: B.field.one} for i in range(n)]
    f = c.evaluate
    pr = B.product
    # every term involves x_i*x_j or x_j*x_k; triples where both vanish give 0 = 0
    triples = set()
    for i, j in set(B.left) | set(B.right):
        triples.update((i, j, k) for k in range(n))
        triples.update((k, i, j) for k in range(n))
    for i, j, k in sorted(triples):
        checks = {
            "C1": (f(LEFT, e[i], pr(LEFT, j, k)), f(LEFT, e[i], pr(RIGHT, j, k))),
            "C2": (f(LEFT, pr(RIGHT, i, j), e[k]), f(RIGHT, e[i], pr(LEFT, j, k))),
            "C3": (f(RIGHT, pr(LEFT, i, j), e[k]), f(RIGHT, pr(RIGHT, i, j), e[k])),
            "C4": (f(LEFT, e[i], pr(LEFT, j, k)), f(LEFT, pr(LEFT, i, j), e[k])),
            "C5": (f(RIGHT, e[i], pr(RIGHT, j, k)), f(RIGHT, pr(RIGHT, i, j), e[k])),
        }
        for name, (lhs, rhs) in checks.items():
            if lhs != rhs:
                out[name].append((i, j, k))
    return out


def is_cocycle(B: DiasAlgebra, c: CocyclePair) -> bool:
    return not any(cocycle_residuals(B, c).values())


# --- H^2 --------------------------------------------------------------------

@dataclass(eq=False)
class CohomologySpace:
    """``H^2(B, F^m)`` with explicit representatives.

    The representatives span the pivot-rule complement of ``B2`` in ``Z2``,
    computed after relabelling coordinates by ``perm`` (identity when
    ``None``)."""

    algebra: DiasAlgebra
    coeff_dim: int
    Z2: Subspace
    B2: Subspace
    reps: List[CocyclePair]
    perm: Optional[Tuple[int, ...]] = None
    _B2p: Subspace = dc_field(default=None, repr=False)
    _rep_pivots: Tuple[int, ...] = dc_field(default=(), repr=False)

    @property
    def dim_h2(self) -> int:
        return len(self.reps)

    def _permute(self, v: Mapping[int, Scalar]) -> Vector:
        if self.perm is None:
            return dict(v)
        return {self.perm[k]: x for k, x in v.items()}

    def class_coordinates(self, c) -> List[Scalar]:
        """Coordinates of the class of ``c`` in the ``reps`` basis."""
        v = c.vector() if isinstance(c, CocyclePair) else c
        if v not in self.Z2:
            raise NotACocycle("cochain does not satisfy the cocycle conditions")
        r = self._B2p.reduce(self._permute(v))
        z = self.algebra.field.zero
        coords = [r.get(p, z) for p in self._rep_pivots]
        return coords

    def is_coboundary(self, c) -> bool:
        v = c.vector() if isinstance(c, CocyclePair) else c
        return v in self.B2

    def from_coordinates(self, coords: Sequence[Scalar]) -> CocyclePair:
        f = self.algebra.field
        v: Vector = {}
        for a, rep in zip(coords, self.reps):
            if a:
                axpy(f, v, a, rep.vector())
        return CocyclePair.from_vector(f, self.algebra.dim, self.coeff_dim, v)


def _build_h2(B: DiasAlgebra, m: int, perm: Optional[Tuple[int, ...]]) -> CohomologySpace:
    Z2 = cocycle_space(B, m)
    B2 = coboundary_space(B, m)
    if not subspace_contains(Z2, B2):
        raise CohomologyError("coboundaries failed the cocycle conditions")
    if perm is None:
        Z2p, B2p = Z2, B2
    else:
        Z2p, B2p = permute_subspace(Z2, perm), permute_subspace(B2, perm)
    C = complement(B2p, Z2p)
    rep_vectors = C.vectors()
    rep_pivots = C.pivots
    if perm is not None:
        inv = [0] * len(perm)
        for k, p in enumerate(perm):
            inv[p] = k
        rep_vectors = [{inv[k]: x for k, x in v.items()} for v in rep_vectors]
    reps = [CocyclePair.from_vector(B.field, B.dim, m, v) for v in rep_vectors]
    return CohomologySpace(B, m, Z2, B2, reps, perm, B2p, tuple(rep_pivots))


@lru_cache(maxsize=None)
def h2(B: DiasAlgebra, m: int = 1, reverse: bool = False) -> CohomologySpace:
    """``H^2(B, F^m)``.  ``reverse=True`` chooses representatives with the
    coordinate order reversed, giving a second, generally different, basis."""
    perm = None
    if reverse:
        N = 2 * B.dim * B.dim * m
        perm = tuple(range(N - 1, -1, -1))
    H = _build_h2(B, m, perm)
    for rep in H.reps:
        if not is_cocycle(B, rep):
            raise CohomologyError("H^2 representative fails C1..C5")
    return H


def class_coordinates(H: CohomologySpace, c: CocyclePair) -> List[Scalar]:
    return H.class_coordinates(c)


# --- Hom spaces and the extension cocycle -----------------------------------

def hom_space(L: DiasAlgebra, m: int = 1) -> Subspace:
    """Homomorphisms ``L -> F^m`` (``F^m`` with zero products), i.e. linear
    maps killing ``L'``.  Coordinate ``a*n + l`` is the ``(a, l)`` matrix entry."""
    n = L.dim
    ann = annihilator(derived_subalgebra(L))
    vecs = [{a * n + l: x for l, x in v.items()} for a in range(m) for v in ann.vectors()]
    return Subspace(L.field, m * n, vecs)


def extension_cocycle_with_quotient(L: DiasAlgebra, H: Subspace):
    if not is_central_ideal(L, H):
        raise NotCentralIdeal("subspace is not a central ideal")
    Q = quotient_algebra(L, H)
    q = Q.algebra.dim
    sec = [Q.section.column(a) for a in range(q)]
    tables: List[Dict[Tuple[int, int], Vector]] = []
    f = L.field
    for side in SIDES:
        t = {}
        for a in range(q):
            for b in range(q):
                v = L.mul(side, sec[a], sec[b])
                axpy(f, v, f.neg(f.one), Q.section.apply(Q.algebra.product(side, a, b)))
                if v:
                    t[(a, b)] = dict(enumerate(H.coordinates(v)))
        tables.append(t)
    c = CocyclePair.from_values(f, q, H.dim, tables[0], tables[1])
    return c, Q


def extension_cocycle(L: DiasAlgebra, H: Subspace) -> CocyclePair:
    """``f(ā, b̄) = μ(ā)*μ(b̄) - μ(ā*b̄)`` in coordinates of ``H``, using the
    canonical section of ``L -> L/H``."""
    return extension_cocycle_with_quotient(L, H)[0]


# --- the low-degree sequence -------------------------------------------------

@dataclass
class MapRecord:
    name: str
    matrix: Matrix
    rank: int
    kernel_dim: int


@dataclass
class SequenceReport:
    maps: Dict[str, MapRecord] = dc_field(default_factory=dict)
    verdicts: Dict[str, bool] = dc_field(default_factory=dict)
    dims: Dict[str, int] = dc_field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(self.verdicts.values())

    def add_map(self, name: str, m: Matrix) -> None:
        r = m.rank()
        self.maps[name] = MapRecord(name, m, r, m.ncols - r)


class _SequenceData:
    """Everything the maps for a central ideal ``H`` of ``L`` share."""

    def __init__(self, L: DiasAlgebra, H: Subspace):
        self.L, self.H = L, H
        self.f = L.field
        self.cocycle, quo = extension_cocycle_with_quotient(L, H)
        self.Q = quo.algebra
        self.P = quo.projection
        self.hom_L = hom_space(L, 1)
        self.hom_Q = hom_space(self.Q, 1)
        self.h2_Q = h2(self.Q, 1)
        self.h2_L = h2(L, 1)

    def inf1(self) -> Matrix:
        Pt = self.P.transpose()
        cols = [dict(enumerate(self.hom_L.coordinates(Pt.apply(chi)))) for chi in self.hom_Q.vectors()]
        return Matrix.from_columns(self.f, self.hom_L.dim, cols)

    def res(self) -> Matrix:
        hs = self.H.vectors()
        f = self.f
        cols = []
        for pi in self.hom_L.vectors():
            col = {}
            for k, h in enumerate(hs):
                s = dot(f, pi, h)
                if s:
                    col[k] = s
            cols.append(col)
        return Matrix.from_columns(f, self.H.dim, cols)

    def tra(self) -> Matrix:
        f = self.f
        h = self.H.dim
        cols = []
        for k in range(h):
            chi = Matrix._trusted(f, 1, h, [{k: f.one}])
            c = self.cocycle.compose(chi)
            cols.append(dict(enumerate(self.h2_Q.class_coordinates(c))))
        return Matrix.from_columns(f, self.h2_Q.dim_h2, _drop_zeros(cols))

    def inf2(self) -> Matrix:
        cols = []
        for g in self.h2_Q.reps:
            cols.append(dict(enumerate(self.h2_L.class_coordinates(g.pullback(self.P)))))
        return Matrix.from_columns(self.f, self.h2_L.dim_h2, _drop_zeros(cols))


def _drop_zeros(cols: List[Dict[int, Scalar]]) -> List[Dict[int, Scalar]]:
    return [{k: v for k, v in c.items() if v} for c in cols]


@lru_cache(maxsize=256)
def _sequence_data(L: DiasAlgebra, H: Subspace) -> _SequenceData:
    return _SequenceData(L, H)


def inf1(L: DiasAlgebra, H: Subspace) -> Matrix:
    """``Hom(L/H, F) -> Hom(L, F)``, ``χ ↦ χ∘β``."""
    return _sequence_data(L, H).inf1()


def res(L: DiasAlgebra, H: Subspace) -> Matrix:
    """``Hom(L, F) -> Hom(H, F)``, restriction; target basis is the dual of
    the RREF basis of ``H``."""
    return _sequence_data(L, H).res()


def tra(L: DiasAlgebra, H: Subspace) -> Matrix:
    """``Hom(H, F) -> H^2(L/H, F)``, ``χ ↦ [χ∘f]``."""
    return _sequence_data(L, H).tra()


def inf2(L: DiasAlgebra, H: Subspace) -> Matrix:
    """``H^2(L/H, F) -> H^2(L, F)``, pullback along the projection."""
    return _sequence_data(L, H).inf2()


def delta_codomain_dim(L: DiasAlgebra, Z: Subspace) -> int:
    return 4 * (L.dim - derived_subalgebra(L).dim) * Z.dim


def _delta_frame(L: DiasAlgebra, Z: Subspace):
    if not is_central_ideal(L, Z):
        raise NotCentralIdeal("subspace is not a central ideal")
    D = derived_subalgebra(L)
    _, S = quotient_maps(D)
    return D.vectors(), [S.column(a) for a in range(S.ncols)], Z.vectors()


def _delta_column(frame, c: CocyclePair) -> Vector:
    ds, xs, zs = frame
    for d in ds:
        for z in zs:
            for side in SIDES:
                if c.evaluate(side, d, z) or c.evaluate(side, z, d):
                    raise CohomologyError("delta components are not constant on cosets of L'")
    nz = len(zs)
    block = len(xs) * nz
    col: Vector = {}
    for i, x in enumerate(xs):
        for k, z in enumerate(zs):
            entries = (
                c.evaluate(LEFT, x, z), c.evaluate(LEFT, z, x),
                c.evaluate(RIGHT, x, z), c.evaluate(RIGHT, z, x),
            )
            for b, val in enumerate(entries):
                s = val.get(0)
                if s:
                    col[b * block + i * nz + k] = s
    return col


def delta_column(L: DiasAlgebra, Z: Subspace, c: CocyclePair) -> Vector:
    """The four forms of one ``F``-valued cocycle, laid out as in
    :func:`delta_map`.  Raises if a form is not constant on cosets of ``L'``."""
    return _delta_column(_delta_frame(L, Z), c)


def delta_map(L: DiasAlgebra, Z: Subspace) -> Matrix:
    """``H^2(L, F) -> (L/L'⊗Z ⊕ Z⊗L/L')^2``.

    Row blocks, each indexed by ``i * dim Z + k`` for ``x̄_i`` in the
    quotient basis of ``L/L'`` and ``z_k`` in the basis of ``Z``:
    ``f⊣(x̄_i, z_k)``, ``f⊣(z_k, x̄_i)``, ``f⊢(x̄_i, z_k)``, ``f⊢(z_k, x̄_i)``.
    """
    frame = _delta_frame(L, Z)
    cols = [_delta_column(frame, rep) for rep in h2(L, 1).reps]
    return Matrix.from_columns(L.field, delta_codomain_dim(L, Z), cols)


def _exact_at(into: Matrix, out_of: Matrix) -> bool:
    """``ker(out_of) == im(into)`` as subspaces of the middle term."""
    return kernel(out_of) == image(into)


def verify_five_term(L: DiasAlgebra, H: Subspace) -> SequenceReport:
    """Rank-level check of the five-term sequence for a central ideal ``H``
    together with exactness at ``H^2(L, F)`` against ``delta``."""
    data = _sequence_data(L, H)
    rep = SequenceReport()
    m_inf1, m_res, m_tra, m_inf2 = data.inf1(), data.res(), data.tra(), data.inf2()
    m_delta = delta_map(L, H)
    for name, m in (("inf1", m_inf1), ("res", m_res), ("tra", m_tra), ("inf2", m_inf2), ("delta", m_delta)):
        rep.add_map(name, m)
    rep.dims.update(
        hom_quotient=data.hom_Q.dim, hom_L=data.hom_L.dim, hom_H=H.dim,
        h2_quotient=data.h2_Q.dim_h2, h2_L=data.h2_L.dim_h2,
        delta_codomain=m_delta.nrows,
    )
    rep.verdicts["inf1_injective"] = rep.maps["inf1"].kernel_dim == 0
    rep.verdicts["exact_at_hom_L"] = _exact_at(m_inf1, m_res)
    rep.verdicts["exact_at_hom_H"] = _exact_at(m_res, m_tra)
    rep.verdicts["exact_at_h2_quotient"] = _exact_at(m_tra, m_inf2)
    rep.verdicts["exact_at_h2_L"] = _exact_at(m_inf2, m_delta)
    return rep
