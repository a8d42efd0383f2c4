"""Algebra families that satisfy the diassociative identities by construction."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import SIDES, AlgebraMorphismCheck, DiasAlgebra, center, check_homomorphism, direct_sum
from .kernel import QQ, FieldSpec, Matrix, NoSolution, Subspace, Vector, axpy, solve


class NotAssociative(ValueError):
    pass


@dataclass(frozen=True)
class Known:
    value: int
    provenance: str  # "published" | "construction" | "computed"


@dataclass
class CatalogEntry:
    id: str
    algebra: DiasAlgebra
    known_invariants: Dict[str, Known] = dc_field(default_factory=dict)

    def central_ideals(self) -> List[Tuple[str, Subspace]]:
        """``{0}``, ``Z(L)`` and, when ``dim Z(L) >= 2``, the span of the first
        center basis vector."""
        L = self.algebra
        Z = center(L)
        out = [("zero", L.zero_space())]
        if Z.dim:
            out.append(("center", Z))
        if Z.dim >= 2:
            out.append(("center_first", Subspace(L.field, L.dim, [Z.vectors()[0]])))
        return out


def abelian(n: int, field: FieldSpec = QQ) -> DiasAlgebra:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return DiasAlgebra(field, n, {}, {}, [f"x{i + 1}" for i in range(n)])


def example3_cover(n: int, field: FieldSpec = QQ) -> DiasAlgebra:
    """``L ⊕ M`` with ``x_i⊣x_j = m_ij``, ``x_i⊢x_j = s_ij`` and nothing else.

    Basis order: ``x_1..x_n``, then ``m_ij`` row-major, then ``s_ij``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    one = field.one
    left, right = {}, {}
    for i in range(n):
        for j in range(n):
            left[(i, j)] = {n + i * n + j: one}
            right[(i, j)] = {n + n * n + i * n + j: one}
    labels = ([f"x{i + 1}" for i in range(n)]
              + [f"m{i + 1}{j + 1}" for i in range(n) for j in range(n)]
              + [f"s{i + 1}{j + 1}" for i in range(n) for j in range(n)])
    return DiasAlgebra(field, n + 2 * n * n, left, right, labels)


def from_associative(tensor: Sequence[Sequence[Sequence]], field: FieldSpec = QQ,
                     labels: Optional[Sequence[str]] = None) -> DiasAlgebra:
    """Use one associative product for both ``⊣`` and ``⊢``."""
    A = DiasAlgebra(field, len(tensor), tensor, tensor, labels)
    n = A.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = A.mul(0, A.product(0, i, j), {k: field.one})
                rhs = A.mul(0, {i: field.one}, A.product(0, j, k))
                if lhs != rhs:
                    raise NotAssociative(f"(x{i} x{j}) x{k} != x{i} (x{j} x{k})")
    return A


def _tensor(n: int, entries: Dict[Tuple[int, int], Dict[int, int]]):
    t = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in entries.items():
        for k, c in v.items():
            t[i][j][k] = c
    return t


def truncated_polynomial(k: int, field: FieldSpec = QQ) -> DiasAlgebra:
    """``F[t]/(t^k)`` with basis ``1, t, ..., t^(k-1)``."""
    t = _tensor(k, {(i, j): {i + j: 1} for i in range(k) for j in range(k) if i + j < k})
    return from_associative(t, field, ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, k)])


def dual_numbers(field: FieldSpec = QQ) -> DiasAlgebra:
    return truncated_polynomial(2, field)


def diagonal(k: int = 2, field: FieldSpec = QQ) -> DiasAlgebra:
    """``F x ... x F`` with orthogonal idempotents."""
    return from_associative(_tensor(k, {(i, i): {i: 1} for i in range(k)}), field,
                            [f"e{i + 1}" for i in range(k)])


def strict_upper_triangular_2(field: FieldSpec = QQ) -> DiasAlgebra:
    """Strictly upper triangular 2x2 matrices: spanned by ``E12`` with ``E12^2 = 0``."""
    return from_associative(_tensor(1, {}), field, ["E12"])


def _random_scalar(rng: random.Random, field: FieldSpec):
    if field.is_prime:
        return rng.randrange(field.p)
    return field(rng.randint(-3, 3))


def random_two_step(n: int, m: int, field: FieldSpec = QQ, seed: int = 0) -> DiasAlgebra:
    """``V ⊕ M`` with random bilinear ``V x V -> M`` for both products and
    ``M`` annihilating everything.  Every triple product vanishes, so all
    five identities hold."""
    if n < 0 or m < 0:
        raise ValueError("dimensions must be nonnegative")
    rng = random.Random(seed)
    tables = []
    for _ in range(2):
        t = {}
        for i in range(n):
            for j in range(n):
                v = {n + a: _random_scalar(rng, field) for a in range(m)}
                t[(i, j)] = v
        tables.append(t)
    labels = [f"v{i + 1}" for i in range(n)] + [f"w{a + 1}" for a in range(m)]
    return DiasAlgebra(field, n + m, tables[0], tables[1], labels)


def corpus(field: FieldSpec = QQ, seed: int = 0) -> List[CatalogEntry]:
    P, T, D = "published", "construction", "computed"
    out: List[CatalogEntry] = []
    for n in range(6):
        out.append(CatalogEntry(f"abelian_{n}", abelian(n, field), {
            "dim_derived": Known(0, T), "dim_center": Known(n, T),
            "dim_multiplier": Known(2 * n * n, P), "dim_cover": Known(n * (2 * n + 1), P),
        }))
    for n in (1, 2, 3):
        out.append(CatalogEntry(f"example3_cover_{n}", example3_cover(n, field), {
            "dim": Known(n + 2 * n * n, P),
            "dim_derived": Known(2 * n * n, P), "dim_center": Known(2 * n * n, P),
        }))
    t2 = dual_numbers(field)
    t3 = truncated_polynomial(3, field)
    d2 = diagonal(2, field)
    u2 = strict_upper_triangular_2(field)
    out += [
        CatalogEntry("dual_numbers", t2, {"dim_derived": Known(2, D), "dim_center": Known(0, D)}),
        CatalogEntry("truncated_poly_3", t3, {"dim_derived": Known(3, D), "dim_center": Known(0, D)}),
        CatalogEntry("diagonal_2", d2, {"dim_derived": Known(2, D), "dim_center": Known(0, D)}),
        CatalogEntry("strict_upper_2", u2, {"dim_derived": Known(0, T), "dim_center": Known(1, T)}),
        CatalogEntry("dual_numbers+abelian_1", direct_sum(t2, abelian(1, field))),
        CatalogEntry("diagonal_2+dual_numbers", direct_sum(d2, t2)),
        CatalogEntry("example3_cover_1+abelian_1", direct_sum(example3_cover(1, field), abelian(1, field))),
        CatalogEntry("strict_upper_2+truncated_poly_3", direct_sum(u2, t3)),
        CatalogEntry("dual_numbers+example3_cover_1", direct_sum(t2, example3_cover(1, field))),
    ]
    rng = random.Random(seed)
    for r in range(20):
        n, m = rng.randint(1, 3), rng.randint(0, 3)
        s = rng.randrange(2 ** 31)
        out.append(CatalogEntry(f"random_two_step_{r}_n{n}_m{m}",
                                random_two_step(n, m, field, s)))
    return out


def corpus_pairs(field: FieldSpec = QQ, seed: int = 0) -> List[Tuple[CatalogEntry, str, Subspace]]:
    """Every corpus entry with each of its catalogued central ideals."""
    return [(e, name, I) for e in corpus(field, seed) for name, I in e.central_ideals()]


def find_entry(entry_id: str, field: FieldSpec = QQ, seed: int = 0) -> CatalogEntry:
    for e in corpus(field, seed):
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


@dataclass(frozen=True)
class Mutation:
    side: int
    i: int
    j: int
    k: int
    delta: object
    algebra: DiasAlgebra


def mutate(L: DiasAlgebra, seed: int) -> Mutation:
    """Add a random nonzero scalar to one uniformly chosen structure constant."""
    rng = random.Random(seed)
    f, n = L.field, L.dim
    side, i, j, k = rng.randrange(2), rng.randrange(n), rng.randrange(n), rng.randrange(n)
    if f.is_prime:
        delta = rng.randrange(1, f.p)
    else:
        delta = f(rng.choice([-3, -2, -1, 1, 2, 3]))
    tables = [{key: dict(v) for key, v in t.items()} for t in L.products]
    v = tables[side].setdefault((i, j), {})
    v[k] = f.add(v.get(k, f.zero), delta)
    return Mutation(side, i, j, k, delta, DiasAlgebra(f, n, tables[0], tables[1], L.labels))


def two_step_isomorphism(source: DiasAlgebra, target: DiasAlgebra, n: int) -> Optional[Matrix]:
    """For algebras on ``V ⊕ M`` (``V`` the first ``n`` coordinates) whose
    products all land in ``M``, return the map that fixes ``V`` and sends
    each product of ``source`` to the same product in ``target``.

    Returns ``None`` unless that recipe gives a well-defined bijective
    homomorphism."""
    f, N = source.field, source.dim
    if target.dim != N or target.field != f:
        return None
    src_rows, tgt_rows = [], []
    for side in SIDES:
        for i in range(n):
            for j in range(n):
                src_rows.append(source.product(side, i, j))
                tgt_rows.append(target.product(side, i, j))
    M = Subspace(f, N, ({k: f.one} for k in range(n, N)))
    if Subspace(f, N, src_rows) != M or Subspace(f, N, tgt_rows) != M:
        return None
    # solve for phi on M: phi(src_rows[r]) = tgt_rows[r]
    basis = M.vectors()
    src_m = Matrix.from_columns(f, N, src_rows)
    cols: List[Vector] = [{k: f.one} for k in range(n)]
    for b in basis:
        try:
            coeff = solve(src_m, b)
        except NoSolution:
            return None
        img: Vector = {}
        for r, c in coeff.items():
            axpy(f, img, c, tgt_rows[r])
        cols.append(img)
    phi = Matrix.from_columns(f, N, cols)
    if phi.rank() != N:
        return None
    if not check_homomorphism(AlgebraMorphismCheck(source, target, phi)):
        return None
    return phi
