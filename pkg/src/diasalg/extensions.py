"""Central extensions, multipliers, covers and Z*."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .algebra import (
    SIDES, DiasAlgebra, NotCentralIdeal, box_product, center, derived_subalgebra, is_central_ideal,
    quotient_algebra, quotient_maps, validate_axioms,
)
from .cohomology import (
    CocyclePair, CohomologySpace, NotACocycle, SequenceReport, coboundary_space,
    cocycle_space, delta_map, h2, inf2, tra,
)
from .kernel import (
    Matrix, Subspace, Vector, apply_to_subspace, axpy, image, kernel, subspace_contains,
    subspace_intersect, subspace_sum,
)


class CoverCertificationFailed(RuntimeError):
    def __init__(self, report: "DefiningPairReport"):
        failed = [k for k, v in report.verdicts().items() if not v]
        super().__init__(f"cover failed certification: {', '.join(failed)}")
        self.report = report


@dataclass
class ExtensionRecord:
    """``0 -> kernel -> total -> base -> 0`` with a chosen linear section.

    The total space has the base coordinates first and the kernel
    coordinates after them."""

    total: DiasAlgebra
    kernel: Subspace
    projection: Matrix
    section: Matrix
    central: bool
    stem: bool
    cover: bool


@dataclass
class DefiningPairReport:
    quotient_matches: bool
    kernel_central: bool
    kernel_in_derived: bool
    dimension_bound: bool
    dim_total: int = 0
    dim_kernel: int = 0
    bound: int = 0

    def verdicts(self) -> Dict[str, bool]:
        return {
            "quotient_matches": self.quotient_matches,
            "kernel_central": self.kernel_central,
            "kernel_in_derived": self.kernel_in_derived,
            "dimension_bound": self.dimension_bound,
        }

    @property
    def ok(self) -> bool:
        return all(self.verdicts().values())


def _require_cocycle(B: DiasAlgebra, c: CocyclePair) -> None:
    if c.base_dim != B.dim or c.field != B.field:
        raise NotACocycle("cochain does not live on this algebra")
    # the conditions act coordinatewise, so the scalar space suffices
    Z = cocycle_space(B, 1)
    if any(c.component(a).vector() not in Z for a in range(c.coeff_dim)):
        raise NotACocycle("cochain does not satisfy the cocycle conditions")


def extension_from_cocycle(B: DiasAlgebra, c: CocyclePair) -> ExtensionRecord:
    """``E = B ⊕ F^m`` with ``x_i * x_j = x_i *_B x_j + f_*(x_i, x_j)``."""
    _require_cocycle(B, c)
    n, m, f = B.dim, c.coeff_dim, B.field
    tables = []
    for side in SIDES:
        t: Dict[Tuple[int, int], Vector] = {}
        for i in range(n):
            for j in range(n):
                v = dict(B.product(side, i, j))
                for a, x in c.value(side, i, j).items():
                    v[n + a] = x
                if v:
                    t[(i, j)] = v
        tables.append(t)
    labels = None
    if B.labels is not None:
        labels = list(B.labels) + [f"m{a}" for a in range(m)]
    E = DiasAlgebra(f, n + m, tables[0], tables[1], labels)
    K = Subspace(f, n + m, ({n + a: f.one} for a in range(m)))
    P, S = quotient_maps(K)
    central = subspace_contains(center(E), K)
    stem = central and subspace_contains(derived_subalgebra(E), K)
    cover = stem and m == h2(B).dim_h2
    return ExtensionRecord(E, K, P, S, central, stem, cover)


def extensions_equivalent(B: DiasAlgebra, c1: CocyclePair, c2: CocyclePair) -> bool:
    """True iff the two cocycles differ by a coboundary."""
    _require_cocycle(B, c1)
    _require_cocycle(B, c2)
    if c1.coeff_dim != c2.coeff_dim:
        return False
    f = B.field
    Bd = coboundary_space(B, 1)
    for a in range(c1.coeff_dim):
        v = c1.component(a).vector()
        axpy(f, v, f.neg(f.one), c2.component(a).vector())
        if v not in Bd:
            return False
    return True


def multiplier(L: DiasAlgebra) -> Tuple[int, CohomologySpace]:
    """``dim M(L)`` computed as ``dim H^2(L, F)``."""
    H = h2(L, 1)
    return H.dim_h2, H


def stacked_cocycle(L: DiasAlgebra, H: CohomologySpace) -> CocyclePair:
    """The ``F^d``-valued cocycle whose ``k``-th component is ``reps[k]``."""
    n, d, f = L.dim, H.dim_h2, L.field
    sides = []
    for side in SIDES:
        rows = [{} for _ in range(n * n)]
        for k, rep in enumerate(H.reps):
            for ij, r in enumerate(rep.sides[side].rows):
                x = r.get(0)
                if x:
                    rows[ij][k] = x
        sides.append(Matrix._trusted(f, n * n, d, rows))
    return CocyclePair(f, n, d, sides[0], sides[1])


def defining_pair_report(L: DiasAlgebra, rec: ExtensionRecord) -> DefiningPairReport:
    K, M = rec.total, rec.kernel
    Q = quotient_algebra(K, M).algebra
    n = L.dim
    return DefiningPairReport(
        quotient_matches=(Q.dim == L.dim and Q.products == L.products),
        kernel_central=subspace_contains(center(K), M),
        kernel_in_derived=subspace_contains(derived_subalgebra(K), M),
        dimension_bound=K.dim <= n * (2 * n + 1),
        dim_total=K.dim,
        dim_kernel=M.dim,
        bound=n * (2 * n + 1),
    )


@lru_cache(maxsize=None)
def construct_cover(L: DiasAlgebra, reverse: bool = False) -> Tuple[ExtensionRecord, DefiningPairReport]:
    """A cover of ``L`` built from the ``H^2(L, F)`` representatives.

    ``reverse`` switches to the representatives chosen in reversed
    coordinate order, which yields a second stem extension."""
    H = h2(L, 1, reverse)
    rec = extension_from_cocycle(L, stacked_cocycle(L, H))
    report = defining_pair_report(L, rec)
    if not report.ok or not rec.cover:
        raise CoverCertificationFailed(report)
    return rec, report


def projected_center(rec: ExtensionRecord) -> Subspace:
    return apply_to_subspace(rec.projection, center(rec.total))


def z_star(L: DiasAlgebra) -> Subspace:
    """Image of the center of a cover under its projection to ``L``."""
    rec, _ = construct_cover(L)
    return projected_center(rec)


def is_unicentral(L: DiasAlgebra) -> bool:
    return z_star(L) == center(L)


@dataclass
class Theorem49Report:
    delta_trivial: bool
    inf2_surjective: bool
    multiplier_identity: bool
    contained_in_zstar: bool
    dims: Dict[str, int] = dc_field(default_factory=dict)

    def conditions(self) -> Dict[str, bool]:
        return {
            "delta_trivial": self.delta_trivial,
            "inf2_surjective": self.inf2_surjective,
            "multiplier_identity": self.multiplier_identity,
            "contained_in_zstar": self.contained_in_zstar,
        }

    @property
    def agree(self) -> bool:
        return len(set(self.conditions().values())) == 1


def theorem49_report(L: DiasAlgebra, Z: Subspace) -> Theorem49Report:
    """Four conditions on a central ideal ``Z`` computed along separate routes:
    the delta matrix, the rank of the second inflation, a dimension count,
    and the center of a cover."""
    if not is_central_ideal(L, Z):
        raise NotCentralIdeal("subspace is not a central ideal")
    dm = delta_map(L, Z)
    m_inf2 = inf2(L, Z)
    dim_ML = h2(L, 1).dim_h2
    Q = quotient_algebra(L, Z).algebra
    dim_MQ = h2(Q, 1).dim_h2
    meet = subspace_intersect(derived_subalgebra(L), Z).dim
    zs = z_star(L)
    return Theorem49Report(
        delta_trivial=dm.is_zero(),
        inf2_surjective=m_inf2.rank() == dim_ML,
        multiplier_identity=dim_ML == dim_MQ - meet,
        contained_in_zstar=subspace_contains(zs, Z),
        dims={"multiplier": dim_ML, "multiplier_quotient": dim_MQ,
              "derived_cap_ideal": meet, "z_star": zs.dim, "ideal": Z.dim},
    )


def verify_stallings(L: DiasAlgebra, Z: Subspace) -> SequenceReport:
    """Exactness of ``M(L/Z) -> Z -> L/L' -> L/(Z+L') -> 0``: the tail by
    explicit maps, the head through the transgression rank."""
    if not is_central_ideal(L, Z):
        raise NotCentralIdeal("subspace is not a central ideal")
    f = L.field
    D = derived_subalgebra(L)
    ZD = subspace_sum(Z, D)
    meet = subspace_intersect(Z, D)
    P_ab, S_ab = quotient_maps(D)
    P_q, _ = quotient_maps(ZD)
    zs = Z.vectors()
    z_to_ab = Matrix.from_columns(f, P_ab.nrows, [P_ab.apply(z) for z in zs])
    ab_to_q = Matrix.from_columns(f, P_q.nrows, [P_q.apply(S_ab.column(a)) for a in range(S_ab.ncols)])
    m_tra = tra(L, Z)
    m_inf2 = inf2(L, Z)

    rep = SequenceReport()
    rep.add_map("z_to_abelianization", z_to_ab)
    rep.add_map("abelianization_to_quotient", ab_to_q)
    rep.add_map("tra", m_tra)
    rep.add_map("inf2", m_inf2)
    ker = kernel(z_to_ab)
    ker_in_L = Subspace(f, L.dim, (Z.from_coordinates([v.get(k, f.zero) for k in range(Z.dim)])
                                   for v in ker.vectors()))
    dim_h2_q = m_tra.nrows
    rep.dims.update(ideal=Z.dim, derived=D.dim, derived_cap_ideal=meet.dim,
                    abelianization=P_ab.nrows, quotient=P_q.nrows, h2_quotient=dim_h2_q)
    rep.verdicts["kernel_is_ideal_cap_derived"] = ker_in_L == meet
    rep.verdicts["image_is_sum_mod_derived"] = image(z_to_ab) == apply_to_subspace(P_ab, ZD)
    rep.verdicts["exact_at_abelianization"] = kernel(ab_to_q) == image(z_to_ab)
    rep.verdicts["onto_final_quotient"] = ab_to_q.rank() == P_q.nrows
    rep.verdicts["head_image_is_ideal_cap_derived"] = (
        rep.maps["tra"].rank == meet.dim == rep.maps["z_to_abelianization"].kernel_dim)
    rep.verdicts["exact_at_multiplier_quotient"] = (
        rep.maps["inf2"].rank == dim_h2_q - rep.maps["tra"].rank)
    return rep


@dataclass
class StemCenterReport:
    first: Subspace
    second: Subspace
    center: Subspace
    unicentral: bool
    distinct_extensions: bool

    @property
    def invariant(self) -> bool:
        return self.first == self.second

    @property
    def onto_center(self) -> Optional[bool]:
        if not self.unicentral:
            return None
        return self.first == self.center and self.second == self.center

    @property
    def ok(self) -> bool:
        return self.invariant and self.onto_center is not False


def stem_center_projection(L: DiasAlgebra) -> StemCenterReport:
    """Compare the projected centers of two covers built from different
    representative bases."""
    rec1, _ = construct_cover(L)
    rec2, _ = construct_cover(L, reverse=True)
    first, second = projected_center(rec1), projected_center(rec2)
    Z = center(L)
    return StemCenterReport(
        first=first, second=second, center=Z,
        unicentral=first == Z,
        distinct_extensions=rec1.total != rec2.total,
    )


def invariant_profile(L: DiasAlgebra) -> Dict[str, int]:
    """Isomorphism invariants used to tell algebras apart."""
    D, Z = derived_subalgebra(L), center(L)
    out = {
        "dim": L.dim,
        "dim_derived": D.dim,
        "dim_center": Z.dim,
        "dim_derived_cap_center": subspace_intersect(D, Z).dim,
        "dim_second_derived": box_product(L, D, D).dim,
        "dim_derived_times_all": box_product(L, D, L.full_space()).dim,
        "dim_multiplier": h2(L, 1).dim_h2,
        "dim_multiplier_mod_center": h2(quotient_algebra(L, Z).algebra, 1).dim_h2,
        "dim_multiplier_abelianization": h2(quotient_algebra(L, D).algebra, 1).dim_h2,
        "rank_left": Subspace(L.field, L.dim, L.left.values()).dim,
        "rank_right": Subspace(L.field, L.dim, L.right.values()).dim,
    }
    if validate_axioms(L).ok:
        out["dim_z_star"] = z_star(L).dim
    return out
