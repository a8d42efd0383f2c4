import pytest
from hypothesis import given
from hypothesis import strategies as st

from diasalg.algebra import (
    AlgebraMorphismCheck, DiasAlgebra, center, check_homomorphism, derived_subalgebra,
    quotient_algebra, validate_axioms,
)
from diasalg.catalog import (
    NotAssociative, abelian, corpus, corpus_pairs, example3_cover, find_entry, from_associative,
    mutate, random_two_step, strict_upper_triangular_2, two_step_isomorphism,
)
from diasalg.kernel import GF, QQ, Subspace, subspace_contains


def test_abelian_family():
    assert abelian(0).dim == 0
    assert abelian(1).dim == 1 and abelian(1).is_abelian()
    with pytest.raises(ValueError):
        abelian(-1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_example_three_family(n):
    K = example3_cover(n)
    assert K.dim == n + 2 * n * n
    D, Z = derived_subalgebra(K), center(K)
    M = Subspace(QQ, K.dim, [{k: QQ(1)} for k in range(n, K.dim)])
    assert D == Z == M and M.dim == 2 * n * n
    assert quotient_algebra(K, M).algebra.products == abelian(n).products


def test_from_associative_checks_associativity():
    bad = [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]  # x0 x0 = x1, x1 x0 = x0: (x0 x0) x0 != x0 (x0 x0)
    with pytest.raises(NotAssociative):
        from_associative(bad)
    assert strict_upper_triangular_2().is_abelian()


def test_random_two_step_edge_cases():
    assert random_two_step(3, 0, QQ, 5).is_abelian()
    assert random_two_step(0, 3, QQ, 5).is_abelian()
    assert random_two_step(2, 2, GF(7), 9) == random_two_step(2, 2, GF(7), 9)


@given(st.sampled_from([QQ, GF(2), GF(7)]), st.integers(0, 4), st.integers(0, 4), st.integers(0, 2 ** 31 - 1))
def test_random_two_step_properties(field, n, m, seed):
    L = random_two_step(n, m, field, seed)
    assert L.dim == n + m
    assert validate_axioms(L).ok
    M = Subspace(field, L.dim, [{k: field.one} for k in range(n, n + m)])
    assert subspace_contains(M, derived_subalgebra(L))
    assert subspace_contains(center(L), M)


@pytest.mark.parametrize("field", [QQ, GF(7), GF(2)], ids=str)
def test_corpus_contents(field):
    entries = corpus(field)
    ids = [e.id for e in entries]
    assert len(entries) >= 30 and len(set(ids)) == len(ids)
    for want in ["abelian_0", "abelian_5", "example3_cover_1", "example3_cover_3", "dual_numbers",
                 "truncated_poly_3", "diagonal_2", "strict_upper_2"]:
        assert want in ids
    assert sum(i.startswith("random_two_step") for i in ids) == 20
    for e in entries:
        assert validate_axioms(e.algebra).ok, e.id
        for key, k in e.known_invariants.items():
            assert k.provenance in ("published", "construction", "computed")
            L = e.algebra
            actual = {"dim": L.dim, "dim_derived": derived_subalgebra(L).dim,
                      "dim_center": center(L).dim}.get(key)
            if actual is not None:
                assert actual == k.value, (e.id, key)
    assert len(corpus_pairs(field)) >= 30


def test_corpus_has_intermediate_ideals():
    pairs = corpus_pairs(QQ)
    assert any(name == "center_first" for _, name, _ in pairs)


def test_find_entry():
    assert find_entry("abelian_2").algebra.dim == 2
    with pytest.raises(KeyError):
        find_entry("nope")


def test_mutation_is_deterministic_and_single_slot():
    L = example3_cover(2)
    a, b = mutate(L, 11), mutate(L, 11)
    assert a == b
    diff = 0
    for side in range(2):
        for i in range(L.dim):
            for j in range(L.dim):
                for k in range(L.dim):
                    diff += L.coefficient(side, i, j, k) != a.algebra.coefficient(side, i, j, k)
    assert diff == 1


def test_two_step_isomorphism():
    L = example3_cover(1)
    twisted = DiasAlgebra(QQ, 3, {(0, 0): {1: QQ(2), 2: QQ(1)}}, {(0, 0): {1: QQ(1), 2: QQ(-1)}})
    phi = two_step_isomorphism(L, twisted, 1)
    assert phi is not None and phi.rank() == 3
    assert check_homomorphism(AlgebraMorphismCheck(L, twisted, phi))
    collapsed = DiasAlgebra(QQ, 3, {(0, 0): {1: QQ(1)}}, {(0, 0): {1: QQ(1)}})
    assert validate_axioms(collapsed).ok
    assert two_step_isomorphism(L, collapsed, 1) is None
    assert two_step_isomorphism(L, abelian(3), 1) is None
