import pytest
from hypothesis import given

from conftest import small_two_step
from diasalg.algebra import (
    AXIOMS, AlgebraMorphismCheck, DiasAlgebra, NotIdeal, box_product, center, check_homomorphism,
    derived_dimension_bound_holds, derived_subalgebra, direct_sum, is_central_ideal, is_ideal,
    quotient_algebra, validate_axioms,
)
from diasalg.catalog import abelian, corpus, diagonal, dual_numbers, example3_cover
from diasalg.kernel import GF, QQ, FieldMismatch, Matrix, ShapeError, Subspace, subspace_contains
from oracle import center_dim, derived_dim, identity_residuals

X, M, S = 0, 1, 2  # basis of example3_cover(1)


def span(L, *idx):
    return Subspace(L.field, L.dim, [{i: L.field.one} for i in idx])


def dense(L):
    p = L.field.p if L.field.is_prime else None
    return L.tensor(0), L.tensor(1), p


def test_constructor_accepts_dense_and_sparse():
    a = DiasAlgebra(QQ, 1, [[[1]]], [[[0]]])
    b = DiasAlgebra(QQ, 1, {(0, 0): {0: QQ(1)}}, {})
    assert a == b and hash(a) == hash(b)
    with pytest.raises(ShapeError):
        DiasAlgebra(QQ, 2, [[[1]]], None)


def test_abelian_is_valid():
    for n in range(4):
        assert validate_axioms(abelian(n)).ok


def test_example_three_is_valid():
    assert validate_axioms(example3_cover(3)).ok


def test_witness_for_broken_tensor():
    L = DiasAlgebra(QQ, 1, [[[1]]], [[[0]]])
    rep = validate_axioms(L)
    expected = {name: [r[:3] for r in v] for name, v in identity_residuals([[[1]]], [[[0]]]).items()}
    got = {name: [v.triple for v in vs] for name, vs in rep.by_axiom().items()}
    assert got == expected
    assert got["mixed_left"] == [(0, 0, 0)]
    assert not rep.ok and not bool(rep)


@given(small_two_step())
def test_two_step_valid_and_matches_oracle(L):
    left, right, p = dense(L)
    assert validate_axioms(L).ok
    assert not any(identity_residuals(left, right, p).values())
    assert center(L).dim == center_dim(left, right, p)
    assert derived_subalgebra(L).dim == derived_dim(left, right, p)


def test_box_product_examples():
    K = example3_cover(1)
    full = K.full_space()
    assert box_product(abelian(3), abelian(3).full_space(), abelian(3).full_space()).dim == 0
    assert box_product(K, full, full) == span(K, M, S)
    assert box_product(K, span(K, M), full).dim == 0


def test_derived_examples():
    assert derived_subalgebra(abelian(2)).dim == 0
    K = example3_cover(1)
    assert derived_subalgebra(K) == span(K, M, S)
    T = dual_numbers()
    assert derived_subalgebra(T) == T.full_space()


def test_center_examples():
    assert center(abelian(3)) == abelian(3).full_space()
    K = example3_cover(1)
    assert center(K) == span(K, M, S)
    assert center(dual_numbers()).dim == 0
    assert center(diagonal(2)).dim == 0


def test_ideal_examples():
    K = example3_cover(1)
    assert is_ideal(K, K.zero_space()) and is_central_ideal(K, K.zero_space())
    assert is_ideal(K, span(K, M, S)) and is_central_ideal(K, span(K, M, S))
    T = dual_numbers()
    assert not is_ideal(T, span(T, 0))
    assert is_ideal(T, span(T, 1)) and not is_central_ideal(T, span(T, 1))


def test_quotient_examples():
    K = example3_cover(1)
    q = quotient_algebra(K, K.zero_space())
    assert q.algebra.products == K.products
    assert q.projection == Matrix.identity(QQ, 3)
    assert quotient_algebra(K, span(K, M, S)).algebra.products == abelian(1).products
    T = quotient_algebra(dual_numbers(), span(dual_numbers(), 1)).algebra
    assert T.dim == 1
    assert T.product(0, 0, 0) == {0: QQ(1)} and T.product(1, 0, 0) == {0: QQ(1)}
    with pytest.raises(NotIdeal):
        quotient_algebra(dual_numbers(), span(dual_numbers(), 0))


def test_direct_sum_and_homomorphisms():
    s = direct_sum(abelian(1), abelian(2))
    assert s.dim == 3 and s.is_abelian()
    with pytest.raises(FieldMismatch):
        direct_sum(abelian(1), abelian(1, GF(7)))
    K = example3_cover(1)
    assert check_homomorphism(AlgebraMorphismCheck(K, K, Matrix.identity(QQ, 3)))
    q = quotient_algebra(K, span(K, M, S))
    assert check_homomorphism(AlgebraMorphismCheck(K, q.algebra, q.projection))
    # a linear map that is not multiplicative
    assert not check_homomorphism(AlgebraMorphismCheck(K, K, Matrix.from_dense(QQ, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])))


@pytest.mark.parametrize("field", [QQ, GF(7)], ids=str)
def test_structural_invariants_on_corpus(field):
    for e in corpus(field):
        L = e.algebra
        assert validate_axioms(L).ok, e.id
        Z, D = center(L), derived_subalgebra(L)
        assert is_ideal(L, Z) and is_ideal(L, D), e.id
        assert box_product(L, L.full_space(), Z).dim == 0
        assert box_product(L, Z, L.full_space()).dim == 0
        assert derived_dimension_bound_holds(L), e.id
        for name, I in e.central_ideals():
            q = quotient_algebra(L, I)
            assert validate_axioms(q.algebra).ok
            assert check_homomorphism(AlgebraMorphismCheck(L, q.algebra, q.projection))
            assert q.projection @ q.section == Matrix.identity(field, q.algebra.dim)
            assert subspace_contains(Z, I)


def test_axiom_names():
    assert AXIOMS == ("left_assoc", "right_assoc", "mixed_left", "mixed_middle", "mixed_right")
