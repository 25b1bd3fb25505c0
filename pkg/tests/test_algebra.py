import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import cd_oracle
from cdloops import (
    AlgebraElement,
    alg_multiply,
    build_cd_loop,
    check_algebra_identity,
    conjugate,
    find_zero_divisor,
    norm_sq,
    subalgebra_basis,
)
from cdloops.algebra import basis, flexible_certificate, power_associative_certificate, two_term_grid
from cdloops.subloops import subloop_from_support

coeff = st.integers(-5, 5)


def vectors(n):
    return st.lists(coeff, min_size=2**n, max_size=2**n)


@st.composite
def level_and_vectors(draw, k=2):
    n = draw(st.integers(0, 5))
    return n, [draw(vectors(n)) for _ in range(k)]


@settings(max_examples=60, deadline=None)
@given(level_and_vectors(2))
def test_product_matches_recursive_oracle(data):
    _, (u, v) = data
    assert alg_multiply(AlgebraElement(u), AlgebraElement(v)).tolist() == cd_oracle.mul(u, v)


@settings(max_examples=60, deadline=None)
@given(level_and_vectors(3), coeff)
def test_bilinearity(data, k):
    _, (u, v, w) = data
    U, V, W = map(AlgebraElement, (u, v, w))
    assert (U + k * V) * W == U * W + k * (V * W)
    assert W * (U + k * V) == W * U + k * (W * V)


@settings(max_examples=60, deadline=None)
@given(level_and_vectors(1))
def test_times_conjugate_is_norm(data):
    n, (u,) = data
    U = AlgebraElement(u)
    assert U * conjugate(U) == norm_sq(U) * basis(0, 2**n)
    assert conjugate(U) * U == norm_sq(U) * basis(0, 2**n)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3).flatmap(lambda n: st.tuples(vectors(n), vectors(n))))
def test_norm_multiplicative_up_to_octonions(pair):
    U, V = map(AlgebraElement, pair)
    assert norm_sq(U * V) == norm_sq(U) * norm_sq(V)


def test_loop_table_agrees_with_product():
    L = build_cd_loop(3)
    for i in range(8):
        for j in range(8):
            code = int(L.table[i, j])
            want = basis(code % 8, 8, 1 if code < 8 else -1)
            assert alg_multiply(basis(i, 8), basis(j, 8), L) == want


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        alg_multiply(basis(0, 4), basis(0, 8))


def test_zero_divisors():
    assert find_zero_divisor(build_cd_loop(3), range(8)) is None
    u, v = find_zero_divisor(build_cd_loop(4), range(16))
    assert norm_sq(u) == 2 and norm_sq(v) == 2
    assert cd_oracle.mul(u.tolist(), v.tolist()) == [0] * 16


def test_grid_shape():
    g = two_term_grid(4)
    assert g.shape == (2 * 6 + 4, 4)
    assert sorted(np.abs(g).sum(axis=1).tolist()) == [1] * 4 + [2] * 12


@pytest.mark.parametrize("n", range(6))
def test_structure_certificates(n):
    assert flexible_certificate(2**n) is None
    assert power_associative_certificate(2**n) is None


@pytest.mark.parametrize("n", range(1, 4))
def test_division_algebras_are_alternative(n):
    L = build_cd_loop(n)
    for name in ("FLEX", "ALT_left", "ALT_right", "PAP"):
        assert check_algebra_identity(L, name).holds


def test_sedenions_not_alternative():
    L = build_cd_loop(4)
    res = check_algebra_identity(L, "ALT_left")
    assert not res.holds
    u, v = res.witness
    assert u * (u * v) != (u * u) * v


def test_subalgebra_basis():
    L = build_cd_loop(4)
    assert subalgebra_basis(subloop_from_support(L, [0, 1, 6, 7])) == (0, 1, 6, 7)
