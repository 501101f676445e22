from fractions import Fraction

import flint
import pytest
from hypothesis import given, settings, strategies as st

from toricinterp.errors import ConfigurationError, DomainError
from toricinterp.exact import PRIMES
from toricinterp.lattice import AffineUnimodularMap, SupportSet, apply_map, support_from_wpp
from toricinterp.linalg import (
    augmented_rank_test,
    b_matrix_mod,
    build_A,
    build_B,
    deriv_orders,
    exact_rank,
    left_kernel_exact,
    linear_system_empty,
    mat_vec,
    rank,
    right_kernel_exact,
    separating_polynomial,
    solve_exact,
    vec_mat,
)

UNIT = SupportSet([(0, 0), (0, 1), (1, 0)])

supports = st.lists(
    st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=12
).map(SupportSet)
small_matrices = st.integers(1, 6).flatmap(
    lambda nc: st.lists(st.lists(st.integers(-5, 5), min_size=nc, max_size=nc), min_size=1, max_size=6)
)


def test_deriv_orders():
    assert deriv_orders(1) == ((0, 0),)
    assert deriv_orders(2) == ((0, 0), (0, 1), (1, 0))
    assert len(deriv_orders(3)) == 6 and deriv_orders(3)[-1] == (2, 0)
    with pytest.raises(DomainError):
        deriv_orders(0)


def test_build_A_examples():
    assert build_A(UNIT, 2).tolist() == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]
    assert build_A(SupportSet([(2, 3)]), 3).tolist() == [[1, 3, 6, 2, 6, 2]]
    row = build_A(SupportSet([(-1, 5)]), 2).tolist()[0]
    assert row[deriv_orders(2).index((1, 0))] == -1


def test_build_B_examples():
    assert build_B(UNIT, 2).tolist() == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]
    assert build_B(SupportSet([(2, 3)]), 3).tolist() == [[1, 3, 9, 2, 6, 4]]
    assert build_B(SupportSet([(0, 0)]), 4).tolist() == [[1] + [0] * 9]


def test_empty_support_rejected():
    with pytest.raises(DomainError):
        build_B(SupportSet([]), 2)


@given(supports, st.integers(1, 4))
def test_b_mod_p_matches_reduction(sup, m):
    p = PRIMES[3]
    assert b_matrix_mod(sup, m, p).tolist() == [[v % p for v in row] for row in build_B(sup, m).tolist()]


def test_rank_examples():
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert rank(eye).rank == rank(eye, mode="exact").rank == 3
    assert rank([[2]], prime=2, allow_unlisted_prime=True).rank == 0
    assert rank([[2]], mode="exact").rank == 1
    cert = rank(build_B(UNIT, 2))
    assert cert.rank == 3 and cert.full_row_rank


def test_unlisted_prime_is_configuration_error():
    with pytest.raises(ConfigurationError):
        rank([[2]], prime=2)


def test_certificate_serialization():
    cert = rank([[1, 1], [1, 1]], mode="exact")
    d = cert.to_dict()
    assert d["method"] == "exact" and d["rank"] == 1 and not d["full_row_rank"]
    assert d["witness"] == ["1", "-1"]
    d = rank(build_B(UNIT, 2)).to_dict()
    assert d["prime"] == str(PRIMES[0]) and d["cols"] == 3 and d["m"] == 2


def test_kernel_examples():
    assert left_kernel_exact([[1, 0], [0, 1]]) == []
    assert left_kernel_exact([[1, 1], [1, 1]]) == [(1, -1)]
    B = build_B(support_from_wpp(1, 1, 2, 1), 1).tolist()
    assert len(left_kernel_exact(B)) == len(B) - 1


@given(small_matrices)
def test_exact_rank_matches_flint(M):
    assert exact_rank(M) == flint.fmpz_mat(M).rank()


@given(small_matrices)
def test_kernels_are_sound_and_complete(M):
    r = exact_rank(M)
    right, left = right_kernel_exact(M), left_kernel_exact(M)
    assert len(right) == len(M[0]) - r
    assert len(left) == len(M) - r
    for v in right:
        assert not any(mat_vec(M, v))
    for y in left:
        assert not any(vec_mat(y, M))


@given(small_matrices, st.data())
def test_solve_exact(M, data):
    rhs = data.draw(st.lists(st.integers(-5, 5), min_size=len(M), max_size=len(M)))
    x = solve_exact(M, rhs)
    aug = [row + [b] for row, b in zip(M, rhs)]
    if x is None:
        assert exact_rank(aug) > exact_rank(M)
    else:
        assert mat_vec(M, x) == rhs


@given(small_matrices)
def test_linear_algebra_lemma(M):
    kernel = left_kernel_exact(M)
    for idx in range(len(M)):
        assert all(y[idx] == 0 for y in kernel) == augmented_rank_test(M, idx)


@given(supports, st.integers(1, 4))
def test_lemma_ab(sup, m):
    A, B = build_A(sup, m).tolist(), build_B(sup, m).tolist()
    assert exact_rank(A) == exact_rank(B)
    for idx in range(len(sup)):
        assert augmented_rank_test(A, idx) == augmented_rank_test(B, idx)


def test_linear_system_empty_examples():
    res = linear_system_empty(UNIT, 2)
    assert res.empty and res.certificate.method == "modular"
    res = linear_system_empty(UNIT, 1)
    assert not res.empty
    w = res.certificate.witness
    assert not any(vec_mat(w, build_B(UNIT, 1).tolist()))


@given(supports, st.integers(1, 3))
def test_emptiness_monotone_in_m(sup, m):
    if linear_system_empty(sup, m).empty:
        assert linear_system_empty(sup, m + 1).empty


@given(supports, st.integers(1, 4))
def test_nonempty_verdict_carries_exact_witness(sup, m):
    res = linear_system_empty(sup, m)
    assert res.empty == (exact_rank(build_B(sup, m).tolist()) == len(sup))
    if not res.empty:
        assert res.certificate.method == "exact"
        assert any(res.certificate.witness)
        assert not any(vec_mat(res.certificate.witness, build_B(sup, m).tolist()))


def test_separating_polynomial_examples():
    c = separating_polynomial(UNIT, 2, UNIT.index((0, 0)))
    assert c == (1, -1, -1)  # 1 - y - x
    assert separating_polynomial(UNIT, 1, 0) is None
    with pytest.raises(DomainError):
        separating_polynomial(UNIT, 2, 3)


@given(supports, st.integers(1, 4), st.data())
def test_separation_soundness(sup, m, data):
    idx = data.draw(st.integers(0, len(sup) - 1))
    c = separating_polynomial(sup, m, idx)
    B = build_B(sup, m).tolist()
    assert (c is not None) == augmented_rank_test(B, idx)
    if c is not None:
        assert mat_vec(B, c) == [1 if i == idx else 0 for i in range(len(sup))]


@given(supports, st.integers(1, 4))
def test_all_points_separable_iff_empty(sup, m):
    every = all(separating_polynomial(sup, m, i) is not None for i in range(len(sup)))
    assert every == linear_system_empty(sup, m).empty


@settings(max_examples=50)
@given(supports, st.integers(1, 4), st.integers(-3, 3), st.integers(-3, 3), st.data())
def test_rank_invariant_under_maps(sup, m, a, dx, data):
    swap = data.draw(st.booleans())
    mp = AffineUnimodularMap(((0, 1), (1, 0)) if swap else ((1, 0), (0, 1)))
    mp = mp.then(AffineUnimodularMap.shear(a)).then(AffineUnimodularMap.translate(dx, -dx))
    image = apply_map(mp, sup)
    assert exact_rank(build_A(sup, m).tolist()) == exact_rank(build_A(image, m).tolist())
    idx = data.draw(st.integers(0, len(sup) - 1))
    moved_idx = image.index(mp(sup[idx]))
    assert (separating_polynomial(sup, m, idx) is None) == (separating_polynomial(image, m, moved_idx) is None)


def test_large_square_solve_uses_verified_route():
    # u + v <= 9 is unisolvent for degree <= 9, so B is square and invertible
    sup = support_from_wpp(1, 1, 1, 9)
    B = build_B(sup, 10).tolist()
    assert len(B) == len(B[0]) == 55
    for idx in (0, 27, 54):
        c = separating_polynomial(sup, 10, idx)
        assert all(isinstance(v, (int, Fraction)) for v in c)
        assert mat_vec(B, c) == [1 if i == idx else 0 for i in range(55)]
