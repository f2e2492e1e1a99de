import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfhom.zlattice import (
    LatticeError,
    as_int_matrix,
    complete_to_unimodular,
    det_int,
    identity,
    in_span,
    int_inverse,
    is_partial_basis,
    matmul,
    smith_normal_form,
    subgroup_index,
)

# declared coordinate rows used across the genus-2 and genus-4 catalog surfaces
ALPHA = (1, 0, 0, 0)
BETA = (0, 1, 0, 0)
GAMMA = (0, -1, 0, -1)
DELTA_G = (-1, 0, 2, 1)
DELTA_H = (-1, 1, 2, 1)

U = {
    1: (1, 0, 0, 0, 0, 0, 0, 0),
    2: (0, -1, 0, -1, 0, 0, 0, 0),
    3: (-1, 0, 2, 1, 1, 0, 0, 1),
    4: (0, 0, 0, 0, 1, 0, 0, 0),
    5: (0, 0, 0, 0, 0, 1, 0, 0),
    6: (0, 0, 0, 0, 0, 0, 1, 0),
    7: (0, 0, 0, 0, 0, 0, 0, 1),
    8: (0, 1, 0, 0, 0, 0, 0, 0),
    9: (0, -1, -1, 0, 0, -1, 1, 0),
    10: (0, 0, 1, 1, 0, 0, 0, 1),
}


def rows(*ks):
    return tuple(U[k] for k in ks)


# ---------------------------------------------------------------------------
# independent oracles

def det_laplace(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        if A[0][j]:
            minor = tuple(r[:j] + r[j + 1:] for r in A[1:])
            total += (-1) ** j * A[0][j] * det_laplace(minor)
    return total


def brute_force_in_span(M, v, bound=3):
    """Exhaustive small-coefficient search for v in the Z-row-span of M."""
    cols = len(v)
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(M)):
        s = tuple(sum(c * row[j] for c, row in zip(coeffs, M)) for j in range(cols))
        if s == v:
            return True
    return False


def mod2_rank(M):
    rows_ = [[x & 1 for x in r] for r in M]
    rank = 0
    for j in range(len(M[0])):
        piv = next((i for i in range(rank, len(rows_)) if rows_[i][j]), None)
        if piv is None:
            continue
        rows_[rank], rows_[piv] = rows_[piv], rows_[rank]
        for i in range(len(rows_)):
            if i != rank and rows_[i][j]:
                rows_[i] = [a ^ b for a, b in zip(rows_[i], rows_[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# smith normal form

def test_snf_identity():
    snf = smith_normal_form(identity(4))
    assert snf.invariant_factors == (1, 1, 1, 1)


def test_snf_genus2_curves():
    snf = smith_normal_form((ALPHA, BETA, GAMMA, DELTA_G))
    assert snf.invariant_factors == (1, 1, 1, 2)
    snf = smith_normal_form((ALPHA, BETA, GAMMA, DELTA_H))
    assert snf.invariant_factors == (1, 1, 1, 2)


def test_snf_index3_combination():
    snf = smith_normal_form(rows(1, 2, 3, 4, 5, 6, 7, 9))
    prod = 1
    for d in snf.invariant_factors:
        prod *= d
    assert prod == 3


def test_snf_round_trip_deterministic():
    A = rows(1, 2, 3, 9, 10)
    s1 = smith_normal_form(A)
    s2 = smith_normal_form(A)
    assert s1 == s2
    assert matmul(matmul(s1.U, A), s1.V) == s1.D
    assert matmul(s1.V, s1.V_inv) == identity(8)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_properties(A):
    A = as_int_matrix(A)
    snf = smith_normal_form(A)
    assert matmul(matmul(snf.U, A), snf.V) == snf.D
    assert abs(det_int(snf.U)) == 1
    assert abs(det_int(snf.V)) == 1
    facs = snf.invariant_factors
    for a, b in zip(facs, facs[1:]):
        if b == 0:
            continue
        assert a != 0 and b % a == 0
    for i, row in enumerate(snf.D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0


# ---------------------------------------------------------------------------
# determinants

def test_det_table():
    assert det_int(rows(1, 2, 3, 4, 5, 6, 7, 8)) == 2
    assert det_int(rows(1, 2, 3, 4, 5, 6, 7, 9)) == -3
    assert det_int(rows(1, 2, 3, 4, 5, 6, 7, 10)) == -1
    assert det_int(rows(2, 3, 4, 5, 6, 7, 8, 9)) == 1
    assert det_int(identity(8)) == 1


def test_det_errors():
    with pytest.raises(LatticeError):
        det_int(((1, 2, 3), (4, 5, 6)))


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-6, 6), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )
)
def test_det_matches_laplace(A):
    A = as_int_matrix(A)
    assert det_int(A) == det_laplace(A)


# ---------------------------------------------------------------------------
# span membership

def test_in_span_delta_not_in_abc():
    M = (ALPHA, BETA, GAMMA)
    # oracle first: no small integer combination reaches delta
    assert not brute_force_in_span(M, DELTA_G)
    flag, wit = in_span(M, DELTA_G, 0)
    assert not flag and wit is None


def test_in_span_mod2_u8():
    M = rows(1, 2, 3, 4, 5, 6, 7)
    # oracle: the 8x8 with u8 appended drops rank mod 2
    assert mod2_rank(rows(1, 2, 3, 4, 5, 6, 7, 8)) == 7
    flag, wit = in_span(M, U[8], 2)
    assert flag
    s = tuple(sum(c * row[j] for c, row in zip(wit, M)) % 2 for j in range(8))
    assert s == tuple(x % 2 for x in U[8])


def test_in_span_zero_vector():
    flag, wit = in_span((ALPHA, BETA), (0, 0, 0, 0), 0)
    assert flag and all(x == 0 for x in wit)


def test_in_span_witness_exact():
    M = (ALPHA, BETA, GAMMA, DELTA_G)
    v = tuple(2 * a - 3 * b + c - d for a, b, c, d in zip(ALPHA, BETA, GAMMA, DELTA_G))
    flag, wit = in_span(M, v, 0)
    assert flag
    got = tuple(sum(c * row[j] for c, row in zip(wit, M)) for j in range(4))
    assert got == v


def test_in_span_dimension_mismatch():
    with pytest.raises(LatticeError):
        in_span((ALPHA,), (1, 2), 0)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=3),
    st.lists(st.integers(-3, 3), min_size=1, max_size=3),
)
def test_z_span_implies_p_span(M, coeffs):
    M = as_int_matrix(M)
    coeffs = coeffs[: len(M)] + [0] * (len(M) - len(coeffs))
    v = tuple(sum(c * row[j] for c, row in zip(coeffs, M)) for j in range(3))
    assert in_span(M, v, 0)[0]
    for p in (2, 3, 5):
        assert in_span(M, v, p)[0]


# ---------------------------------------------------------------------------
# partial bases and indices

def test_partial_basis_examples():
    assert is_partial_basis(rows(1, 2, 3, 4, 5, 6, 7, 10), 0)
    assert not is_partial_basis(rows(1, 2, 3, 4, 5, 6, 7, 8), 0)
    assert not is_partial_basis(rows(1, 2, 3, 4, 5, 6, 7, 8), 2)
    assert is_partial_basis((), 0)
    assert is_partial_basis(rows(1, 2, 3, 4, 5, 6, 7), 0)


def test_subgroup_index_examples():
    assert subgroup_index((ALPHA, BETA, GAMMA, DELTA_H)) == 2
    assert subgroup_index(rows(2, 3, 4, 5, 6, 7, 8, 9)) == 1
    assert subgroup_index(((1, 0, 0, 0),)) is None


def test_complete_to_unimodular():
    M = rows(1, 2, 3, 4, 5, 6, 7)
    added = complete_to_unimodular(M)
    assert len(added) == 1
    assert abs(det_int(M + added)) == 1
    # u10 also completes this partial basis
    assert abs(det_int(rows(1, 2, 3, 4, 5, 6, 7, 10))) == 1
    with pytest.raises(LatticeError):
        complete_to_unimodular(rows(1, 2, 3, 4, 5, 6, 7, 8))


def test_unimodular_row_subsets_are_partial_bases():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randrange(2, 5)
        # random unimodular matrix: product of elementary operations
        M = [list(r) for r in identity(n)]
        for _ in range(12):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                q = rng.randrange(-2, 3)
                M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        M = as_int_matrix(M)
        assert abs(det_int(M)) == 1
        k = rng.randrange(n + 1)
        subset = tuple(M[i] for i in sorted(rng.sample(range(n), k)))
        assert is_partial_basis(subset, 0)
        assert subgroup_index(M) == 1


def test_int_inverse():
    M = rows(2, 3, 4, 5, 6, 7, 8, 9)
    Minv = int_inverse(M)
    assert matmul(M, Minv) == identity(8)
    with pytest.raises(LatticeError):
        int_inverse((ALPHA, BETA, GAMMA, DELTA_G))


def test_complete_empty_with_ambient():
    added = complete_to_unimodular((), ambient_cols=4)
    assert abs(det_int(added)) == 1
    with pytest.raises(LatticeError):
        complete_to_unimodular(())
