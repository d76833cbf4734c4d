import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schubert_schemes import echelon as ech
from schubert_schemes.fields import make_field
from schubert_schemes.posets import grid_poset, is_antichain

from conftest import EX1_GENERATORS, EX1_MATRIX


def brute_column_space(F, A):
    """All vectors in the column span of A, by enumerating coefficient tuples (oracle)."""
    n, k = A.shape
    span = set()
    for coeffs in itertools.product(range(F.q), repeat=k):
        v = np.zeros(n, dtype=np.int64)
        for c, col in zip(coeffs, A.T):
            v = F.add(v, F.mul(c, col))
        span.add(tuple(int(x) for x in v))
    return frozenset(span)


def test_ex1_generators_reduce_to_displayed_matrix(gf11):
    assert np.array_equal(ech.rrcef(gf11, EX1_GENERATORS, n=7), EX1_MATRIX)


def test_ex1_is_rrcef_and_support(ex1_matrix):
    assert ech.is_rrcef(ex1_matrix)
    S = ech.support(ex1_matrix)
    # direct count of the displayed entries: 4 + 3 + 3 + 2 nonzeros in columns 1-4
    assert len(S) == 12
    assert {(1, 1), (7, 1), (2, 4)} <= S


def test_ex1_pivot_set(ex1_matrix):
    assert ech.pivot_set(ex1_matrix) == {(2, 4), (4, 3), (5, 2), (7, 1)}


@pytest.mark.parametrize(
    "M, expected",
    [
        (np.eye(4, dtype=int)[:, ::-1], True),
        (np.zeros((3, 3), dtype=int), True),
        (np.eye(3, dtype=int), False),  # last entries climb left to right
        (np.array([[0, 1], [0, 0]]), False),  # zero column left of nonzero one
        (np.array([[1, 0], [2, 0]]), False),  # last entry not 1
        (np.array([[1, 1], [1, 0]]), False),  # pivot row not cleared
    ],
)
def test_is_rrcef_cases(M, expected):
    assert ech.is_rrcef(M) is expected


def test_pivot_set_small_cases():
    assert ech.pivot_set(np.zeros((4, 4), dtype=int)) == frozenset()
    assert ech.pivot_set(ech.indicator(4, [(3, 2)])) == {(3, 2)}
    assert ech.support(np.eye(3, dtype=int)) == {(1, 1), (2, 2), (3, 3)}


@pytest.mark.parametrize("seed", range(20))
def test_pivot_mask_matches_brute_force_maximal_scan(seed):
    rng = np.random.default_rng(seed)
    nz = rng.random((5, 4)) < 0.3
    got = ech.support(ech.pivot_mask(nz))
    pts = [(i + 1, j + 1) for i, j in zip(*np.nonzero(nz))]
    expected = {p for p in pts if not any(o != p and o[0] >= p[0] and o[1] >= p[1] for o in pts)}
    assert got == expected
    assert is_antichain(got, grid_poset(5, 4))


def test_all_subspaces_n3_gf2_exhaustive():
    """Every 3x3 GF(2) matrix: rrcef is RRCEF, idempotent, span-preserving, class-constant."""
    F = make_field(2)
    by_span = {}
    for bits in range(2**9):
        A = np.array([(bits >> t) & 1 for t in range(9)], dtype=np.int64).reshape(3, 3)
        R = ech.rrcef(F, A)
        assert ech.is_rrcef(R)
        assert np.array_equal(ech.rrcef(F, R), R)
        span = brute_column_space(F, A)
        assert brute_column_space(F, R) == span
        by_span.setdefault(span, set()).add(R.tobytes())
    assert all(len(v) == 1 for v in by_span.values())
    # 1 + 7 + 7 + 1 subspaces of GF(2)^3
    assert len(by_span) == 16


def test_pivot_entries_are_one(ex1_matrix):
    for i, j in ech.pivot_set(ex1_matrix):
        assert ex1_matrix[i - 1, j - 1] == 1


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([3, 4, 5]), n=st.integers(2, 5), seed=st.integers(0, 2**31))
def test_random_generating_sets_of_one_subspace_agree(q, n, seed):
    F = make_field(q)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, q, size=(n, rng.integers(1, n + 1)))
    mixer = rng.integers(0, q, size=(A.shape[1], n + 1))
    B = np.concatenate([A, ech.matmul(F, A, mixer)], axis=1)[:, rng.permutation(A.shape[1] + n + 1)]
    RA, RB = ech.rrcef(F, A, n=n), ech.rrcef(F, B, n=n)
    assert np.array_equal(RA, RB)
    assert ech.is_rrcef(RA)
    assert ech.column_space_equal(F, A, RA)


def test_random_borel_properties():
    assert np.array_equal(ech.random_borel(1, make_field(2), 0), [[1]])
    F = make_field(5)
    G1, G2 = ech.random_borel(4, F, 1), ech.random_borel(4, F, 2)
    assert np.array_equal(G1, ech.random_borel(4, F, 1))
    for G in (G1, G2, ech.matmul(F, G1, G2)):
        assert ech.is_borel(F, G)
    assert np.array_equal(ech.matmul(F, G1, ech.inverse(F, G1)), np.eye(4))


def test_inverse_of_singular_raises():
    with pytest.raises(ValueError):
        ech.inverse(make_field(3), np.array([[1, 2], [2, 1]]))


def test_borel_act_hand_example():
    F = make_field(2)
    M = ech.rrcef(F, np.array([[1], [1]]))
    out = ech.borel_act(F, np.array([[1, 1], [0, 1]]), M)
    assert np.array_equal(out, [[0, 0], [1, 0]])
    assert ech.pivot_set(out) == ech.pivot_set(M) == {(2, 1)}


def test_borel_act_identity_and_orbit_oracle():
    """Orbit of a line in GF(3)^2 under all 12 Borel elements, enumerated directly."""
    F = make_field(3)
    M = np.array([[2, 0], [1, 0]])
    assert np.array_equal(ech.borel_act(F, np.eye(2, dtype=int), M), M)
    orbit = set()
    for a, b, c in itertools.product([1, 2], range(3), [1, 2]):
        orbit.add(ech.borel_act(F, np.array([[a, b], [0, c]]), M).tobytes())
    expected = {ech.rrcef(F, np.array([[t], [1]])).tobytes() for t in range(3)}
    assert orbit == expected


def test_borel_act_rejects_non_borel():
    F = make_field(2)
    with pytest.raises(ValueError):
        ech.borel_act(F, np.array([[1, 0], [1, 1]]), np.zeros((2, 2), dtype=int))


def test_borel_witness_on_ex1(gf11, ex1_matrix):
    G = ech.borel_witness(gf11, ex1_matrix)
    X = ech.indicator(7, ech.pivot_set(ex1_matrix))
    assert G[0, 1] == ex1_matrix[0, 3] == 3
    assert G[0, 3] == ex1_matrix[0, 2] == 1
    assert ech.is_borel(gf11, G) and np.all(np.diag(G) == 1)
    assert np.array_equal(ech.matmul(gf11, G, X), ex1_matrix)


def test_borel_witness_on_pivot_matrix_is_identity():
    X = ech.indicator(5, [(2, 3), (4, 2), (5, 1)])
    assert np.array_equal(ech.borel_witness(make_field(2), X), np.eye(5))


def test_borel_witness_rejects_non_echelon():
    with pytest.raises(ValueError):
        ech.borel_witness(make_field(2), np.eye(2, dtype=int))


def test_pair_witness_two_by_two_gf3():
    F = make_field(3)
    M = np.array([[1, 0], [1, 0]])
    N = np.array([[2, 0], [1, 0]])
    G = ech.pair_witness(F, M, N)
    assert np.array_equal(G, [[2, 2], [0, 1]])
    X = ech.indicator(2, {(2, 1), (1, 1)})
    Y = ech.indicator(2, {(2, 1)})
    assert ech.is_borel(F, G)
    assert np.array_equal(ech.matmul(F, G, X), M)
    assert np.array_equal(ech.matmul(F, G, Y), N)


def test_pair_witness_diagonal_case():
    F = make_field(5)
    M = np.array([[3, 0, 0], [0, 1, 0], [1, 0, 0]])
    G = ech.pair_witness(F, M, M)
    Y = ech.indicator(3, ech.pivot_set(M))
    assert np.array_equal(ech.matmul(F, G, Y), M)


def test_pair_witness_requires_equal_pivots():
    F = make_field(2)
    with pytest.raises(ValueError):
        ech.pair_witness(F, ech.indicator(2, [(2, 1)]), ech.indicator(2, [(1, 1)]))


def _cell_points(F, n, alpha, free):
    base = ech.indicator(n, alpha)
    for vals in itertools.product(range(F.q), repeat=len(free)):
        M = base.copy()
        for (i, j), v in zip(free, vals):
            M[i - 1, j - 1] = v
        yield M


@pytest.mark.parametrize(
    "q, n, alpha, free",
    [
        (2, 3, [(3, 1)], [(1, 1), (2, 1)]),
        (3, 3, [(3, 1)], [(1, 1), (2, 1)]),
        (2, 4, [(4, 1), (3, 2)], [(1, 1), (1, 2), (2, 1), (2, 2)]),
    ],
)
def test_pair_witness_exact_when_condition_holds(q, n, alpha, free):
    """N = G Y always; M = G X exactly on the pairs flagged by pair_witness_applies."""
    F = make_field(q)
    pts = list(_cell_points(F, n, alpha, free))
    Y = ech.indicator(n, alpha)
    for M, N in itertools.product(pts, repeat=2):
        G = ech.pair_witness(F, M, N)
        assert ech.is_borel(F, G)
        assert np.array_equal(ech.matmul(F, G, Y), N)
        X = ech.indicator(n, set(alpha) | ech.pivot_set(F.sub(M, N)))
        assert np.array_equal(ech.matmul(F, G, X), M) == ech.pair_witness_applies(F, M, N)


def test_pair_witness_fails_on_shared_column_difference():
    """Difference supported on {(1,1),(2,2)}: column 1 is nonzero but carries no pivot."""
    F = make_field(2)
    N = ech.indicator(4, [(4, 1), (3, 2)])
    M = N.copy()
    M[0, 0] = M[1, 1] = 1
    assert ech.pivot_set(F.sub(M, N)) == {(2, 2)}
    assert not ech.pair_witness_applies(F, M, N)
    G = ech.pair_witness(F, M, N)
    X = ech.indicator(4, {(4, 1), (3, 2), (2, 2)})
    assert not np.array_equal(ech.matmul(F, G, X), M)


def test_matrix_json_round_trip(ex1_matrix):
    assert np.array_equal(ech.from_json(ech.to_json(ex1_matrix)), ex1_matrix)
    with pytest.raises(ValueError):
        ech.from_json({"n": 3, "entries": [[1, 2], [3, 4]]})
