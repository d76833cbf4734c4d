import itertools

import numpy as np
import pytest

from schubert_schemes import echelon as ech
from schubert_schemes.fields import make_field
from schubert_schemes.posets import antichains, sorted_positions
from schubert_schemes.schubert import (
    all_cells,
    brute_force_orbitals,
    cell_scheme,
    enumerate_cell,
    make_cell,
    matrix_to_point,
    orbital_invariance_trial,
    point_index,
    point_to_matrix,
    random_points,
    relation_label,
    sampled_relation_labels,
    transitivity_witness,
)

from conftest import EX1_MATRIX, EX2_ALPHA


@pytest.fixture
def ex2_cell():
    return make_cell(7, 4, make_field(2), alpha=EX2_ALPHA)


def test_example_cell_descriptor(ex2_cell):
    assert ex2_cell.lam == (4, 3, 1)
    assert ex2_cell.dimension == 8
    assert ex2_cell.size == 256
    assert len(enumerate_cell(ex2_cell)) == 256
    assert make_cell(7, 4, make_field(2), lam=(4, 3, 1)) == ex2_cell


@pytest.mark.parametrize(
    "n, m, q, alpha, size",
    [(2, 1, 3, {(2, 1)}, 3), (3, 1, 2, {(3, 1)}, 4), (4, 2, 5, {(1, 2), (2, 1)}, 1)],
)
def test_cell_sizes_match_enumeration(n, m, q, alpha, size):
    cell = make_cell(n, m, make_field(q), alpha=alpha)
    pts = enumerate_cell(cell)
    assert cell.size == size == len(pts) == len({tuple(p) for p in pts})


@pytest.mark.parametrize("alpha, n, m", [({(1, 1), (2, 1)}, 3, 2), ({(1, 1)}, 1, 1), ({(2, 1)}, 3, 2)])
def test_make_cell_rejects_invalid_alpha(alpha, n, m):
    with pytest.raises(ValueError):
        make_cell(n, m, make_field(2), alpha=alpha)


def test_make_cell_needs_exactly_one_selector():
    with pytest.raises(ValueError):
        make_cell(3, 1, make_field(2))
    with pytest.raises(ValueError):
        make_cell(3, 1, make_field(2), alpha={(3, 1)}, lam=(1, 1))


def test_enumeration_bound():
    cell = make_cell(7, 4, make_field(2), alpha=EX2_ALPHA)
    with pytest.raises(ValueError):
        enumerate_cell(cell, bound=100)


def test_union_of_cells_counts_grassmannian_points():
    sizes = [c.size for c in all_cells(4, 2, make_field(3))]
    assert len(sizes) == 6
    assert sum(sizes) == (3**4 - 1) * (3**3 - 1) // ((3**2 - 1) * (3 - 1)) == 130


def test_cells_with_equal_shape_have_equal_sizes():
    F = make_field(3)
    for n in range(2, 6):
        for m in range(1, n):
            for c in all_cells(n, m, F):
                assert c.size == 3 ** sum(c.lam)


def test_zero_point_is_pivot_indicator(ex2_cell):
    X = point_to_matrix(ex2_cell, np.zeros(8, dtype=int))
    assert np.array_equal(X, ech.indicator(7, EX2_ALPHA))
    assert not matrix_to_point(ex2_cell, X).any()


def test_ex1_matrix_to_point():
    cell = make_cell(7, 4, make_field(11), alpha=EX2_ALPHA)
    coords = matrix_to_point(cell, EX1_MATRIX)
    got = dict(zip(cell.free, coords.tolist()))
    assert got == {
        (1, 1): 4, (1, 2): 7, (1, 3): 1, (1, 4): 3,
        (3, 1): 3, (3, 2): 4, (3, 3): 5, (6, 1): 2,
    }
    assert np.array_equal(point_to_matrix(cell, coords), EX1_MATRIX)


def test_matrix_to_point_rejects_other_cells(ex2_cell):
    with pytest.raises(ValueError):
        matrix_to_point(ex2_cell, ech.indicator(7, [(7, 1), (6, 2), (5, 3), (4, 4)]))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_points_round_trip_and_are_in_cell(q):
    cell = make_cell(7, 4, make_field(q), alpha=EX2_ALPHA)
    for x in random_points(cell, 1000, q):
        M = point_to_matrix(cell, x)
        assert np.array_equal(matrix_to_point(cell, M), x)
    for x in random_points(cell, 50, q + 10):
        M = point_to_matrix(cell, x)
        assert ech.is_rrcef(M) and ech.pivot_set(M) == EX2_ALPHA


def test_point_index_follows_enumeration_order():
    cell = make_cell(4, 2, make_field(3), lam=(2, 1))
    for t, x in enumerate(enumerate_cell(cell)):
        assert point_index(cell, x) == t


def test_relation_label_examples(ex2_cell):
    zero = np.zeros(8, dtype=int)
    x = zero.copy()
    x[ex2_cell.free_index[(6, 1)]] = 1
    assert relation_label(ex2_cell, zero, zero) == ()
    assert relation_label(ex2_cell, x, zero) == ((6, 1),)


def test_every_antichain_label_is_realised(ex2_cell):
    """Ones on alpha and beta against ones on alpha give label beta."""
    zero = np.zeros(8, dtype=int)
    for beta in antichains(ex2_cell.poset):
        x = zero.copy()
        for p in beta:
            x[ex2_cell.free_index[p]] = 1
        assert relation_label(ex2_cell, x, zero) == sorted_positions(beta)


def _label_oracle(cell, pts):
    """Label matrix straight from pivot_set of each materialised difference."""
    F = cell.field
    mats = [point_to_matrix(cell, p) for p in pts]
    index = {lab: k for k, lab in enumerate(cell.relation_labels())}
    return np.array([[index[sorted_positions(ech.pivot_set(F.sub(A, B)))] for B in mats] for A in mats])


@pytest.mark.parametrize("n, m, lam, q", [(4, 2, (2, 2), 2), (4, 2, (2, 1), 3), (5, 2, (2, 2, 1), 2), (3, 1, (1, 1), 4)])
def test_cell_scheme_matches_pairwise_oracle(n, m, lam, q):
    cell = make_cell(n, m, make_field(q), lam=lam)
    S = cell_scheme(cell)
    assert np.array_equal(S.matrix, _label_oracle(cell, enumerate_cell(cell)))


def test_labels_symmetric_and_diagonal_exact():
    for q in (2, 3):
        for cell in all_cells(4, 2, make_field(q)):
            S = cell_scheme(cell)
            assert np.array_equal(S.matrix, S.matrix.T)
            assert np.array_equal(S.matrix == 0, np.eye(cell.size, dtype=bool))
            assert set(np.unique(S.matrix)) == set(range(S.rank))


def test_example_cell_scheme_has_23_labels(ex2_cell):
    S = cell_scheme(ex2_cell)
    assert S.rank == 23
    assert len(np.unique(S.matrix)) == 23


def test_sampled_labels_agree_with_table():
    cell = make_cell(5, 2, make_field(2), lam=(2, 2, 1))
    S = cell_scheme(cell)
    pts = enumerate_cell(cell)
    rng = np.random.default_rng(3)
    xs, ys = rng.integers(0, cell.size, 200), rng.integers(0, cell.size, 200)
    labs = sampled_relation_labels(cell, pts[xs], pts[ys])
    assert labs == [S.labels[S.matrix[a, b]] for a, b in zip(xs, ys)]


@pytest.mark.parametrize("n, m, q, trials", [(4, 2, 3, 1000), (7, 4, 2, 100)])
def test_label_invariance_under_diagonal_action(n, m, q, trials):
    F = make_field(q)
    cells = [make_cell(7, 4, F, alpha=EX2_ALPHA)] if n == 7 else all_cells(n, m, F)
    for c in cells:
        assert orbital_invariance_trial(c, trials, rng=11).failures == 0


def test_transitivity_witness_maps_between_points(ex2_cell):
    F = ex2_cell.field
    for x, y in itertools.combinations(random_points(ex2_cell, 30, 5), 2):
        G = transitivity_witness(ex2_cell, x, y)
        assert ech.is_borel(F, G)
        assert np.array_equal(ech.borel_act(F, G, point_to_matrix(ex2_cell, y)), point_to_matrix(ex2_cell, x))


@pytest.mark.parametrize(
    "n, m, lam, q",
    [(2, 1, (1,), 3), (3, 1, (1, 1), 2), (3, 2, (2,), 2), (4, 2, (2, 1), 2), (4, 3, (3,), 2), (4, 1, (1, 1, 1), 2)],
)
def test_borel_orbitals_coincide_with_labels_on_small_cells(n, m, lam, q):
    cell = make_cell(n, m, make_field(q), lam=lam)
    S = cell_scheme(cell)
    orb = brute_force_orbitals(cell)
    pairs = {(int(a), int(b)) for a, b in zip(orb.ravel(), S.matrix.ravel())}
    assert len(pairs) == len(np.unique(orb)) == S.rank


def test_borel_orbitals_split_a_label_on_the_two_by_two_board():
    """lambda = (2,2), q = 2: 7 orbitals but 6 labels.

    The stabiliser of the base point acts on the 2x2 block of free entries
    by D -> P D L with P upper and L lower triangular, which keeps rank(D);
    label {(2,2)} holds free blocks of rank 1 and rank 2.
    """
    cell = make_cell(4, 2, make_field(2), lam=(2, 2))
    S = cell_scheme(cell)
    orb = brute_force_orbitals(cell)
    assert S.rank == 6
    assert len(np.unique(orb)) == 7
    # every orbital lies inside one label
    for o in np.unique(orb):
        assert len(np.unique(S.matrix[orb == o])) == 1
    split = S.labels.index(((2, 2),))
    assert len(np.unique(orb[S.matrix == split])) == 2
    assert np.count_nonzero(S.matrix == split) == 128
