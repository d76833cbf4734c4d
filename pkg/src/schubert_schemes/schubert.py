"""Schubert cells of Gr(m, n) over GF(q) and their Piv(M - N) relations.

A cell is the set of RRCEF matrices with a fixed pivot set ``alpha``.  Its
points are parametrised by the entries at the free positions (the positions
strictly below ``alpha`` in rows without a pivot); a point is stored as the
vector of those entries in row-major order of the free positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import echelon
from .fields import FiniteField
from .posets import (
    Partition,
    Position,
    Poset,
    alpha_to_partition,
    all_alphas,
    antichains,
    free_positions,
    free_poset,
    partition_to_alpha,
    pivot_free_rows,
    sorted_positions,
    _check_alpha,
)
from .schemes import SchemeInstance

ENUMERATION_BOUND = 2**16
PAIR_CHUNK = 2**20


@dataclass(frozen=True)
class SchubertCell:
    n: int
    m: int
    alpha: frozenset[Position]
    field: FiniteField

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha, self.n, self.m))

    @cached_property
    def free(self) -> tuple[Position, ...]:
        return tuple(free_positions(self.alpha, self.n, self.m))

    @cached_property
    def free_index(self) -> dict[Position, int]:
        return {pos: t for t, pos in enumerate(self.free)}

    @cached_property
    def lam(self) -> Partition:
        return alpha_to_partition(self.alpha, self.n, self.m)

    @cached_property
    def rows(self) -> list[int]:
        return pivot_free_rows(self.alpha, self.n, self.m)

    @cached_property
    def poset(self) -> Poset:
        return free_poset(self.alpha, self.n, self.m)

    @property
    def dimension(self) -> int:
        return len(self.free)

    @property
    def size(self) -> int:
        return self.field.q ** self.dimension

    @cached_property
    def base_matrix(self) -> np.ndarray:
        """The 0/1 point of the cell, ones exactly on ``alpha``."""
        return echelon.indicator(self.n, self.alpha)

    def relation_labels(self) -> list[tuple[Position, ...]]:
        """Anti-chains of the free poset, canonicalised as sorted tuples (empty first)."""
        return [sorted_positions(b) for b in antichains(self.poset)]

    def __repr__(self) -> str:
        return f"SchubertCell(n={self.n}, m={self.m}, lambda={self.lam}, {self.field!r})"


def make_cell(
    n: int,
    m: int,
    field: FiniteField,
    alpha: Iterable[Position] | None = None,
    lam: Sequence[int] | None = None,
) -> SchubertCell:
    """Cell from either its pivot set ``alpha`` or its partition ``lam``."""
    if (alpha is None) == (lam is None):
        raise ValueError("give exactly one of alpha and lam")
    if alpha is None:
        alpha = partition_to_alpha(lam, n, m)
    return SchubertCell(n, m, frozenset(alpha), field)


def all_cells(n: int, m: int, field: FiniteField) -> list[SchubertCell]:
    return [SchubertCell(n, m, a, field) for a in all_alphas(n, m)]


def point_to_matrix(cell: SchubertCell, coords) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    M = cell.base_matrix.copy()
    for (i, j), v in zip(cell.free, coords):
        M[i - 1, j - 1] = v
    return M


def points_to_matrices(cell: SchubertCell, coords: np.ndarray) -> np.ndarray:
    """Batched :func:`point_to_matrix`: ``(N, d)`` coords to ``(N, n, n)``."""
    coords = np.asarray(coords, dtype=np.int64)
    if coords.ndim == 1:
        coords = coords[None, :]
    out = np.broadcast_to(cell.base_matrix, (len(coords), cell.n, cell.n)).copy()
    if cell.dimension:
        rows = [i - 1 for i, _ in cell.free]
        cols = [j - 1 for _, j in cell.free]
        out[:, rows, cols] = coords
    return out


def matrix_to_point(cell: SchubertCell, M: np.ndarray) -> np.ndarray:
    M = np.asarray(M)
    if M.shape != (cell.n, cell.n) or not echelon.is_rrcef(M) or echelon.pivot_set(M) != cell.alpha:
        raise ValueError("matrix is not a point of this cell")
    return np.array([M[i - 1, j - 1] for i, j in cell.free], dtype=np.int64)


def point_index(cell: SchubertCell, coords) -> int:
    """Mixed-radix index of a point; the last free position varies fastest."""
    idx = 0
    for v in np.asarray(coords, dtype=np.int64):
        idx = idx * cell.field.q + int(v)
    return idx


def enumerate_cell(cell: SchubertCell, bound: int = ENUMERATION_BOUND) -> np.ndarray:
    """All points as an ``(q**d, d)`` array in mixed-radix order."""
    if cell.size > bound:
        raise ValueError(f"cell has {cell.size} points, above the bound {bound}")
    q, d = cell.field.q, cell.dimension
    idx = np.arange(q**d)
    powers = q ** np.arange(d - 1, -1, -1)
    return (idx[:, None] // powers[None, :]) % q


def random_points(cell: SchubertCell, count: int, rng=None) -> np.ndarray:
    rng = np.random.default_rng(rng)
    return rng.integers(0, cell.field.q, size=(count, cell.dimension))


def relation_label(cell: SchubertCell, x, y) -> tuple[Position, ...]:
    """Piv(M - N) for the matrices of two points, as a sorted tuple."""
    diff = cell.field.sub(point_to_matrix(cell, x), point_to_matrix(cell, y))
    return sorted_positions(echelon.pivot_set(diff))


def _pivot_codes(field: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Bit-packed pivot masks of ``A - B`` for batches of full n x n matrices."""
    diff = field.sub(A, B)
    mask = echelon.pivot_mask(diff != 0)
    n = A.shape[-1]
    weights = (1 << np.arange(n * n, dtype=np.uint64)).astype(np.uint64)
    flat = mask.reshape(mask.shape[0], n * n).astype(np.uint64)
    return (flat * weights).sum(axis=1, dtype=np.uint64)


def _decode(code: int, n: int) -> tuple[Position, ...]:
    return tuple(sorted((t // n + 1, t % n + 1) for t in range(n * n) if code >> t & 1))


def cell_scheme(cell: SchubertCell, bound: int = 4096) -> SchemeInstance:
    """The scheme on the cell with relations R_beta = {(M, N) : Piv(M - N) = beta}.

    Labels are the anti-chains of the free poset.  Each relation label is
    obtained from the materialised difference matrix of the pair, not from the
    coordinate vectors.
    """
    if cell.size > bound:
        raise ValueError(f"cell has {cell.size} points, above the bound {bound}")
    if cell.n * cell.n > 64:
        raise ValueError("pivot masks are packed in 64 bits; n must be at most 8")
    labels = cell.relation_labels()
    index = {lab: t for t, lab in enumerate(labels)}
    mats = points_to_matrices(cell, enumerate_cell(cell))
    size = len(mats)
    out = np.empty((size, size), dtype=np.int32)
    code_to_label: dict[int, int] = {}
    rows_per_chunk = max(1, PAIR_CHUNK // (size * cell.n * cell.n))
    for start in range(0, size, rows_per_chunk):
        stop = min(size, start + rows_per_chunk)
        A = np.repeat(mats[start:stop], size, axis=0)
        B = np.tile(mats, (stop - start, 1, 1))
        codes = _pivot_codes(cell.field, A, B)
        uniq, inv = np.unique(codes, return_inverse=True)
        lut = np.empty(len(uniq), dtype=np.int32)
        for t, code in enumerate(uniq.tolist()):
            if code not in code_to_label:
                beta = _decode(code, cell.n)
                if beta not in index:
                    raise AssertionError(f"Piv(M-N) = {beta} is not an anti-chain of the free poset")
                code_to_label[code] = index[beta]
            lut[t] = code_to_label[code]
        out[start:stop] = lut[inv].reshape(stop - start, size)
    return SchemeInstance(labels, out)


def sampled_relation_labels(cell: SchubertCell, xs: np.ndarray, ys: np.ndarray) -> list[tuple[Position, ...]]:
    """Piv(M - N) labels for explicit coordinate batches (for cells too big to tabulate)."""
    A = points_to_matrices(cell, xs)
    B = points_to_matrices(cell, ys)
    return [_decode(int(c), cell.n) for c in _pivot_codes(cell.field, A, B)]


@dataclass
class TrialReport:
    name: str
    trials: int
    failures: int
    first_failure: dict | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def orbital_invariance_trial(cell: SchubertCell, trials: int = 1000, rng=None) -> TrialReport:
    """Random pairs pushed by random Borel elements keep their Piv(M - N) label."""
    rng = np.random.default_rng(rng)
    F = cell.field
    failures, first = 0, None
    for t in range(trials):
        x, y = random_points(cell, 2, rng)
        G = echelon.random_borel(cell.n, F, rng)
        M2 = echelon.borel_act(F, G, point_to_matrix(cell, x))
        N2 = echelon.borel_act(F, G, point_to_matrix(cell, y))
        before = relation_label(cell, x, y)
        after = sorted_positions(echelon.pivot_set(F.sub(M2, N2)))
        if before != after or echelon.pivot_set(M2) != cell.alpha:
            failures += 1
            if first is None:
                first = {"trial": t, "x": x.tolist(), "y": y.tolist(), "G": G.tolist()}
    return TrialReport("orbital_invariance", trials, failures, first)


def transitivity_witness(cell: SchubertCell, x, y) -> np.ndarray:
    """Borel element carrying point ``y`` to point ``x``.

    Both matrices factor through the 0/1 base point, ``M = G_M X`` and
    ``N = G_N X``; the composite ``G_M G_N^{-1}`` maps N to M.
    """
    F = cell.field
    M, N = point_to_matrix(cell, x), point_to_matrix(cell, y)
    G_M = echelon.borel_witness(F, M)
    G_N = echelon.borel_witness(F, N)
    return echelon.matmul(F, G_M, echelon.inverse(F, G_N))


def brute_force_orbitals(cell: SchubertCell, max_group: int = 2**14) -> np.ndarray:
    """Orbitals of the full Borel group on the cell, by enumeration of the group.

    Returns an ``(N, N)`` array of orbital ids.  Only feasible for tiny
    cases: the group has ``(q-1)**n * q**(n(n-1)/2)`` elements.
    """
    F, n = cell.field, cell.n
    q = F.q
    order = (q - 1) ** n * q ** (n * (n - 1) // 2)
    if order > max_group:
        raise ValueError(f"Borel group has {order} elements, above {max_group}")
    pts = enumerate_cell(cell)
    mats = points_to_matrices(cell, pts)
    size = len(pts)
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = []
    for k in range(order):
        G = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            k, v = divmod(k, q - 1)
            G[i, i] = v + 1
        for i, j in upper:
            k, v = divmod(k, q)
            G[i, j] = v
        image = [point_index(cell, matrix_to_point(cell, echelon.borel_act(F, G, M))) for M in mats]
        perms.append(image)
    perms = np.array(perms)
    orbital = -np.ones((size, size), dtype=np.int64)
    count = 0
    for a in range(size):
        for b in range(size):
            if orbital[a, b] < 0:
                orbital[perms[:, a], perms[:, b]] = count
                count += 1
    return orbital
