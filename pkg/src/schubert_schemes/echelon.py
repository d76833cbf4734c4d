"""Matrices over GF(q) in reduced reverse column echelon form.

A matrix is a 2-d ``numpy`` integer array of field-element indices.  Public
positions are 1-based ``(row, column)`` pairs, with row 1 at the top, and
are compared in the product order: ``(i, j) <= (k, l)`` iff ``i <= k`` and
``j <= l``.

Every subspace of F^n has exactly one n x n matrix in reduced reverse column
echelon form (RRCEF) whose column space it is:

* zero columns sit right of the nonzero ones,
* the last nonzero entry of each nonzero column lies strictly below that of
  the column to its right,
* each such last entry is 1 and is the only nonzero entry in its row.
"""

from __future__ import annotations

import json

import numpy as np

from .fields import FiniteField

Position = tuple[int, int]


def zeros(n: int, cols: int | None = None) -> np.ndarray:
    return np.zeros((n, n if cols is None else cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def indicator(n: int, positions) -> np.ndarray:
    """0/1 matrix with ones exactly at the given 1-based positions."""
    out = zeros(n)
    for i, j in positions:
        out[i - 1, j - 1] = 1
    return out


def matmul(field: FiniteField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    if field.k == 1:
        # entries < 2**16, so n * p**2 stays far inside int64 for desk-scale n
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out = field.add(out, field.mul(a[:, t, None], b[None, t, :]))
    return out


def inverse(field: FiniteField, a: np.ndarray) -> np.ndarray:
    """Inverse by Gauss-Jordan elimination; raises ``ValueError`` if singular."""
    n = a.shape[0]
    aug = np.concatenate([np.asarray(a, dtype=np.int64), identity(n)], axis=1)
    red, pivots = _rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return red[:, n:]


def _rref(field: FiniteField, t: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``t`` and its pivot columns."""
    t = np.array(t, dtype=np.int64)
    rows, cols = t.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(t[r:, c])
        if nz.size == 0:
            continue
        s = r + nz[0]
        if s != r:
            t[[r, s]] = t[[s, r]]
        t[r] = field.mul(t[r], field.inv(int(t[r, c])))
        factors = t[:, c].copy()
        factors[r] = 0
        t = field.sub(t, field.mul(factors[:, None], t[r][None, :]))
        pivots.append(c)
        r += 1
    return t, pivots


def rrcef(field: FiniteField, generators: np.ndarray, n: int | None = None) -> np.ndarray:
    """Canonical RRCEF matrix of the column space of ``generators``.

    The result is always square (``n x n``, zero columns padded on the right).
    Row-reducing the transpose with its coordinates read bottom-up puts the
    lowest usable entry of each column first, which is exactly the reverse
    column echelon convention.
    """
    gens = np.asarray(generators, dtype=np.int64)
    if gens.ndim == 1:
        gens = gens[:, None]
    n = gens.shape[0] if n is None else n
    red, pivots = _rref(field, gens.T[:, ::-1])
    cols = red[: len(pivots), ::-1].T
    out = zeros(n)
    out[:, : len(pivots)] = cols
    return out


def is_rrcef(M: np.ndarray) -> bool:
    M = np.asarray(M)
    nonzero_cols = [j for j in range(M.shape[1]) if M[:, j].any()]
    if nonzero_cols != list(range(len(nonzero_cols))):
        return False
    last_rows = [int(np.flatnonzero(M[:, j])[-1]) for j in nonzero_cols]
    if any(a <= b for a, b in zip(last_rows, last_rows[1:])):
        return False
    for j, r in zip(nonzero_cols, last_rows):
        if M[r, j] != 1 or np.count_nonzero(M[r]) != 1:
            return False
    return True


def support(M: np.ndarray) -> frozenset[Position]:
    return frozenset((int(i) + 1, int(j) + 1) for i, j in zip(*np.nonzero(M)))


def pivot_mask(nonzero: np.ndarray) -> np.ndarray:
    """Boolean mask of maximal nonzero positions, batched over leading axes.

    ``nonzero`` has shape ``(..., rows, cols)``; a position is a pivot when
    it is nonzero and nothing strictly south-east of it (weakly in both
    coordinates) is.
    """
    nz = np.asarray(nonzero, dtype=bool)
    # quadrant[..., i, j] = any nonzero at (k, l) with k >= i, l >= j
    quadrant = np.flip(
        np.logical_or.accumulate(np.logical_or.accumulate(np.flip(nz, (-2, -1)), axis=-2), axis=-1),
        (-2, -1),
    )
    below = np.zeros_like(quadrant)
    below[..., :-1, :] = quadrant[..., 1:, :]
    right = np.zeros_like(quadrant)
    right[..., :, :-1] = quadrant[..., :, 1:]
    return nz & ~below & ~right


def pivot_set(M: np.ndarray) -> frozenset[Position]:
    """Maximal elements of the support under the product order."""
    return support(pivot_mask(np.asarray(M) != 0))


def is_borel(field: FiniteField, G: np.ndarray) -> bool:
    G = np.asarray(G)
    return bool(G.shape[0] == G.shape[1] and not np.tril(G, -1).any() and np.all(np.diag(G) != 0))


def random_borel(n: int, field: FiniteField, rng=None) -> np.ndarray:
    """Uniformly random upper triangular invertible matrix."""
    rng = np.random.default_rng(rng)
    G = np.triu(rng.integers(0, field.q, size=(n, n)), 1)
    G[np.diag_indices(n)] = rng.integers(1, field.q, size=n)
    return G.astype(np.int64)


def borel_act(field: FiniteField, G: np.ndarray, M: np.ndarray) -> np.ndarray:
    """RRCEF representative of ``G`` applied to the column space of ``M``."""
    if not is_borel(field, G):
        raise ValueError("G must be upper triangular and invertible")
    return rrcef(field, matmul(field, G, M), n=M.shape[0])


def borel_witness(field: FiniteField, M: np.ndarray) -> np.ndarray:
    """Unit upper triangular ``G`` with ``M = G @ X``, X the 0/1 matrix on Piv(M).

    Column ``j`` of ``G`` is the column of ``M`` whose pivot lies in row
    ``j``; rows without a pivot get the identity column.
    """
    M = np.asarray(M, dtype=np.int64)
    if not is_rrcef(M):
        raise ValueError("M must be in reduced reverse column echelon form")
    G = identity(M.shape[0])
    for i, j in pivot_set(M):
        G[:, i - 1] = M[:, j - 1]
    return G


def pair_witness(field: FiniteField, M: np.ndarray, N: np.ndarray) -> np.ndarray:
    """Candidate ``G`` for ``M = G @ X`` and ``N = G @ Y``.

    Here ``Y`` is the 0/1 matrix on the common pivot set alpha and ``X`` the
    0/1 matrix on alpha together with Piv(M - N).  Column ``j`` of ``G`` is
    taken from ``N`` when row ``j`` holds a pivot of alpha, from ``M - N``
    when row ``j`` holds a pivot of ``M - N``, and is the identity column
    otherwise.

    ``G`` is always in the Borel group and ``N = G @ Y`` always holds, but
    ``M = G @ X`` holds only when every nonzero column of ``M - N`` contains a
    pivot of ``M - N`` (see :func:`pair_witness_applies`).
    """
    M = np.asarray(M, dtype=np.int64)
    N = np.asarray(N, dtype=np.int64)
    alpha = pivot_set(M)
    if not (is_rrcef(M) and is_rrcef(N)):
        raise ValueError("M and N must be in reduced reverse column echelon form")
    if pivot_set(N) != alpha:
        raise ValueError("M and N have different pivot sets")
    diff = field.sub(M, N)
    G = identity(M.shape[0])
    for i, j in alpha:
        G[:, i - 1] = N[:, j - 1]
    for i, j in pivot_set(diff):
        G[:, i - 1] = diff[:, j - 1]
    return G


def pair_witness_applies(field: FiniteField, M: np.ndarray, N: np.ndarray) -> bool:
    """True iff every nonzero column of ``M - N`` carries a pivot of ``M - N``."""
    diff = field.sub(np.asarray(M), np.asarray(N))
    pivot_cols = {j for _, j in pivot_set(diff)}
    return all(j + 1 in pivot_cols for j in range(diff.shape[1]) if diff[:, j].any())


def column_space_equal(field: FiniteField, A: np.ndarray, B: np.ndarray) -> bool:
    """Rank test: span(A) == span(B) iff rank A == rank B == rank [A | B]."""
    rank = lambda X: len(_rref(field, np.asarray(X).T)[1])  # noqa: E731
    ra, rb = rank(A), rank(B)
    return ra == rb == rank(np.concatenate([A, B], axis=1))


def to_json(M: np.ndarray) -> str:
    M = np.asarray(M)
    return json.dumps({"n": int(M.shape[0]), "entries": M.astype(int).tolist()})


def from_json(text: str | dict) -> np.ndarray:
    data = json.loads(text) if isinstance(text, str) else text
    M = np.asarray(data["entries"], dtype=np.int64)
    if M.shape != (data["n"], data["n"]):
        raise ValueError("entries do not form an n x n grid")
    return M
