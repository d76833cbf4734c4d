"""Finite posets, anti-chains, partitions and Ferrers boards.

Down-sets follow the strict convention: ``down_set(Y)`` holds the elements
lying strictly below some member of ``Y``; the members themselves are not
included.

Partitions are plain tuples of non-increasing non-negative integers.  Trailing
zeros are kept, because the cell bijections fix the ambient length.
"""

from __future__ import annotations

import json
from typing import Hashable, Iterable, Sequence

import numpy as np

Position = tuple[int, int]
Partition = tuple[int, ...]

ANTICHAIN_BOUND = 64
ORDER_CHECK_BOUND = 1000


class Poset:
    """A finite poset with a precomputed comparability table.

    Parameters
    ----------
    elements : sequence of hashable
        The ground set; its order is the poset's fixed indexing.
    leq : callable or boolean array
        ``leq(a, b)`` for elements, or an ``|X| x |X|`` matrix over indices.
    check : bool
        Verify the partial-order axioms (skipped above 1000 elements).
    """

    def __init__(self, elements: Sequence[Hashable], leq, check: bool = True):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        size = len(self.elements)
        if callable(leq):
            table = np.array(
                [[bool(leq(a, b)) for b in self.elements] for a in self.elements], dtype=bool
            ).reshape(size, size)
        else:
            table = np.array(leq, dtype=bool).reshape(size, size)
        self.table = table
        self.table.setflags(write=False)
        if check and size <= ORDER_CHECK_BOUND:
            self._check_order()

    def _check_order(self) -> None:
        t = self.table
        if not np.all(np.diag(t)):
            raise ValueError("relation is not reflexive")
        if np.any(t & t.T & ~np.eye(len(t), dtype=bool)):
            raise ValueError("relation is not antisymmetric")
        f = t.astype(np.float32)
        if np.any((f @ f > 0) & ~t):
            raise ValueError("relation is not transitive")

    @classmethod
    def from_covers(cls, elements: Sequence[Hashable], covers: Iterable[tuple]) -> "Poset":
        """Poset generated by cover pairs ``(a, b)`` meaning ``a < b``."""
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        size = len(elements)
        t = np.eye(size, dtype=bool)
        for a, b in covers:
            t[index[a], index[b]] = True
        # transitive closure (Warshall)
        for k in range(size):
            t |= t[:, k, None] & t[None, k, :]
        return cls(elements, t)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements)"

    def leq(self, a, b) -> bool:
        return bool(self.table[self.index[a], self.index[b]])

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def strict_table(self) -> np.ndarray:
        return self.table & ~np.eye(len(self), dtype=bool)

    def linear_extension(self) -> list[int]:
        """Indices sorted so that every element precedes those above it."""
        below = self.strict_table().sum(axis=0)
        return sorted(range(len(self)), key=lambda i: (below[i], i))

    def maximal(self, subset: Iterable) -> frozenset:
        subset = list(subset)
        return frozenset(x for x in subset if not any(self.lt(x, y) for y in subset))

    def covers(self) -> list[tuple]:
        strict = self.strict_table()
        out = []
        for a in range(len(self)):
            for b in range(len(self)):
                if strict[a, b] and not np.any(strict[a] & strict[:, b]):
                    out.append((self.elements[a], self.elements[b]))
        return out

    def subposet(self, subset: Iterable) -> "Poset":
        keep = [x for x in self.elements if x in set(subset)]
        idx = [self.index[x] for x in keep]
        return Poset(keep, self.table[np.ix_(idx, idx)], check=False)

    def to_json(self) -> str:
        enc = lambda x: list(x) if isinstance(x, tuple) else x  # noqa: E731
        return json.dumps(
            {
                "elements": [enc(x) for x in self.elements],
                "covers": [[enc(a), enc(b)] for a, b in self.covers()],
            }
        )

    @classmethod
    def from_json(cls, text: str | dict) -> "Poset":
        data = json.loads(text) if isinstance(text, str) else text
        dec = lambda x: tuple(x) if isinstance(x, list) else x  # noqa: E731
        elements = [dec(x) for x in data["elements"]]
        covers = [(dec(a), dec(b)) for a, b in data.get("covers", [])]
        for a, b in covers:
            if a not in elements or b not in elements:
                raise ValueError(f"cover ({a}, {b}) names an unknown element")
        return cls.from_covers(elements, covers)


def product_order(a: Position, b: Position) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def grid_poset(rows: int, cols: int) -> Poset:
    """``[rows] x [cols]`` under the product order, listed row-major."""
    cells = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
    return Poset(cells, product_order, check=False)


def chain(size: int) -> Poset:
    return Poset(range(size), lambda a, b: a <= b, check=False)


def antichain_poset(size: int) -> Poset:
    return Poset(range(size), lambda a, b: a == b, check=False)


def is_antichain(subset: Iterable, host: Poset) -> bool:
    subset = list(subset)
    for x in subset:
        if x not in host:
            raise ValueError(f"{x!r} is not an element of the poset")
    return all(
        not host.comparable(a, b) for k, a in enumerate(subset) for b in subset[k + 1 :]
    )


def down_set(Y: Iterable, host: Poset) -> frozenset:
    Y = list(Y)
    if not is_antichain(Y, host):
        raise ValueError("Y is not an anti-chain")
    if not Y:
        return frozenset()
    strict = host.strict_table()
    cols = [host.index[y] for y in Y]
    below = strict[:, cols].any(axis=1)
    return frozenset(host.elements[i] for i in np.flatnonzero(below))


def antichains(host: Poset, bound: int = ANTICHAIN_BOUND) -> list[frozenset]:
    """Every anti-chain of ``host`` (the empty one first), each exactly once.

    Recursion over a linear extension: each element is either skipped or
    added when incomparable with everything already chosen.
    """
    if len(host) > bound:
        raise ValueError(f"poset has {len(host)} elements, above the bound {bound}")
    order = host.linear_extension()
    comparable = host.table | host.table.T
    out: list[frozenset] = []

    def walk(pos: int, chosen: list[int], blocked: np.ndarray) -> None:
        if pos == len(order):
            out.append(frozenset(host.elements[i] for i in chosen))
            return
        walk(pos + 1, chosen, blocked)
        i = order[pos]
        if not blocked[i]:
            walk(pos + 1, chosen + [i], blocked | comparable[i])

    walk(0, [], np.zeros(len(host), dtype=bool))
    return out


# -- partitions and Ferrers boards ----------------------------------------


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def as_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ValueError(f"{parts} is not a non-increasing sequence of non-negative integers")
    return parts


def ferrers_cells(shape: Sequence[int]) -> list[Position]:
    return [(i, j) for i, part in enumerate(shape, 1) for j in range(1, part + 1)]


def ferrers_poset(shape: Sequence[int]) -> Poset:
    return Poset(ferrers_cells(as_partition(shape)), product_order, check=False)


def board_maxima(shape: Sequence[int]) -> frozenset[Position]:
    """Maximal cells of a Ferrers board: ends of rows longer than the next row."""
    shape = list(shape) + [0]
    return frozenset((i, shape[i - 1]) for i in range(1, len(shape)) if shape[i - 1] > shape[i])


def subpartitions(lam: Sequence[int]) -> list[Partition]:
    """All partitions ``mu`` with ``mu_i <= lam_i``, trailing zeros dropped.

    Ordered by length, then lexicographically; the empty partition is first.
    """
    lam = as_partition(lam)
    found: list[Partition] = []

    def grow(prefix: list[int]) -> None:
        found.append(tuple(prefix))
        i = len(prefix)
        if i == len(lam):
            return
        cap = min(lam[i], prefix[-1] if prefix else lam[i])
        for part in range(1, cap + 1):
            grow(prefix + [part])

    grow([])
    return sorted(found, key=lambda mu: (len(mu), mu))


# -- cells of [n] x [m] ----------------------------------------------------


def _check_alpha(alpha: Iterable[Position], n: int, m: int) -> frozenset[Position]:
    alpha = frozenset((int(i), int(j)) for i, j in alpha)
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    if len(alpha) != m:
        raise ValueError(f"alpha must have exactly m={m} elements")
    if any(not (1 <= i <= n and 1 <= j <= m) for i, j in alpha):
        raise ValueError("alpha must lie in [n] x [m]")
    items = sorted(alpha)
    if any(product_order(a, b) or product_order(b, a) for k, a in enumerate(items) for b in items[k + 1 :]):
        raise ValueError("alpha is not an anti-chain")
    return alpha


def pivot_free_rows(alpha: Iterable[Position], n: int, m: int | None = None) -> list[int]:
    """Rows of ``[n]`` holding no element of ``alpha``, increasing."""
    alpha = list(alpha)
    alpha = _check_alpha(alpha, n, len(alpha) if m is None else m)
    rows = {i for i, _ in alpha}
    return [i for i in range(1, n + 1) if i not in rows]


def free_positions(alpha: Iterable[Position], n: int, m: int) -> list[Position]:
    """Positions strictly below ``alpha`` in rows without a pivot, row-major."""
    alpha = _check_alpha(alpha, n, m)
    rows = {i for i, _ in alpha}
    return [
        (i, j)
        for i in range(1, n + 1)
        if i not in rows
        for j in range(1, m + 1)
        if any(i < k and j <= l for k, l in alpha)
    ]


def free_poset(alpha: Iterable[Position], n: int, m: int) -> Poset:
    """The free-coordinate positions of the cell as a product-order poset."""
    return Poset(free_positions(alpha, n, m), product_order, check=False)


def alpha_to_partition(alpha: Iterable[Position], n: int, m: int) -> Partition:
    """Row lengths of the free region, one per pivot-free row (top to bottom)."""
    free = free_positions(alpha, n, m)
    rows = pivot_free_rows(alpha, n, m)
    return tuple(sum(1 for i, _ in free if i == d) for d in rows)


def partition_to_alpha(lam: Sequence[int], n: int, m: int) -> frozenset[Position]:
    """Inverse of :func:`alpha_to_partition`.

    Merge ``lam`` with the staircase ``(m, m-1, ..., 1)`` into one partition
    of length ``n`` and take the maximal cells of its Ferrers board.
    """
    lam = as_partition(lam)
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    if len(lam) != n - m:
        raise ValueError(f"partition must have exactly n-m={n - m} parts")
    if lam and lam[0] > m:
        raise ValueError(f"largest part must be at most m={m}")
    merged = sorted(lam + tuple(range(m, 0, -1)), reverse=True)
    return board_maxima(merged)


def board_embedding(alpha: Iterable[Position], n: int, m: int) -> dict[Position, Position]:
    """Order isomorphism from the Ferrers board of the cell's partition onto its free poset.

    Board cell ``(i, j)`` goes to ``(d_i, j)`` with ``d_i`` the i-th pivot-free row.
    """
    alpha = _check_alpha(alpha, n, m)
    lam = alpha_to_partition(alpha, n, m)
    rows = pivot_free_rows(alpha, n, m)
    mapping = {(i, j): (rows[i - 1], j) for i, j in ferrers_cells(lam)}
    free = set(free_positions(alpha, n, m))
    if set(mapping.values()) != free:
        raise AssertionError("board embedding is not onto the free positions")
    for a in mapping:
        for b in mapping:
            if product_order(a, b) != product_order(mapping[a], mapping[b]):
                raise AssertionError(f"order not preserved between {a} and {b}")
    return mapping


def subpartition_antichain(mu: Sequence[int], alpha: Iterable[Position], n: int, m: int) -> frozenset[Position]:
    """Image of the maximal cells of ``mu`` under :func:`board_embedding`."""
    alpha = _check_alpha(alpha, n, m)
    lam = alpha_to_partition(alpha, n, m)
    mu = as_partition(mu)
    if len(mu) > len(lam) or any(a > b for a, b in zip(mu, lam)):
        raise ValueError(f"{mu} is not a subpartition of {lam}")
    psi = board_embedding(alpha, n, m)
    return frozenset(psi[c] for c in board_maxima(mu))


def all_alphas(n: int, m: int) -> list[frozenset[Position]]:
    """Every anti-chain of size ``m`` in ``[n] x [m]``, via partitions in lex order."""
    return [partition_to_alpha(lam, n, m) for lam in bounded_partitions(n - m, m)]


def bounded_partitions(length: int, largest: int) -> list[Partition]:
    """Partitions with exactly ``length`` parts (zeros allowed), each <= ``largest``."""
    out: list[Partition] = []

    def grow(prefix: list[int]) -> None:
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        cap = prefix[-1] if prefix else largest
        for part in range(cap, -1, -1):
            grow(prefix + [part])

    grow([])
    return out


def sorted_positions(positions: Iterable[Position]) -> tuple[Position, ...]:
    return tuple(sorted((int(i), int(j)) for i, j in positions))


def parse_partition(text: str) -> Partition:
    return as_partition(int(t) for t in text.replace(" ", "").split(",") if t != "")


def parse_positions(text: str) -> frozenset[Position]:
    """Parse ``"2,4;4,3;5,2;7,1"`` into a set of positions."""
    out = set()
    for chunk in text.replace(" ", "").split(";"):
        if chunk:
            i, j = chunk.split(",")
            out.add((int(i), int(j)))
    return frozenset(out)


def antichain_json(positions: Iterable[Position]) -> list[list[int]]:
    return [list(p) for p in sorted_positions(positions)]
