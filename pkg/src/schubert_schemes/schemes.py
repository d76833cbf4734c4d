"""Finite association schemes stored as dense label matrices."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

EXHAUSTIVE_BOUND = 1024
SAMPLED_PAIRS = 10**5


@dataclass
class SchemeInstance:
    """A relation partition of ``range(size) x range(size)``.

    ``matrix[x, y]`` is the index into ``labels`` of the relation holding
    ``(x, y)``; index 0 must be the identity relation.
    """

    labels: list[Hashable]
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValueError("label matrix must be square")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def label(self, x: int, y: int) -> Hashable:
        return self.labels[self.matrix[x, y]]

    def relation(self, i: int) -> np.ndarray:
        """Pairs ``(x, y)`` in relation ``i`` as an ``(k, 2)`` array."""
        return np.argwhere(self.matrix == i)

    def adjacency(self, i: int) -> np.ndarray:
        return (self.matrix == i).astype(np.int64)


@dataclass
class SchemeReport:
    """Outcome of :func:`verify_scheme`."""

    status: str
    exhaustive: bool
    counterexample: dict | None = None
    transpose: list[int] | None = None
    intersection_numbers: np.ndarray | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "PASS"

    def to_dict(self, labels: Sequence | None = None) -> dict:
        out = {
            "status": self.status,
            "exhaustive": self.exhaustive,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }
        if self.ok:
            out["parameters"] = {
                "transpose": self.transpose,
                "intersection_numbers": intersection_table(self.intersection_numbers),
            }
        return out


def one_class_scheme(q: int) -> SchemeInstance:
    """Equality versus inequality on ``q`` points."""
    if q < 2:
        raise ValueError("a one-class scheme needs at least 2 points")
    return SchemeInstance([0, 1], 1 - np.eye(q, dtype=np.int64))


def cyclic_scheme(q: int) -> SchemeInstance:
    """Relations ``y - x mod q`` on Z/q; not symmetric for q >= 3."""
    x = np.arange(q)
    return SchemeInstance(list(range(q)), (x[None, :] - x[:, None]) % q)


def is_symmetric(S: SchemeInstance) -> bool:
    return bool(np.array_equal(S.matrix, S.matrix.T))


def valencies(S: SchemeInstance) -> list[int]:
    """Out-degree of each relation, read from point 0 (constant in a scheme)."""
    return np.bincount(S.matrix[0], minlength=S.rank).tolist()


def _transpose_map(S: SchemeInstance, rng=None, sampled: bool = False):
    """Return ``(transpose, counterexample)``; transpose[i] is i* or None on failure."""
    M = S.matrix
    r = S.rank
    # first occurrence of every label fixes the candidate i*
    flat = M.ravel()
    first = np.full(r, -1)
    seen = np.unique(flat, return_index=True)
    first[seen[0]] = seen[1]
    if np.any(first < 0):
        i = int(np.flatnonzero(first < 0)[0])
        return None, {"axiom": "nonempty", "label": i}
    xs, ys = np.divmod(first, S.size)
    star = M[ys, xs]
    if not sampled:
        bad = M.T != star[M]
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            return None, {"axiom": "transpose", "pair": [x, y], "label": int(M[x, y])}
    else:
        rng = np.random.default_rng(rng)
        x = rng.integers(0, S.size, SAMPLED_PAIRS)
        y = rng.integers(0, S.size, SAMPLED_PAIRS)
        bad = M[y, x] != star[M[x, y]]
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            return None, {"axiom": "transpose", "pair": [int(x[k]), int(y[k])], "label": int(M[x[k], y[k]])}
    return star.tolist(), None


def _count_vectors(M: np.ndarray, xs: np.ndarray, ys: np.ndarray, r: int) -> np.ndarray:
    """For each pair, counts of z by (label(x,z), label(z,y)), shape (len, r*r)."""
    keys = M[xs][:, :] * r + M[:, ys].T  # (len, size)
    offsets = np.arange(len(xs))[:, None] * (r * r)
    return np.bincount((keys + offsets).ravel(), minlength=len(xs) * r * r).reshape(len(xs), r * r)


def verify_scheme(
    S: SchemeInstance,
    bound: int = EXHAUSTIVE_BOUND,
    rng=0,
    exhaustive: bool | None = None,
) -> SchemeReport:
    """Check the association-scheme axioms and compute p^k_ij.

    Checks, in order: every label index is in range and used, label 0 is
    exactly the diagonal, each relation's transpose is a relation, and the
    count ``|{z : (x,z) in R_i, (z,y) in R_j}|`` depends only on the
    relation of ``(x, y)``.  The reference counts for each relation come
    from the first pair found in it.

    Up to ``bound`` points every pair is checked (O(size^3) work); above it,
    ``SAMPLED_PAIRS`` seeded random pairs are checked against the references
    and the report is flagged as not exhaustive.
    """
    M = S.matrix
    n, r = S.size, S.rank
    if exhaustive is None:
        exhaustive = n <= bound
    notes = [] if exhaustive else [f"sampled {SAMPLED_PAIRS} pairs (size {n} > bound {bound})"]

    if M.min(initial=0) < 0 or M.max(initial=0) >= r:
        x, y = map(int, np.argwhere((M < 0) | (M >= r))[0])
        return SchemeReport("FAIL", exhaustive, {"axiom": "partition", "pair": [x, y]}, notes=notes)
    diag = np.eye(n, dtype=bool)
    if np.any((M == 0) != diag):
        x, y = map(int, np.argwhere((M == 0) != diag)[0])
        return SchemeReport("FAIL", exhaustive, {"axiom": "diagonal", "pair": [x, y]}, notes=notes)
    star, bad = _transpose_map(S, rng, sampled=not exhaustive)
    if bad:
        return SchemeReport("FAIL", exhaustive, bad, notes=notes)

    flat = M.ravel()
    labels_seen, first = np.unique(flat, return_index=True)
    ref_x, ref_y = np.divmod(first, n)
    ref = _count_vectors(M, ref_x, ref_y, r)  # (r, r*r), row k = reference for label k

    if exhaustive:
        chunk = max(1, 2**22 // max(n, 1))
        xs_all = np.repeat(np.arange(n), n)
        ys_all = np.tile(np.arange(n), n)
        pair_iter = (
            (xs_all[s : s + chunk], ys_all[s : s + chunk]) for s in range(0, n * n, chunk)
        )
    else:
        g = np.random.default_rng(rng)
        xs_all = g.integers(0, n, SAMPLED_PAIRS)
        ys_all = g.integers(0, n, SAMPLED_PAIRS)
        chunk = max(1, 2**22 // max(n, 1))
        pair_iter = (
            (xs_all[s : s + chunk], ys_all[s : s + chunk]) for s in range(0, SAMPLED_PAIRS, chunk)
        )
    for xs, ys in pair_iter:
        counts = _count_vectors(M, xs, ys, r)
        mism = np.any(counts != ref[M[xs, ys]], axis=1)
        if mism.any():
            t = int(np.flatnonzero(mism)[0])
            k = int(M[xs[t], ys[t]])
            diff = np.flatnonzero(counts[t] != ref[k])[0]
            i, j = divmod(int(diff), r)
            return SchemeReport(
                "FAIL",
                exhaustive,
                {
                    "axiom": "intersection",
                    "pair": [int(xs[t]), int(ys[t])],
                    "reference_pair": [int(ref_x[k]), int(ref_y[k])],
                    "k": k,
                    "i": i,
                    "j": j,
                    "count": int(counts[t, diff]),
                    "reference_count": int(ref[k, diff]),
                },
                notes=notes,
            )
    p = ref.reshape(r, r, r)
    return SchemeReport("PASS", exhaustive, None, star, p, notes)


def intersection_numbers(S: SchemeInstance, **kwargs) -> np.ndarray:
    """``p[k, i, j]``; raises ``ValueError`` if ``S`` is not a scheme."""
    rep = verify_scheme(S, **kwargs)
    if not rep.ok:
        raise ValueError(f"not an association scheme: {rep.counterexample}")
    return rep.intersection_numbers


def intersection_table(p: np.ndarray) -> list[list[int]]:
    """Rows ``[k, i, j, p^k_ij]`` for the nonzero entries."""
    return [[int(k), int(i), int(j), int(p[k, i, j])] for k, i, j in zip(*np.nonzero(p))]


def intersection_csv(p: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "i", "j", "p"])
    w.writerows(intersection_table(p))
    return buf.getvalue()


def relabel_equal(A: SchemeInstance, B: SchemeInstance, mapping: dict[int, int] | None = None) -> bool:
    """Equal relation partitions under a label bijection fixing the identity.

    With ``mapping`` (label index of A -> label index of B) that bijection is
    used; otherwise it is read off the matrices.
    """
    if A.size != B.size or A.rank != B.rank:
        return False
    if mapping is None:
        pairs = np.unique(np.stack([A.matrix.ravel(), B.matrix.ravel()]), axis=1)
        if pairs.shape[1] != A.rank:
            return False
        mapping = dict(zip(pairs[0].tolist(), pairs[1].tolist()))
    if mapping.get(0) != 0 or sorted(mapping.values()) != list(range(B.rank)):
        return False
    lut = np.array([mapping[i] for i in range(A.rank)])
    return bool(np.array_equal(lut[A.matrix], B.matrix))


def scheme_json(S: SchemeInstance, report: SchemeReport, label_repr=str) -> str:
    return json.dumps(
        {
            "size": S.size,
            "labels": [label_repr(lab) for lab in S.labels],
            "valencies": valencies(S),
            "symmetric": is_symmetric(S),
            "verdict": report.to_dict(),
        }
    )
