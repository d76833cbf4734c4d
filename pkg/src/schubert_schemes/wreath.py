"""Generalized wreath products of association schemes over a finite poset.

Given a poset X and a scheme Q_x on a set Omega_x for every x, the product
set is prod_x Omega_x.  For an anti-chain Y and a choice of nonidentity
class i_x of Q_x for each x in Y, the relation R(Y, (i_x)) holds the pairs
(a, b) with

* a_x = b_x for every x outside Y and outside the strict down-set of Y,
* (a_x, b_x) in class i_x of Q_x for every x in Y,

and no condition on the strict down-set.  Components may be non-symmetric.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Hashable, Mapping, Sequence

import numpy as np

from .posets import Poset, antichains, down_set
from .schemes import SchemeInstance, one_class_scheme

PRODUCT_BOUND = 4096
PAIR_CHUNK = 2**21


@dataclass(frozen=True)
class GwpLabel:
    """Relation label: an anti-chain ``Y`` and a class index for each member."""

    Y: frozenset
    indices: tuple[tuple[Hashable, int], ...]

    @classmethod
    def make(cls, indices: Mapping[Hashable, int]) -> "GwpLabel":
        items = tuple(sorted(indices.items(), key=lambda kv: repr(kv[0])))
        return cls(frozenset(indices), items)

    @property
    def index_map(self) -> dict:
        return dict(self.indices)

    def to_json(self) -> dict:
        enc = lambda x: list(x) if isinstance(x, tuple) else x  # noqa: E731
        key = lambda x: ",".join(map(str, x)) if isinstance(x, tuple) else str(x)  # noqa: E731
        return {
            "Y": sorted((enc(x) for x in self.Y), key=repr),
            "indices": {key(x): i for x, i in self.indices},
        }


IDENTITY = GwpLabel(frozenset(), ())


@dataclass
class GwpSpec:
    """A poset with one component scheme per element.

    ``components`` maps each poset element to its scheme; a sequence is
    taken in the poset's element order.
    """

    poset: Poset
    components: Mapping[Hashable, SchemeInstance] | Sequence[SchemeInstance]

    def __post_init__(self):
        if not isinstance(self.components, Mapping):
            comps = list(self.components)
            if len(comps) != len(self.poset):
                raise ValueError("need one component per poset element")
            self.components = dict(zip(self.poset.elements, comps))
        missing = [x for x in self.poset if x not in self.components]
        if missing:
            raise ValueError(f"no component scheme for {missing}")
        for x, Q in self.components.items():
            if not np.array_equal(Q.matrix == 0, np.eye(Q.size, dtype=bool)):
                raise ValueError(f"component at {x!r}: label 0 is not the identity relation")

    @cached_property
    def order(self) -> list[int]:
        """Linear extension fixing the mixed-radix point encoding (first digit most significant)."""
        return self.poset.linear_extension()

    @cached_property
    def radices(self) -> np.ndarray:
        return np.array([self.components[x].size for x in self.poset.elements], dtype=np.int64)

    @property
    def size(self) -> int:
        return int(np.prod(self.radices, dtype=object))

    def index_of(self, assignment: Mapping[Hashable, int]) -> int:
        idx = 0
        for t in self.order:
            x = self.poset.elements[t]
            idx = idx * int(self.radices[t]) + int(assignment[x])
        return idx

    def coordinates(self, indices=None) -> np.ndarray:
        """Coordinates ``(N, |X|)``, column t for poset element t, of the given point indices."""
        idx = np.arange(self.size) if indices is None else np.asarray(indices)
        out = np.zeros((len(idx), len(self.poset)), dtype=np.int64)
        rest = idx.copy()
        for t in reversed(self.order):
            rest, out[:, t] = np.divmod(rest, self.radices[t])
        return out

    def labels(self) -> list[GwpLabel]:
        out = []
        for Y in antichains(self.poset):
            members = sorted(Y, key=self.poset.index.__getitem__)
            ranges = [range(1, self.components[x].rank) for x in members]
            for choice in product(*ranges):
                out.append(GwpLabel.make(dict(zip(members, choice))))
        return out


def one_class_gwp(poset: Poset, q: int) -> GwpSpec:
    Q = one_class_scheme(q)
    return GwpSpec(poset, {x: Q for x in poset})


class _Labeler:
    """Vectorised pair -> label index, via maximal elements of the disagreement set."""

    def __init__(self, spec: GwpSpec):
        self.spec = spec
        P = spec.poset
        self.strict = P.strict_table()
        self.comps = [spec.components[x] for x in P.elements]
        self.labels = spec.labels()
        self.label_index = {lab: k for k, lab in enumerate(self.labels)}
        self.mask_cache: dict[int, np.ndarray] = {}

    def _maximal(self, mask: int) -> np.ndarray:
        got = self.mask_cache.get(mask)
        if got is None:
            members = np.array([(mask >> t) & 1 for t in range(len(self.comps))], dtype=bool)
            dominated = (self.strict[:, members]).any(axis=1)
            got = members & ~dominated
            self.mask_cache[mask] = got
        return got

    def __call__(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Label indices for coordinate batches ``A``, ``B`` of shape ``(k, |X|)``."""
        P = self.spec.poset
        width = len(self.comps)
        if width == 0:
            return np.zeros(len(A), dtype=np.int64)
        comp = np.stack([Q.matrix[A[:, t], B[:, t]] for t, Q in enumerate(self.comps)], axis=1)
        bits = (comp != 0).astype(np.int64) << np.arange(width, dtype=np.int64)
        masks = bits.sum(axis=1)
        keys = np.concatenate([masks[:, None], comp], axis=1)
        uniq, inv = np.unique(keys, axis=0, return_inverse=True)
        lut = np.empty(len(uniq), dtype=np.int64)
        for u, row in enumerate(uniq):
            top = self._maximal(int(row[0]))
            lab = GwpLabel.make({P.elements[t]: int(row[1 + t]) for t in np.flatnonzero(top)})
            lut[u] = self.label_index[lab]
        return lut[np.ravel(inv)]


def build_gwp(spec: GwpSpec, bound: int = PRODUCT_BOUND) -> SchemeInstance:
    """The generalized wreath product as a dense :class:`SchemeInstance`.

    The label of ``(a, b)`` has ``Y`` = maximal elements of
    ``{x : a_x != b_x in Q_x}`` and ``i_x`` = class of ``(a_x, b_x)`` in
    ``Q_x``; every pair gets exactly one label.
    """
    size = spec.size
    if size > bound:
        raise ValueError(f"product set has {size} points, above the bound {bound}")
    labeler = _Labeler(spec)
    coords = spec.coordinates()
    out = np.empty((size, size), dtype=np.int32)
    rows = max(1, PAIR_CHUNK // max(1, size * max(1, len(spec.poset))))
    for s in range(0, size, rows):
        e = min(size, s + rows)
        A = np.repeat(coords[s:e], size, axis=0)
        B = np.tile(coords, (e - s, 1))
        out[s:e] = labeler(A, B).reshape(e - s, size)
    return SchemeInstance(labeler.labels, out)


def gwp_label_of_pair(spec: GwpSpec, a: Mapping, b: Mapping) -> GwpLabel:
    """Label of one pair, given as element -> value assignments."""
    P = spec.poset
    classes = {x: int(spec.components[x].matrix[a[x], b[x]]) for x in P}
    differ = [x for x in P if classes[x] != 0]
    top = P.maximal(differ)
    return GwpLabel.make({x: classes[x] for x in top})


def satisfies(spec: GwpSpec, label: GwpLabel, a: Mapping, b: Mapping) -> bool:
    """Test the defining conditions of ``R(Y, (i_x))`` on one pair directly."""
    P = spec.poset
    free = down_set(label.Y, P)
    idx = label.index_map
    for x in P:
        cls = int(spec.components[x].matrix[a[x], b[x]])
        if x in label.Y:
            if cls != idx[x]:
                return False
        elif x not in free and cls != 0:
            return False
    return True


def definitional_mismatches(spec: GwpSpec, scheme: SchemeInstance, limit: int = 10) -> list[dict]:
    """Cross-check a built product against the defining conditions, pair by pair.

    For each pair, exactly one label must satisfy the conditions and it must
    be the label stored in ``scheme``.  Cost is pairs x labels; small inputs only.
    """
    P = spec.poset
    coords = spec.coordinates()
    assign = [dict(zip(P.elements, map(int, row))) for row in coords]
    found = []
    for x in range(spec.size):
        for y in range(spec.size):
            hits = [k for k, lab in enumerate(scheme.labels) if satisfies(spec, lab, assign[x], assign[y])]
            if hits != [int(scheme.matrix[x, y])]:
                found.append({"pair": [x, y], "satisfied": hits, "stored": int(scheme.matrix[x, y])})
                if len(found) >= limit:
                    return found
    return found


def gwp_valency(spec: GwpSpec, label: GwpLabel) -> int:
    """Closed-form valency: prod over Y of class valency times prod over the down-set of |Omega_x|."""
    out = 1
    for x, i in label.indices:
        out *= int(np.count_nonzero(spec.components[x].matrix[0] == i))
    for x in down_set(label.Y, spec.poset):
        out *= spec.components[x].size
    return out


def label_count(spec: GwpSpec) -> int:
    total = 0
    for Y in antichains(spec.poset):
        term = 1
        for x in Y:
            term *= spec.components[x].rank - 1
        total += term
    return total


def poset_from_json(text: str | dict) -> Poset:
    return Poset.from_json(text)


def label_json(labels: Sequence[GwpLabel]) -> str:
    return json.dumps([lab.to_json() for lab in labels])
