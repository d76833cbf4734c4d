"""End-to-end checks for the Schubert-cell schemes.

Each check returns a :class:`Check`; :func:`verify_cell` bundles the
per-cell checks into a :class:`VerificationReport`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import echelon
from .fields import FiniteField
from .posets import (
    Poset,
    alpha_to_partition,
    antichain_json,
    antichains,
    down_set,
    grid_poset,
    subpartitions,
)
from .schemes import SchemeInstance, is_symmetric, valencies, verify_scheme
from .schubert import (
    SchubertCell,
    all_cells,
    cell_scheme,
    enumerate_cell,
    matrix_to_point,
    orbital_invariance_trial,
    point_to_matrix,
    random_points,
    sampled_relation_labels,
    transitivity_witness,
)
from .wreath import GwpLabel, GwpSpec, _Labeler, build_gwp, one_class_gwp

FULL_COMPARISON_CAP = 4096
SAMPLED_COMPARISON_PAIRS = 10**5
EXHAUSTIVE_AXIOM_CAP = 512


@dataclass
class Check:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "PASS"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "seconds": round(self.seconds, 4)}


def _timed(name, fn, *args, **kwargs) -> Check:
    t0 = time.perf_counter()
    status, detail = fn(*args, **kwargs)
    return Check(name, "PASS" if status else "FAIL", detail, time.perf_counter() - t0)


@dataclass
class VerificationReport:
    configuration: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "configuration": self.configuration,
            "status": "PASS" if self.ok else "FAIL",
            "checks": [c.to_dict() for c in self.checks],
        }

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def cell_config(cell: SchubertCell) -> dict:
    return {
        "n": cell.n,
        "m": cell.m,
        "q": cell.field.q,
        "alpha": antichain_json(cell.alpha),
        "lambda": list(cell.lam),
        "size": cell.size,
    }


# -- the main identification ------------------------------------------------


def _gwp_for_cell(cell: SchubertCell, shuffle_rng=None) -> GwpSpec:
    poset = cell.poset
    if shuffle_rng is not None:
        order = list(poset.elements)
        np.random.default_rng(shuffle_rng).shuffle(order)
        idx = [cell.poset.index[x] for x in order]
        poset = Poset(order, cell.poset.table[np.ix_(idx, idx)], check=False)
    return one_class_gwp(poset, cell.field.q)


def _label_correspondence(cell_labels, gwp_labels) -> dict[int, int]:
    """beta <-> (Y = beta, every class index 1)."""
    gwp_index = {lab: k for k, lab in enumerate(gwp_labels)}
    out = {}
    for k, beta in enumerate(cell_labels):
        target = GwpLabel.make({pos: 1 for pos in beta})
        if target not in gwp_index:
            raise AssertionError(f"no product label for {beta}")
        out[k] = gwp_index[target]
    if len(out) != len(gwp_labels):
        raise AssertionError("label counts differ")
    return out


def main_theorem_check(
    cell: SchubertCell,
    cap: int = FULL_COMPARISON_CAP,
    rng=0,
    shuffle_rng=None,
    cell_S: SchemeInstance | None = None,
):
    """Relation-by-relation equality of the cell scheme and the one-class product."""
    spec = _gwp_for_cell(cell, shuffle_rng)
    P = spec.poset
    detail = {"points": cell.size}
    if cell.size <= cap:
        S = cell_S if cell_S is not None else cell_scheme(cell, bound=cap)
        G = build_gwp(spec, bound=cap)
        corr = _label_correspondence(S.labels, G.labels)
        # identify cell points with product points through matrix_to_point
        perm = np.empty(cell.size, dtype=np.int64)
        for t, pt in enumerate(enumerate_cell(cell)):
            coords = matrix_to_point(cell, point_to_matrix(cell, pt))
            perm[t] = spec.index_of({pos: int(coords[cell.free_index[pos]]) for pos in P})
        lut = np.array([corr[k] for k in range(S.rank)])
        mapped = lut[S.matrix]
        expected = G.matrix[np.ix_(perm, perm)]
        bad = mapped != expected
        detail.update(mode="full", labels=S.rank, pairs=cell.size**2)
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            detail["mismatch"] = {
                "pair": [x, y],
                "cell_label": antichain_json(S.labels[S.matrix[x, y]]),
                "product_label": G.labels[expected[x, y]].to_json(),
            }
            return False, detail
        return True, detail

    # sampled comparison for cells above the cap
    g = np.random.default_rng(rng)
    xs = random_points(cell, SAMPLED_COMPARISON_PAIRS, g)
    ys = random_points(cell, SAMPLED_COMPARISON_PAIRS, g)
    cell_labels = sampled_relation_labels(cell, xs, ys)
    labeler = _Labeler(spec)
    cols = [cell.free_index[pos] for pos in P.elements]
    prod_idx = labeler(xs[:, cols], ys[:, cols])
    detail.update(mode="sampled", pairs=SAMPLED_COMPARISON_PAIRS, cap=cap)
    for t, beta in enumerate(cell_labels):
        if labeler.labels[prod_idx[t]] != GwpLabel.make({pos: 1 for pos in beta}):
            detail["mismatch"] = {"x": xs[t].tolist(), "y": ys[t].tolist(), "cell_label": antichain_json(beta)}
            return False, detail
    return True, detail


def verify_main_theorem(cell: SchubertCell, **kwargs) -> Check:
    return _timed("main_theorem", main_theorem_check, cell, **kwargs)


def verify_symmetry(cell: SchubertCell, S: SchemeInstance | None = None) -> Check:
    def run():
        scheme = S if S is not None else cell_scheme(cell)
        return is_symmetric(scheme), {"labels": scheme.rank}

    return _timed("symmetry", run)


def verify_axioms(cell: SchubertCell, S: SchemeInstance | None = None, cap: int = EXHAUSTIVE_AXIOM_CAP, rng=0) -> Check:
    def run():
        scheme = S if S is not None else cell_scheme(cell)
        rep = verify_scheme(scheme, bound=cap, rng=rng)
        return rep.ok, {"exhaustive": rep.exhaustive, "counterexample": rep.counterexample, "notes": rep.notes}

    return _timed("scheme_axioms", run)


# -- counting -------------------------------------------------------------


def gaussian_binomial(n: int, m: int, q: int) -> int:
    """Product formula prod_{i<m} (q^(n-i) - 1) / (q^(m-i) - 1), exact."""
    if not 0 <= m <= n:
        return 0
    num = den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (m - i) - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def gaussian_check(n: int, m: int, q: int):
    """Cell sizes summed over all pivot sets against the product formula.

    Pivot sets are found by enumerating anti-chains of ``[n] x [m]`` directly,
    not through the partition bijection.
    """
    alphas = [a for a in antichains(grid_poset(n, m)) if len(a) == m]
    total = sum(q ** sum(alpha_to_partition(a, n, m)) for a in alphas)
    expected = gaussian_binomial(n, m, q)
    ok = total == expected and len(alphas) == comb(n, m)
    return ok, {"sum": total, "gaussian_binomial": expected, "cells": len(alphas), "binomial": comb(n, m)}


def verify_gaussian_binomial(n: int, m: int, field: FiniteField) -> Check:
    return _timed("gaussian_binomial", gaussian_check, n, m, field.q)


def valency_check(cell: SchubertCell, S: SchemeInstance | None = None):
    """Enumerated out-degrees against (q-1)^|beta| * q^|Down(beta)|, for every label."""
    scheme = S if S is not None else cell_scheme(cell)
    q = cell.field.q
    counted = valencies(scheme)
    # out-degrees must not depend on the base point
    for x in (0, scheme.size - 1):
        if np.bincount(scheme.matrix[x], minlength=scheme.rank).tolist() != counted:
            return False, {"non_constant_from": x}
    for k, beta in enumerate(scheme.labels):
        formula = (q - 1) ** len(beta) * q ** len(down_set(beta, cell.poset))
        if formula != counted[k]:
            return False, {"label": antichain_json(beta), "formula": formula, "counted": counted[k]}
    return True, {"labels": scheme.rank}


def structural_counts(cell: SchubertCell, S: SchemeInstance | None = None):
    """Anti-chains of the free poset, subpartitions of lambda, and scheme labels agree."""
    n_anti = len(antichains(cell.poset))
    n_sub = len(subpartitions(cell.lam))
    n_lab = S.rank if S is not None else len(cell.relation_labels())
    return n_anti == n_sub == n_lab, {"antichains": n_anti, "subpartitions": n_sub, "labels": n_lab}


# -- randomized group-action checks ---------------------------------------


def transitivity_check(cell: SchubertCell, trials: int = 1000, rng=0):
    """Random pairs (M, N) in the cell: the composite witness maps N to M.

    The factorisations ``M = G_M X`` and ``N = G_N X`` are also checked by
    exact multiplication.
    """
    F = cell.field
    g = np.random.default_rng(rng)
    X = cell.base_matrix
    for t in range(trials):
        x, y = random_points(cell, 2, g)
        M, N = point_to_matrix(cell, x), point_to_matrix(cell, y)
        for A in (M, N):
            W = echelon.borel_witness(F, A)
            if not echelon.is_borel(F, W) or not np.array_equal(echelon.matmul(F, W, X), A):
                return False, {"trial": t, "failed": "factorisation", "matrix": A.tolist()}
        G = transitivity_witness(cell, x, y)
        if not echelon.is_borel(F, G) or not np.array_equal(echelon.borel_act(F, G, N), M):
            return False, {"trial": t, "failed": "transport", "x": x.tolist(), "y": y.tolist()}
    return True, {"trials": trials}


def verify_orbit_transitivity(cell: SchubertCell, trials: int = 1000, rng=0) -> Check:
    return _timed("orbit_transitivity", transitivity_check, cell, trials, rng)


def pair_witness_check(cell: SchubertCell, trials: int = 1000, rng=0):
    """Random pairs: the pair witness G must give M = G X and N = G Y exactly."""
    F = cell.field
    g = np.random.default_rng(rng)
    Y = cell.base_matrix
    failures, first, covered = 0, None, 0
    for t in range(trials):
        x, y = random_points(cell, 2, g)
        M, N = point_to_matrix(cell, x), point_to_matrix(cell, y)
        G = echelon.pair_witness(F, M, N)
        X = echelon.indicator(cell.n, cell.alpha | echelon.pivot_set(F.sub(M, N)))
        covered += echelon.pair_witness_applies(F, M, N)
        ok = (
            echelon.is_borel(F, G)
            and np.array_equal(echelon.matmul(F, G, X), M)
            and np.array_equal(echelon.matmul(F, G, Y), N)
        )
        if not ok:
            failures += 1
            if first is None:
                first = {"trial": t, "M": M.tolist(), "N": N.tolist()}
    return failures == 0, {"trials": trials, "failures": failures, "column_condition_met": covered, "first_failure": first}


def invariance_check(cell: SchubertCell, trials: int = 1000, rng=0):
    rep = orbital_invariance_trial(cell, trials, rng)
    return rep.ok, {"trials": rep.trials, "failures": rep.failures, "first_failure": rep.first_failure}


def pivot_invariance_check(cell: SchubertCell, trials: int = 1000, rng=0):
    """Piv(borel_act(G, M)) = Piv(M) for random G in B and random points M."""
    F = cell.field
    g = np.random.default_rng(rng)
    for t in range(trials):
        M = point_to_matrix(cell, random_points(cell, 1, g)[0])
        G = echelon.random_borel(cell.n, F, g)
        if echelon.pivot_set(echelon.borel_act(F, G, M)) != echelon.pivot_set(M):
            return False, {"trial": t, "M": M.tolist(), "G": G.tolist()}
    return True, {"trials": trials}


# -- bundles ----------------------------------------------------------------


def verify_cell(
    cell: SchubertCell,
    trials: int = 100,
    rng=0,
    cap: int = FULL_COMPARISON_CAP,
    axiom_cap: int = EXHAUSTIVE_AXIOM_CAP,
) -> VerificationReport:
    """Symmetry, scheme axioms, main identification, valencies, counts and transitivity."""
    report = VerificationReport(cell_config(cell))
    S = cell_scheme(cell, bound=cap) if cell.size <= cap else None
    if S is not None:
        report.checks.append(verify_symmetry(cell, S))
        report.checks.append(verify_axioms(cell, S, axiom_cap, rng))
        report.checks.append(_timed("valencies", valency_check, cell, S))
    report.checks.append(verify_main_theorem(cell, cap=cap, rng=rng, cell_S=S))
    report.checks.append(_timed("structural_counts", structural_counts, cell, S))
    report.checks.append(verify_orbit_transitivity(cell, trials, rng))
    return report


def verify_grassmannian(n: int, m: int, field: FiniteField, **kwargs) -> list[VerificationReport]:
    """Every cell of Gr(m, n), plus one Gaussian-binomial report."""
    reports = [verify_cell(c, **kwargs) for c in all_cells(n, m, field)]
    summary = VerificationReport({"n": n, "m": m, "q": field.q})
    summary.checks.append(verify_gaussian_binomial(n, m, field))
    reports.append(summary)
    return reports
