import numpy as np
import pytest

from schubert_schemes.fields import make_field

EX1_GENERATORS = np.array(
    [
        [8, 0, 6, 0, 0, 4, 2],
        [8, 0, 9, 1, 1, 0, 0],
        [4, 1, 5, 1, 0, 0, 0],
        [3, 1, 0, 0, 0, 0, 0],
    ]
).T

EX1_MATRIX = np.zeros((7, 7), dtype=np.int64)
EX1_MATRIX[:, :4] = np.array(
    [
        [4, 0, 3, 0, 0, 2, 1],
        [7, 0, 4, 0, 1, 0, 0],
        [1, 0, 5, 1, 0, 0, 0],
        [3, 1, 0, 0, 0, 0, 0],
    ]
).T

EX2_ALPHA = frozenset({(2, 4), (4, 3), (5, 2), (7, 1)})


@pytest.fixture
def gf11():
    return make_field(11)


@pytest.fixture
def ex1_matrix():
    return EX1_MATRIX.copy()


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE: dict[str, list[tuple[str, bool, str]]] = {}


def record(criterion: str, part: str, ok: bool, detail: str = "") -> None:
    """Store one acceptance outcome and echo it (visible with ``-s``)."""
    ACCEPTANCE.setdefault(criterion, []).append((part, ok, detail))
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion} {part}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        ok = all(p[1] for p in parts)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
        for part, p_ok, detail in parts:
            tr.write_line(f"    {'PASS' if p_ok else 'FAIL'}  {part}  {detail}")
