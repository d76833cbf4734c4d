# Borel orbitals on a cell can be finer than the Piv(M - N) labels.
#
# On the 2x2 board (n=4, m=2, lambda=(2,2)) over GF(2) the stabiliser of the
# 0/1 base point acts on the free block D by D -> P D L (P upper, L lower
# triangular), which keeps rank(D).  The label {(2,2)} contains free blocks
# of rank 1 and of rank 2, so it splits into two orbitals.
import numpy as np

from schubert_schemes import echelon, make_field
from schubert_schemes.schubert import brute_force_orbitals, cell_scheme, enumerate_cell, make_cell, point_to_matrix

F = make_field(2)
cell = make_cell(4, 2, F, lam=(2, 2))
S = cell_scheme(cell)
orb = brute_force_orbitals(cell)
print("labels:", S.rank, " orbitals:", len(np.unique(orb)))

for k, beta in enumerate(S.labels):
    inside = np.unique(orb[S.matrix == k])
    print(f"  label {list(beta)!s:20} orbitals {len(inside)}")

# Two pairs with the same label but in different orbitals
pts = enumerate_cell(cell)
k = S.labels.index(((2, 2),))
seen = {}
for x, y in np.argwhere(S.matrix == k):
    seen.setdefault(orb[x, y], (x, y))
for o, (x, y) in seen.items():
    D = F.sub(point_to_matrix(cell, pts[x]), point_to_matrix(cell, pts[y]))[:2, :2]
    print(f"orbital {o}: difference block\n{D}")

# The explicit two-matrix witness only works when every nonzero column of
# M - N holds one of its pivots
N = point_to_matrix(cell, [0, 0, 0, 0])
M = point_to_matrix(cell, [1, 0, 0, 1])
print("witness condition met:", echelon.pair_witness_applies(F, M, N))
