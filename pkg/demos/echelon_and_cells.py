# Canonical echelon matrices, pivot sets and the cell they pick out.
import numpy as np

from schubert_schemes import echelon, make_field
from schubert_schemes.posets import alpha_to_partition, free_positions
from schubert_schemes.schubert import enumerate_cell, make_cell, matrix_to_point

F = make_field(11)

# Four spanning vectors of a 4-dimensional subspace of GF(11)^7, as columns
gens = np.array([
    [8, 0, 6, 0, 0, 4, 2],
    [8, 0, 9, 1, 1, 0, 0],
    [4, 1, 5, 1, 0, 0, 0],
    [3, 1, 0, 0, 0, 0, 0],
]).T

M = echelon.rrcef(F, gens, n=7)
print("canonical matrix of the span:")
print(M)

alpha = echelon.pivot_set(M)
print("pivot set:", sorted(alpha))
print("shape:", alpha_to_partition(alpha, 7, 4))

# The free entries of every matrix with this pivot set
print("free positions:", free_positions(alpha, 7, 4))
cell = make_cell(7, 4, F, alpha=alpha)
print("coordinates of M in its cell:", matrix_to_point(cell, M))

# Over GF(2) the same cell is small enough to list outright
small = make_cell(7, 4, make_field(2), alpha=alpha)
print("points over GF(2):", len(enumerate_cell(small)))
