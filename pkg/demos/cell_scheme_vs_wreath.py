# The Piv(M - N) relations on a cell line up with the product scheme over
# its poset of free positions, label for label.
import numpy as np

from schubert_schemes import make_field
from schubert_schemes.schemes import intersection_numbers, is_symmetric, valencies
from schubert_schemes.schubert import cell_scheme, make_cell
from schubert_schemes.verify import main_theorem_check
from schubert_schemes.wreath import build_gwp, one_class_gwp

cell = make_cell(7, 4, make_field(2), lam=(4, 3, 1))
S = cell_scheme(cell)
print(f"{S.size} points, {S.rank} relations, symmetric: {is_symmetric(S)}")

# Valencies, keyed by the anti-chain that labels each relation
for beta, k in sorted(zip(S.labels, valencies(S)), key=lambda t: (len(t[0]), t[0])):
    print(f"  {list(beta)!s:32} {k}")

G = build_gwp(one_class_gwp(cell.poset, 2))
print("product scheme relations:", G.rank)

ok, detail = main_theorem_check(cell, cell_S=S)
print("relation-by-relation equality:", ok, detail)

# Intersection numbers of a smaller cell
p = intersection_numbers(cell_scheme(make_cell(4, 2, make_field(3), lam=(2, 1))))
print("p[k, i, j] for lambda = (2,1), q = 3 has", np.count_nonzero(p), "nonzero entries")
