"""The first level-one space with two cusp eigenforms: weight 24."""

from modforms import hecke
from modforms.linalg import poly_str

T2 = hecke.hecke_matrix(24, 2)
T3 = hecke.hecke_matrix(24, 3)
print("T(2) on S_24:", [[str(x) for x in row] for row in T2.tolist()])
print("T(2) and T(3) commute:", T2 @ T3 == T3 @ T2)
cp = T2.charpoly()
print("charpoly:", poly_str(cp))
disc = cp[1] ** 2 - 4 * cp[2]
print("discriminant:", disc, "=", disc / 144169, "* 144169")

for ef in hecke.eigenforms(24):
    print("eigenform, a(2) =", ef.coefficient(2), " a(3) =", ef.coefficient(3))
print("charpoly irreducible over Q:", hecke.maeda_check(24))

print("T(2)(j) =", poly_str(hecke.tn_on_j(2), "j"))
print("T(3)(j) =", poly_str(hecke.tn_on_j(3), "j"))
