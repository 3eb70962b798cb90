"""Deform classical algebras by a multiplicative map and watch the axioms move.

Run with ``python3 demos/twisting.py``.
"""
from fractions import Fraction

from homlie import families
from homlie.homalg import (
    LinearSelfMap, hom_assoc_counterexample, is_g_hom_associative, is_multiplicative, twist,
)

# sl(2) with alpha = diag(1, lam, 1/lam) on (h, e, f)
lam = Fraction(2)
L, alpha = families.sl2(lam)
print("sl(2) brackets before twisting:")
for i, j, k, v in L.entries():
    if i < j:
        print(f"  [{L.basis_labels[i]}, {L.basis_labels[j]}] = {v} {L.basis_labels[k]}")

T = twist(L, alpha)
print(f"\nafter mu -> alpha o mu with lambda = {lam}:")
for i, j, k, v in T.algebra.entries():
    if i < j:
        print(f"  [{L.basis_labels[i]}, {L.basis_labels[j]}] = {v} {L.basis_labels[k]}")
print("Hom-Jacobi holds:", is_g_hom_associative(T.algebra, alpha, "A3"))

# the untwisted bracket is not Hom-associative, and the failure is concrete
idx, defect = hom_assoc_counterexample(L, LinearSelfMap.identity(3), "E")
print("\nsl(2) as a plain product, first failing triple:",
      tuple(L.basis_labels[i] for i in idx), "defect", L.format_vector(defect))

# associative side: 2x2 matrices under conjugation by a unipotent matrix
A, conj = families.matrix_inner(2, [[1, 1], [0, 1]])
TA = twist(A, conj)
print("\nM_2 with Ad(u): Hom-associative after twisting:", is_g_hom_associative(TA.algebra, conj, "E"))

# a map that is not multiplicative is refused
scale = LinearSelfMap.diag([2, 2, 2])
print("scaling by 2 is multiplicative on sl(2):", is_multiplicative(L, scale))
try:
    twist(L, scale)
except ValueError as exc:
    print("twist refused:", exc)
