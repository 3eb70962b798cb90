"""The shift-twisted Witt line algebra, checked on a finite window of basis indices."""
from fractions import Fraction

from homlie import families

W = families.witt_line(Fraction(1, 2))
print("alpha(L_0) =", W.alpha(W.basis(0)))
print("alpha(L_2) =", W.alpha(W.basis(2)))
print("[L_2, L_-1] =", W.bracket(W.basis(2), W.basis(-1)))

for lam in (1, Fraction(1, 2), -3):
    rep = families.window_report(families.witt_line(lam), -1, 6)
    print(f"lambda = {lam}: {rep['triples']} triples, {rep['pairs']} pairs, "
          f"Hom-Jacobi failures {len(rep['hom_jacobi_failures'])}, "
          f"multiplicativity failures {len(rep['multiplicative_failures'])}")
