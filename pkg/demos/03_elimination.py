"""
Eliminating the leakage recurrences
====================================

Two recurrences for c_ν come out of commutator identities in the
three-layer module.  Eliminating c_{ν+1}, …, c_{ν−3} leaves p(ν̄)·c_ν = 0.
This demo follows the stages, shows where the printed multiplier needs
a sign change, and looks at the zeros of p.
"""

from fractions import Fraction

from hrvir.arith import Scalar
from hrvir.lab import pipeline as P
from hrvir.lab import transcriptions as T

printed = P.elimination("printed")
fixed = P.elimination()
for name, r in printed.identities:
    print(f"printed multipliers, {name}: {'exact' if r.is_zero() else 'residual left'}")
for name, r in fixed.identities:
    print(f"corrected γ = {P.CORRECTED_GAMMA}, {name}: {'exact' if r.is_zero() else 'residual left'}")

q = P.p_quotient()
coeffs = P.quotient_coefficients()
print("p / listed factors has ν̄-degree", q.degree(P.NUBAR))
print("leading coefficient:", coeffs[2])
print("ratio to (b+b″)(b+b″−1):", Scalar(coeffs[2]) / T.get("p0"))

print("pairs (b, b″) where p vanishes for every ν̄ and d:",
      ", ".join(f"({b}, {bpp})" for b, bpp in P.p_zeros().points))

# the numeric route, straight from the printed rows
for point in [(0, 2, 3, Fraction(5, 7)), (Fraction(-1, 2), Fraction(3, 2), 4, Fraction(1, 3))]:
    out = P.numeric_oracle(*point)
    print(f"at (b,b″,d,ν̄)=({', '.join(map(str, point))}): p = {out['p']}, free solutions: {len(out['null'])}")
