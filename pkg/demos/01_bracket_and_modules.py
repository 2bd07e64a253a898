"""
Brackets, grading and the intermediate series
==============================================

A tour of the algebra layer: the bracket on a rank-two lattice, the
central term, and the three module families acting on basis vectors.
"""

from fractions import Fraction

from hrvir.algebra import LieElement, bracket, jacobi_residual, nested_bracket_coefficient
from hrvir.arith import symbol
from hrvir.families import INFINITY, FamilySpec, ModuleVector, act, is_simple
from hrvir.lattice import LatticeBasis

# the lattice ℤβ₁ ⊕ ℤβ₂ with β₁, β₂ kept symbolic
B = LatticeBasis.standard(2)
e1, e2 = B.vector(1, 0), B.vector(0, 1)
print("[L(1,0), L(0,1)] =", bracket(LieElement.L(e1), LieElement.L(e2)))

# the central term only shows up in degree zero
mu = B.vector(2, -1)
print("[L_μ, L_−μ]      =", bracket(LieElement.L(mu), LieElement.L(-mu)))

# Jacobi on a triple whose brackets hit degree zero
x, y = LieElement.L(e1), LieElement.L(e2)
z = LieElement.L(-(e1 + e2))
print("Jacobi residual  =", jacobi_residual(x, y, z))

# iterated brackets produce the product ∏(iμ+b₁)
g = LatticeBasis.generic_symbols("μ", "b₁")
m, b1 = g.unit(0), g.unit(1)
print("[L_μ,[L_μ,[L_μ,L_{μ+b₁}]]] coefficient:", nested_bracket_coefficient(m, m + b1, 3))

# module actions
v = ModuleVector.basis_vector(e2)
print("A_{0,0}:  L(1,0) x(0,1) =", act(FamilySpec.Aab(0, 0), e1, v))
print("A_{a,b}:  L(1,0) x(0,1) =", act(FamilySpec.Aab(symbol("a"), symbol("b")), e1, v))
zero = ModuleVector.basis_vector(B.zero())
print("A(∞):     L(1,0) x(0,0) =", act(FamilySpec.Aprime(INFINITY), e1, zero))
print("B(1/2):   L(1,0) x(−1,0) =", act(FamilySpec.Bprime(Fraction(1, 2)), e1,
                                        ModuleVector.basis_vector(-e1)))

for b in (0, 1, 2):
    simple, why = is_simple(FamilySpec.Aab(0, b, a_in_M=True))
    print(f"A_(0,{b}) simple: {simple}  ({why})")
