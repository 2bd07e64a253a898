"""
The three-term system and its determinant
==========================================

Apply the triple-commutator identity to x_ν in the layered module,
specialize three ways, and factor the determinant of the resulting
3×3 system in a_{ν−μ}, a_ν, a_{ν+μ}.
"""

from hrvir.arith import Scalar, symbol
from hrvir.layered import NUBAR
from hrvir.lab import threeterm as TT
from hrvir.lab.derive import MU, derive_a_relation

rel, decisions = derive_a_relation()
print("relation read off the y-layer has", len(rel.num.terms), "terms")
print("generic-position decisions:", decisions or "none")

D = TT.determinant_D()
print("determinant has", len(D.terms), "terms, total degree", D.degree())

# divide out the generic factor and look at what is left
q = TT.reduced_determinant()
print("reduced determinant:", q)

# which rational (b, b′) kill it identically?
print("isolated zeros (b, b′):", ", ".join(f"({b}, {bp})" for b, bp in TT.determinant_zeros().points))

B, BP, D_ = symbol("b"), symbol("b′"), symbol("d")
point = {NUBAR: 1, MU: 2, D_: 5, B: 3, BP: 7}
print("numeric determinant at (ν̄,μ,d,b,b′)=(1,2,5,3,7):", TT.numeric_determinant(point))
print("b′ = b kills it:", Scalar(D).substitute({BP: Scalar.var(B)}).is_zero())
