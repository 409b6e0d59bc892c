"""
Residues of mod-2 symbols
=========================

"""

from isoquad.brauer import SymbolMod2, symbol_is_nontrivial, symbol_residue
from isoquad.fields import FFRatField
from isoquad.fixtures import symbol_chain

# (z^2 - 1) u (2) over F_5(z): only z - 1 and z + 1 see a uniformizer
Z = FFRatField(5)
s = SymbolMod2(Z, [Z.element((4, 0, 1)), 2])
for place in Z.bad_places(s.entries):
    print(f"residue at {place}: {symbol_residue(s, place)}")
print("nontrivial:", symbol_is_nontrivial(s))

# the same class reached from a degree-3 symbol over Q_5(t)
ch = symbol_chain(5, 2)
print(ch["alpha"], "->", " ∪ ".join(f"({e})" for e in ch["first_residue"]),
      "->", ch["on_z"], "->", ch["second_residue"])
