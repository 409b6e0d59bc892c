"""
Isotropy over Q_p, F_p and F_p(z)
=================================

"""

from isoquad.fields import FFRatField, FiniteField, LocalField, hilbert_symbol
from isoquad.qform import DiagForm, is_isotropic, replay, springer_decompose

Q5 = LocalField(5)

# the engine splits by valuation parity and recurses into F_5
q = DiagForm(Q5, [-1, 2, 10, 5])
d = springer_decompose(q)
print(q, "->", d.q1, "and", d.q2)
v = is_isotropic(q)
print(v.status.value, "via", v.rule)
for step in v.chain():
    print("  " * step["depth"], step["rule"], step["form"], step["status"])
print("certificate replays:", replay(v))

# ternary forms and the Hilbert symbol agree
for a, b in [(2, 5), (2, 3), (-1, 5)]:
    tern = DiagForm(Q5, [1, -a, -b])
    print(f"({a},{b})_5 = {hilbert_symbol(Q5.element(a), Q5.element(b)):+d}",
          "<1,-a,-b>", is_isotropic(tern).status.value)

# over F_5 every form of rank >= 3 has a zero
print([str(x) for x in is_isotropic(DiagForm(FiniteField(5), [1, 2, 3])).witness])

# over F_5(x) a rank-4 form decided place by place
Z = FFRatField(5, "x")
q = DiagForm(Z, [Z.element(-1), Z.element(2), Z.element((0, 1)), Z.element((2, -2))])
v = is_isotropic(q)
print(q, v.status.value, "certified at", v.place)
