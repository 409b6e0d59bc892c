"""
Two quadrics in five variables with no primitive zero mod 25
============================================================

"""

from isoquad.geometry import local_global_report
from isoquad.geometry.pencil import amer_brumer_pencil, pencil_search, five_variable_pencil

p, u, s = 5, 2, 2
f, g = five_variable_pencil(p, u, s)
print("f =", f)
print("g =", g)

# vectors that fail mod 5 never get lifted
res = pencil_search(f, g, p)
print(res.to_json())

# f + t g over Q_5(t); an anisotropic completion rules out a common zero over Q_5
q = amer_brumer_pencil(f, g, p)
print(q)
rep = local_global_report(q)
for e in rep.entries:
    print(f"{str(e.place):22} {e.verdict.status.value}")
