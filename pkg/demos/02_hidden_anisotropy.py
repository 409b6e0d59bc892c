"""
A form over Q_5(t) isotropic at every place of P^1, yet anisotropic
=====================================================================

"""

from isoquad.brauer import albert_form, biquaternion_is_division
from isoquad.errors import NonNormalCrossings
from isoquad.fields import QptField, parse_qpt
from isoquad.fields.render import symbolic_form
from isoquad.geometry import local_global_report, substitute
from isoquad.qform import two_param_decompose

p, a = 5, 2
K = QptField(p)
slots = [parse_qpt(s, p) for s in ["a", "p", "t", "a*(p-t)"]]
q = albert_form(*slots, K)
print("form:", symbolic_form(q, p, a))

# the divisors t, t-p and p meet at the closed point (p, t)
try:
    two_param_decompose(q, 0)
except NonNormalCrossings as exc:
    print("at (p, t):", exc)

# t = p x separates them
print("on t=5x:", symbolic_form(substitute(q, "t=5x"), p, a))

rep = local_global_report(q)
for e in rep.entries:
    js = e.to_json()
    print(f"{e.role:5} {str(e.place):20} {js['status']:12} q1={js.get('q1')} q2={js.get('q2')}")
print(rep.summary["text"])

res = biquaternion_is_division(*slots, K)
print("division algebra:", res.division, "certificate:", res.certificate.place)
