"""Field arithmetic and the point/line incidence rule.

Builds F_9 over F_3, checks a few identities, then walks from a point to the
lines through it and back.
"""
from incidence_ldpc.algebra import build_field, frobenius, subfield_elements
from incidence_ldpc.graph import Point, incident, line_through, point_on

F = build_field(3)
print("F_9 modulus:", F.describe())
print("subfield F_3 inside F_9:", subfield_elements(F))

t = F.encode([0, 1])
print("t * t =", F.decode(F.mul(t, t)), "  t^3 (Frobenius) =", F.decode(frobenius(F, t)))
print("t * t^-1 =", F.decode(F.mul(t, F.inv(t))))

p = Point(1, t, 2)
print(f"\nlines through point {p}:")
for x in range(F.order):
    l = line_through(F, p, x)
    assert incident(F, p, l)
    back = point_on(F, l, p.a)
    print(f"  x={x}: line {l}, point back on the line at a={p.a}: {back}")
