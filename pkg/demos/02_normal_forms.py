"""Normal forms in T(M,p) across the five shipped families.

Every element is a canonical combination of generator words; the
closed-form isomorphism onto each family's oracle ring renders the
value in familiar terms.
"""

from trilocal import (
    DoubleFamily,
    HnnFreeFamily,
    RegularFamily,
    ScaledFamily,
    TensorFreeFamily,
    family_iso,
    format_element,
    parse_normal,
)

# regular: T collapses onto the base ring
rz = RegularFamily("Z")
e = parse_normal(rz, "x[2]*x[3] - 4")
print("regular-Z  :", format_element(e), "  value:", family_iso(e))

# double: T is the polynomial ring, the second coordinate feeds x
dq = DoubleFamily("Q")
e = parse_normal(dq, "x[(2,3)]*x[(0,1)] + 1")
print("double-Q   :", format_element(e), "  value:", family_iso(e))

# scaled: T is Z[1/2]; the single letter carries the halving
s2 = ScaledFamily(2)
e = parse_normal(s2, "x[3]*x[5]")
print("scaled-2   :", format_element(e), "  value:", family_iso(e))
print("             x[2] collapses:", format_element(parse_normal(s2, "x[2]")))

# tensor-free: T is the free product, i.e. the free algebra on both alphabets
tf = TensorFreeFamily("Q", ("s",), ("u",))
e = parse_normal(tf, "x[t(s,u)]*x[t(s,1)] + 2*x[t(1,u)]")
print("tensor-free:", format_element(e), "  value:", family_iso(e))

# hnn-free: a stable letter x appears between the tensor factors
hf = HnnFreeFamily("Q", ("s",), "x")
e = parse_normal(hf, "x[h(1,s)]*x[h(1,1)]")
e2 = parse_normal(hf, "x[h(1,1)]*x[h(s,1)]")
print("hnn-free   :", format_element(e), "  value:", family_iso(e))
print("             same normal form from shifted letters:", e == e2)
