"""Twisted K-groups of T x M from the Mayer-Vietoris presentation."""

from twistk.ktheory import multiplication_by_one_minus_lambda, preset, twisted_k

# The circle is covered by two arcs.  Gluing multiplies by the line bundle
# lambda, so everything hinges on the map 1 - lambda on K^*(M).
pres = preset("S2", 3)
print(pres.label)
print("1 - lambda on K^0(S^2):", multiplication_by_one_minus_lambda(pres, 0).to_rows())

# Kernel and cokernel of that map assemble into the groups.
for k in range(0, 6):
    res = twisted_k(preset("S2", k))
    print(f"S2  k={k}:  K0 = {res.k0!s:10}  K1 = {res.k1}")

# The torus has K^1(T^2) = Z^2 as well; lambda fixes it, so it shows up twice.
for k in (1, 2, 5):
    res = twisted_k(preset("T2", k))
    print(f"T2  k={k}:  K0 = {res.k0!s:10}  K1 = {res.k1}")

# Each degree remembers the two pieces of its extension.
res = twisted_k(preset("S2", 4))
for d in res.degrees:
    print(d.to_json())
