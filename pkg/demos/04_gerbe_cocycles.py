"""Cech cocycles of the Fock-space gerbe, computed by rewriting words."""

from twistk.cech import (coboundary_class, cover_preset, derived_c_values, format_word, hilbert_cocycle,
                         lifted_cocycle, projective_cochain, verify_equivalence, dd_class_report)

cover = cover_preset("tetra")
n = cover.n_patches
hilbert_cocycle(cover)           # raises unless g is a cocycle
print("transition cocycle g ok on", len(cover.simplices(3)), "ordered triples")

# Three lifts of e^{i theta} h_ij; each one gives a scalar 2-cocycle.
lifts = {form: coboundary_class(lifted_cocycle(cover, form)) for form in ("symmetric", "right", "left")}
for form, f in lifts.items():
    a = format_word(f.normal_form((1, 2, 3 + n), 1))
    b = format_word(f.normal_form((1, 2 + n, 3 + n), 1))
    print(f"{form:9}  f(1,2,3') = {a:10}  f(1,2',3') = {b}")

# The projective cocycle values are fixed by consistency of the rewrite rules.
vals = derived_c_values()
print("c(h, e^it) = h^", vals["c(h,e^it) exponent"], "   c(e^it, h) = h^", vals["c(e^it,h) exponent"])

# The three cocycles differ by coboundaries.
a = verify_equivalence(lifts["right"], lifts["symmetric"], projective_cochain(cover, "right"))
b = verify_equivalence(lifts["left"], lifts["symmetric"], projective_cochain(cover, "left"))
print("f'' ~ f':", a["equal"], "  f ~ f':", b["equal"])
print(a["certificates"][5])

rep = dd_class_report(cover_preset("S2", 3), 3)
print("Cech winding", rep["cech_degree"], "   de Rham coefficient", rep["de_rham_degree3"])
