"""The supercharge on the truncated spinor x Fock space and its kernel."""

from fractions import Fraction

from twistk.fock import (build_basis, interior_operator_checks, p_sector_spectrum,
                         shift_covariance_checks, spectrum, square_decomposition_check)

basis = build_basis()          # Lambda = 6, q_max = 4, E_max = 6
print(basis)
print("first states:")
for s in basis.states[:5]:
    print("   ", s)

# Exact checks in Q(sqrt 2); only columns away from the cutoff count.
for chk in interior_operator_checks(basis):
    print(f"{chk.name:45} interior={chk.interior:4}  failures={len(chk.failures)}")

y = Fraction(1, 2)
sq = square_decomposition_check(y, basis)
print("Q^2 decomposition ok:", sq["check"].ok, " vacuum value:", sq["vacuum_value"])

# The shift conjugates Q_y to Q_{y-1}.
cov = shift_covariance_checks(y, basis)
print("S Q_y S^-1 = Q_{y-1}:", cov["covariance"].ok,
      "   S Q_y S^-1 = Q_y fails on", len(cov["invariance"].failures), "states")

# Kernel only at integer y; otherwise a gap (n + y)^2.
for y in (-1, 0, 1, 2, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    sp = spectrum(y, basis)
    print(f"y = {str(y):5}  dim ker = {sp.kernel_dimension}   smallest nonzero = {sp.smallest_nonzero:.4f}")

# On eta0 (x) S^k|0> the eigenvalues are (k + y)^2.
print([(k, round(e, 6)) for k, _, e in p_sector_spectrum(Fraction(1, 3), basis)])
