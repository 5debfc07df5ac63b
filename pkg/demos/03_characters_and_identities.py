"""Walk through the level-1 characters, their q-expansions, and the S-transform."""

from affinesl2.qseries import (
    character,
    eta_inverse_cubed,
    log_eta_expansion_check,
    numeric_eval,
    s_transform_check,
    verify_k1_identity,
    verify_t_parametrization,
)
from affinesl2.wzwrep import rho_S

# level 1 means n = 3 and two characters chi_1, chi_2
n = 3
chi = {lam: character(lam, n, 9) for lam in (1, 2)}
for lam, s in chi.items():
    print(f"chi_{lam} leading exponent {s.leading_exponent()}, coefficients {s.table(10)}")
    print(f"  as a series: {s}")

# the eta prefactor alone: 1/eta(q)^3 without the q^(1/8) shift
print("\n1/eta^3 coefficients:", eta_inverse_cubed(8).coeffs)

# -ln prod(1 - q^j) = sum sigma_1(k) q^k / k, checked term by term
print("log expansion through order 30:", log_eta_expansion_check(30))

# two exact identities between the level-1 characters:
#   chi_1 chi_2 (chi_1^4 - chi_2^4) = 2
#   t chi_1^8 = 2 chi_1^4 + t^5 with t = chi_1 chi_2
print("product identity through order 30:", verify_k1_identity(30))
print("t parametrization through order 30:", verify_t_parametrization(30))

# numerically, S acts on the characters as tau -> -1/tau
tau = 0.1 + 0.9j
smat = rho_S(n).to_floats()
lhs = [numeric_eval(chi[lam], -1 / tau) for lam in (1, 2)]
rhs = [sum(smat[i][j] * numeric_eval(chi[j + 1], tau) for j in range(2)) for i in range(2)]
for i in range(2):
    print(f"chi_{i + 1}(-1/tau) = {lhs[i]:.10f}, (S chi)(tau) = {rhs[i]:.10f}")
print("S-transform check at truncation 400, tol 1e-8:",
      s_transform_check(n, tau, truncation=400, tol=1e-8))
