"""Walk through Galois symmetries, the kernel, and the genus formula."""

from math import gcd
import random

from affinesl2.galois_kernel import (
    bantay_sigma_S_identity,
    enumerate_kernel,
    factor_kernel_sl2z8,
    genus,
    sigma_covariance_check,
    sigma_on_matrix,
    sigma_perm,
)
from affinesl2.modgroup import random_matrix
from affinesl2.wzwrep import conductor, rho_S

n = 5
N = conductor(n)
print(f"n = {n}, conductor N = {N}")

# Galois conjugation sigma_L permutes the primaries up to sign; on S it acts
# as an explicit signed permutation
S = rho_S(n)
d = 3
perm = sigma_perm(d, n)
print(f"\nsigma_{d} on S as a signed permutation: {perm}")
print("signed permutation == entrywise conjugate:", perm.applied_to_rows(S) == sigma_on_matrix(d, S))

# sigma_L(rho(m)) = rho(m_L) where m_L rescales the off-diagonal entries
rng = random.Random(11)
mats = [random_matrix(N, rng) for _ in range(5)]
units = [L for L in range(1, N) if gcd(L, N) == 1]
print(f"covariance over {len(units)} Galois indices x {len(mats)} matrices:",
      all(sigma_covariance_check(L, r, n) for L in units for r in mats))
print("sigma_C(S) word identity for all units:",
      all(bantay_sigma_S_identity(C, n) for C in units))

# the kernel of rho on SL(2, Z/NZ), found by exhaustive exact enumeration
report = enumerate_kernel(n)
print(f"\nkernel size {len(report.kernel)}, image order {report.image_order}")
for r in report.kernel:
    print("  kernel element:", r)
print("every kernel element has gcd(c, 2n) > 1:",
      all(gcd(r.c, 2 * n) != 1 for r in report.kernel))

# reduced mod 8 and quotiented by sign, the kernel has exactly four classes
classes = factor_kernel_sl2z8(7)
print("\nfactor kernel mod 8 at n = 7:", [r.key() for r in classes])

# for prime p = 3 mod 4, p >= 7, the modular curve quotient has genus
# (p^2 - 1)(4p - 3)/2 + 1
for p in (7, 11, 19, 23):
    print(f"genus({p}) = {genus(p)}")
