# The row formula for ||I + T|| and the max-of-both-signs identity.
from fractions import Fraction

from daugavet import daugavet_report, kernel, random_kernel
from daugavet.daugavet import brute_force_id_norm

# a 2x2 kernel; rows are the measures mu_s
T = kernel([["-1/2", "1/2"], ["1/5", "1/5"]])
rep = daugavet_report(T)
print("||T||     =", rep.opnorm)
print("||I+T||   =", rep.norm_id_plus)   # row 1 wins: |1 + 1/5| + 1/5
print("||I-T||   =", rep.norm_id_minus)  # row 0 wins: |1 + 1/2| + 1/2

# one sign always reaches 1 + ||T||
assert max(rep.norm_id_plus, rep.norm_id_minus) == 1 + rep.opnorm

# the sign-vector oracle never sees the formula
assert brute_force_id_norm(T, 1) == rep.norm_id_plus
assert brute_force_id_norm(T, -1) == rep.norm_id_minus

# same thing on a pile of random exact kernels
for seed in range(200):
    R = random_kernel("rational-signed", 1 + seed % 6, seed)
    r = daugavet_report(R)
    assert max(r.norm_id_plus, r.norm_id_minus) == 1 + r.opnorm
print("identity checked on 200 random kernels, all exact:", isinstance(r.opnorm, Fraction))
