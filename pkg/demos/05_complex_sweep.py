# Complex scalars: max over |lambda| = 1 of ||I + lambda T|| is always 1 + ||T||.
# Each row peaks at lambda = conj(d)/|d|, so a finite candidate set suffices.
from daugavet import complex_sweep_max, kernel, random_kernel, sup_operator_norm
from daugavet.daugavet import grid_sweep_max
from daugavet.scalars import ComplexRational

T = kernel([[ComplexRational("3/10", "2/5")]])
lam, value = complex_sweep_max(T)
print("lambda* =", lam, " value =", value, " 1+||T|| =", 1 + sup_operator_norm(T))

# a dense angle grid agrees to grid resolution
print("grid oracle:", grid_sweep_max(T, 4096))

worst = 0.0
for seed in range(100):
    R = random_kernel("rational-complex", 1 + seed % 5, seed)
    _, v = complex_sweep_max(R)
    assert v == 1 + sup_operator_norm(R)
    worst = max(worst, abs(grid_sweep_max(R)[1] - float(v)))
print("100 random complex kernels: exact match, worst grid gap", f"{worst:.1e}")
