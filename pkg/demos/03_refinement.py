# Refining the grid: a continuous density has self-atoms of size O(1/n),
# so the defect is squeezed below 2*max|d| at every level.
from daugavet import Density, refinement_study
from daugavet.models import cos_kernel, neg_dirac_half

study = refinement_study(cos_kernel(), [4, 16, 64, 256, 1024])
print("cos(pi*(s+t))")
for r in study.results:
    print(f"  n={r.level:5d}  ||T||={r.opnorm:.6f}  defect={r.defect:.2e}  bound={r.defect_bound:.2e}  max|d|={r.max_abs_diag:.2e}")
# ||T|| tends to 2/pi = 0.63662...

# a density that is not row-constant in norm gives a visible, shrinking bound
study = refinement_study(Density("s - t - 0.5"), [4, 16, 64, 256])
print("\ns - t - 0.5, fitted exponent of the bound:", round(study.exponent, 3))

# an atomic kernel that never refines away: -delta at 1/2, but the defect is 0
# because the bad self-atom sits on a single row and the other rows attain the norm
study = refinement_study(neg_dirac_half(), [3, 9, 27, 81])
print("\n-delta_1/2 exact defects:", [str(r.defect) for r in study.results])
