# When does ||I+T|| = 1 + ||T|| on a finite space?
# Answer: exactly when some norm-attaining row has a nonnegative diagonal entry.
from daugavet import daugavet_report, kernel
from daugavet.search import exhaustive_scan

examples = {
    "-I": [[-1, 0], [0, -1]],
    "mixed, good row attains": [["-1/2", "1/2"], ["1/5", "4/5"]],
    "mixed, bad row attains": [["-1/2", "1/2"], ["1/5", "1/5"]],
    "positive": [[1, 2], [3, 4]],
}
for name, rows in examples.items():
    rep = daugavet_report(kernel(rows))
    print(f"{name:26s} defect {str(rep.defect):>5s}   (*) {rep.star!s:5s}  (**) {rep.double_star}")

# -I is the textbook failure: every point is isolated, every self-atom is -1.
# Positive kernels never fail; nonnegative diagonals never fail.

summary = exhaustive_scan([-1, 0, 1], 2)
print("\nall 81 matrices over {-1,0,1}:", summary)
