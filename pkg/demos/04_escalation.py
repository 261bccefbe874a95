# The escalation procedure: a patch of strongly negative self-atoms forces
# unbounded row mass.  Each new point lies in every earlier shrink set.
from fractions import Fraction

from daugavet.foias import escalate, mock_oracle, verify_chain

beta = Fraction(1, 10)

oracle = mock_oracle("const-neg-quarter", bound=1)  # atom(s, t) = -1/4 everywhere
out = escalate(oracle, beta)
chain = out.chain
print(type(out).__name__, "after", len(chain.points), "points")
for m, s in enumerate(chain.points):
    print(f"  s_{m} = {s}")
print("certified mass", chain.certified_mass, "> bound", oracle.bound)
print("chain re-verified:", verify_chain(oracle, chain))

# only the diagonal is negative: the shrink set empties immediately
stall = escalate(mock_oracle("diag-neg-quarter", bound=1), beta)
print("Stalled at step", stall.step, "-", stall.reason)

# nothing negative at all
print(escalate(mock_oracle("nonneg-quarter", bound=1), beta))
