# %% [markdown]
# # Charlier polynomials and the forward difference
#
# The Charlier family is closed under the forward difference: the monic
# derived sequence D P_{n+1} / (n+1) is again Charlier with the same mu.
# Everything below is exact rational arithmetic.

# %%
from fractions import Fraction

from coherentpairs import NuParam, charlier, derived_smop, hankel_regularity, smop_from_moments

W = NuParam.omega(1)
U = charlier(Fraction(1, 2))
print(U.label, "moments:", [str(U.moment(n)) for n in range(6)])

# %% [markdown]
# Build the monic orthogonal sequence from moments and look at the first few.

# %%
P = smop_from_moments(U, 8)
for n in range(5):
    print(n, P[n])
print("recurrence alpha:", [str(a) for a in P.alpha[:5]])
print("recurrence beta: ", [str(b) for b in P.beta[:5]])

# %% [markdown]
# Apply the difference operator once and renormalize.

# %%
D = derived_smop(P, 1, W)
print("lowering closes:", D.polys[:8] == P.polys[:8])

# %% [markdown]
# The Hankel determinants are all positive, so the functional is positive definite.

# %%
reg = hankel_regularity(U, 6)
print([str(d) for d in reg.hankel_dets])
