# %% [markdown]
# # A coherent pair from a Pearson equation
#
# Charlier(1) satisfies D(sigma U) = tau U with sigma = x and tau = 1 - x.
# From that pair alone the structure of D[sigma Q_{n+1}] is constrained to a
# narrow window of indices. We check the window for a few n and then watch
# it break for a wrong sigma.

# %%
from coherentpairs import (DistributionalRelation, NuParam, PearsonPair, Poly, charlier, class_estimate,
                           converse_coherence_check, pearson_solve, smop_from_moments)

W = NuParam.omega(1)
U = charlier(1)
pair = pearson_solve(U, W, 1, 1)
print("sigma =", pair.sigma, " tau =", pair.tau, " class bound:", pair.class_bound)
print("class estimate:", class_estimate(U, W, 3))

# %%
P = smop_from_moments(U, 14)
one = DistributionalRelation(0, Poly.const(1), Poly.const(1), 20)
nu = NuParam.omega(-1)
good = PearsonPair(Poly.x(), Poly([1, -1]), W)
for n in range(2, 6):
    rep = converse_coherence_check(P, P, good, one, nu, n)
    print(n, rep.passed, (rep.ell, rep.t, rep.j, rep.r, rep.s))

# %% [markdown]
# A sigma of the wrong degree leaves nonzero coefficients outside the window.

# %%
bad = PearsonPair(Poly([0, 0, 1]), Poly([1, -1]), W)
print([converse_coherence_check(P, P, bad, one, nu, n).passed for n in range(2, 6)])
