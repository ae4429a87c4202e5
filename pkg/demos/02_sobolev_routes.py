# %% [markdown]
# # Two routes to Sobolev orthogonal polynomials
#
# Take U = Charlier(1) and pair it with a Geronimus modification V. The pair
# is coherent, so the Sobolev basis can be built either by Gram-Schmidt on
# the discrete Sobolev inner product or by a short recursion that only uses
# the coherence coefficients. Both must agree to the last digit.

# %%
from coherentpairs import (NuParam, SobolevContext, charlier, coherence_fit, coherent_recursion, geronimus,
                           smop_from_moments, sobolev_smop_gram)

W = NuParam.omega(1)
U = charlier(1)
V = geronimus(U, -1, 1)
P, Q = smop_from_moments(U, 12), smop_from_moments(V, 12)

# %%
C = coherence_fit(P, Q, 1, 0, 1, 0, W, 9)
print("a_{1,n}:", [str(C.a[(1, n)]) for n in range(1, 8)])

# %%
ctx = SobolevContext(U, V, 1, W, 2)
S = sobolev_smop_gram(ctx, 8)
R = coherent_recursion(ctx, P, Q, C, 7)
print("polynomials agree:", S.polys == R.polys)
print("norms agree:      ", S.s_norms == R.s_norms)
for n in range(4):
    print(n, S.polys[n], " s_n =", S.s_norms[n])

# %% [markdown]
# The recursion also reports its c coefficients. They are the lower-triangular
# link between the Sobolev and standard bases.

# %%
print({k: str(v) for k, v in sorted(R.c.items())[:6]})
