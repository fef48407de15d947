# %% [markdown]
# # Twisting a genus-two surface along a short separating curve
#
# A genus-two surface is glued from two one-holed tori along a separating
# curve gamma.  If gamma is short its collar is wide, and any closed
# geodesic that crosses gamma has to pay for crossing the collar.  Twisting
# along gamma then changes no length below a threshold, even though the
# two surfaces are different.

# %%
import math

from hyperspectra import words as W
from hyperspectra.spectrum import compare_spectra, dirichlet_covering_radius, enumerate_spectrum
from hyperspectra.surfaces import (GAMMA, FenchelNielsenGenus2, collar_condition, gauss_bonnet_area,
                                   genus2_from_fn, twist_along_curve)

ell, n = 0.9, 6
print("collar wide enough for lengths up to", n, ":", collar_condition(ell, n))
print("coth(ell/2) =", 1 / math.tanh(ell / 2), " cosh(n/4) =", math.cosh(n / 4))

g0 = genus2_from_fn(FenchelNielsenGenus2.symmetric(ell))
g1 = twist_along_curve(g0, 0.7)
print("area of both:", gauss_bonnet_area(g0.signature), "= 4 pi")
print("|trace| of gamma:", abs(g0.trace(GAMMA)), "expected", 2 * math.cosh(ell / 2))

# %% [markdown]
# The enumeration needs an upper bound for the distance from the basepoint
# to any point of the surface; the Dirichlet polygon gives one.

# %%
D = max(dirichlet_covering_radius(g0), dirichlet_covering_radius(g1))
print("covering radius:", D)
s0 = enumerate_spectrum(g0, n, D)
s1 = enumerate_spectrum(g1, n, D)
print(len(s0), "and", len(s1), "closed geodesics up to length", n)
cmp = compare_spectra(s0, s1, 1e-7)
print("spectra agree up to", cmp.agree_up_to)

# %% [markdown]
# Words that meet both handles do change under the twist -- but only
# beyond length 6.

# %%
for w in [(1, 3), (1, 2, 3), (1, -3, 2), (2, 4, -1)]:
    l0 = 2 * math.acosh(abs(g0.trace(w).real) / 2)
    l1 = 2 * math.acosh(abs(g1.trace(w).real) / 2)
    print(w, f"{l0:.6f} -> {l1:.6f}")
