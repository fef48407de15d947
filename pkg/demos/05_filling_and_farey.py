# %% [markdown]
# # Dehn filling estimates and the Farey graph
#
# Filling a cusp along a long slope leaves a short core geodesic of length
# about 2 pi / L^2, where L is the slope's length normalized by the cusp
# area, and loses about pi^2 / L^2 of volume.

# %%
import math

from hyperspectra.farey import (FareySlope, IntegerMappingClass, farey_distance,
                                stable_translation_length)
from hyperspectra.filling import (CuspLattice, Slope, core_length_estimate, normalized_length,
                                  sufficiently_different, volume_drop_estimate)

lat = CuspLattice(1, 0.3 + 2.2j)
for p, q in ((1, 0), (0, 1), (5, 1), (7, 3)):
    L = normalized_length(Slope(p, q), lat)
    print(f"slope {p}/{q}: normalized length {L:.4f}, core ~ {core_length_estimate(L)[0]:.5f}")
print("same value on a scaled lattice:", normalized_length(Slope(7, 3), lat.scaled(7 - 2j)))
print("volume drop for (10, 10, 10):", volume_drop_estimate([10, 10, 10]))

# %% [markdown]
# Three filling slopes whose normalized lengths are spread far apart give
# core geodesics whose lengths are spread far apart too.

# %%
r = sufficiently_different((100, 10, 1), vol_m=10 * 0.03905, margin=1)
print("V =", r.V, "holds:", r.holds, "ratios:", r.ratios)
print("core lengths:", r.core_lengths)
print("chain l3 > V l2 > V^2 l1:", r.chain, r.chain_holds)

# %% [markdown]
# ## The Farey graph
#
# Slopes p/q joined when |ps - qr| = 1.  Distances come from the continued
# fraction of one slope seen from the other.

# %%
inf = FareySlope.infinity()
for s in ("0/1", "1/2", "2/5", "13/8", "355/113"):
    p, q = map(int, s.split("/"))
    print(f"d(1/0, {s}) = {farey_distance(inf, FareySlope(p, q))}")

# %%
for name, phi in (("parabolic", IntegerMappingClass(1, 1, 0, 1)),
                  ("Anosov", IntegerMappingClass(2, 1, 1, 1)),
                  ("R^2 L^3", IntegerMappingClass(1, 2, 0, 1) @ IntegerMappingClass(1, 0, 3, 1))):
    r = stable_translation_length(phi, n_max=12)
    print(f"{name:>9}: d(v, phi^n v)/n -> {[round(x, 3) for x in r.estimates[-4:]]}")
