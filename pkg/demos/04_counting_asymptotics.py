# %% [markdown]
# # Counting closed geodesics
#
# The number of closed geodesics of length at most L grows like
# e^{hL}/(hL), with h = 1 for surfaces.  A lower bound of the form
# li(e^L) - A e^{cL} eventually beats e^L / L whatever A and c < 1 are;
# ``crossover_length`` finds where.

# %%
import math

import numpy as np

from hyperspectra.growth import (CountingModel, calculus_difference, crossover_length,
                                 fit_growth_exponent, logarithmic_integral, margulis_count)
from hyperspectra.spectrum import counting_function, enumerate_spectrum
from hyperspectra.surfaces import pants_group

for L in (2, 5, 10, 20):
    print(f"L={L:>2}  li(e^L)={logarithmic_integral(math.exp(L)):.6e}  e^L/L={margulis_count(L, 1):.6e}")

# %%
for A, c in ((0, 0), (10, 0.5), (10, 0.9), (1000, 0.9)):
    m = CountingModel(A=A, c=c)
    L0 = crossover_length(m)
    print(f"A={A:<5} c={c:<4} crossover at L0 = {L0:.6f}")
m = CountingModel(A=10, c=0.9)
L0 = crossover_length(m)
print([round(calculus_difference(L0 + k, m) / math.exp(L0 + k), 8) for k in range(0, 21, 5)])

# %% [markdown]
# The actual counts for the thrice-punctured sphere, and the growth rate
# they suggest.  Convergence is slow at these lengths.

# %%
s = enumerate_spectrum(pants_group(True), 8.0, 2.0)
counts = [(L, counting_function(s, L)) for L in np.arange(4, 8.01, 0.5)]
for L, n in counts:
    print(f"pi({L:.1f}) = {n}")
print("fitted h:", fit_growth_exponent(counts))
