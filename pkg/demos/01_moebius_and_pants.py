# %% [markdown]
# # Moebius transformations and the thrice-punctured sphere
#
# Elements of PSL(2, C) are stored as determinant-one matrices up to sign.
# The trace decides what kind of isometry an element is, and for a
# loxodromic element it gives the complex translation length.

# %%
import math

from hyperspectra.moebius import (Horoball, ProjectiveMatrix, apply_to_horoball, classify,
                                  complex_length, horoball_distance)
from hyperspectra.spectrum import enumerate_spectrum, word_oracle_spectrum
from hyperspectra.surfaces import pants_group

for m in (ProjectiveMatrix(1, 1, 0, 1), ProjectiveMatrix(0, -1, 1, 0), ProjectiveMatrix(3, -1, 1, 0)):
    print(m.entries(), "->", classify(m))

# a loxodromic with a genuine rotation part
print(complex_length(ProjectiveMatrix.normalized(1 + 1j, 2, 0.5, 1.5)))

# %% [markdown]
# Horoballs: the ball of height 1 at infinity is sent by ``[[1,0],[2,1]]`` to a
# ball of diameter 1/4 sitting on 1/2; two balls are tangent when the
# squared distance of their feet equals the product of their diameters.

# %%
top = Horoball.at_height(1)
small = apply_to_horoball(ProjectiveMatrix(1, 0, 2, 1), top)
print(small)
print("distance to the top ball:", horoball_distance(top, small), "= log 4")
print("two unit balls at 0 and 1:", horoball_distance(Horoball.ball(0, 1), Horoball.ball(1, 1)))

# %% [markdown]
# ## The cusped pair of pants
#
# ``A = [[1,2],[0,1]]`` and ``B = [[1,0],[-2,1]]`` generate the level-2
# congruence subgroup.  Its shortest closed geodesics have trace 6, three of them.

# %%
g = pants_group(True)
s = enumerate_spectrum(g, 5.0, 2.0)
for e in s.entries:
    print(f"length {e.length:.9f}  multiplicity {e.multiplicity}  witness {e.witness}")
print("2 arccosh 3 =", 2 * math.acosh(3))

# %% [markdown]
# The orbit search agrees with a blunt check that evaluates every reduced
# word up to length 6 and groups them into unoriented conjugacy classes.

# %%
oracle = word_oracle_spectrum(g, 6)
short = sorted(l for l, _ in oracle.values() if l <= 5.0)
print(len(short), "classes below 5 from the words;", len(s), "from the orbit search")
