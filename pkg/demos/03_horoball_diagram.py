# %% [markdown]
# # Looking down a cusp
#
# Conjugate so that a cusp sits at infinity with a horoball at height 1.
# Every other horoball in its orbit is a round ball resting on the plane;
# the pattern, read modulo the parabolic translations, is the horoball
# diagram.  For the thrice-punctured sphere it is the Ford circle packing.

# %%
from hyperspectra import io
from hyperspectra.cusps import (build_horoball_diagram, check_one_sided_isolation,
                                check_pairwise_tangent, check_rotational_symmetry,
                                find_distinguished_lines, horocycle_shortcut,
                                pants_voronoi_constants)
from hyperspectra.surfaces import pants_group

g = pants_group(True)
d = build_horoball_diagram(g, (1,), 0.1)
print("translation:", d.normalization.peripheral_translations)
for b in d.balls:
    print(f"center {b.center.real:+.4f}  diameter {b.diameter:.4f}  word {b.witness}")

# %% [markdown]
# Full-sized balls (diameter 1) touch the ball at infinity.  Here they form
# a single row of pairwise tangent balls, and nothing else of full size
# touches the row from either side.

# %%
lines = find_distinguished_lines(d)
for line in lines:
    print("slope", line.slope, "tangent:", check_pairwise_tangent(d, line),
          "isolated above/below:", check_one_sided_isolation(d, line, 1),
          check_one_sided_isolation(d, line, -1))
for k in (2, 3, 4, 6):
    print("rotation of order", k, ":", check_rotational_symmetry(d, k))

# %% [markdown]
# Constants of the cusp cell, all computed from the picture.

# %%
for k, v in pants_voronoi_constants().items():
    print(f"{k:>18}: {v:.10f}")
print("horocyclic shortcut for an arc of length 2:", horocycle_shortcut(2))

# %%
with open("pants_diagram.svg", "w") as f:
    f.write(io.render_svg(d, lines))
print("wrote pants_diagram.svg")
