# %% [markdown]
# # SNIR with and without the macro BS
#
# A user sits ``d`` meters radially outward from the Office FAP.  With the BS on
# the macro signal (after 20 dB indoor penetration) is interference; with the
# BS off only noise and the other FAPs remain.

# %%
import numpy as np

from femtosleep import layout as lay
from femtosleep import propagation as prop
from femtosleep.cli import snir_profile

layout = lay.default_layout()
macro_p, femto_p = prop.MacroLossParams(), prop.FemtoLossParams()
print(f"macro loss at 0.5 km: {prop.macro_path_loss(macro_p, 0.5):.2f} dB")
print(f"femto loss at 7 m:    {prop.femto_path_loss(femto_p, 7.0):.2f} dB")

# %%
rows = snir_profile(layout, layout.station("Office"), np.arange(1, 16, 2.0), macro_p, femto_p)
print(" d [m]   BS on [dB]   BS off [dB]")
for d, on, off in rows:
    print(f"{d:5.1f}   {on:10.2f}   {off:11.2f}")

# %% [markdown]
# The two Hata variants side by side (``paper`` keeps the printed constants).

# %%
for variant in ("paper", "standard"):
    p = prop.MacroLossParams(variant=variant)
    print(variant, [round(prop.macro_path_loss(p, d), 1) for d in (0.1, 0.25, 0.5)])
