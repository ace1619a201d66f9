# %% [markdown]
# # A simulated day
#
# Every 10 minutes a Poisson number of users is placed by factor-weighted
# sampling and the controller picks the BS state.  Results are reproducible
# from the seed.

# %%
import numpy as np

from femtosleep import layout as lay
from femtosleep.simkit import DEFAULT_HOURLY_MEAN_USERS, ScenarioConfig, run_simulation

layout = lay.default_layout()
result = run_simulation(ScenarioConfig(seed=42), layout)
print(f"BS off {result.bs_off_fraction:.1%} of the day")
e = result.energy
print(f"energy {e.traditional_kwh:.2f} -> {e.proposed_kwh:.2f} kWh ({e.saved_fraction:.1%} saved)")
print(f"SNIR over {result.snir.count} in-FAP users: min {result.snir.min_db:.1f}, median {result.snir.median_db:.1f} dB")

# %% [markdown]
# Hour-by-hour duty: nights are nearly empty, so the BS sleeps.

# %%
off = np.array([not s.bs_on for s in result.timeline.states]).reshape(24, 6).mean(axis=1)
for h in range(24):
    print(f"{h:02d}h mean users {DEFAULT_HOURLY_MEAN_USERS[h]:3.1f}  BS off {'#' * int(round(off[h] * 6)):6s}")

# %% [markdown]
# Saved fraction across seeds:

# %%
fractions = [run_simulation(ScenarioConfig(seed=s), layout).energy.saved_fraction for s in range(20)]
print(f"saved fraction mean {np.mean(fractions):.3f}, range {min(fractions):.3f}..{max(fractions):.3f}")
