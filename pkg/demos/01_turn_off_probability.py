# %% [markdown]
# # When can the macro BS sleep?
#
# Each station's importance factor acts as a relative user density.  The
# single-user probability of landing in femto coverage is the factor-weighted
# FAP area over the factor-weighted area of the whole cell; with ``n``
# independent users the BS may sleep with probability ``P ** n``.

# %%
from femtosleep import coverage as cov
from femtosleep import layout as lay

layout = lay.default_layout()
for s in layout.stations:
    print(f"{s.name:17s} ring r={abs(complex(s.position.x, s.position.y)):5.0f} m  FAPs={s.fap_count}  f={s.factor}")

summary = cov.user_in_fap_probability(layout)
print(f"\nP(one user under a FAP) = {summary.p_single_user:.4f}")

# %% [markdown]
# The analytic value against the Monte Carlo sampler:

# %%
est = cov.monte_carlo_user_in_fap(layout, 10**6, seed=1)
print(f"Monte Carlo: {est.value:.4f} +/- {est.stderr:.4f}")

# %% [markdown]
# Growing the deployment: the first 15 FAPs follow the station table, later
# ones go into free ring slots as single-FAP stations with factor 0.7.

# %%
rows = cov.sweep_fap_count(layout, 25, [1, 3, 5])
print("FAPs   n=1      n=3      n=5")
for k in range(0, 26, 5):
    ps = [r.p_off for r in rows if r.fap_count == k]
    print(f"{k:4d}  " + "  ".join(f"{p:.5f}" for p in ps))

# %% [markdown]
# The averaged-factor shortcut ``f_p ** n`` with ``f_p = 0.7``:

# %%
for n in range(6):
    print(n, round(cov.bs_off_probability_simplified(0.7, n), 6))
