# %% [markdown]
# # Energy: always-on BS versus sleeping BS with FAPs
#
# The sleeping scheme saves energy exactly when
# ``off_fraction * bs_op_w > fap_count * fap_op_w``.

# %%
from femtosleep import energy as en

pm = en.PowerModel()  # 2 kW BS, 15 FAPs at 8 W
r = en.report(24, 0.3, pm)
print(f"24 h, BS off 30%: {r.traditional_kwh:.2f} vs {r.proposed_kwh:.2f} kWh, saved {r.saved_fraction:.1%}")

# %%
print("breakeven off-fraction by FAP count")
for n in (5, 15, 25, 50):
    print(f"{n:3d} FAPs: {n * pm.fap_op_w / pm.bs_op_w:.3f}")

# %%
loss = en.report(24, 0.05, en.PowerModel(fap_count=25))
print(f"25 FAPs, 5% off: saved {loss.saved_kwh:.2f} kWh, net loss = {loss.net_loss}")
