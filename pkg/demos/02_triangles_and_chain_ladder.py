"""Project one simulated world to 2-D run-off triangles and run Chain-Ladder.

Shows the two projections (occurrence vs development year, reporting year vs
run-off year), checks that both carry exactly the same known payments, and
compares the Chain-Ladder estimates with the world's actual future payments.
"""

import numpy as np

import claimcube as cc

params = cc.default_params()
path = cc.simulate_path(cc.RandomStream(7, 0), params)
breakdown = cc.reserve_breakdown(path)

occurrence = cc.triangle_occurrence(path)
reporting = cc.triangle_reporting(path)

print("known payment totals (exact):")
print(f"  occurrence projection  {occurrence.known_total:14,.2f}")
print(f"  reporting projection   {reporting.known_total:14,.2f}")
print(f"  tensor known region    {cc.total_known_payments(path):14,.2f}\n")

np.set_printoptions(precision=0, suppress=True, linewidth=160)
print("occurrence triangle, first 8 development years (NaN = future):")
print(occurrence.values[:, :8])

for label, tri, target in (
    ("occurrence", occurrence, breakdown.total_reserve),
    ("reporting", reporting, breakdown.reported_reserve),
):
    result = cc.chain_ladder(cc.cumulate(tri))
    print(f"\nchain ladder on the {label} triangle")
    print(f"  first factors     {np.round(result.development_factors[:6], 4)}")
    print(f"  reserve estimate  {result.total_reserve_estimate:14,.1f}")
    print(f"  simulated truth   {target:14,.1f}")

print("\nnote: the reporting triangle only contains claims already reported,")
print("so its estimate addresses the reported reserve, not the IBNR part")
print(f"(this world: IBNR {breakdown.ibnr_reserve:,.1f} from {breakdown.ibnr_count} claims).")

mcs = cc.mean_claim_size(path)
print("\nmean remaining cost per active claim, lags 0..3, run-off 0..5:")
print(np.round(mcs[:4, :6], 1))
