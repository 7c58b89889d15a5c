"""Two more sweeps: onboard processor capacity and vehicle speed.

Scaling the per-vehicle processor down stretches the elaboration leg and the
time a task keeps its vehicle busy, so latency explodes at small fractions.
Scaling it up past the baseline barely helps: elaboration is only a quarter
of the end-to-end time, and the radio legs do not get any faster.

Speed feeds the loss model on the vehicle legs, so faster traffic fails more
tasks, though the rate stays in the low single digits.
"""

from offloadsim.engine import KMH, RunConfig, run, summarize

SEEDS = (0, 1, 2)


def mean_over_seeds(make_cfg, field):
    vals = []
    for seed in SEEDS:
        agg = summarize(run(make_cfg(seed)))
        vals.append(getattr(agg, field))
    return sum(vals) / len(vals)


print("per-vehicle capacity sweep (fractions of the 71,120 MIPS baseline)")
print(f"{'fraction':>10} {'mean (ms)':>10}")
baseline = None
for frac in (1 / 128, 1 / 32, 1 / 8, 1 / 2, 1, 2, 3):
    mean = mean_over_seeds(
        lambda seed: RunConfig(
            strategy="VCCFirst", vehicle_capacity=71120.0 * frac, seed=seed
        ),
        "mean_total",
    ) * 1e3
    if frac == 1:
        baseline = mean
    label = f"{frac:.5f}".rstrip("0").rstrip(".")
    print(f"{label:>10} {mean:10.3f}")
print(f"tripling capacity beyond the baseline only shaves "
      f"{baseline - mean:.2f} ms off {baseline:.2f} ms")

print("\nvehicle speed sweep (default full-coverage loop)")
print(f"{'speed':>12} {'failed %':>9} {'mean (ms)':>10}")
for kmh in (13.1, 50.0, 100.0):
    fail = mean_over_seeds(
        lambda seed: RunConfig(strategy="VCCFirst", vehicle_speed=kmh * KMH, seed=seed),
        "fail_total_pct",
    )
    mean = mean_over_seeds(
        lambda seed: RunConfig(strategy="VCCFirst", vehicle_speed=kmh * KMH, seed=seed),
        "mean_total",
    ) * 1e3
    print(f"{kmh:9.1f} km/h {fail:9.3f} {mean:10.3f}")
