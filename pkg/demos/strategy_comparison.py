"""Nine-replication comparison of the two dispatch strategies, plus ANOVA.

Both strategies see the same workload (8 users, 5 requests per second each,
120 simulated seconds). The edge path is a short wired hop to a fast shared
server; the vehicular path spends more time on the air and on the slower
onboard processor but scales horizontally with the fleet.
"""

from offloadsim.engine import REPLICATION_SEEDS, RunConfig, run, summarize
from offloadsim.stats import anova_oneway

means_ms = {}
for strategy in ("ECFirst", "VCCFirst"):
    per_seed = []
    for seed in REPLICATION_SEEDS:
        agg = summarize(run(RunConfig(strategy=strategy, seed=seed)))
        per_seed.append(agg.mean_total * 1e3)
    means_ms[strategy] = per_seed
    mean = sum(per_seed) / len(per_seed)
    spread = max(per_seed) - min(per_seed)
    print(f"{strategy:>9}: mean {mean:6.3f} ms over {len(per_seed)} seeds "
          f"(per-seed spread {spread:.3f} ms)")

print()
print("per-seed means (ms):")
print(f"{'seed':>5} {'ECFirst':>9} {'VCCFirst':>9}")
for i, seed in enumerate(REPLICATION_SEEDS):
    print(f"{seed:>5} {means_ms['ECFirst'][i]:9.3f} {means_ms['VCCFirst'][i]:9.3f}")

# does the strategy factor explain the variance between the two samples?
result = anova_oneway([means_ms["ECFirst"], means_ms["VCCFirst"]])
print()
print("one-way ANOVA on the per-seed means, factor = strategy")
print(f"  sum_sq factor   {result.sum_sq_factor:12.6f}  df {result.df_factor}")
print(f"  sum_sq residual {result.sum_sq_resid:12.6f}  df {result.df_resid}")
print(f"  F = {result.f_stat:.2f}, p = {result.p_value:.3g}")
