"""One run of each strategy, decomposed leg by leg.

Every successful task's end-to-end time is the exact sum of the legs it
traversed, so the aggregate picture can be rebuilt from the records alone:
where the time went, which tier served the task, and what failed where.
"""

from collections import Counter

from offloadsim.engine import RunConfig, run, summarize

for strategy in ("ECFirst", "VCCFirst"):
    cfg = RunConfig(strategy=strategy, seed=0)
    records = run(cfg)
    agg = summarize(records)

    print(f"=== {strategy}, seed {cfg.seed}, {cfg.duration:.0f} s horizon ===")
    print(f"requests {agg.n_requests}, success {agg.n_success}, "
          f"failed {agg.n_failed}, in flight {agg.n_in_flight}")
    print(f"mean {agg.mean_total * 1e3:.3f} ms   "
          f"p90 {agg.p90 * 1e3:.3f}   p95 {agg.p95 * 1e3:.3f}   p99 {agg.p99 * 1e3:.3f}")
    print(f"cloud share of dispatched: {agg.cc_share_pct:.2f}%")

    dests = Counter(r.destination for r in records if r.destination)
    print("destinations:", dict(sorted(dests.items())))

    if strategy == "VCCFirst":
        print(f"vehicular time split: uplink {agg.uplink_share_pct:.1f}%  "
              f"elaboration {agg.elab_share_pct:.1f}%  "
              f"downlink {agg.downlink_share_pct:.1f}%")
        print(f"distinct vehicles used: {agg.vehicles_used}")

    failures = Counter(r.failed_leg for r in records if r.failed_leg)
    if failures:
        print("failures by leg:", dict(sorted(failures.items())))

    # rebuild one success end to end as a sanity check
    sample = next(r for r in records if r.outcome == "success")
    legs = {
        "up access": sample.t_up_access,
        "up core": sample.t_up_cn,
        "up internet": sample.t_up_internet,
        "gnb to vehicle": sample.t_gnb_to_vue,
        "queue": sample.t_queue,
        "elaboration": sample.t_elab,
        "vehicle to gnb": sample.t_vue_to_gnb,
        "down internet": sample.t_down_internet,
        "down core": sample.t_down_cn,
        "down access": sample.t_down_access,
    }
    print(f"task {sample.task_id} ({sample.destination}): "
          + "  ".join(f"{k} {v * 1e3:.2f}" for k, v in legs.items() if v > 0.0)
          + f"  | total {sample.total * 1e3:.3f} ms")
    print()
