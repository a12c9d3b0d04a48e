"""Run the randomized self-test campaign for several seeds and the
continuity search at a larger scale, then print a summary table."""

import argparse
import time

from plthompson.selftest import CampaignConfig, continuity_campaign, run_campaign


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--continuity-trials", type=int, default=5000)
    args = parser.parse_args()

    failures = 0
    for seed in args.seeds:
        start = time.perf_counter()
        results = run_campaign(CampaignConfig(seed, args.trials))
        bad = [r for r in results if not r.passed]
        failures += len(bad)
        print(f"seed {seed}: {len(results) - len(bad)}/{len(results)} checks passed "
              f"in {time.perf_counter() - start:.1f} s")
        for r in bad:
            print("  " + r.line())

    for seed in args.seeds:
        rep = continuity_campaign(seed, args.continuity_trials)
        kinds = " ".join(f"{k}={v}" for k, v in sorted(rep.commuting_by_kind.items()))
        print(f"continuity seed {seed}: trials={rep.trials} commuting={rep.commuting} ({kinds}) "
              f"counterexamples={len(rep.counterexamples)} control={rep.control_detected}")
        failures += len(rep.counterexamples) + (not rep.control_detected)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
