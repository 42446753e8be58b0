"""Packaged experiments with machine-readable reports.

Each named experiment bundles spec generation, estimation, and verdicts
into one reproducible run keyed by a seed.  Reports serialize to JSON (or
CSV for the records) with floats written at full round-trip precision, so
rerunning a config yields byte-identical bodies.  The same runs are
available from the shell as `sudfer <experiment> [flags]`.
"""

import json

from sudfer import ExperimentConfig, render_csv, render_json, run_experiment


def main():
    config = ExperimentConfig(
        experiment="bound-check",
        n=[2, 4, 8],
        trials=6,
        samples=20_000,
        seed=5,
        generator="wishart",
    )
    report = run_experiment(config)
    doc = json.loads(render_json(report))
    print("summary of a small bound-check run:")
    print(json.dumps(doc["summary"], indent=2))
    print("\nfirst record:")
    print(json.dumps(doc["records"][0], indent=2))

    print("\nsame records as CSV:")
    print(render_csv(report))

    again = run_experiment(config)
    same = render_csv(again) == render_csv(report)
    print(f"rerun with the same config is byte-identical: {same}")


if __name__ == "__main__":
    main()
