"""Exhaustive (m, n) = (3, 9) search at d >= 9, split into enumerator classes.

Writes one JSON line per hit and compares each class with the bundled
family listings.
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from metacirc.fixtures import default_fixtures
from metacirc.search import SearchTask, class_by_enumerator, count_specs, exhaustive_search


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results/exhaustive_27.ndjson"))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--d-target", type=int, default=9)
    args = ap.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)

    task = SearchTask(3, 9, args.d_target)
    total = sum(count_specs(3, 9, a) for a in task.alpha_list())
    t0 = time.perf_counter()
    hits = exhaustive_search(
        task,
        workers=args.workers,
        results_path=args.out,
        checkpoint_path=args.out.with_suffix(".ckpt"),
        progress=lambda last, n: print(f"\r{last + 1}/{total} specs, {n} hits", end="", flush=True),
    )
    print(f"\n{len(hits)} hits in {time.perf_counter() - t0:.1f}s")

    families = {k: {s.key() for s in v} for k, v in default_fixtures().families().items() if k.startswith("f27")}
    for cls in class_by_enumerator(hits):
        keys = {h.spec.key() for h in cls}
        alphas = sorted({h.spec.alpha for h in cls})
        wd = cls[0].weight_distribution
        match = [name for name, fam in families.items() if fam == keys]
        print(
            json.dumps(
                {
                    "size": len(cls),
                    "alphas": alphas,
                    "A9": wd[9] if wd else None,
                    "class_key": cls[0].class_key,
                    "family_listing": match or None,
                }
            )
        )


if __name__ == "__main__":
    main()
