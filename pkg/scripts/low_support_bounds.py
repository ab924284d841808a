"""Low-support upper bounds on d for the five large graph codes."""

from __future__ import annotations

import argparse
import time

from metacirc.addcode import code_from_graph, low_support_min_weight
from metacirc.fixtures import default_fixtures


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    fx = default_fixtures()
    for name in ("g78", "g90", "g91", "g93", "g96"):
        p = fx.preset(name)
        code = code_from_graph(p.graph())
        for t in args.t:
            t0 = time.perf_counter()
            bound, wit = low_support_min_weight(code, t, witness=True)
            print(f"{name} t={t}: bound {bound} (claimed d {p.d}) witness {list(wit)} {time.perf_counter() - t0:.1f}s",
                  flush=True)


if __name__ == "__main__":
    main()
