"""Run the check suites and write a JSON report plus a per-suite summary."""

import json
import sys
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from _config import parse

from xladder import checks


@dataclass
class Config:
    """Full verification run."""

    types: tuple[str, ...] = checks.TYPES
    suites: tuple[str, ...] = checks.SUITES
    out: str = "results/verify.json"


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    per_suite = {}
    items = []
    for suite in cfg.suites:
        s0 = time.perf_counter()
        got = checks.run(types=cfg.types, suites=(suite,))
        per_suite[suite] = (Counter(i.status for i in got), time.perf_counter() - s0)
        items.extend(got)
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"schema": "xladder/1", "items": [i.as_dict() for i in items]}, indent=2))
    print(f"{'suite':<14}{'pass':>6}{'fail':>6}{'printed':>9}{'seconds':>9}")
    for suite, (c, dt) in per_suite.items():
        print(f"{suite:<14}{c['pass']:>6}{c['fail']:>6}{c['printed-mismatch']:>9}{dt:>9.1f}")
    print(f"total {time.perf_counter() - t0:.1f} s, report in {path}")
    return int(any(c["fail"] for c, _ in per_suite.values()))


if __name__ == "__main__":
    sys.exit(main(parse(Config)))
