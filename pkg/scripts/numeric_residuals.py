"""Worst relative residual per identity at the sample points, sorted descending."""

from dataclasses import dataclass

import mpmath
from _config import parse

from xladder import checks, numeric


@dataclass
class Config:
    """Numeric spot-check residuals."""

    types: tuple[str, ...] = ("I", "II", "III")
    top: int = 10


def main(cfg: Config) -> None:
    for J in cfg.types:
        res = sorted(checks.numeric_residuals(J), key=lambda t: t[1], reverse=True)
        print(f"type {J}: {len(res)} identities, tolerance {mpmath.nstr(numeric.TOLERANCE, 2)}")
        for name, r in res[: cfg.top]:
            print(f"  {mpmath.nstr(r, 3, min_fixed=0, max_fixed=0):>10}  {name}")


if __name__ == "__main__":
    main(parse(Config))
