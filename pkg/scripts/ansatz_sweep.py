"""How small can the zero-mode ansatz degree be?

For each type and degree, run the cascade in a fresh cache and record whether
all four lowering and raising modes are found, and how long it took.
"""

import time
from dataclasses import dataclass

from _config import parse

from xladder import spectra


@dataclass
class Config:
    """Ansatz degree sweep."""

    types: tuple[str, ...] = ("I", "II", "III")
    degrees: tuple[int, ...] = (2, 3, 4, 5, 6, 8)


def trial(J: str, degree: int) -> tuple[bool, float, str]:
    spectra._zero_modes.cache_clear()
    t0 = time.perf_counter()
    try:
        for which in ("lowering", "raising"):
            spectra.zero_modes(J, which, degree=degree)
        return True, time.perf_counter() - t0, ""
    except spectra.AnsatzExhausted as err:
        return False, time.perf_counter() - t0, str(err)


def main(cfg: Config) -> None:
    print(f"{'type':<6}{'degree':>7}{'ok':>5}{'seconds':>9}  note")
    for J in cfg.types:
        for deg in cfg.degrees:
            ok, dt, note = trial(J, deg)
            print(f"{J:<6}{deg:>7}{'yes' if ok else 'no':>5}{dt:>9.2f}  {note}")


if __name__ == "__main__":
    main(parse(Config))
