"""Tabulate every printed-versus-computed disagreement as a markdown table."""

from dataclasses import dataclass

from _config import parse

from xladder import checks


@dataclass
class Config:
    """Printed-mismatch table."""

    types: tuple[str, ...] = checks.TYPES
    suites: tuple[str, ...] = ("algebra", "closure", "oracle", "zero-modes", "second-chain", "diagram")
    width: int = 70


def _cut(s: str, n: int) -> str:
    s = (s or "").replace("|", "/")
    return s if len(s) <= n else s[: n - 3] + "..."


def main(cfg: Config) -> None:
    rows = [i for i in checks.run(types=cfg.types, suites=cfg.suites) if i.status == "printed-mismatch"]
    print("| type | suite | item | computed | printed |")
    print("|---|---|---|---|---|")
    for i in rows:
        print(f"| {i.type} | {i.suite} | {_cut(i.name, 40)} | {_cut(i.computed, cfg.width)} | {_cut(i.printed, cfg.width)} |")
    print(f"\n{len(rows)} printed mismatches")


if __name__ == "__main__":
    main(parse(Config))
