"""Turn a dataclass config into argparse flags (one flag per field)."""

import argparse
import dataclasses
import typing


def parse(cls, argv=None):
    p = argparse.ArgumentParser(description=(cls.__doc__ or "").strip())
    hints = typing.get_type_hints(cls)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        kind = hints[f.name]
        flag = "--" + f.name.replace("_", "-")
        if kind is bool:
            p.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        elif typing.get_origin(kind) is tuple:
            p.add_argument(flag, nargs="+", type=typing.get_args(kind)[0], default=default)
        else:
            p.add_argument(flag, type=kind, default=default)
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in vars(p.parse_args(argv)).items()})
