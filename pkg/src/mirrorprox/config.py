"""Flat key-value run configuration with command-line overrides.

Config files are plain text: one ``key = value`` pair per line, ``#``
comments, arrays bracketed comma-separated (``grid = [1e2, 1e4, 1e6]``).
Values parse as int, then float, then string.  Command-line flags win over
file values; ``--override key=val`` (repeatable) wins over both and carries
schedule overrides (lambda, S, T, N, gamma) straight to the solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError

__all__ = ["RunConfig", "parse_config_file", "parse_scalar", "parse_kv_spec"]

OVERRIDE_KEYS = ("lambda", "S", "T", "N", "gamma")


def parse_scalar(text: str):
    t = text.strip()
    if t.startswith("[") and t.endswith("]"):
        inner = t[1:-1].strip()
        return [parse_scalar(p) for p in inner.split(",")] if inner else []
    for cast in (int, float):
        try:
            return cast(t)
        except ValueError:
            continue
    return t


def parse_config_file(path) -> dict:
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    for ln, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected 'key = value', got {raw.rstrip()!r}")
        key, _, val = line.partition("=")
        out[key.strip()] = parse_scalar(val)
    return out


def parse_kv_spec(spec: str) -> dict:
    """Comma-separated key=value list, e.g. generator and grid specs."""
    out = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ConfigError(f"expected key=value in spec, got {part!r}")
        key, _, val = part.partition("=")
        out[key.strip()] = parse_scalar(val)
    return out


@dataclass
class RunConfig:
    """Everything one solver run needs; exactly one problem source."""

    solver: str
    problem: str | None = None
    gen: str | None = None
    eps0: float = 1.0
    eps: float = 1e-8
    seed: int = 0
    trace: str | None = None
    overrides: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.problem is None) == (self.gen is None):
            raise ConfigError("exactly one of problem file or generator spec is required")
        if not (self.eps0 >= self.eps > 0):
            raise ConfigError(f"need eps0 >= eps > 0, got eps0={self.eps0}, eps={self.eps}")
        for key in self.overrides:
            if key not in OVERRIDE_KEYS:
                raise ConfigError(
                    f"unknown override {key!r}; known: {', '.join(OVERRIDE_KEYS)}")

    @classmethod
    def from_mapping(cls, solver: str, mapping: dict) -> "RunConfig":
        known = {"problem", "gen", "eps0", "eps", "seed", "trace"}
        kwargs = {k: mapping[k] for k in known if mapping.get(k) is not None}
        overrides = dict(mapping.get("overrides") or {})
        for key in OVERRIDE_KEYS:
            if mapping.get(key) is not None:
                overrides[key] = mapping[key]
        if "eps0" in kwargs:
            kwargs["eps0"] = float(kwargs["eps0"])
        if "eps" in kwargs:
            kwargs["eps"] = float(kwargs["eps"])
        if "seed" in kwargs:
            kwargs["seed"] = int(kwargs["seed"])
        return cls(solver=solver, overrides=overrides, **kwargs)
