"""Scenario config files: a strict, flat INI-like format.

Sections in square brackets, `key = value` lines, full-line comments
starting with `#` or `;`. Unknown sections or keys are rejected with the
offending line and column, as are duplicates. All lengths are in units
of the Rayleigh scale d_R, all momenta in units of the aperture cutoff
k_max, so a config is dimensionless.

    [scenario]
    kind = fisher-scan

    [system]
    k_max = 1.0

    [object]
    amplitudes = A

    [plan]
    strategy = all
    n = 4
    k_lo = 1.0
    k_hi = 2.0

    [scan]
    d_min = 0.10
    d_max = 0.45
    points = 15

    [output]
    csv = fisher.csv
    n_max = 1e5

`amplitudes` is either a named benchmark set (A or C) or a comma list of
values in [0, 1]. `strategy` is one of gn, gn-1, hybrid, all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .signals import Strategy

__all__ = ["ScenarioConfig", "parse_config", "serialize_config", "load_config"]

_KINDS = ("signal", "fisher-scan", "rate-ratio", "noon-demo")
_STRATEGY_TOKENS = {s.value: s for s in Strategy}

# section -> key -> value kind; "amps" is a tag or comma list, "strat"
# adds the token "all" on top of the Strategy values
_SCHEMA = {
    "scenario": {"kind": "kind"},
    "system": {"k_max": "float"},
    "object": {"slit_width": "float", "amplitudes": "amps", "origin": "float"},
    "plan": {"strategy": "strat", "n": "int", "k_lo": "float", "k_hi": "float"},
    "scan": {"d_min": "float", "d_max": "float", "points": "int"},
    "output": {"csv": "str", "svg": "str", "n_max": "float"},
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed scenario; lengths in d_R units, momenta in k_max units."""

    kind: str
    k_max: float = 1.0
    slit_width: float | None = None
    amplitudes: str | tuple[float, ...] = "A"
    origin: float | None = None
    strategy: str = "all"
    n: int = 4
    k_lo: float = 1.0
    k_hi: float = 2.0
    d_min: float | None = None
    d_max: float | None = None
    points: int | None = None
    csv: str | None = None
    svg: str | None = None
    n_max: float | None = None

    def strategies(self) -> tuple[Strategy, ...]:
        if self.strategy == "all":
            return (Strategy.FULL, Strategy.REDUCED, Strategy.BUCKET)
        return (_STRATEGY_TOKENS[self.strategy],)


def _parse_value(kind, raw, line_no, col):
    if kind == "float":
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"expected a number, got {raw!r}",
                              line=line_no, column=col) from None
    if kind == "int":
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"expected an integer, got {raw!r}",
                              line=line_no, column=col) from None
    if kind == "kind":
        if raw not in _KINDS:
            raise ConfigError(f"unknown scenario kind {raw!r}; expected one of {_KINDS}",
                              line=line_no, column=col)
        return raw
    if kind == "strat":
        if raw != "all" and raw not in _STRATEGY_TOKENS:
            tokens = ("all", *_STRATEGY_TOKENS)
            raise ConfigError(f"unknown strategy {raw!r}; expected one of {tokens}",
                              line=line_no, column=col)
        return raw
    if kind == "amps":
        if raw in ("A", "C"):
            return raw
        try:
            return tuple(float(part) for part in raw.split(","))
        except ValueError:
            raise ConfigError(
                f"amplitudes must be a tag (A, C) or a comma list, got {raw!r}",
                line=line_no, column=col) from None
    return raw


def parse_config(text: str) -> ScenarioConfig:
    """Parse config text; raises ConfigError with line/column on any problem."""
    values: dict[str, object] = {}
    seen: set[tuple[str, str]] = set()
    section = None
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith(("#", ";")):
            continue
        col = len(raw_line) - len(raw_line.lstrip()) + 1
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("unterminated section header",
                                  line=line_no, column=col)
            section = line[1:-1].strip()
            if section not in _SCHEMA:
                raise ConfigError(
                    f"unknown section [{section}]; expected one of "
                    f"{sorted(_SCHEMA)}", line=line_no, column=col)
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=line_no, column=col)
        if section is None:
            raise ConfigError("key outside any [section]", line=line_no, column=col)
        key, _, raw_val = line.partition("=")
        key = key.strip()
        raw_val = raw_val.strip()
        if key not in _SCHEMA[section]:
            raise ConfigError(
                f"unknown key {key!r} in [{section}]; expected one of "
                f"{sorted(_SCHEMA[section])}", line=line_no, column=col)
        if (section, key) in seen:
            raise ConfigError(f"duplicate key {key!r} in [{section}]",
                              line=line_no, column=col)
        seen.add((section, key))
        values[key] = _parse_value(_SCHEMA[section][key], raw_val, line_no, col)

    if "kind" not in values:
        raise ConfigError("missing [scenario] kind")
    if "k_max" not in values:
        raise ConfigError("missing [system] k_max")
    cfg = ScenarioConfig(**values)
    _validate(cfg)
    return cfg


def _validate(cfg: ScenarioConfig):
    if cfg.k_max <= 0:
        raise ConfigError(f"k_max must be positive, got {cfg.k_max}")
    if cfg.n < 2:
        raise ConfigError(f"n must be at least 2, got {cfg.n}")
    if not 0 <= cfg.k_lo < cfg.k_hi:
        raise ConfigError(f"need 0 <= k_lo < k_hi, got [{cfg.k_lo}, {cfg.k_hi}]")
    if cfg.kind in ("signal", "noon-demo"):
        if cfg.slit_width is None:
            raise ConfigError(f"{cfg.kind} needs [object] slit_width")
        if cfg.slit_width <= 0:
            raise ConfigError(f"slit_width must be positive, got {cfg.slit_width}")
    if cfg.kind in ("fisher-scan", "rate-ratio"):
        missing = [k for k in ("d_min", "d_max", "points") if getattr(cfg, k) is None]
        if missing:
            raise ConfigError(f"{cfg.kind} needs [scan] {', '.join(missing)}")
        if not 0 < cfg.d_min < cfg.d_max:
            raise ConfigError(f"need 0 < d_min < d_max, got [{cfg.d_min}, {cfg.d_max}]")
        if cfg.points < 2:
            raise ConfigError(f"scan needs at least 2 points, got {cfg.points}")
    if isinstance(cfg.amplitudes, tuple):
        if not cfg.amplitudes:
            raise ConfigError("amplitudes list is empty")
        if any(not 0.0 <= t <= 1.0 for t in cfg.amplitudes):
            raise ConfigError("amplitudes must lie in [0, 1]")


def serialize_config(cfg: ScenarioConfig) -> str:
    """Canonical text form; parse(serialize(cfg)) == cfg."""
    def fmt(v):
        if isinstance(v, tuple):
            return ", ".join(repr(float(t)) for t in v)
        if isinstance(v, float):
            return repr(v)
        return str(v)

    lines = []
    for section, keys in _SCHEMA.items():
        body = [(k, getattr(cfg, k)) for k in keys if getattr(cfg, k) is not None]
        if not body:
            continue
        lines.append(f"[{section}]")
        lines.extend(f"{k} = {fmt(v)}" for k, v in body)
        lines.append("")
    return "\n".join(lines)


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
