"""Run configuration: parsing, validation, and round-tripping.

A run is described either by CLI flags or by a config file in one of two
equivalent forms: a JSON object, or line-oriented ``key=value`` text
(``#`` starts a comment).  Angles accept plain decimals or pi-fraction
literals such as ``pi/4``, ``3*pi/8``, ``-pi/2``, ``2pi``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

from .wedge import WedgeGeometry

_PI_LITERAL = re.compile(
    r"""^\s*(?P<sign>[+-])?\s*
        (?:(?P<num>\d+(?:\.\d+)?)\s*\*?\s*)?   # optional leading factor
        pi
        (?:\s*/\s*(?P<den>\d+(?:\.\d+)?))?     # optional divisor
        \s*$""",
    re.VERBOSE,
)

#: Parameters each bench accepts (beyond the shared output keys).
BENCH_PARAMETERS = {
    "polar": ("alpha", "theta"),
    "mz": ("alpha", "phi_a", "phi_b", "mode"),
    "wedge": ("alpha", "phi_a", "phi_b"),
    "diffmap": ("phi_a", "grid"),
    "sample": ("bench", "alpha", "theta", "phi_a", "phi_b", "mode", "n", "seed", "workers"),
    "chsh": ("angles", "n", "seed"),
    "audit": ("bench", "grid", "tolerance"),
}

_SHARED_KEYS = ("out", "format")
_GEOMETRY_FIELDS = (
    "wavelength",
    "beam_sigma",
    "propagation_distance",
    "aperture_halfwidth",
    "apex_offset",
    "detector_halfwidth",
    "tilt_angle",
    "samples_aperture",
    "samples_detector",
)


class ConfigError(ValueError):
    """Config text that cannot be turned into a runnable RunConfig."""


def parse_angle(text: str | float, key: str = "angle") -> float:
    """Angle in radians from a decimal or pi-fraction literal."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    m = _PI_LITERAL.match(str(text))
    if m:
        value = math.pi
        if m.group("num"):
            value *= float(m.group("num"))
        if m.group("den"):
            den = float(m.group("den"))
            if den == 0:
                raise ConfigError(f"{key}: division by zero in {text!r}")
            value /= den
        return -value if m.group("sign") == "-" else value
    try:
        return float(text)
    except ValueError:
        raise ConfigError(
            f"{key}: cannot parse angle {text!r}; use a decimal or a "
            f"pi fraction like 'pi/4' or '3*pi/8'"
        ) from None


def format_angle(value: float) -> str:
    """Render an angle, preferring exact small pi fractions."""
    for den in (1, 2, 3, 4, 6, 8, 12, 16):
        for num in range(0, 16 * den + 1):
            if value == num * math.pi / den:
                if num == 0:
                    return "0"
                prefix = "" if num == 1 else f"{num}*"
                suffix = "" if den == 1 else f"/{den}"
                return f"{prefix}pi{suffix}"
    return "%.17g" % value


@dataclass(frozen=True)
class RunConfig:
    """A bench name, its parameters, geometry overrides, and output routing."""

    bench: str
    parameters: dict = field(default_factory=dict)
    geometry: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.bench not in BENCH_PARAMETERS:
            raise ConfigError(
                f"unknown bench {self.bench!r}; expected one of "
                f"{sorted(BENCH_PARAMETERS)}"
            )
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        allowed = BENCH_PARAMETERS[self.bench]
        for key in self.parameters:
            if key not in allowed:
                raise ConfigError(
                    f"unknown parameter {key!r} for bench {self.bench!r}; "
                    f"expected one of {sorted(allowed)}"
                )
        for key in self.geometry:
            if key not in _GEOMETRY_FIELDS:
                raise ConfigError(
                    f"unknown geometry field {key!r}; expected one of "
                    f"{sorted(_GEOMETRY_FIELDS)}"
                )

    def wedge_geometry(self) -> WedgeGeometry:
        try:
            return WedgeGeometry(**self.geometry)
        except ValueError as exc:
            raise ConfigError(f"bad geometry: {exc}") from exc


_ANGLE_KEYS = {"alpha", "theta", "phi_a", "phi_b", "tolerance"}
_INT_KEYS = {"n", "seed", "workers", "grid"}
_STR_KEYS = {"mode", "bench"}
_GEOM_INT_KEYS = {"samples_aperture", "samples_detector"}


def _coerce_parameter(key: str, raw, line: str | None = None) -> object:
    where = f" (line {line!r})" if line else ""
    if key in _STR_KEYS:
        return str(raw)
    if key in _INT_KEYS:
        try:
            return int(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{key}: expected an integer, got {raw!r}{where}") from None
    if key == "angles":
        parts = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
        if len(parts) != 4:
            raise ConfigError(f"angles: expected 4 comma-separated values{where}")
        return tuple(parse_angle(p, "angles") for p in parts)
    try:
        return parse_angle(raw, key)
    except ConfigError as exc:
        raise ConfigError(f"{exc}{where}") from None


def _coerce_geometry(key: str, raw, line: str | None = None) -> object:
    where = f" (line {line!r})" if line else ""
    caster = int if key in _GEOM_INT_KEYS else float
    try:
        value = caster(raw)
    except (TypeError, ValueError):
        raise ConfigError(
            f"geometry field {key}: expected a {caster.__name__}, got {raw!r}{where}"
        ) from None
    return value


def _assemble(entries: list[tuple[str, object, str | None]]) -> RunConfig:
    bench = None
    parameters: dict = {}
    geometry: dict = {}
    out = None
    fmt = "csv"
    seen: set[str] = set()
    for key, raw, line in entries:
        if key in seen:
            raise ConfigError(f"duplicate key {key!r}" + (f" (line {line!r})" if line else ""))
        seen.add(key)
        if key == "bench":
            bench = str(raw)
        elif key == "out":
            out = str(raw)
        elif key == "format":
            fmt = str(raw)
        elif key.startswith("geometry."):
            gkey = key[len("geometry."):]
            geometry[gkey] = _coerce_geometry(gkey, raw, line)
        elif key in _GEOMETRY_FIELDS:
            geometry[key] = _coerce_geometry(key, raw, line)
        else:
            parameters[key] = raw  # coerced once the bench is known
    if bench is None:
        raise ConfigError("missing required key 'bench'")
    coerced = {}
    for key, raw, line in entries:
        if key in parameters:
            coerced[key] = _coerce_parameter(key, raw, line)
    return RunConfig(bench=bench, parameters=coerced, geometry=geometry, out=out, format=fmt)


def parse_config(text: str) -> RunConfig:
    """Parse config text in either the JSON or the key=value form."""
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON config: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("JSON config must be an object")
        entries = []
        for key, raw in doc.items():
            if key == "geometry":
                if not isinstance(raw, dict):
                    raise ConfigError("'geometry' must be an object")
                entries.extend((f"geometry.{k}", v, None) for k, v in raw.items())
            elif key == "parameters":
                if not isinstance(raw, dict):
                    raise ConfigError("'parameters' must be an object")
                entries.extend((k, v, None) for k, v in raw.items())
            else:
                entries.append((key, raw, None))
        return _assemble(entries)
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        # One or more whitespace-separated key=value pairs per line.
        for token in body.split():
            if "=" not in token:
                raise ConfigError(f"line {lineno}: expected key=value, got {token!r}")
            key, _, raw = token.partition("=")
            entries.append((key.strip(), raw.strip(), f"{lineno}: {token}"))
    return _assemble(entries)


def serialize_config(cfg: RunConfig) -> str:
    """Canonical key=value rendering; parse_config inverts it."""
    lines = [f"bench={cfg.bench}"]
    for key in sorted(cfg.parameters):
        value = cfg.parameters[key]
        if key == "angles":
            value = ",".join(format_angle(v) for v in value)
        elif isinstance(value, float) and key in _ANGLE_KEYS:
            value = format_angle(value)
        lines.append(f"{key}={value}")
    for key in sorted(cfg.geometry):
        lines.append(f"{key}={cfg.geometry[key]:.17g}" if isinstance(cfg.geometry[key], float)
                     else f"{key}={cfg.geometry[key]}")
    if cfg.out is not None:
        lines.append(f"out={cfg.out}")
    lines.append(f"format={cfg.format}")
    return "\n".join(lines) + "\n"
