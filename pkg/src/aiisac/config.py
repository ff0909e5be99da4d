"""Run configuration: presets, flat key = value parsing, unit conversion.

All dB fields are converted to linear scale exactly once, at load time;
every numerical module downstream sees linear units only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .errors import ConfigError

PRESETS = ("tableI-dbm", "tableI-normalized")


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class RunConfig:
    """Defaults mirror the standard simulation table.

    power is stored linear; the tableI-dbm preset reads the 10 dBm transmit
    power as 0.01 W, while tableI-normalized keeps the dimensionless
    value 10 in the same unit as the 0.1 noise variances.  carrier_ghz and blocklength are recorded for
    provenance only and consumed by no formula.
    """

    preset: str = "tableI-dbm"
    power: float = 0.01
    noise_c: float = 0.1
    noise_s: float = 0.1
    gain_c: float = 1.0
    gain_s: float = 1.0
    prior_var: float = 1.0
    c_min: float = 0.0
    c_max: float = 8.0
    c_step: float = 0.25
    rician_k_db: float = 6.0
    snr_min_db: float = -5.0
    snr_max_db: float = 25.0
    snr_step_db: float = 1.0
    mimo_nt: int = 2
    mimo_nr: int = 2
    alpha_verify: float = 0.6
    weight: float = 0.3
    alpha0: float = 0.4
    alloc_c_ai: float = 4.0
    quadrature_order: int = 20
    seed: int = 20240817
    mc_samples: int = 1_000_000
    carrier_ghz: float = 28.0
    blocklength: int = 10_000

    def __post_init__(self) -> None:
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; choose from {PRESETS}")
        if self.power <= 0 or self.noise_c <= 0 or self.noise_s <= 0:
            raise ConfigError("power and noise variances must be positive")
        if self.prior_var <= 0:
            raise ConfigError("prior variance must be positive")
        if not 1 <= self.quadrature_order <= 128:
            raise ConfigError("quadrature order must lie in [1, 128]")
        if self.c_step <= 0 or self.c_max < self.c_min:
            raise ConfigError("invalid capacity grid")

    @property
    def rician_k(self) -> float:
        return db_to_linear(self.rician_k_db)

    def mean_snr_c(self) -> float:
        return self.gain_c * self.power / self.noise_c

    def mean_snr_s(self) -> float:
        return self.gain_s * self.power / self.noise_s


def preset_config(name: str) -> RunConfig:
    if name == "tableI-dbm":
        return RunConfig(preset=name, power=0.01)
    if name == "tableI-normalized":
        return RunConfig(preset=name, power=10.0)
    raise ConfigError(f"unknown preset {name!r}; choose from {PRESETS}")


_INT_FIELDS = {"mimo_nt", "mimo_nr", "quadrature_order", "seed", "mc_samples",
               "blocklength"}
_STR_FIELDS = {"preset"}


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse flat key = value text into a RunConfig.

    Lines beginning with '#' or ';' are comments; '[section]' headers are
    allowed for grouping and carry no meaning.  Unknown keys are errors.
    A 'preset' key, if present, is applied first so later keys override it.
    """
    known = {f.name for f in fields(RunConfig)}
    pairs: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("[") and line.endswith("]"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip()
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        pairs.append((key, value, lineno))

    cfg = base if base is not None else RunConfig()
    for key, value, lineno in pairs:
        if key == "preset":
            cfg = preset_config(value)
    updates = {}
    for key, value, lineno in pairs:
        if key in _STR_FIELDS:
            continue
        try:
            updates[key] = int(value) if key in _INT_FIELDS else float(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {value!r}") from exc
    try:
        return replace(cfg, **updates)
    except (ValueError, ConfigError) as exc:
        raise ConfigError(str(exc)) from exc
