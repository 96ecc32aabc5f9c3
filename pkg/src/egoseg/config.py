"""Declarative run configuration: one TOML file plus command-line overrides.

The effective (merged) configuration is echoed verbatim into every output
report so a run can be reproduced from its own artifacts. Unknown sections
or keys are rejected rather than ignored.
"""

import copy

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .errors import ConfigError

SCHEMA_VERSION = 1

DEFAULTS = {
    "schema_version": SCHEMA_VERSION,
    "extract": {
        "stride": 5,
    },
    "chroma": {
        "h_low": 0.22,
        "h_high": 0.45,
        "s_min": 0.20,
        "band_mode": "inside",
    },
    "morph": {
        "open_radius": 1,
        "close_radius": 2,
        # calibrated for 720x720 frames; scaled by frame area when
        # scale_min_area is on
        "min_component_area": 64,
        "scale_min_area": True,
    },
    "qc": {
        "min_fg_fraction": 0.01,
        "max_fg_fraction": 0.60,
        "max_components": 3,
        "forbid_top_border": True,
    },
    "composite": {
        "seed": 0,
        "feather_radius": 0,
        "copies": 1,
        "target_size": 720,
    },
    "metadata": {
        "subject_id": "unknown",
        "gender": "male",
        "arm_pose": "close-hands",
        "scenario": "indoors",
        "outfit": "outfit1",
        "sleeve": "long",
        "ethnicity": "caucasian",
    },
    "segmenter": {
        "kind": "skin",
        "hue_ranges": [[0.0, 0.14]],
        "s_min": 0.15,
        "s_max": 0.90,
        "v_min": 0.20,
        "d_min": 100,
        "d_max": 400,
        "fill_holes": True,
        "resize_pred": False,
    },
}


def _merge(base, override, path=""):
    out = copy.deepcopy(base)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config field: {where}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{where} must be a table")
            out[key] = _merge(base[key], value, where)
        else:
            out[key] = value
    return out


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def validate_config(cfg):
    """Check field types and ranges; error messages name the field."""
    _require(cfg["schema_version"] == SCHEMA_VERSION,
             f"schema_version must be {SCHEMA_VERSION}")

    _require(int(cfg["extract"]["stride"]) >= 1, "extract.stride must be >= 1")

    ch = cfg["chroma"]
    _require(0.0 <= ch["h_low"] < ch["h_high"] <= 1.0,
             "chroma: need 0 <= h_low < h_high <= 1")
    _require(0.0 <= ch["s_min"] <= 1.0, "chroma.s_min must be in [0, 1]")
    _require(ch["band_mode"] in ("inside", "outside"),
             "chroma.band_mode must be 'inside' or 'outside'")

    mo = cfg["morph"]
    _require(min(mo["open_radius"], mo["close_radius"], mo["min_component_area"]) >= 0,
             "morph: radii and min_component_area must be >= 0")

    qc = cfg["qc"]
    _require(0.0 <= qc["min_fg_fraction"] <= qc["max_fg_fraction"] <= 1.0,
             "qc: need 0 <= min_fg_fraction <= max_fg_fraction <= 1")
    _require(qc["max_components"] >= 1, "qc.max_components must be >= 1")

    co = cfg["composite"]
    _require(co["feather_radius"] >= 0, "composite.feather_radius must be >= 0")
    _require(co["copies"] >= 1, "composite.copies must be >= 1")
    _require(co["target_size"] >= 1, "composite.target_size must be >= 1")

    seg = cfg["segmenter"]
    _require(seg["kind"] in ("skin", "depth", "external"),
             "segmenter.kind must be 'skin', 'depth', or 'external'")
    for rng in seg["hue_ranges"]:
        _require(len(rng) == 2 and 0.0 <= rng[0] <= rng[1] <= 1.0,
                 "segmenter.hue_ranges entries must be [lo, hi] with 0 <= lo <= hi <= 1")
    _require(0.0 <= seg["s_min"] <= seg["s_max"] <= 1.0,
             "segmenter: need 0 <= s_min <= s_max <= 1")
    _require(0.0 <= seg["v_min"] <= 1.0, "segmenter.v_min must be in [0, 1]")
    _require(0 < seg["d_min"] < seg["d_max"],
             "segmenter: need 0 < d_min < d_max")
    return cfg


def load_config(path=None, overrides=None):
    """Merge defaults <- config file <- CLI overrides, then validate.

    overrides is a mapping of dotted field names ("composite.seed") to
    values; None values are ignored.
    """
    cfg = copy.deepcopy(DEFAULTS)
    if path is not None:
        try:
            with open(path, "rb") as fh:
                loaded = tomllib.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
        cfg = _merge(cfg, loaded)
    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        section, _, field = dotted.partition(".")
        if not field:
            cfg = _merge(cfg, {section: value})
        else:
            if section not in cfg or field not in cfg[section]:
                raise ConfigError(f"unknown config field: {dotted}")
            cfg = _merge(cfg, {section: {field: value}})
    return validate_config(cfg)
