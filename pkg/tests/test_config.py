import pytest

from egoseg.config import DEFAULTS, load_config, validate_config
from egoseg.errors import ConfigError


def test_defaults_are_valid():
    cfg = load_config()
    assert cfg == DEFAULTS
    validate_config(cfg)


def test_file_merges_over_defaults(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text(
        "schema_version = 1\n\n[composite]\nseed = 7\ntarget_size = 240\n"
    )
    cfg = load_config(path)
    assert cfg["composite"]["seed"] == 7
    assert cfg["composite"]["target_size"] == 240
    assert cfg["composite"]["copies"] == 1  # untouched default
    assert cfg["chroma"]["h_low"] == 0.22


def test_overrides_beat_file(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[composite]\nseed = 7\n")
    cfg = load_config(path, {"composite.seed": 11, "extract.stride": None})
    assert cfg["composite"]["seed"] == 11
    assert cfg["extract"]["stride"] == 5  # None override ignored


def test_unknown_field_named_in_error(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[chroma]\nhue_low = 0.2\n")
    with pytest.raises(ConfigError, match="chroma.hue_low"):
        load_config(path)


def test_unknown_section_rejected(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[florp]\nx = 1\n")
    with pytest.raises(ConfigError, match="florp"):
        load_config(path)


def test_zero_stride_names_field():
    with pytest.raises(ConfigError, match="extract.stride"):
        load_config(None, {"extract.stride": 0})


def test_bad_band_rejected():
    with pytest.raises(ConfigError, match="h_low"):
        load_config(None, {"chroma.h_low": 0.9})


def test_bad_schema_version(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("schema_version = 2\n")
    with pytest.raises(ConfigError, match="schema_version"):
        load_config(path)


def test_invalid_toml_reported(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("not toml ===")
    with pytest.raises(ConfigError, match="TOML"):
        load_config(path)


def test_missing_config_file_is_config_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.toml")


def test_bad_segmenter_kind():
    with pytest.raises(ConfigError, match="segmenter.kind"):
        load_config(None, {"segmenter.kind": "sonar"})
