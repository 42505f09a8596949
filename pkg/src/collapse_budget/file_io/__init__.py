"""File I/O: configuration files, presets, CSV tables and run manifests."""

from .config_io import (
    ConfigError,
    ConfigLoader,
    format_validation_error,
    load_config,
    save_config,
)
from .exporters import (
    MANIFEST_SUFFIX,
    RunManifest,
    export_csv,
    manifest_path,
    read_manifest,
    write_manifest,
)
from .presets import (
    PRESETS,
    SWEEP_PRESETS,
    RangePreset,
    get_preset,
    preset_json,
    reference_scenario,
)

__all__ = [
    "ConfigError",
    "ConfigLoader",
    "MANIFEST_SUFFIX",
    "PRESETS",
    "RangePreset",
    "RunManifest",
    "SWEEP_PRESETS",
    "export_csv",
    "format_validation_error",
    "get_preset",
    "load_config",
    "manifest_path",
    "preset_json",
    "read_manifest",
    "reference_scenario",
    "save_config",
    "write_manifest",
]
