"""CSV tables and run manifests."""

import json
import os
from datetime import datetime, timezone

import polars as pl
from loguru import logger
from pydantic import BaseModel, ConfigDict

from .. import __version__

MANIFEST_SUFFIX = ".manifest.json"


class RunManifest(BaseModel):
    """Provenance record written next to every output file."""

    model_config = ConfigDict(frozen=True)

    tool_version: str
    config_digest: str
    subcommand: str
    seed: int
    timestamp: str

    @classmethod
    def create(cls, config_digest: str, subcommand: str, seed: int) -> "RunManifest":
        return cls(
            tool_version=__version__,
            config_digest=config_digest,
            subcommand=subcommand,
            seed=seed,
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )


def manifest_path(output_path: str) -> str:
    return output_path + MANIFEST_SUFFIX


def write_manifest(manifest: RunManifest, output_path: str) -> str:
    path = manifest_path(output_path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(manifest.model_dump(mode="json"), f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def read_manifest(output_path: str) -> RunManifest:
    with open(manifest_path(output_path), encoding="utf-8") as f:
        return RunManifest.model_validate(json.load(f))


def export_csv(
    df: pl.DataFrame,
    filepath: str,
    manifest: RunManifest | None = None,
) -> None:
    """
    Write a table as CSV (polars prints floats in shortest round-trip form,
    nulls as empty fields) and its manifest when one is given.
    """
    directory = os.path.dirname(os.path.abspath(filepath))
    if not os.path.isdir(directory):
        raise ValueError(f"Output directory does not exist: {directory}")
    df.write_csv(filepath)
    logger.info(f"Wrote {len(df)} rows to {filepath}")
    if manifest is not None:
        write_manifest(manifest, filepath)
