"""
Run configuration loading, CSV rendering and artifact publishing.
"""
import csv
import hashlib
import math
import os
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from io import StringIO
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from app.core import config
from app.core.errors import ConfigError
from app.features.experiments.schemas import CsvTable, Experiment, RunConfig, RunManifest
from app.utils import get_logger

logger = get_logger(__name__)

SECTIONS = ("run", "grid", "sampling", "engine", "tolerances")
SCHEMA_PREFIX = "# schema: "


def load_run_config(path: str | Path | None, experiment: Experiment, **overrides: Any) -> RunConfig:
    """
    Read a flat TOML run file and validate it for `experiment`.

    Keys of the known sections are merged into one mapping; non-None
    `overrides` (CLI flags) win over the file.
    """
    data: dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, "rb") as f:
                document = tomllib.load(f)
        except FileNotFoundError:
            raise ConfigError(f"config file {path} not found")
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid TOML: {exc}")
        for section, values in document.items():
            if section not in SECTIONS or not isinstance(values, dict):
                raise ConfigError(f"unknown config section [{section}]; expected one of {', '.join(SECTIONS)}")
            for key, value in values.items():
                if isinstance(value, dict):
                    raise ConfigError(f"[{section}] {key}: nested tables are not allowed")
                if key in data:
                    raise ConfigError(f"key {key} appears in more than one section")
                data[key] = value
    declared = data.get("experiment")
    if declared is not None and declared != experiment.value:
        raise ConfigError(f"config is for experiment {declared!r}, not {experiment.value!r}")
    data["experiment"] = experiment
    data.update({key: value for key, value in overrides.items() if value is not None})
    if "seed" not in data:
        raise ConfigError("a run needs a seed: set [run] seed or pass --seed")
    return RunConfig.model_validate(data)


@contextmanager
def engine_caps(run: RunConfig) -> Iterator[None]:
    """Apply the run's engine caps and tolerances to the process-wide settings, restoring them afterwards."""
    names = {
        "STABILIZER_STATE": run.stabilizer_state,
        "STATEVECTOR_MAX_QUBITS": run.statevector_max_qubits,
        "PAULIPROP_MAX_TERMS": run.pauliprop_max_terms,
        "CLIFFORD_ENUMERATION_MAX_PARAMS": run.clifford_enumeration_max_params,
        "HESSIAN_CAP": run.hessian_cap,
        "ZERO_TOLERANCE": run.zero_tolerance,
    }
    saved = {name: getattr(config, name) for name in names}
    for name, value in names.items():
        setattr(config, name, value)
    try:
        yield
    finally:
        for name, value in saved.items():
            setattr(config, name, value)


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    if isinstance(value, Enum):
        return value.value
    return value


def render_csv(table: CsvTable) -> str:
    buffer = StringIO()
    buffer.write(f"{SCHEMA_PREFIX}{table.schema_name}/{table.schema_version}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def read_csv(path: str | Path, schema_name: str) -> list[dict[str, str]]:
    """Rows of a CSV written by `render_csv`; ConfigError unless its schema tag is `schema_name`."""
    with open(path, newline="") as f:
        first = f.readline().strip()
        if not first.startswith(SCHEMA_PREFIX):
            raise ConfigError(f"{path} has no schema line")
        found = first.removeprefix(SCHEMA_PREFIX).split("/")[0]
        if found != schema_name:
            raise ConfigError(f"{path} has schema {found!r}, expected {schema_name!r}")
        return list(csv.DictReader(f))


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def publish(out_dir: str | Path, files: dict[str, str], manifest: RunManifest) -> RunManifest:
    """
    Write data files and the manifest.

    Data goes to `<name>.partial` first; the manifest with their digests is
    written next, and only then are the partial files renamed into place.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    digests = {}
    for name, text in files.items():
        payload = text.encode("utf-8")
        (out / f"{name}.partial").write_bytes(payload)
        digests[name] = sha256_hex(payload)
    manifest = manifest.model_copy(update={"files": digests})
    (out / "manifest.json").write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    for name in files:
        os.replace(out / f"{name}.partial", out / name)
    logger.info("wrote %d files and manifest %s to %s", len(files), manifest.run_id, out)
    return manifest
