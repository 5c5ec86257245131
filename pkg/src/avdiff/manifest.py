"""Reproducibility bookkeeping for emitted result files.

Every output directory receives a ``manifest.json`` recording what was run
and a content hash over all inputs (tool version, registration series bytes,
scenario documents, parameter overrides).  Emitted CSV/SVG files carry the
hash in a leading comment, so any artifact can be traced to its inputs.
Identical inputs always produce an identical hash; the manifest contains no
timestamps.
"""

import dataclasses
import hashlib
import json
import os

__all__ = ["RunManifest", "build_manifest", "write_manifest"]

MANIFEST_FILENAME = "manifest.json"


@dataclasses.dataclass(frozen=True)
class RunManifest:
    scenarios: tuple[str, ...]
    registrations_source: str
    parameter_overrides: dict
    out_dir: str
    tool_version: str
    input_hash: str

    def to_dict(self):
        return {
            "scenarios": list(self.scenarios),
            "registrations_source": self.registrations_source,
            "parameter_overrides": self.parameter_overrides,
            "out_dir": self.out_dir,
            "tool_version": self.tool_version,
            "input_hash": self.input_hash,
        }


def compute_input_hash(tool_version, registrations_bytes, scenario_docs, overrides):
    """SHA-256 over the canonical serialization of all run inputs."""
    digest = hashlib.sha256()
    digest.update(tool_version.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(registrations_bytes)
    digest.update(b"\x00")
    canonical = json.dumps(
        {"scenarios": scenario_docs, "overrides": overrides},
        sort_keys=True,
        separators=(",", ":"),
    )
    digest.update(canonical.encode("utf-8"))
    return digest.hexdigest()


def build_manifest(
    scenarios,
    registrations_source,
    registrations_bytes,
    scenario_docs,
    overrides,
    out_dir,
    tool_version,
):
    return RunManifest(
        scenarios=tuple(scenarios),
        registrations_source=str(registrations_source),
        parameter_overrides=dict(overrides),
        out_dir=str(out_dir),
        tool_version=tool_version,
        input_hash=compute_input_hash(
            tool_version, registrations_bytes, scenario_docs, dict(overrides)
        ),
    )


def write_manifest(manifest, out_dir):
    path = os.path.join(out_dir, MANIFEST_FILENAME)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
