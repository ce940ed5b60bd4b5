"""Run manifests: enough to re-execute a run and compare its certified outputs."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__

MANIFEST_NAME = "manifest.json"


def sha256_file(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class OutputEntry:
    path: str  # relative to the output directory
    sha256: str
    certified: bool


@dataclass
class RunManifest:
    command: str
    config: dict
    config_sha256: str
    input_hashes: dict
    tool_version: str
    seed: int
    workers: int
    precision_floor_bits: int
    wall_time: float
    outputs: list = field(default_factory=list)

    def write(self, out_dir: Path) -> Path:
        p = Path(out_dir) / MANIFEST_NAME
        p.write_text(json.dumps(asdict(self), indent=1, sort_keys=True) + "\n")
        return p

    @classmethod
    def read(cls, path: Path) -> RunManifest:
        d = json.loads(Path(path).read_text())
        d["outputs"] = [OutputEntry(**o) for o in d.get("outputs", [])]
        return cls(**d)

    def certified(self) -> list[OutputEntry]:
        return [o for o in self.outputs if (o.certified if isinstance(o, OutputEntry) else o["certified"])]


def build_manifest(command, cfg, cfg_hash, inputs, seed, workers, floor_bits, wall, out_dir, outputs) -> RunManifest:
    entries = [OutputEntry(rel, sha256_file(Path(out_dir) / rel), cert) for rel, cert in outputs]
    return RunManifest(command, cfg, cfg_hash, inputs, __version__, seed, workers, floor_bits, wall, entries)


def compare_outputs(old: RunManifest, new: RunManifest) -> list[str]:
    """Paths of certified outputs whose bytes differ (or are missing) in ``new``."""
    got = {o.path: o.sha256 for o in new.outputs}
    return [o.path for o in old.certified() if got.get(o.path) != o.sha256]
