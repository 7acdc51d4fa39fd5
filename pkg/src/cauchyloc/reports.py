"""Run manifests, deterministic CSV/JSON writers and an order-preserving parallel map."""

from __future__ import annotations

import csv
import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from pathlib import Path

from mpmath import mp

from . import __version__

MANIFEST_NAME = "manifest.json"
TIMING_NAME = "timing.json"


@dataclass
class RunManifest:
    """Everything needed to rerun a subcommand bit for bit.

    Wall time and the worker count live in timing.json so that the manifest
    itself is identical across reruns and across --jobs.
    """

    subcommand: str
    params: dict
    precision_bits: int
    seed: int
    input_hashes: dict = field(default_factory=dict)
    tool_version: str = __version__
    escalations: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj))
    return path


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def write_manifest(out_dir, manifest: RunManifest) -> Path:
    return write_json(Path(out_dir) / MANIFEST_NAME, manifest.to_json())


def write_timing(out_dir, wall_seconds: float, jobs: int) -> Path:
    return write_json(Path(out_dir) / TIMING_NAME,
                      {"wall_seconds": round(wall_seconds, 3), "jobs": jobs})


def _at_precision(fn, prec, item):
    with mp.workprec(prec):
        return fn(item)


def parallel_map(fn, items, jobs: int = 1):
    """map(fn, items) in input order; workers inherit the caller's precision.

    ``fn`` must be picklable (a module-level function or a partial of one)
    when jobs > 1.
    """
    items = list(items)
    task = partial(_at_precision, fn, mp.prec)
    if jobs <= 1 or len(items) <= 1:
        return [task(it) for it in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(task, items))
