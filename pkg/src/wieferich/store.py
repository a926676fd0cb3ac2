"""JSONL hit logs and resumable scan checkpoints."""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable

from . import __version__
from .search import ScanJob, WieferichHit, iter_chunks


class StoreError(OSError):
    pass


class ResumeError(ValueError):
    """Checkpoint does not belong to the job being resumed."""


def job_fingerprint(job: ScanJob) -> str:
    key = f"v={job.base};lo={job.range.lo};hi={job.range.hi};k={job.power};chunk={job.chunk};version={__version__}"
    return hashlib.sha256(key.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Checkpoint:
    fingerprint: str
    last_complete: int
    hits: int
    ts: str

    def as_dict(self) -> dict:
        return {"fingerprint": self.fingerprint, "last_complete": self.last_complete, "hits": self.hits, "ts": self.ts}


def hit_line(hit: WieferichHit) -> str:
    return json.dumps(hit.as_record(), separators=(",", ":")) + "\n"


def append_hit(hit: WieferichHit, sink: str | os.PathLike | IO[str]) -> None:
    """Append one JSON record; paths are opened in append mode per call."""
    if hasattr(sink, "write"):
        sink.write(hit_line(hit))
        sink.flush()
        return
    try:
        with open(sink, "a", encoding="utf-8") as fh:
            fh.write(hit_line(hit))
    except OSError as exc:
        raise StoreError(f"cannot append hit to {sink}: {exc}") from exc


def header_line(job: ScanJob) -> str:
    return f"# wieferich hits v={job.base} k={job.power} range=[{job.range.lo},{job.range.hi}) fingerprint={job_fingerprint(job)}\n"


def read_hits(path: str | os.PathLike | Iterable[str]) -> list[WieferichHit]:
    lines = open(path, encoding="utf-8") if isinstance(path, (str, os.PathLike)) else path
    out = []
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(WieferichHit.from_record(json.loads(line)))
    return out


def write_checkpoint(path: str | os.PathLike, cp: Checkpoint) -> None:
    """Atomic replace via a fsynced temp file in the same directory."""
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent or ".")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(cp.as_dict(), fh)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except OSError as exc:
        raise StoreError(f"cannot write checkpoint {path}: {exc}") from exc


def load_checkpoint(path: str | os.PathLike) -> Checkpoint:
    with open(path, encoding="utf-8") as fh:
        d = json.load(fh)
    return Checkpoint(d["fingerprint"], int(d["last_complete"]), int(d["hits"]), d["ts"])


def resume(job: ScanJob, checkpoint: Checkpoint) -> ScanJob:
    """The remainder of job after checkpoint.last_complete."""
    if checkpoint.fingerprint != job_fingerprint(job):
        raise ResumeError("checkpoint fingerprint does not match this job; start fresh")
    if not job.range.lo <= checkpoint.last_complete <= job.range.hi:
        raise ResumeError(f"checkpoint bound {checkpoint.last_complete} outside job range")
    if checkpoint.last_complete == job.range.hi:
        return job  # finished; caller checks is_complete
    return job.with_lo(checkpoint.last_complete)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _truncate_hits(path: Path, below: int) -> int:
    """Drop records with p >= below (written by a chunk whose checkpoint never landed)."""
    kept, n = [], 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            s = line.strip()
            if s.startswith("#") or not s:
                kept.append(line)
            elif json.loads(s)["p"] < below:
                kept.append(line)
                n += 1
    with open(path, "w", encoding="utf-8") as fh:
        fh.writelines(kept)
    return n


def run_scan(
    job: ScanJob,
    hits_path: str | os.PathLike,
    checkpoint_path: str | os.PathLike | None = None,
    fresh: bool = False,
    max_chunks: int | None = None,
    stream: IO[str] | None = None,
) -> list[WieferichHit]:
    """Scan with a persistent hit log, checkpointing after every chunk.

    An existing matching checkpoint resumes the scan; a mismatching one raises
    :class:`ResumeError` unless ``fresh``.  ``max_chunks`` stops early, leaving
    a resumable state behind.  Returns the hits of this invocation only.
    """
    hits_path = Path(hits_path)
    ckpt = Path(checkpoint_path) if checkpoint_path else hits_path.with_name(hits_path.name + ".ckpt")
    todo, total = job, 0
    if ckpt.exists() and not fresh:
        cp = load_checkpoint(ckpt)
        todo = resume(job, cp)
        if cp.last_complete == job.range.hi:
            return []
        total = _truncate_hits(hits_path, cp.last_complete) if hits_path.exists() else 0
    else:
        with open(hits_path, "w", encoding="utf-8") as fh:
            fh.write(header_line(job))
        if ckpt.exists():
            ckpt.unlink()
    fp = job_fingerprint(job)
    found: list[WieferichHit] = []
    with open(hits_path, "a", encoding="utf-8") as log:
        for i, (chunk_hi, hits) in enumerate(iter_chunks(todo)):
            for h in hits:
                append_hit(h, log)
                if stream is not None:
                    stream.write(hit_line(h))
                    stream.flush()
            found += hits
            total += len(hits)
            log.flush()
            os.fsync(log.fileno())
            write_checkpoint(ckpt, Checkpoint(fp, chunk_hi, total, _now()))
            if max_chunks is not None and i + 1 >= max_chunks:
                break
    return found


def export_csv(hits: Iterable[WieferichHit], out: IO[str]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["v", "p", "k", "q", "balanced"])
    for h in hits:
        w.writerow([h.base, h.prime, h.power, h.quotient, int(h.balanced)])
