"""Range verification: the fast algorithm checked against the baseline.

Work is cut into fixed-size chunks identified by index.  Chunks may run
on several worker processes, but results are merged strictly in index
order, so a report never depends on chunk size, worker count, or whether
the run was resumed from a checkpoint.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import _kernels
from .core import DEFAULT_BUDGET
from .errors import CollatzError
from .expr import decimal_string, parse_decimal

CHECKPOINT_VERSION = 1


class CheckpointError(RuntimeError):
    """The checkpoint file is unreadable, unwritable, or for another run."""


@dataclass(frozen=True)
class VerifyReport:
    range_lo: int
    range_hi: int
    checked: int
    mismatches: tuple[tuple[int, int, int], ...]
    max_stopping_time: int
    argmax_input: int
    incidents: tuple[int, ...] = ()
    cross_check_every: int = 1
    elapsed: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.incidents

    @property
    def complete(self) -> bool:
        return self.checked + len(self.incidents) == self.range_hi - self.range_lo + 1

    def to_json_dict(self) -> dict:
        """JSON-safe view; integers wider than 64 bits become decimal strings."""
        return {
            "range_lo": _jsonint(self.range_lo),
            "range_hi": _jsonint(self.range_hi),
            "checked": self.checked,
            "mismatches": [
                {"input": _jsonint(n), "fast": f, "baseline": b} for n, f, b in self.mismatches
            ],
            "max_stopping_time": self.max_stopping_time,
            "argmax_input": _jsonint(self.argmax_input),
            "incidents": [_jsonint(n) for n in self.incidents],
            "cross_check_every": self.cross_check_every,
            "elapsed": self.elapsed,
            "ok": self.ok,
        }


def _jsonint(n: int):
    return n if n.bit_length() < 64 else decimal_string(n)


@dataclass
class Checkpoint:
    range_lo: int
    range_hi: int
    chunk_size: int
    step_budget: int
    cross_check_every: int
    next_chunk_index: int = 0
    checked: int = 0
    max_steps: int = -1
    argmax: int = 0
    mismatches: list = field(default_factory=list)
    incidents: list = field(default_factory=list)

    def same_run(self, other: "Checkpoint") -> bool:
        keys = ("range_lo", "range_hi", "chunk_size", "step_budget", "cross_check_every")
        return all(getattr(self, k) == getattr(other, k) for k in keys)

    def save(self, path: Path) -> None:
        data = asdict(self)
        data["version"] = CHECKPOINT_VERSION
        for key in ("range_lo", "range_hi", "argmax"):
            data[key] = decimal_string(data[key])
        data["mismatches"] = [[decimal_string(n), f, b] for n, f, b in self.mismatches]
        data["incidents"] = [decimal_string(n) for n in self.incidents]
        path = Path(path)
        try:
            fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, indent=1)
            os.replace(tmp, path)
        except OSError as exc:
            raise CheckpointError(f"cannot write checkpoint {path}: {exc}") from exc

    @classmethod
    def load(cls, path: Path) -> "Checkpoint":
        try:
            data = json.loads(Path(path).read_text())
            if data.pop("version", None) != CHECKPOINT_VERSION:
                raise CheckpointError(f"{path}: unsupported checkpoint version")
            for key in ("range_lo", "range_hi", "argmax"):
                data[key] = parse_decimal(data[key])
            data["mismatches"] = [(parse_decimal(n), f, b) for n, f, b in data["mismatches"]]
            data["incidents"] = [parse_decimal(n) for n in data["incidents"]]
            return cls(**data)
        except (OSError, ValueError, TypeError, KeyError) as exc:
            raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc


def _run_chunk(args):
    lo, hi, budget, every, origin = args
    return _kernels.verify_chunk(lo, hi, budget, every, origin)


def _chunk_bounds(lo, hi, chunk_size, index):
    a = lo + index * chunk_size
    return a, min(hi, a + chunk_size - 1)


def verify_range(
    lo: int,
    hi: int,
    chunk_size: int = 4096,
    step_budget: int = DEFAULT_BUDGET,
    *,
    workers: int = 1,
    checkpoint: str | os.PathLike | None = None,
    cross_check_every: int = 1,
    on_chunk=None,
) -> VerifyReport:
    """Verify every ``n`` in ``[lo, hi]``.

    The fast algorithm runs on every input; the bitwise baseline runs on
    every ``cross_check_every``-th input counted from ``lo`` (0 disables
    it).  Inputs that exhaust ``step_budget`` are reported as incidents.

    With ``checkpoint`` set, progress is written after each merged chunk
    and an existing file for the same run is resumed.  ``on_chunk`` is
    called with the chunk index after the checkpoint for that chunk is
    written.
    """
    if lo < 1 or hi < lo:
        raise CollatzError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if chunk_size < 1 or step_budget < 1 or cross_check_every < 0:
        raise CollatzError("chunk_size and step_budget must be >= 1")
    started = time.perf_counter()
    state = Checkpoint(lo, hi, chunk_size, step_budget, cross_check_every)
    path = Path(checkpoint) if checkpoint is not None else None
    if path is not None and path.exists():
        saved = Checkpoint.load(path)
        if not saved.same_run(state):
            raise CheckpointError(f"{path} belongs to a different run")
        state = saved

    n_chunks = -(-(hi - lo + 1) // chunk_size)
    jobs = (
        (*_chunk_bounds(lo, hi, chunk_size, i), step_budget, cross_check_every, lo)
        for i in range(state.next_chunk_index, n_chunks)
    )

    def merge(result):
        checked, mismatches, max_steps, argmax, incidents = result
        state.checked += checked
        state.mismatches.extend(mismatches)
        state.incidents.extend(incidents)
        if max_steps > state.max_steps:
            state.max_steps = max_steps
            state.argmax = argmax
        index = state.next_chunk_index
        state.next_chunk_index += 1
        if path is not None:
            state.save(path)
        if on_chunk is not None:
            on_chunk(index)

    if workers <= 1:
        for job in jobs:
            merge(_run_chunk(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = deque()
            for job in jobs:
                pending.append(pool.submit(_run_chunk, job))
                if len(pending) >= 4 * workers:
                    merge(pending.popleft().result())
            while pending:
                merge(pending.popleft().result())

    return VerifyReport(
        range_lo=lo,
        range_hi=hi,
        checked=state.checked,
        mismatches=tuple(sorted(state.mismatches)),
        max_stopping_time=state.max_steps + 1,
        argmax_input=state.argmax,
        incidents=tuple(state.incidents),
        cross_check_every=cross_check_every,
        elapsed=time.perf_counter() - started,
    )


def verify_window(
    base_exponent: int,
    offset_count: int,
    step_budget: int = DEFAULT_BUDGET,
    *,
    cross_check_every: int | None = None,
    chunk_size: int = 64,
    workers: int = 1,
    checkpoint: str | os.PathLike | None = None,
) -> VerifyReport:
    """Verify ``[2**base_exponent, 2**base_exponent + offset_count]``.

    Above 64-bit bases the baseline is off unless ``cross_check_every`` is
    given, since its cost there dominates without checking anything the
    fast path does not.
    """
    if base_exponent < 1:
        raise CollatzError(f"base_exponent must be >= 1, got {base_exponent}")
    if offset_count < 1:
        raise CollatzError(f"offset_count must be >= 1, got {offset_count}")
    if cross_check_every is None:
        cross_check_every = 1 if base_exponent <= 64 else 0
    base = 1 << base_exponent
    return verify_range(
        base,
        base + offset_count,
        chunk_size,
        step_budget,
        workers=workers,
        checkpoint=checkpoint,
        cross_check_every=cross_check_every,
    )
