"""Benchmark harness for the algorithm variants.

Runs a grid of (variant, order) cells on one system, under a wall-clock
deadline and an RSS memory cap, and cross-checks that every completed
cell produced exactly the same conditions as the fastest completed cell
at the same order.  Aborted cells are data (status ``timeout`` or
``memory``), not errors.

Cancellation is cooperative: the runners call ``guard.tick()`` between
coefficient computations, so a cell can overshoot its deadline by at
most one coefficient-sized unit of work.  The memory cap is polled (RSS
of the current process), which makes the peak value an estimate, and —
in ``parallel`` mode — a per-worker-process cap rather than a global
one; the report carries these caveats.

The default memory cap is 4 GiB; the ``ISOCHRON_MEM_CAP`` environment
variable (bytes) overrides whatever was passed programmatically or on
the command line.
"""

from __future__ import annotations

import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import psutil

from .conditions import UrabeSeries, normalize_variant, run_variant
from .lienard import LienardSystem

DEFAULT_MEM_CAP = 4 * 1024**3
MEM_CAP_ENV = "ISOCHRON_MEM_CAP"


class ResourceAbort(RuntimeError):
    """A guarded computation hit its deadline or memory cap."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class ResourceGuard:
    """Cooperative deadline and RSS cap for a single computation."""

    __slots__ = ("_deadline", "_mem_cap", "_proc", "_next_poll", "_interval", "peak_rss")

    def __init__(self, timeout=None, mem_cap=None, poll_interval=0.2):
        self._deadline = (time.monotonic() + timeout) if timeout else None
        self._mem_cap = mem_cap
        self._proc = psutil.Process()
        self._interval = poll_interval
        self._next_poll = 0.0
        self.peak_rss = self._proc.memory_info().rss

    def tick(self):
        now = time.monotonic()
        if self._deadline is not None and now > self._deadline:
            raise ResourceAbort("timeout", "deadline exceeded")
        if now >= self._next_poll:
            self._next_poll = now + self._interval
            rss = self._proc.memory_info().rss
            if rss > self.peak_rss:
                self.peak_rss = rss
            if self._mem_cap is not None and rss > self._mem_cap:
                raise ResourceAbort(
                    "memory", f"RSS {rss} exceeded cap {self._mem_cap}"
                )


def effective_mem_cap(requested=None):
    """Resolve the cap: environment variable > requested > 4 GiB default.

    A nonpositive value (from either source) disables the cap.
    """
    env = os.environ.get(MEM_CAP_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{MEM_CAP_ENV} must be an integer byte count, got {env!r}")
        return value if value > 0 else None
    if requested is not None:
        return requested if requested > 0 else None
    return DEFAULT_MEM_CAP


@dataclass
class CellResult:
    variant: str
    M: int
    status: str                 # ok | timeout | memory | mismatch
    seconds: float = None       # median over repeats (completed runs only)
    runs: list = field(default_factory=list)
    peak_rss: int = None
    agreed: bool = None         # vs fastest completed cell at same M
    detail: str = ""

    def to_json_dict(self):
        return {
            "variant": self.variant,
            "M": self.M,
            "status": self.status,
            "seconds": self.seconds,
            "runs": list(self.runs),
            "peak_rss": self.peak_rss,
            "agreed": self.agreed,
            "detail": self.detail,
        }


@dataclass
class BenchReport:
    system_fingerprint: str
    orders: list
    variants: list
    timeout: float
    mem_cap: int
    repeat: int
    parallel: bool
    cells: list = field(default_factory=list)
    caveats: list = field(default_factory=list)

    def cell(self, variant: str, M: int) -> CellResult:
        for c in self.cells:
            if c.variant == variant and c.M == M:
                return c
        raise KeyError(f"no cell for {variant} at M={M}")

    def completed(self):
        return [c for c in self.cells if c.status == "ok"]

    def to_json_dict(self):
        return {
            "system": self.system_fingerprint,
            "orders": list(self.orders),
            "variants": list(self.variants),
            "timeout": self.timeout,
            "mem_cap": self.mem_cap,
            "repeat": self.repeat,
            "parallel": self.parallel,
            "cells": [c.to_json_dict() for c in self.cells],
            "caveats": list(self.caveats),
        }

    def render_table(self) -> str:
        orders = list(self.orders)
        width = 14
        head = "variant".ljust(9) + "".join(f"M={M}".rjust(width) for M in orders)
        lines = [head, "-" * len(head)]
        for v in self.variants:
            row = v.ljust(9)
            for M in orders:
                c = self.cell(v, M)
                if c.status == "ok":
                    mark = "" if c.agreed in (True, None) else " !"
                    entry = f"{c.seconds:.2f}s{mark}"
                elif c.status == "timeout":
                    entry = f">{self.timeout:.0f}s (t/o)"
                elif c.status == "memory":
                    entry = "mem-abort"
                else:
                    entry = c.status
                row += entry.rjust(width)
            lines.append(row)
        lines.append("")
        lines.append(
            f"timeout {self.timeout}s/cell, mem cap "
            + (f"{self.mem_cap / 1024**3:.1f} GiB" if self.mem_cap else "off")
            + f", repeat {self.repeat}"
            + (", parallel" if self.parallel else "")
        )
        for c in self.caveats:
            lines.append("note: " + c)
        return "\n".join(lines)


def _run_cell_inprocess(system, variant, M, timeout, mem_cap, repeat):
    """Run one cell; returns (CellResult, condition texts or None)."""
    label = normalize_variant(variant)
    urabe = UrabeSeries.for_order(M)
    runs = []
    texts = None
    peak = None
    result = CellResult(variant=label, M=M, status="ok")
    for _ in range(max(1, repeat)):
        guard = ResourceGuard(timeout=timeout, mem_cap=mem_cap)
        t0 = time.perf_counter()
        try:
            trace = run_variant(system, urabe, M, label, tick=guard.tick)
        except ResourceAbort as abort:
            result.status = abort.kind
            result.detail = str(abort)
            result.runs = runs
            result.peak_rss = guard.peak_rss
            return result, None
        runs.append(time.perf_counter() - t0)
        peak = guard.peak_rss if peak is None else max(peak, guard.peak_rss)
        if texts is None:
            texts = trace.conditions.texts()
    result.seconds = statistics.median(runs)
    result.runs = runs
    result.peak_rss = peak
    return result, texts


def _cell_worker(payload):
    """Process-pool entry: rebuild the system from JSON and run one cell."""
    from .systemfile import parse_system

    system = parse_system(payload["system"])
    result, texts = _run_cell_inprocess(
        system,
        payload["variant"],
        payload["M"],
        payload["timeout"],
        payload["mem_cap"],
        payload["repeat"],
    )
    return result.to_json_dict(), texts


def run_bench(
    system: LienardSystem,
    orders,
    variants,
    timeout: float = 120.0,
    mem_cap=None,
    repeat: int = 1,
    parallel: bool = False,
    progress=None,
) -> BenchReport:
    """Run the (variant, order) grid and cross-check agreement."""
    labels = [normalize_variant(v) for v in variants]
    orders = list(orders)
    if not labels:
        raise ValueError("no variants selected")
    if not orders or any(M < 1 for M in orders):
        raise ValueError("orders must be a nonempty list of positive integers")
    if repeat < 1:
        raise ValueError("repeat must be at least 1")
    cap = effective_mem_cap(mem_cap)
    report = BenchReport(
        system_fingerprint=system.fingerprint(),
        orders=orders,
        variants=labels,
        timeout=timeout,
        mem_cap=cap,
        repeat=repeat,
        parallel=parallel,
    )
    report.caveats.append(
        "peak_rss is a polled estimate of whole-process RSS, not an allocation count"
    )
    if parallel:
        report.caveats.append(
            "parallel mode: cells time-share CPUs, so timings are noisier than "
            "sequential runs, and the memory cap applies per worker process"
        )

    jobs = [(v, M) for M in orders for v in labels]
    texts_by_cell = {}

    if parallel:
        from .systemfile import emit_system

        sysjson = emit_system(system)
        payloads = [
            {
                "system": sysjson,
                "variant": v,
                "M": M,
                "timeout": timeout,
                "mem_cap": cap,
                "repeat": repeat,
            }
            for v, M in jobs
        ]
        with ProcessPoolExecutor() as pool:
            for (v, M), (cell_dict, texts) in zip(jobs, pool.map(_cell_worker, payloads)):
                cell = CellResult(
                    variant=cell_dict["variant"],
                    M=cell_dict["M"],
                    status=cell_dict["status"],
                    seconds=cell_dict["seconds"],
                    runs=cell_dict["runs"],
                    peak_rss=cell_dict["peak_rss"],
                    detail=cell_dict["detail"],
                )
                report.cells.append(cell)
                texts_by_cell[(v, M)] = texts
                if progress:
                    progress(f"{v} M={M}: {cell.status}")
    else:
        for v, M in jobs:
            cell, texts = _run_cell_inprocess(system, v, M, timeout, cap, repeat)
            report.cells.append(cell)
            texts_by_cell[(v, M)] = texts
            if progress:
                mark = f"{cell.seconds:.2f}s" if cell.status == "ok" else cell.status
                progress(f"{v} M={M}: {mark}")

    # integrity pass: every completed cell must agree with the fastest
    # completed cell at the same order, condition for condition.
    for M in orders:
        ok_cells = [c for c in report.cells if c.M == M and c.status == "ok"]
        if not ok_cells:
            continue
        ref = min(ok_cells, key=lambda c: c.seconds)
        ref_texts = texts_by_cell[(ref.variant, M)]
        for c in ok_cells:
            same = texts_by_cell[(c.variant, M)] == ref_texts
            c.agreed = same
            if not same:
                c.status = "mismatch"
                c.detail = f"conditions differ from {ref.variant} at M={M}"
    return report
