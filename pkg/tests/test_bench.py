"""Benchmark harness: guards, caps, the grid runner, and the table."""

import time

import pytest

import isochron.bench as bench_mod
from isochron import (
    ResourceAbort,
    ResourceGuard,
    effective_mem_cap,
    run_bench,
    run_variant,
)
from isochron.bench import DEFAULT_MEM_CAP, MEM_CAP_ENV
from isochron.catalog import linear_center, quartic_reduced


# ----------------------------------------------------------------------
# ResourceGuard / effective_mem_cap
# ----------------------------------------------------------------------


def test_guard_timeout():
    guard = ResourceGuard(timeout=0.01)
    time.sleep(0.03)
    with pytest.raises(ResourceAbort) as err:
        guard.tick()
    assert err.value.kind == "timeout"


def test_guard_memory_cap():
    guard = ResourceGuard(mem_cap=1, poll_interval=0.0)
    with pytest.raises(ResourceAbort) as err:
        guard.tick()
    assert err.value.kind == "memory"
    assert guard.peak_rss > 1


def test_guard_unlimited_is_quiet():
    guard = ResourceGuard()
    for _ in range(5):
        guard.tick()


def test_effective_mem_cap_default_and_requested(monkeypatch):
    monkeypatch.delenv(MEM_CAP_ENV, raising=False)
    assert effective_mem_cap() == DEFAULT_MEM_CAP == 4 * 1024**3
    assert effective_mem_cap(123) == 123
    assert effective_mem_cap(0) is None
    assert effective_mem_cap(-5) is None


def test_effective_mem_cap_env_override(monkeypatch):
    monkeypatch.setenv(MEM_CAP_ENV, "1000")
    assert effective_mem_cap() == 1000
    assert effective_mem_cap(5) == 1000  # env wins
    monkeypatch.setenv(MEM_CAP_ENV, "0")
    assert effective_mem_cap(5) is None
    monkeypatch.setenv(MEM_CAP_ENV, "lots")
    with pytest.raises(ValueError, match=MEM_CAP_ENV):
        effective_mem_cap()


# ----------------------------------------------------------------------
# run_bench
# ----------------------------------------------------------------------


def test_grid_completes_and_agrees():
    report = run_bench(linear_center(), [3, 4], ["A2", "A4"], timeout=30.0)
    assert len(report.cells) == 4
    for cell in report.cells:
        assert cell.status == "ok"
        assert cell.seconds >= 0.0
        assert cell.agreed is True
        assert cell.peak_rss > 0
    assert report.completed()
    assert report.cell("A4", 3).variant == "A4"
    with pytest.raises(KeyError):
        report.cell("A0", 3)


def test_timeout_cell_marked():
    report = run_bench(quartic_reduced(), [12], ["A3"], timeout=0.01)
    cell = report.cell("A3", 12)
    assert cell.status == "timeout"
    assert cell.seconds is None
    assert not report.completed()


def test_memory_cell_marked():
    report = run_bench(quartic_reduced(), [10], ["A2"], timeout=30.0, mem_cap=1)
    assert report.cell("A2", 10).status == "memory"


def test_repeat_collects_runs():
    report = run_bench(linear_center(), [4], ["A4"], timeout=30.0, repeat=3)
    cell = report.cell("A4", 4)
    assert len(cell.runs) == 3
    assert cell.seconds == sorted(cell.runs)[1]


def test_mismatch_detection(monkeypatch):
    real = run_variant

    def doctored(system, urabe, M, variant, tick=None, keep_steps=False):
        trace = real(system, urabe, M, variant, tick=tick, keep_steps=keep_steps)
        if variant == "A2":
            values = list(trace.conditions.values)
            values[-1] = values[-1] + type(values[-1]).one(trace.conditions.ctx)
            object.__setattr__(trace.conditions, "values", tuple(values))
        return trace

    monkeypatch.setattr(bench_mod, "run_variant", doctored)
    report = run_bench(linear_center(), [4], ["A2", "A4"], timeout=30.0)
    statuses = {c.variant: c.status for c in report.cells}
    assert "mismatch" in statuses.values()
    bad = next(c for c in report.cells if c.status == "mismatch")
    assert bad.agreed is False
    assert "differ" in bad.detail
    assert "mismatch" in report.render_table()


def test_render_table_shape():
    report = run_bench(quartic_reduced(), [4, 12], ["A4", "A3"],
                       timeout={4: 30.0, 12: 0.01}.get(12))  # one tight cell
    table = report.render_table()
    assert "A3" in table and "A4" in table
    assert " 4" in table and "12" in table


def test_render_table_marks_aborts():
    report = run_bench(quartic_reduced(), [12], ["A3", "A4"], timeout=0.01)
    table = report.render_table()
    assert "(t/o)" in table


def test_report_json_round_trip_shape():
    report = run_bench(linear_center(), [3], ["A4"], timeout=30.0)
    d = report.to_json_dict()
    assert d["orders"] == [3]
    assert d["variants"] == ["A4"]
    assert d["repeat"] == 1
    assert d["cells"][0]["status"] == "ok"
    assert d["cells"][0]["variant"] == "A4"
    assert isinstance(d["system"], str)


def test_parallel_smoke():
    report = run_bench(linear_center(), [3], ["A2", "A4"], timeout=60.0,
                       parallel=True)
    assert report.completed()
    for cell in report.cells:
        assert cell.status == "ok"
        assert cell.agreed is True


def test_progress_callback():
    lines = []
    run_bench(linear_center(), [3], ["A4"], timeout=30.0, progress=lines.append)
    assert lines and any("A4" in line for line in lines)


def test_rejects_empty_grid():
    with pytest.raises(ValueError):
        run_bench(linear_center(), [], ["A4"])
    with pytest.raises(ValueError):
        run_bench(linear_center(), [3], [])
