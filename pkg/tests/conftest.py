"""Shared helpers: writing system/h-table JSON files for CLI-level tests."""

from __future__ import annotations

import json

import pytest

from isochron import emit_system


@pytest.fixture
def write_json(tmp_path):
    """Dump an object to a JSON file under tmp_path and return the path."""

    def _write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj, indent=1))
        return str(path)

    return _write


@pytest.fixture
def write_system(write_json):
    """Emit a system object to a JSON file and return the path."""

    def _write(name, system):
        return write_json(name, emit_system(system))

    return _write
