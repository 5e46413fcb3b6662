"""Tests for revertbench.profiling."""

import pytest
from rich.console import Console

from revertbench import profiling


@pytest.fixture(autouse=True)
def clean_stats():
    profiling.reset_stats()
    yield
    profiling.reset_stats()


@pytest.fixture(autouse=True)
def enabled(monkeypatch):
    monkeypatch.setattr(profiling, "_enabled", True)


class TestProfiling:
    """Tests for timing collection and the stats table."""

    def test_record_accumulates(self):
        profiling.record("run PAMR", 0.5)
        profiling.record("run PAMR", 1.5)
        stats = profiling.get_stats()["run PAMR"]
        assert stats == {"count": 2, "total": 2.0, "max": 1.5}

    def test_timed_block(self):
        with profiling.timed("block"):
            sum(range(1000))
        assert profiling.get_stats()["block"]["count"] == 1

    def test_disabled(self, monkeypatch):
        monkeypatch.setattr(profiling, "_enabled", False)
        profiling.record("quiet", 1.0)
        with profiling.timed("quiet"):
            pass
        assert profiling.get_stats() == {}

    def test_table(self):
        profiling.record("grid", 2.0)
        console = Console(record=True, width=100)
        console.print(profiling.get_stats_table())
        text = console.export_text()
        assert "grid" in text
        assert "2.000s" in text

    def test_reset(self):
        profiling.record("x", 1.0)
        profiling.reset_stats()
        assert profiling.get_stats() == {}
