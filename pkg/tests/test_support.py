import logging
from types import SimpleNamespace

import config
from commands.output import CommandResult, flatten, render
from logging_utils import EnhancedLogger
from performance import ResourceMonitor


class TestResourceMonitor:
    def test_explicit_worker_count(self):
        assert ResourceMonitor().worker_count(3) == 3

    def test_auto_worker_count(self):
        assert ResourceMonitor().worker_count(0) >= 1

    def test_chunk_respects_configured_ceiling(self):
        monitor = ResourceMonitor(SimpleNamespace(ORACLE_CHUNK=4096))
        assert 1024 <= monitor.chunk_size(8, workers=2) <= 4096

    def test_stop_reports_elapsed_time(self):
        monitor = ResourceMonitor(SimpleNamespace(ENABLE_PERFORMANCE_MONITORING=False))
        monitor.start()
        stats = monitor.stop("noop", logging.DEBUG)
        assert stats["elapsed_s"] >= 0


class TestLogging:
    def test_log_file_receives_debug_records(self, tmp_path):
        path = tmp_path / "logs" / "run.log"
        enhanced = EnhancedLogger(SimpleNamespace(ENABLE_CONSOLE_LOGGING=False), logging.INFO, str(path))
        try:
            enhanced.setup_logging()
            logging.getLogger("oracle.counting").debug("batch done")
        finally:
            enhanced.cleanup()
        assert "batch done" in path.read_text(encoding="utf-8")


class TestOutput:
    def test_flatten(self):
        record = {"alpha": [1, 1], "params": {"q": 2}, "pass": True, "rows": [{"a": 1}]}
        assert flatten(record) == {"alpha": "1;1", "params.q": 2, "pass": True, "rows.0.a": 1}

    def test_json_is_sorted(self):
        assert render(CommandResult(payload={"b": 1, "a": [2]})) == '{\n  "a": [\n    2\n  ],\n  "b": 1\n}\n'

    def test_table_and_csv(self):
        result = CommandResult(payload=None, rows=[{"alpha": [1], "pass": False}])
        assert render(result, "table").splitlines() == ["alpha  pass", "-----  -----", "1      false"]
        assert render(result, "csv") == "alpha,pass\n1,false\n"

    def test_text_wins(self):
        assert render(CommandResult(payload={"a": 1}, text="vertex v\n"), "json") == "vertex v\n"


class TestConfig:
    def test_unknown_convention_falls_back(self, monkeypatch, caplog):
        monkeypatch.setenv("DT_LAMBDA_CONVENTION", "bogus")
        with caplog.at_level(logging.WARNING, logger="config"):
            value = config._env_choice("DT_LAMBDA_CONVENTION", "half_lefschetz", config.LAMBDA_CONVENTIONS)
        assert value == "half_lefschetz"
        assert "DT_LAMBDA_CONVENTION" in caplog.text

    def test_convention_is_normalized(self, monkeypatch):
        monkeypatch.setenv("DT_LAMBDA_CONVENTION", " Negative_Half_Lefschetz ")
        value = config._env_choice("DT_LAMBDA_CONVENTION", "half_lefschetz", config.LAMBDA_CONVENTIONS)
        assert value == "negative_half_lefschetz"

    def test_conventions_match_the_enum(self):
        from motive.scalar import LambdaConvention

        assert set(config.LAMBDA_CONVENTIONS) == {c.value for c in LambdaConvention}
