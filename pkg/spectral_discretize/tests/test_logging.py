"""
Logging Tests

핸들러 설치와 JSON lines 포맷을 테스트합니다.
"""

import json
import logging

from spectral_discretize.logging import JsonLogFormatter, RunInfo, configure_logging, log_run_event


def _record(message, run=None):
    record = logging.LogRecord("spectral_discretize.bench", logging.INFO, __file__, 1, message, None, None)
    if run is not None:
        record.run = run
    return record


class TestConfigureLogging:
    """핸들러 설치 테스트"""

    def test_single_handler(self):
        configure_logging("INFO")
        configure_logging("DEBUG")
        root = logging.getLogger("spectral_discretize")
        names = [h.get_name() for h in root.handlers]
        assert names.count("spectral_discretize") == 1
        assert root.level == logging.DEBUG

    def test_json_formatter_selected(self):
        handler = configure_logging("WARNING", json_format=True)
        assert isinstance(handler.formatter, JsonLogFormatter)


class TestJsonFormatter:
    """JSON lines 포맷 테스트"""

    def test_plain_message(self):
        payload = json.loads(JsonLogFormatter().format(_record("hello")))
        assert payload["message"] == "hello"
        assert payload["level"] == "INFO"
        assert "run" not in payload

    def test_run_info_attached(self):
        run = RunInfo(dataset="toy", cut="ratio", method="isr", seed=0, objective=1.3, iterations=2)
        payload = json.loads(JsonLogFormatter().format(_record("done", run)))
        assert payload["run"]["dataset"] == "toy"
        assert payload["run"]["objective"] == 1.3

    def test_log_run_event(self, caplog):
        run = RunInfo(dataset="toy", cut="ratio", method="sr", seed=1, objective=2.0)
        with caplog.at_level(logging.INFO, logger="spectral_discretize"):
            log_run_event(run)
        assert any("toy/ratio/sr" in r.getMessage() for r in caplog.records)
