"""Tests for logging setup and the -v/--log-level flags."""

import logging

import pytest
from rich.logging import RichHandler

from lambda_epsilon.logging_config import (
    PACKAGE_LOGGER,
    current_level,
    get_logger,
    resolve_level,
    setup_logging,
    worker_initializer,
)
from lambda_epsilon.main import main


@pytest.fixture(autouse=True)
def restore_package_logger():
    logger = logging.getLogger(PACKAGE_LOGGER)
    saved = (list(logger.handlers), logger.level, logger.propagate)
    yield
    logger.handlers[:], logger.level, logger.propagate = saved


class TestResolveLevel:
    """Tests for choosing the level from the flags."""

    @pytest.mark.parametrize(
        "verbose, expected",
        [(0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG), (5, logging.DEBUG)],
    )
    def test_verbosity(self, verbose, expected):
        """Test that each -v lowers the threshold one step."""
        assert resolve_level(None, verbose) == expected

    def test_explicit_level_wins(self):
        """Test that --log-level overrides -v."""
        assert resolve_level("ERROR", 2) == logging.ERROR
        assert resolve_level("debug") == logging.DEBUG


class TestSetupLogging:
    """Tests for the package logger configuration."""

    def test_plain_handler(self):
        """Test that a non-terminal gets one plain stderr handler."""
        logger = setup_logging("INFO", rich=False)
        assert logger.name == PACKAGE_LOGGER
        assert len(logger.handlers) == 1
        assert not isinstance(logger.handlers[0], RichHandler)
        assert logger.level == logging.INFO
        assert not logger.propagate

    def test_rich_handler(self):
        """Test that rich rendering can be forced."""
        logger = setup_logging(verbose=2, rich=True)
        assert isinstance(logger.handlers[0], RichHandler)
        assert current_level() == logging.DEBUG

    def test_repeated_setup_does_not_duplicate(self):
        """Test that a second call replaces the handler."""
        setup_logging(rich=False)
        logger = setup_logging(rich=False)
        assert len(logger.handlers) == 1

    def test_records_go_to_stderr(self, capsys):
        """Test that log records never reach stdout."""
        setup_logging("INFO", rich=False)
        get_logger("lambda_epsilon.canonical").info("hello")
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "INFO: hello" in captured.err

    def test_worker_initializer(self):
        """Test that workers get a plain handler at the given level."""
        worker_initializer(logging.INFO)
        logger = logging.getLogger(PACKAGE_LOGGER)
        assert logger.level == logging.INFO
        assert len(logger.handlers) == 1
        assert not isinstance(logger.handlers[0], RichHandler)


class TestGetLogger:
    """Tests for logger namespacing."""

    def test_module_names(self):
        """Test that every logger lives under the package namespace."""
        assert get_logger("lambda_epsilon.reduction").name == "lambda_epsilon.reduction"
        assert get_logger("__main__").name == "lambda_epsilon.main"
        assert get_logger("some.other.module").name == "lambda_epsilon.module"
        assert get_logger().name == PACKAGE_LOGGER


class TestCliFlags:
    """Tests for the logging flags through the CLI."""

    def test_verbose_debug_records(self, capsys, tmp_path, monkeypatch):
        """Test that -vv surfaces DEBUG records on stderr only."""
        monkeypatch.chdir(tmp_path)
        assert main(["-vv", "equiv", "-e", "x + 0", "-e", "x"]) == 0
        captured = capsys.readouterr()
        assert "DEBUG:" in captured.err
        assert "DEBUG:" not in captured.out

    def test_default_is_quiet_on_stderr(self, capsys, tmp_path, monkeypatch):
        """Test that without flags no DEBUG records are written."""
        monkeypatch.chdir(tmp_path)
        assert main(["equiv", "-e", "x + 0", "-e", "x"]) == 0
        assert "DEBUG" not in capsys.readouterr().err
