#!/usr/bin/env python3
"""
Command output for the lambda-epsilon CLI.

Provides Rich-based text output, a single-object JSON mode, and optional JSONL
file logging of every command's result.
"""

import json
import time
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.table import Table


class CommandLogger:
    """Renders one command's result as text or JSON and appends it to a log file."""

    def __init__(self, args, command: str):
        """Initialize the command logger.

        Args:
            args: CLI arguments containing output flags (json, quiet, log_file)
            command: The command name (canon, reduce, ...)
        """
        self.args = args
        self.command = command
        self.start_time = time.time()

        self.quiet = getattr(args, "quiet", False)
        self.json_flag = getattr(args, "json", False)
        self.log_file_path = getattr(args, "log_file", None)

        self.diagnostics: list[str] = []

        # Term lines must stay re-parsable: no markup, no highlighting, no wrapping.
        self.console = Console(highlight=False, soft_wrap=True)
        self.err_console = Console(stderr=True, highlight=False, soft_wrap=True)

        if self.quiet:
            self.stdout_format = "none"
        elif self.json_flag:
            self.stdout_format = "json"
        else:
            self.stdout_format = "human"

    def get_duration_ms(self) -> int:
        """Get elapsed time in milliseconds since logger creation."""
        return int((time.time() - self.start_time) * 1000)

    def line(self, text: str, style: str | None = None) -> None:
        """Print one verbatim line in text mode."""
        if self.stdout_format == "human":
            self.console.print(text, markup=False, style=style)

    def table(
        self, title: str | None, columns: list[str], rows: list[list[str]]
    ) -> None:
        """Print a table in text mode."""
        if self.stdout_format != "human":
            return
        table = Table(title=title)
        for column in columns:
            table.add_column(column)
        for row in rows:
            table.add_row(*row)
        self.console.print(table)

    def diagnostic(self, message: str) -> None:
        """Record a diagnostic; text mode shows it on stderr."""
        self.diagnostics.append(message)
        if self.stdout_format == "human":
            self.err_console.print(message, markup=False)

    def write_jsonl_to_file(self, event: dict[str, Any]) -> None:
        """Write JSONL event to log file."""
        if not self.log_file_path:
            return

        log_file = Path(self.log_file_path)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        jsonl_line = json.dumps(event, ensure_ascii=False, separators=(",", ":"))
        with open(log_file, "a", encoding="utf-8") as f:
            f.write(jsonl_line + "\n")

    def finish(self, result: Any, exit_code: int) -> int:
        """Emit the command's single JSON object (JSON mode) and log it."""
        document = {
            "command": self.command,
            "result": result,
            "diagnostics": list(self.diagnostics),
        }
        if self.stdout_format == "json":
            print(json.dumps(document, ensure_ascii=False))

        event = dict(document)
        event["exit_code"] = exit_code
        event["duration_ms"] = self.get_duration_ms()
        self.write_jsonl_to_file(event)
        return exit_code

    def fail(self, kind: str, message: str, exit_code: int) -> int:
        """Report an error and finish with the given exit code."""
        self.diagnostics.append(f"{kind}: {message}")
        if self.stdout_format == "human":
            self.err_console.print(f"[red]✗[/red] {kind}: ", end="")
            self.err_console.print(message, markup=False)
        return self.finish({"error": kind, "message": message}, exit_code)
