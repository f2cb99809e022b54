"""Tests for output writers and exceptions."""

import csv
import io
import json

import pytest

from src.exceptions import (
    BootstrapPercolationError,
    ConfigurationError,
    HierarchyConstructionError,
    InvalidRectangleError,
    PreconditionError,
    SerializationError,
)
from src.utils import (
    PROVENANCE_PREFIX,
    read_provenance,
    render_csv,
    render_json,
    write_csv,
    write_table,
)

PROVENANCE = '{"montecarlo":{"seed":7}}'


class TestRenderCsv:
    """Tests for CSV output."""

    def test_provenance_line_first(self):
        """The first line carries the run configuration."""
        text = render_csv([{"a": 1}], ["a"], PROVENANCE)
        assert text.splitlines()[0] == PROVENANCE_PREFIX + PROVENANCE
        assert read_provenance(text) == {"montecarlo": {"seed": 7}}

    def test_cells(self):
        """None is blank; lists and dicts become compact JSON."""
        rows = [{"event": "x", "runtime_ms": None, "params": {"p": 0.1}, "dims": [4, 4]}]
        text = render_csv(rows, ["event", "runtime_ms", "params", "dims"], PROVENANCE)
        body = list(csv.reader(io.StringIO("\n".join(text.splitlines()[1:]))))
        assert body[0] == ["event", "runtime_ms", "params", "dims"]
        assert body[1] == ["x", "", '{"p":0.1}', "[4,4]"]

    def test_missing_column_is_blank(self):
        """Rows may omit columns."""
        text = render_csv([{"a": 1}], ["a", "b"], PROVENANCE)
        assert text.splitlines()[-1] == "1,"

    def test_deterministic(self):
        """Same rows, same bytes."""
        rows = [{"a": 0.1, "b": 2}]
        assert render_csv(rows, ["a", "b"], PROVENANCE) == render_csv(rows, ["a", "b"], PROVENANCE)


class TestRenderJson:
    """Tests for JSON output."""

    def test_run_config_field(self):
        """The run configuration is added as a field."""
        text = render_json({"value": 1.5}, PROVENANCE)
        document = json.loads(text)
        assert document["value"] == 1.5
        assert read_provenance(text) == {"montecarlo": {"seed": 7}}


class TestWriters:
    """Tests for the file and stdout writers."""

    def test_stdout(self, capsys):
        """Without a path output goes to stdout."""
        write_csv([{"a": 1}], ["a"], PROVENANCE)
        assert capsys.readouterr().out.endswith("a\n1\n")

    def test_file(self, temp_dir, capsys):
        """With a path output goes to the file, creating directories."""
        path = temp_dir / "out" / "rows.csv"
        write_csv([{"a": 1}], ["a"], PROVENANCE, str(path))
        assert capsys.readouterr().out == ""
        assert path.read_text().splitlines()[1:] == ["a", "1"]

    def test_table_as_json(self, temp_dir):
        """JSON tables list their rows."""
        path = temp_dir / "rows.json"
        write_table([{"a": 1}, {"a": 2}], ["a"], PROVENANCE, str(path), fmt="json")
        document = json.loads(path.read_text())
        assert document["rows"] == [{"a": 1}, {"a": 2}]
        assert "run_config" in document


class TestExceptions:
    """Tests for custom exceptions."""

    @pytest.mark.parametrize(
        "exc_type",
        [
            InvalidRectangleError,
            PreconditionError,
            HierarchyConstructionError,
            SerializationError,
            ConfigurationError,
        ],
    )
    def test_hierarchy(self, exc_type):
        """Every error derives from BootstrapPercolationError."""
        exc = exc_type("Test error")
        assert str(exc) == "Test error"
        assert isinstance(exc, BootstrapPercolationError)

    def test_base_exception(self):
        """The base is a plain Exception."""
        exc = BootstrapPercolationError("Base error")
        assert str(exc) == "Base error"
        assert isinstance(exc, Exception)
