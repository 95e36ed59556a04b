"""
Module for converting command results to many customizable formats.

A command produces a Document; every formatter renders the parts of a
Document it understands and refuses the others.

Implemented formatters are at the end of the file.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
import yaml

from camckit.datatypes import MeshExport
from camckit.errors import FormatUnavailable

__author__ = "camc-kit developers"
__license__ = "MIT"


def number(value: Any) -> str:
    """Shortest text that reads back as the same double"""
    return repr(float(value))


def plain(value: Any) -> Any:
    """Converts numpy values and tuples into JSON/YAML-safe builtins."""
    if isinstance(value, dict):
        return {str(key): plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


@dataclass
class Table:
    """Rows of a delimited dump; polylines and trajectories use it"""

    columns: List[str]
    rows: List[Sequence[Any]]


@dataclass
class Document:
    """
    Result of a command.

    Attributes:
        header: provenance line, written as a comment where supported
        data: structured content for json and yaml
        mesh: triangle mesh for obj
        table: rows for csv
    """

    header: str
    data: Dict[str, Any] = field(default_factory=dict)
    mesh: Optional[MeshExport] = None
    table: Optional[Table] = None


class RecordFormatter:  # pylint: disable=too-few-public-methods
    """A simple class with a main task of transforming
    a sequence of records into a single, formatted string.

    Attributes:
        _formatter: a callable object turning a single record into a line
        _sep: a string with which the transformed records are separated with
        _end: a string which is appended to the end of the formatted records
    """

    def __init__(
        self,
        formatter: Callable[[Any], str] = str,
        sep: str = "\n",
        end: str = "\n",
    ):
        self._formatter: Callable[[Any], str] = formatter
        self._sep: str = sep
        self._end: str = end

    def format(self, records: Iterable[Any]) -> str:
        """Joins a list of formatted records with a
        defined separator and an end string."""
        pre_format: List[str] = list(map(self._formatter, records))
        if not pre_format:
            return ""
        return self._sep.join(pre_format) + self._end


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return number(value)
    return str(value)


# What follows are specific formatter definitions


def formatter_obj(document: Document) -> str:
    """Wavefront OBJ: comment header, v records, then 1-based f records"""
    if document.mesh is None:
        raise FormatUnavailable("The obj format needs a mesh")
    header = f"# {document.header}\n"
    vertices = RecordFormatter(
        formatter=lambda v: "v " + " ".join(number(x) for x in v)
    ).format(document.mesh.vertices)
    faces = RecordFormatter(
        formatter=lambda f: "f " + " ".join(str(i + 1) for i in f)
    ).format(document.mesh.faces)
    return header + vertices + faces


def formatter_csv(document: Document) -> str:
    """Comma separated rows under a header row naming the columns"""
    if document.table is None:
        raise FormatUnavailable("The csv format needs a table")
    header = ",".join(document.table.columns) + "\n"
    return header + RecordFormatter(
        formatter=lambda row: ",".join(_cell(x) for x in row)
    ).format(document.table.rows)


def _payload(document: Document) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"header": document.header, **document.data}
    if document.mesh is not None:
        payload["mesh"] = {
            "vertices": document.mesh.vertices,
            "faces": document.mesh.faces,
            "provenance": document.mesh.provenance,
        }
    if document.table is not None:
        payload["columns"] = document.table.columns
        payload["rows"] = document.table.rows
    return plain(payload)


def formatter_json(document: Document) -> str:
    """Indented JSON with sorted keys"""
    return json.dumps(_payload(document), indent=2, sort_keys=True) + "\n"


def formatter_yaml(document: Document) -> str:
    """Block-style YAML with sorted keys"""
    return yaml.safe_dump(_payload(document), sort_keys=True, default_flow_style=False)
