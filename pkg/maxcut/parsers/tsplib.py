"""TSPLIB95 instance parser.

Turns a symmetric TSP file into a complete WeightedGraph whose edge weights
are the TSPLIB integer distances.
"""

import io
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, TextIO, Union

import numpy as np

from maxcut.errors import InputError, TsplibParseError, UnsupportedFormatError
from maxcut.instance.models import WeightedGraph

from .distances import dist_att, dist_euc2d, dist_geo

logger = logging.getLogger(__name__)


class EdgeWeightType(str, Enum):
    EUC_2D = "EUC_2D"
    GEO = "GEO"
    ATT = "ATT"
    EXPLICIT = "EXPLICIT"


class EdgeWeightFormat(str, Enum):
    FULL_MATRIX = "FULL_MATRIX"
    UPPER_ROW = "UPPER_ROW"
    LOWER_ROW = "LOWER_ROW"
    UPPER_DIAG_ROW = "UPPER_DIAG_ROW"
    LOWER_DIAG_ROW = "LOWER_DIAG_ROW"


DISTANCES = {
    EdgeWeightType.EUC_2D: dist_euc2d,
    EdgeWeightType.GEO: dist_geo,
    EdgeWeightType.ATT: dist_att,
}

# Header keywords that carry nothing the graph needs
IGNORED_KEYWORDS = {"COMMENT", "DISPLAY_DATA_TYPE", "NODE_COORD_TYPE", "CAPACITY"}


@dataclass
class TsplibHeader:
    """Specification part of a TSPLIB file."""

    name: str
    dimension: int
    edge_weight_type: EdgeWeightType
    edge_weight_format: Optional[EdgeWeightFormat] = None
    comment: str = ""
    coords: list[tuple[float, float]] = field(default_factory=list)
    display: list[tuple[float, float]] = field(default_factory=list)


@dataclass
class _Token:
    value: str
    line: int


def _matrix_positions(fmt: EdgeWeightFormat, n: int):
    """(i, j) positions in file order for an explicit weight section."""
    if fmt is EdgeWeightFormat.FULL_MATRIX:
        return [(i, j) for i in range(n) for j in range(n)]
    if fmt is EdgeWeightFormat.UPPER_ROW:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if fmt is EdgeWeightFormat.LOWER_ROW:
        return [(i, j) for i in range(n) for j in range(i)]
    if fmt is EdgeWeightFormat.UPPER_DIAG_ROW:
        return [(i, j) for i in range(n) for j in range(i, n)]
    return [(i, j) for i in range(n) for j in range(i + 1)]


class TsplibParser:
    """Parser for TSPLIB95 text files (EUC_2D, GEO, ATT and EXPLICIT).

    ``metric`` replaces the declared distance function of coordinate files,
    e.g. EUC_2D on a GEO file reads its DD.MM pairs as plane points.
    EXPLICIT files keep their matrix.
    """

    def __init__(self, metric: Optional[EdgeWeightType] = None):
        if metric is not None:
            try:
                metric = EdgeWeightType(metric)
            except ValueError as e:
                raise InputError(f"unknown metric {metric!r}") from e
            if metric not in DISTANCES:
                raise InputError(f"metric must be one of EUC_2D, GEO, ATT, got {metric.value}")
        self.metric = metric

    def parse_file(self, file_path: Path) -> WeightedGraph:
        """Parse a .tsp file from disk."""
        with open(file_path, "r", encoding="utf-8") as f:
            return self.parse(f, default_name=Path(file_path).stem)

    def parse(self, source: Union[TextIO, str], default_name: str = "tsplib") -> WeightedGraph:
        """Parse TSPLIB content from a text stream or string."""
        header, tokens = self.read(source, default_name)
        weights = self._build_weights(header, tokens)
        logger.info(
            "parsed %s: %d vertices, %s%s",
            header.name, header.dimension, header.edge_weight_type.value,
            f" read as {self.metric.value}" if self.metric else "",
        )
        return WeightedGraph(weights=weights, name=header.name)

    def read(
        self, source: Union[TextIO, str], default_name: str = "tsplib"
    ) -> tuple[TsplibHeader, list[_Token]]:
        """Split a file into its header and the raw EDGE_WEIGHT_SECTION tokens."""
        stream = io.StringIO(source) if isinstance(source, str) else source
        lines = list(enumerate(stream.read().splitlines(), start=1))

        keys: dict[str, str] = {}
        coords: list[tuple[float, float]] = []
        display: list[tuple[float, float]] = []
        weight_tokens: list[_Token] = []
        pos = 0

        while pos < len(lines):
            line_no, raw = lines[pos]
            line = raw.strip()
            pos += 1
            if not line:
                continue

            keyword = line.split(":", 1)[0].strip() if ":" in line else line.split()[0]

            if keyword == "EOF":
                break
            if keyword == "NODE_COORD_SECTION":
                dimension = self._dimension(keys, line_no)
                coords, pos = self._read_points(lines, pos, dimension, "NODE_COORD_SECTION")
                continue
            if keyword == "DISPLAY_DATA_SECTION":
                dimension = self._dimension(keys, line_no)
                display, pos = self._read_points(lines, pos, dimension, "DISPLAY_DATA_SECTION")
                continue
            if keyword == "EDGE_WEIGHT_SECTION":
                while pos < len(lines):
                    sub_no, sub = lines[pos]
                    head = sub.strip().split(":", 1)[0].split()
                    if head and head[0][0].isalpha():
                        break
                    weight_tokens.extend(_Token(tok, sub_no) for tok in sub.split())
                    pos += 1
                continue
            if keyword.endswith("_SECTION"):
                raise UnsupportedFormatError(f"line {line_no}: unsupported section {keyword}")
            if ":" not in line:
                raise TsplibParseError(f"expected 'KEY : VALUE', got {line!r}", line_no)

            value = line.split(":", 1)[1].strip()
            if keyword in IGNORED_KEYWORDS:
                keys.setdefault(keyword, value)
                continue
            keys[keyword] = value

        header = self._make_header(keys, default_name, lines[-1][0] if lines else 0)
        header.coords = coords
        header.display = display
        return header, weight_tokens

    def _dimension(self, keys: dict[str, str], line_no: int) -> int:
        if "DIMENSION" not in keys:
            raise TsplibParseError("section appears before DIMENSION", line_no)
        try:
            return int(keys["DIMENSION"])
        except ValueError as e:
            raise TsplibParseError(f"bad DIMENSION {keys['DIMENSION']!r}", line_no) from e

    def _read_points(
        self, lines: list[tuple[int, str]], pos: int, count: int, section: str
    ) -> tuple[list[tuple[float, float]], int]:
        points = []
        while len(points) < count:
            if pos >= len(lines):
                raise TsplibParseError(
                    f"{section} ended after {len(points)} of {count} nodes", lines[-1][0]
                )
            line_no, raw = lines[pos]
            pos += 1
            parts = raw.split()
            if not parts:
                continue
            if len(parts) < 3:
                raise TsplibParseError(f"expected 'id x y' in {section}, got {raw!r}", line_no)
            try:
                points.append((float(parts[1]), float(parts[2])))
            except ValueError as e:
                raise TsplibParseError(f"bad coordinate in {raw!r}", line_no) from e
        return points, pos

    def _make_header(self, keys: dict[str, str], default_name: str, last_line: int) -> TsplibHeader:
        problem_type = (keys.get("TYPE") or "TSP").split()[0]
        if problem_type != "TSP":
            raise UnsupportedFormatError(f"unsupported TYPE {problem_type}")

        if "DIMENSION" not in keys:
            raise TsplibParseError("missing DIMENSION", last_line)
        dimension = self._dimension(keys, last_line)
        if dimension < 2:
            raise TsplibParseError(f"DIMENSION must be at least 2, got {dimension}", last_line)

        raw_type = keys.get("EDGE_WEIGHT_TYPE")
        if raw_type is None:
            raise TsplibParseError("missing EDGE_WEIGHT_TYPE", last_line)
        try:
            weight_type = EdgeWeightType(raw_type)
        except ValueError as e:
            raise UnsupportedFormatError(f"unsupported EDGE_WEIGHT_TYPE {raw_type}") from e

        weight_format = None
        raw_format = keys.get("EDGE_WEIGHT_FORMAT")
        if weight_type is EdgeWeightType.EXPLICIT:
            if raw_format is None:
                raise TsplibParseError("EXPLICIT weights need EDGE_WEIGHT_FORMAT", last_line)
            try:
                weight_format = EdgeWeightFormat(raw_format)
            except ValueError as e:
                raise UnsupportedFormatError(f"unsupported EDGE_WEIGHT_FORMAT {raw_format}") from e
        elif raw_format not in (None, "FUNCTION"):
            raise TsplibParseError(
                f"EDGE_WEIGHT_FORMAT {raw_format} given for {weight_type.value}", last_line
            )

        return TsplibHeader(
            name=keys.get("NAME", default_name) or default_name,
            dimension=dimension,
            edge_weight_type=weight_type,
            edge_weight_format=weight_format,
            comment=keys.get("COMMENT", ""),
        )

    def _build_weights(self, header: TsplibHeader, tokens: list[_Token]) -> np.ndarray:
        n = header.dimension
        W = np.zeros((n, n))

        if header.edge_weight_type is not EdgeWeightType.EXPLICIT:
            if len(header.coords) != n:
                raise TsplibParseError(f"expected {n} node coordinates, got {len(header.coords)}")
            dist = DISTANCES[self.metric or header.edge_weight_type]
            pts = header.coords
            for i in range(n):
                for j in range(i + 1, n):
                    W[i, j] = W[j, i] = dist(pts[i], pts[j])
            return W

        positions = _matrix_positions(header.edge_weight_format, n)
        if len(tokens) < len(positions):
            last = tokens[-1].line if tokens else None
            raise TsplibParseError(
                f"EDGE_WEIGHT_SECTION has {len(tokens)} values, "
                f"{header.edge_weight_format.value} needs {len(positions)}",
                last,
            )
        if len(tokens) > len(positions):
            raise TsplibParseError(
                f"EDGE_WEIGHT_SECTION has {len(tokens) - len(positions)} extra values",
                tokens[len(positions)].line,
            )

        for (i, j), tok in zip(positions, tokens):
            try:
                value = float(tok.value)
            except ValueError as e:
                raise TsplibParseError(f"bad weight {tok.value!r}", tok.line) from e
            if i == j:
                continue
            if header.edge_weight_format is EdgeWeightFormat.FULL_MATRIX and j < i:
                if value != W[j, i]:
                    raise TsplibParseError(
                        f"FULL_MATRIX is not symmetric at ({i + 1}, {j + 1})", tok.line
                    )
                continue
            W[i, j] = W[j, i] = value
        return W


_default_parser = TsplibParser()


def _parser(metric: Optional[EdgeWeightType]) -> TsplibParser:
    return _default_parser if metric is None else TsplibParser(metric)


def parse_tsplib(
    source: Union[TextIO, str],
    default_name: str = "tsplib",
    metric: Optional[EdgeWeightType] = None,
) -> WeightedGraph:
    """Parse TSPLIB content into a complete WeightedGraph."""
    return _parser(metric).parse(source, default_name=default_name)


def parse_tsplib_file(
    file_path: Union[Path, str], metric: Optional[EdgeWeightType] = None
) -> WeightedGraph:
    return _parser(metric).parse_file(Path(file_path))


def read_header(source: Union[TextIO, str]) -> TsplibHeader:
    """Header (and coordinate payload) of a TSPLIB file without building weights."""
    header, _ = _default_parser.read(source)
    return header


def _format_weight(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def format_tsplib(graph: WeightedGraph, comment: str = "") -> str:
    """Serialize a graph as an EXPLICIT / FULL_MATRIX TSPLIB file."""
    out = [
        f"NAME : {graph.name}",
        "TYPE : TSP",
    ]
    if comment:
        out.append(f"COMMENT : {comment}")
    out += [
        f"DIMENSION : {graph.num_vertices}",
        "EDGE_WEIGHT_TYPE : EXPLICIT",
        "EDGE_WEIGHT_FORMAT : FULL_MATRIX",
        "EDGE_WEIGHT_SECTION",
    ]
    for row in graph.weights:
        out.append(" ".join(_format_weight(v) for v in row))
    out.append("EOF")
    return "\n".join(out) + "\n"
