"""Tests for the TSPLIB parser and the integer distance functions."""

import io

import numpy as np
import pytest

from maxcut.errors import InputError, TsplibParseError, UnsupportedFormatError
from maxcut.instance import WeightedGraph
from maxcut.parsers import (
    EdgeWeightFormat,
    EdgeWeightType,
    dist_att,
    dist_euc2d,
    dist_geo,
    format_tsplib,
    nint,
    parse_tsplib,
    parse_tsplib_file,
    read_header,
)

from .conftest import random_graph, requires_tsplib, tsplib_file


def explicit(fmt: str, rows: list[str], dimension: int = 4, extra: str = "") -> str:
    lines = [
        "NAME : explicit",
        "TYPE : TSP",
        f"DIMENSION : {dimension}",
        "EDGE_WEIGHT_TYPE : EXPLICIT",
        f"EDGE_WEIGHT_FORMAT : {fmt}",
    ]
    if extra:
        lines.append(extra)
    lines.append("EDGE_WEIGHT_SECTION")
    lines.extend(rows)
    lines.append("EOF")
    return "\n".join(lines) + "\n"


TINY4 = np.array(
    [
        [0, 1, 2, 3],
        [1, 0, 4, 5],
        [2, 4, 0, 6],
        [3, 5, 6, 0],
    ],
    dtype=float,
)


class TestDistances:
    @pytest.mark.parametrize(
        "x, expected", [(0.5, 1), (1.49, 1), (2.5, 3), (-0.5, -1), (-2.5, -3), (0.0, 0)]
    )
    def test_nint_rounds_half_away_from_zero(self, x, expected):
        assert nint(x) == expected

    @pytest.mark.parametrize(
        "a, b, expected", [((0, 0), (3, 4), 5), ((0, 0), (1, 1), 1), ((0, 0), (0, 0), 0)]
    )
    def test_euc2d(self, a, b, expected):
        assert dist_euc2d(a, b) == expected

    def test_geo_same_point(self):
        assert dist_geo((16.47, 96.10), (16.47, 96.10)) == 1

    def test_geo_is_symmetric(self):
        a, b = (16.47, 96.10), (16.47, 94.44)
        assert dist_geo(a, b) == dist_geo(b, a)

    def test_geo_burma_nodes(self):
        assert dist_geo((16.47, 96.10), (16.47, 94.44)) == 153

    def test_geo_truncates_degrees(self):
        # 92.54 is 92 degrees 54 minutes; rounding the degrees first would give 560
        assert dist_geo((16.47, 96.10), (20.09, 92.54)) == 510
        assert dist_geo((16.47, 96.10), (21.52, 95.59)) == 567

    @pytest.mark.parametrize(
        "a, b, expected", [((0, 0), (0, 0), 0), ((0, 0), (10, 0), 4), ((0, 0), (0, 20), 7)]
    )
    def test_att(self, a, b, expected):
        assert dist_att(a, b) == expected


class TestParser:
    def test_euc2d(self, euc2d_text):
        graph = parse_tsplib(euc2d_text)
        assert graph.name == "rect4"
        expected = np.array(
            [
                [0, 3, 5, 4],
                [3, 0, 4, 5],
                [5, 4, 0, 3],
                [4, 5, 3, 0],
            ],
            dtype=float,
        )
        np.testing.assert_array_equal(graph.weights, expected)

    def test_minimal_345(self):
        text = "\n".join(
            [
                "NAME : pair",
                "TYPE : TSP",
                "DIMENSION : 2",
                "EDGE_WEIGHT_TYPE : EUC_2D",
                "NODE_COORD_SECTION",
                "1 0 0",
                "2 3 4",
                "EOF",
            ]
        )
        assert parse_tsplib(text).weights[0, 1] == 5.0

    def test_upper_row(self, upper_row_text):
        np.testing.assert_array_equal(parse_tsplib(upper_row_text).weights, TINY4)

    @pytest.mark.parametrize(
        "fmt, rows",
        [
            ("UPPER_ROW", ["1 2 3", "4 5", "6"]),
            ("LOWER_ROW", ["1", "2 4", "3 5 6"]),
            ("UPPER_DIAG_ROW", ["0 1 2 3", "0 4 5", "0 6", "0"]),
            ("LOWER_DIAG_ROW", ["0", "1 0", "2 4 0", "3 5 6 0"]),
            ("FULL_MATRIX", ["0 1 2 3", "1 0 4 5", "2 4 0 6", "3 5 6 0"]),
        ],
    )
    def test_explicit_formats_agree(self, fmt, rows):
        np.testing.assert_array_equal(parse_tsplib(explicit(fmt, rows)).weights, TINY4)

    def test_weights_may_wrap_lines_freely(self):
        text = explicit("LOWER_DIAG_ROW", ["0 1 0 2", "4 0 3 5 6", "0"])
        np.testing.assert_array_equal(parse_tsplib(text).weights, TINY4)

    def test_section_keyword_without_colon_and_stream_input(self, upper_row_text):
        graph = parse_tsplib(io.StringIO(upper_row_text))
        assert graph.num_vertices == 4

    def test_display_data_section_is_read(self):
        text = explicit(
            "UPPER_ROW", ["1 2 3", "4 5", "6"], extra="DISPLAY_DATA_TYPE : TWOD_DISPLAY"
        ).replace("EOF", "DISPLAY_DATA_SECTION\n1 0 0\n2 1 0\n3 1 1\n4 0 1\nEOF")
        header = read_header(text)
        assert header.display == [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
        np.testing.assert_array_equal(parse_tsplib(text).weights, TINY4)

    def test_read_header(self, euc2d_text):
        header = read_header(euc2d_text)
        assert header.dimension == 4
        assert header.edge_weight_type is EdgeWeightType.EUC_2D
        assert header.edge_weight_format is None
        assert header.comment == "3 by 4 rectangle"
        assert len(header.coords) == 4

    def test_explicit_header_format(self, upper_row_text):
        assert read_header(upper_row_text).edge_weight_format is EdgeWeightFormat.UPPER_ROW

    def test_full_matrix_round_trip(self, rng):
        graph = random_graph(rng, 9, low=0, high=1000)
        again = parse_tsplib(format_tsplib(graph))
        np.testing.assert_array_equal(again.weights, graph.weights)
        assert again.name == graph.name

    def test_round_trip_keeps_fractional_weights(self):
        W = np.array([[0.0, 0.125], [0.125, 0.0]])
        again = parse_tsplib(format_tsplib(WeightedGraph(weights=W, name="frac")))
        np.testing.assert_array_equal(again.weights, W)

    def test_parse_file_uses_stem_as_default_name(self, tmp_path, upper_row_text):
        path = tmp_path / "noname.tsp"
        path.write_text(upper_row_text.replace("NAME: tiny4\n", ""))
        assert parse_tsplib_file(path).name == "noname"


class TestParserErrors:
    def test_unsupported_weight_type(self, euc2d_text):
        with pytest.raises(UnsupportedFormatError, match="EUC_3D"):
            parse_tsplib(euc2d_text.replace("EUC_2D", "EUC_3D"))

    def test_unsupported_problem_type(self, euc2d_text):
        with pytest.raises(UnsupportedFormatError, match="ATSP"):
            parse_tsplib(euc2d_text.replace("TYPE : TSP", "TYPE : ATSP"))

    def test_unsupported_format(self):
        with pytest.raises(UnsupportedFormatError, match="UPPER_COL"):
            parse_tsplib(explicit("UPPER_COL", ["1 2 3 4 5 6"]))

    def test_unsupported_section(self, euc2d_text):
        text = euc2d_text.replace("EOF", "FIXED_EDGES_SECTION\n1 2\n-1\nEOF")
        with pytest.raises(UnsupportedFormatError, match="FIXED_EDGES_SECTION"):
            parse_tsplib(text)

    def test_missing_format_for_explicit(self, upper_row_text):
        with pytest.raises(TsplibParseError, match="EDGE_WEIGHT_FORMAT"):
            parse_tsplib(upper_row_text.replace("EDGE_WEIGHT_FORMAT: UPPER_ROW\n", ""))

    def test_bad_coordinate_reports_line(self, euc2d_text):
        with pytest.raises(TsplibParseError) as err:
            parse_tsplib(euc2d_text.replace("3 3 4", "3 3 four"))
        assert err.value.line_number == 9
        assert "line 9" in str(err.value)

    def test_truncated_coordinates(self, euc2d_text):
        with pytest.raises(TsplibParseError, match="ended after"):
            parse_tsplib(euc2d_text.replace("4 0 4\nEOF\n", ""))

    def test_too_few_weights(self):
        with pytest.raises(TsplibParseError, match="needs 6"):
            parse_tsplib(explicit("UPPER_ROW", ["1 2 3", "4 5"]))

    def test_too_many_weights(self):
        with pytest.raises(TsplibParseError, match="extra"):
            parse_tsplib(explicit("UPPER_ROW", ["1 2 3", "4 5", "6 7"]))

    def test_asymmetric_full_matrix(self):
        rows = ["0 1 2 3", "9 0 4 5", "2 4 0 6", "3 5 6 0"]
        with pytest.raises(TsplibParseError, match="not symmetric"):
            parse_tsplib(explicit("FULL_MATRIX", rows))

    def test_dimension_too_small(self):
        with pytest.raises(TsplibParseError, match="at least 2"):
            parse_tsplib(explicit("UPPER_ROW", [], dimension=1))

    def test_metric_override(self, euc2d_text):
        graph = parse_tsplib(euc2d_text, metric=EdgeWeightType.ATT)
        assert graph.weights[0, 2] == dist_att((0, 0), (3, 4))

    def test_metric_leaves_explicit_matrix(self, upper_row_text):
        graph = parse_tsplib(upper_row_text, metric=EdgeWeightType.EUC_2D)
        assert graph.weights[0, 1] == 1.0

    @pytest.mark.parametrize("metric", ["EXPLICIT", "MAN_2D"])
    def test_rejects_bad_metric(self, euc2d_text, metric):
        with pytest.raises(InputError, match="metric"):
            parse_tsplib(euc2d_text, metric=metric)

    def test_header_line_without_colon(self, euc2d_text):
        with pytest.raises(TsplibParseError, match="KEY : VALUE"):
            parse_tsplib(euc2d_text.replace("TYPE : TSP", "TYPE TSP"))


@pytest.mark.tsplib
class TestPublishedInstances:
    @requires_tsplib("gr17")
    def test_gr17_first_entry(self):
        graph = parse_tsplib_file(tsplib_file("gr17"))
        assert graph.num_vertices == 17
        assert graph.weights[0, 1] == 633.0

    @requires_tsplib("burma14")
    def test_burma14_dimension_and_total(self):
        graph = parse_tsplib_file(tsplib_file("burma14"))
        header = read_header(tsplib_file("burma14").read_text())
        assert graph.num_vertices == header.dimension == 14
        pts = header.coords
        pairs = [dist_geo(pts[i], pts[j]) for i in range(14) for j in range(i + 1, 14)]
        assert graph.total_edge_weight == sum(pairs) == 43369
        assert graph.weights[0].tolist() == [
            0, 153, 510, 706, 966, 581, 455, 70, 160, 372, 157, 567, 342, 398
        ]

    @requires_tsplib("burma14")
    def test_burma14_as_plane_points(self):
        graph = parse_tsplib_file(tsplib_file("burma14"), metric=EdgeWeightType.EUC_2D)
        assert graph.total_edge_weight == 402
        assert graph.weights[0, 2] == 5
