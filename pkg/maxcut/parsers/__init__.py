"""TSPLIB ingestion."""

from .distances import dist_att, dist_euc2d, dist_geo, nint
from .tsplib import (
    EdgeWeightFormat,
    EdgeWeightType,
    TsplibHeader,
    TsplibParser,
    format_tsplib,
    parse_tsplib,
    parse_tsplib_file,
    read_header,
)

__all__ = [
    "EdgeWeightFormat",
    "EdgeWeightType",
    "TsplibHeader",
    "TsplibParser",
    "dist_att",
    "dist_euc2d",
    "dist_geo",
    "format_tsplib",
    "nint",
    "parse_tsplib",
    "parse_tsplib_file",
    "read_header",
]
