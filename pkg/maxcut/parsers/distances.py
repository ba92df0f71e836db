"""TSPLIB95 integer distance functions."""

import math

PI = 3.141592
RRR = 6378.388


def nint(x: float) -> int:
    """Round half away from zero."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def dist_euc2d(a: tuple[float, float], b: tuple[float, float]) -> int:
    xd = a[0] - b[0]
    yd = a[1] - b[1]
    return nint(math.sqrt(xd * xd + yd * yd))


def _geo_radians(value: float) -> float:
    # DD.MM encoding; degrees are truncated as in the TSPLIB reference code
    deg = int(value)
    minutes = value - deg
    return PI * (deg + 5.0 * minutes / 3.0) / 180.0


def dist_geo(a: tuple[float, float], b: tuple[float, float]) -> int:
    """Great-circle distance in km between two (latitude, longitude) DD.MM points."""
    lat_a, lon_a = _geo_radians(a[0]), _geo_radians(a[1])
    lat_b, lon_b = _geo_radians(b[0]), _geo_radians(b[1])
    q1 = math.cos(lon_a - lon_b)
    q2 = math.cos(lat_a - lat_b)
    q3 = math.cos(lat_a + lat_b)
    arg = 0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)
    arg = min(1.0, max(-1.0, arg))
    return int(RRR * math.acos(arg) + 1.0)


def dist_att(a: tuple[float, float], b: tuple[float, float]) -> int:
    """Pseudo-Euclidean distance used by the att* instances."""
    xd = a[0] - b[0]
    yd = a[1] - b[1]
    r = math.sqrt((xd * xd + yd * yd) / 10.0)
    t = nint(r)
    return t + 1 if t < r else t
