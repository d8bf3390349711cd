"""CSV reports for the Heron and isosceles enumerations.

Reports are built as polars DataFrames and written with a header row and
LF line endings. Rationals are rendered ``p/q`` (or ``p`` when integral)
and flags as 0/1, so no field ever needs quoting. Integers that can outgrow
64 bits are written as decimal strings.
"""

import logging
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path

import polars as pl

from core.triangle import IsoscelesParams, Triangle, TriangleMetrics

from .utils import ensure_writable

logger = logging.getLogger(__name__)

HERON_SCHEMA = {
    "a": pl.Int64,
    "b": pl.Int64,
    "c": pl.Int64,
    "area_sq_times16": pl.Utf8,
    "area": pl.Utf8,
    "median_sq_a": pl.Utf8,
    "median_sq_b": pl.Utf8,
    "median_sq_c": pl.Utf8,
    "rational_median_count": pl.Int64,
    "isosceles": pl.Int64,
    "perfect": pl.Int64,
}

ISOSCELES_SCHEMA = {
    "m": pl.Int64,
    "n": pl.Int64,
    "leg": pl.Utf8,
    "base": pl.Utf8,
    "w": pl.Utf8,
    "h_sq": pl.Utf8,
    "positive_leg": pl.Int64,
    "admissible": pl.Int64,
    "witness": pl.Int64,
}


def _rational(q: Fraction | None) -> str | None:
    # null is written as an empty field
    return None if q is None else str(q)


def heron_frame(results: Iterable[tuple[Triangle, TriangleMetrics]]) -> pl.DataFrame:
    """
    Tabulate Heron triangles, one row each, sorted by perimeter then sides.

    Parameters
    ----------
    results : Iterable[tuple[Triangle, TriangleMetrics]]
        Integer triangles and their metrics, e.g. from ``enumerate_heron``.

    Returns
    -------
    pl.DataFrame
        Columns as in ``HERON_SCHEMA``; empty input gives an empty frame.
    """
    rows = [
        {
            "a": int(t.a),
            "b": int(t.b),
            "c": int(t.c),
            "area_sq_times16": _rational(m.area_sq_times16),
            "area": _rational(m.area),
            "median_sq_a": _rational(m.median_sq_a),
            "median_sq_b": _rational(m.median_sq_b),
            "median_sq_c": _rational(m.median_sq_c),
            "rational_median_count": m.rational_median_count,
            "isosceles": int(m.isosceles),
            "perfect": int(m.perfect),
        }
        for t, m in results
    ]
    df = pl.DataFrame(rows, schema=HERON_SCHEMA) if rows else pl.DataFrame(schema=HERON_SCHEMA)
    return (
        df.with_columns((pl.col("a") + pl.col("b") + pl.col("c")).alias("perimeter"))
        .sort(["perimeter", "a", "b", "c"])
        .drop("perimeter")
    )


def emit_heron_report(results: Iterable[tuple[Triangle, TriangleMetrics]], path: str | Path) -> tuple[int, int]:
    """
    Write the Heron report CSV.

    Returns
    -------
    tuple[int, int]
        Data rows written (0 gives a header-only file) and perfect triangles among them.
    """
    target = ensure_writable(path)
    df = heron_frame(results)
    df.write_csv(target, line_terminator="\n")
    perfect = df.filter(pl.col("perfect") == 1).height
    logger.info(f"Heron report {target}: {df.height} triangles, {perfect} perfect")
    if perfect:
        logger.warning(f"Heron report {target} lists {perfect} perfect triangle(s)")
    return df.height, perfect


def isosceles_frame(candidates: Iterable[IsoscelesParams]) -> pl.DataFrame:
    """Tabulate isosceles generator candidates in enumeration order."""
    rows = [
        {
            "m": p.m,
            "n": p.n,
            "leg": str(p.leg),
            "base": str(p.base),
            "w": str(p.w),
            "h_sq": str(p.h_sq),
            "positive_leg": int(p.positive_leg),
            "admissible": int(p.admissible),
            "witness": int(p.witness),
        }
        for p in candidates
    ]
    if not rows:
        return pl.DataFrame(schema=ISOSCELES_SCHEMA)
    return pl.DataFrame(rows, schema=ISOSCELES_SCHEMA)


def emit_isosceles_report(candidates: Iterable[IsoscelesParams], path: str | Path) -> tuple[int, int]:
    """
    Write the isosceles candidate CSV.

    Returns
    -------
    tuple[int, int]
        Rows written and witnesses among them.
    """
    target = ensure_writable(path)
    df = isosceles_frame(candidates)
    df.write_csv(target, line_terminator="\n")
    witnesses = df.filter(pl.col("witness") == 1).height
    logger.info(f"Isosceles report {target}: {df.height} candidates, {witnesses} witnesses")
    return df.height, witnesses
