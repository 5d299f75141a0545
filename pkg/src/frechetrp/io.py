"""Curve CSV ingestion and serialization.

Format: one vertex per row, comma-separated decimal reals, no header, uniform
column count. A curve-set directory contains one ``.csv`` file per curve;
lexicographic filename order defines the curve index and the filenames become
the labels.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .curves import Curve, CurveSet
from .exceptions import DimensionMismatch, EmptyCurve, ParseError

__all__ = ["read_curve_csv", "write_curve_csv", "read_curveset_dir", "write_curveset_dir"]

# 17 significant digits round-trip float64 exactly
_FMT = "%.17g"


def read_curve_csv(path) -> Curve:
    """Read one curve from a CSV file of vertex rows."""
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            tokens = line.split(",")
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                raise DimensionMismatch(
                    f"{path}: line {lineno} has {len(tokens)} columns, expected {width}"
                )
            row = []
            for col, tok in enumerate(tokens, start=1):
                try:
                    row.append(float(tok))
                except ValueError:
                    raise ParseError(f"invalid number {tok!r} in {path}", lineno, col) from None
            rows.append(row)
    if not rows:
        raise EmptyCurve(f"{path}: no vertex rows")
    return Curve(np.asarray(rows, dtype=np.float64))


def write_curve_csv(curve: Curve, path) -> None:
    """Write a curve so that reading it back is coordinate-exact."""
    np.savetxt(path, curve.vertices, fmt=_FMT, delimiter=",")


def read_curveset_dir(path) -> CurveSet:
    """Read every ``*.csv`` file of a directory as one curve set.

    Files are taken in lexicographic filename order; labels are the filenames.
    """
    root = Path(path)
    if not root.is_dir():
        raise NotADirectoryError(f"{path} is not a directory")
    names = sorted(p.name for p in root.iterdir() if p.is_file() and p.suffix == ".csv")
    if not names:
        raise FileNotFoundError(f"{path}: no .csv files")
    curves = [read_curve_csv(root / name) for name in names]
    return CurveSet(curves, labels=names)


def write_curveset_dir(curve_set: CurveSet, path, labels=None) -> list:
    """Write each curve of a set to ``<label>.csv`` inside ``path``.

    Labels default to the set's own labels, or zero-padded indices. Returns
    the filenames written, in curve order.
    """
    root = Path(path)
    os.makedirs(root, exist_ok=True)
    if labels is None:
        labels = curve_set.labels or [f"{i:04d}" for i in range(len(curve_set))]
    names = []
    for label, curve in zip(labels, curve_set):
        name = label if label.endswith(".csv") else f"{label}.csv"
        write_curve_csv(curve, root / name)
        names.append(name)
    return names
