"""Touchstone v1 and CSV serialization of two-port sweeps.

The Touchstone dialect written here is `# GHz S RI R 50` with one
ascending-frequency row of 9 columns per point. The reader accepts any
frequency unit but only S-parameter data in real/imaginary format.
"""

from __future__ import annotations

import numpy as np

from ._util import atomic_write_text
from .errors import ParseError
from .response import FrequencyResponse

CSV_HEADER = "freq_hz,s11_re,s11_im,s21_re,s21_im"

_UNIT_SCALE = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def write_touchstone(path, grid_hz, s11, s21, s12, s22) -> None:
    """Write a 2-port Touchstone v1 file (RI data, GHz, 50 ohm reference).

    The reference impedance is labeling only: the normalized model is
    impedance-agnostic.
    """
    lines = ["# GHz S RI R 50"]
    for f, a, b, c, d in zip(grid_hz, s11, s21, s12, s22):
        row = [_fmt(f / 1e9)]
        for v in (a, b, c, d):
            row += [_fmt(v.real), _fmt(v.imag)]
        lines.append(" ".join(row))
    atomic_write_text(str(path), "\n".join(lines) + "\n")


def read_touchstone(path) -> FrequencyResponse:
    """Parse a 2-port Touchstone v1 file into a FrequencyResponse.

    Column order follows the v1 two-port convention: S11, S21, S12, S22.
    Raises ParseError with a line number for anything unreadable.
    """
    scale = _UNIT_SCALE["ghz"]
    rows = []
    with open(path) as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("!", 1)[0].strip()
            if not line:
                continue
            if line.startswith("#"):
                scale = _parse_option_line(line, lineno)
                continue
            try:
                values = [float(tok) for tok in line.split()]
            except ValueError as err:
                raise ParseError(f"line {lineno}: {err}") from err
            if len(values) != 9:
                raise ParseError(f"line {lineno}: expected 9 columns, got {len(values)}")
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    data = np.array(rows)
    freq = data[:, 0] * scale
    if freq.size > 1 and not np.all(np.diff(freq) > 0):
        raise ParseError(f"{path}: frequencies must be strictly increasing")
    return FrequencyResponse(
        grid=freq,
        s11=data[:, 1] + 1j * data[:, 2],
        s21=data[:, 3] + 1j * data[:, 4],
    )


def _parse_option_line(line: str, lineno: int) -> float:
    scale = _UNIT_SCALE["ghz"]
    tokens = line[1:].lower().split()
    skip_next = False
    for tok in tokens:
        if skip_next:
            skip_next = False
            continue
        if tok in _UNIT_SCALE:
            scale = _UNIT_SCALE[tok]
        elif tok == "r":
            skip_next = True
        elif tok in ("ma", "db"):
            raise ParseError(f"line {lineno}: only RI-format data is supported, got {tok.upper()}")
        elif tok in ("y", "z", "g", "h"):
            raise ParseError(f"line {lineno}: only S-parameter data is supported, got {tok.upper()}")
        elif tok in ("s", "ri"):
            continue
        else:
            raise ParseError(f"line {lineno}: unrecognized option {tok!r}")
    return scale


def write_csv(path, resp: FrequencyResponse) -> None:
    """Write `freq_hz,s11_re,s11_im,s21_re,s21_im` rows."""
    lines = [CSV_HEADER]
    for f, a, b in zip(resp.grid, resp.s11, resp.s21):
        lines.append(
            ",".join([_fmt(f), _fmt(a.real), _fmt(a.imag), _fmt(b.real), _fmt(b.imag)])
        )
    atomic_write_text(str(path), "\n".join(lines) + "\n")


def read_csv(path) -> FrequencyResponse:
    rows = []
    with open(path) as handle:
        header = handle.readline().strip()
        if header != CSV_HEADER:
            raise ParseError(f"{path}: expected header {CSV_HEADER!r}, got {header!r}")
        for lineno, raw in enumerate(handle, 2):
            line = raw.strip()
            if not line:
                continue
            try:
                values = [float(tok) for tok in line.split(",")]
            except ValueError as err:
                raise ParseError(f"line {lineno}: {err}") from err
            if len(values) != 5:
                raise ParseError(f"line {lineno}: expected 5 columns, got {len(values)}")
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    data = np.array(rows)
    freq = data[:, 0]
    if freq.size > 1 and not np.all(np.diff(freq) > 0):
        raise ParseError(f"{path}: frequencies must be strictly increasing")
    return FrequencyResponse(
        grid=freq,
        s11=data[:, 1] + 1j * data[:, 2],
        s21=data[:, 3] + 1j * data[:, 4],
    )


def read_response(path) -> FrequencyResponse:
    """Dispatch on extension: .csv reads as CSV, anything else as Touchstone."""
    if str(path).lower().endswith(".csv"):
        return read_csv(path)
    return read_touchstone(path)
