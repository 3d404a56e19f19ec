"""Tick CSV ingestion (``timestamp,price`` with epoch-millisecond timestamps)."""

from __future__ import annotations

import csv
import io
import math

import numpy as np

from .errors import EmptyFile, MalformedRow, NonMonotoneTimestamps
from .variation import PriceSeries

HEADER = ["timestamp", "price"]


def parse_ticks(data) -> PriceSeries:
    """Parse bytes, text or a file object into a validated series.

    Repeated timestamps keep the last quoted price.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise MalformedRow(f"input is not UTF-8: {exc}") from None

    reader = csv.reader(io.StringIO(data))
    header = next(reader, None)
    if header is None:
        raise EmptyFile("input is empty")
    if [h.strip().lower() for h in header] != HEADER:
        raise MalformedRow(f"line 1: expected header 'timestamp,price', got {','.join(header)!r}")

    timestamps: list[int] = []
    prices: list[float] = []
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise MalformedRow(f"line {line}: expected 2 fields, got {len(row)}")
        try:
            ts = int(row[0].strip())
            px = float(row[1].strip())
        except ValueError:
            raise MalformedRow(f"line {line}: cannot parse {','.join(row)!r}") from None
        if not math.isfinite(px):
            raise MalformedRow(f"line {line}: price is not finite")
        if timestamps and ts < timestamps[-1]:
            raise NonMonotoneTimestamps(f"line {line}: timestamp {ts} precedes {timestamps[-1]}")
        if timestamps and ts == timestamps[-1]:
            prices[-1] = px
            continue
        timestamps.append(ts)
        prices.append(px)

    if not timestamps:
        raise EmptyFile("no tick rows after the header")
    return PriceSeries(np.array(timestamps, dtype=np.int64), np.array(prices, dtype=np.float64))


def read_ticks(path) -> PriceSeries:
    with open(path, "rb") as fh:
        return parse_ticks(fh.read())
