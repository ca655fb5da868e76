"""Oracle-call accounting and trace emission.

Accounting convention: every evaluation of a summand gradient, or of one
block gradient of a coupling, is one call to its family (f, g, h_x, h_y).
Value evaluations are free; they only appear in diagnostics.

Traces are comma-separated text with a single header row.  Floats are
written with ``repr`` so files parse back losslessly.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "OracleCounter",
    "CountingSmoothOracle",
    "CountingCoupling",
    "TraceRecord",
    "write_trace",
    "read_trace",
    "format_trace",
]


@dataclass
class OracleCounter:
    """Cumulative gradient-call totals per oracle family."""

    f: int = 0
    g: int = 0
    hx: int = 0
    hy: int = 0

    @property
    def total(self) -> int:
        return self.f + self.g + self.hx + self.hy

    def snapshot(self) -> "OracleCounter":
        return OracleCounter(self.f, self.g, self.hx, self.hy)


class CountingSmoothOracle:
    """Wraps a SmoothConvexOracle, charging gradient calls to a counter family."""

    __slots__ = ("base", "counter", "family")

    def __init__(self, base, counter: OracleCounter, family: str = "f") -> None:
        self.base = base
        self.counter = counter
        self.family = family

    @property
    def dim(self):
        return self.base.dim

    @property
    def smoothness(self):
        return self.base.smoothness

    def value(self, x):
        return self.base.value(x)

    def gradient(self, x):
        setattr(self.counter, self.family, getattr(self.counter, self.family) + 1)
        return self.base.gradient(x)


class CountingCoupling:
    """Wraps a CouplingOracle, charging grad_x to h_x and grad_y to h_y."""

    __slots__ = ("base", "counter")

    def __init__(self, base, counter: OracleCounter) -> None:
        self.base = base
        self.counter = counter

    @property
    def dim_x(self):
        return self.base.dim_x

    @property
    def dim_y(self):
        return self.base.dim_y

    def grad_x(self, x, y):
        self.counter.hx += 1
        return self.base.grad_x(x, y)

    def grad_y(self, x, y):
        self.counter.hy += 1
        return self.base.grad_y(x, y)


@dataclass
class TraceRecord:
    """One emitted row: iteration (or phase) index plus cumulative accounting.

    ``potential`` is V^r against a reference solution and ``gap`` the duality
    gap; both are NaN when no evaluator is available.  ``wall_ns`` is
    measured wall time and is excluded from reproducibility comparisons.
    """

    index: int
    calls_f: int
    calls_g: int
    calls_hx: int
    calls_hy: int
    potential: float = float("nan")
    gap: float = float("nan")
    wall_ns: int = 0

    FIELDS = ("index", "calls_f", "calls_g", "calls_hx", "calls_hy",
              "potential", "gap", "wall_ns")

    def row(self) -> list[str]:
        return [
            str(self.index), str(self.calls_f), str(self.calls_g),
            str(self.calls_hx), str(self.calls_hy),
            repr(float(self.potential)), repr(float(self.gap)), str(self.wall_ns),
        ]


def make_record(index: int, counter: OracleCounter, potential=float("nan"),
                gap=float("nan"), t0: int | None = None) -> TraceRecord:
    wall = 0 if t0 is None else time.monotonic_ns() - t0
    return TraceRecord(index, counter.f, counter.g, counter.hx, counter.hy,
                       float(potential), float(gap), wall)


def format_trace(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TraceRecord.FIELDS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def write_trace(path, records) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(format_trace(records))


def read_trace(path) -> list[TraceRecord]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != TraceRecord.FIELDS:
            raise ValueError(f"unexpected trace header: {header}")
        for row in reader:
            out.append(TraceRecord(
                int(row[0]), int(row[1]), int(row[2]), int(row[3]), int(row[4]),
                float(row[5]), float(row[6]), int(row[7])))
    return out


def check_trace_invariants(records) -> None:
    """Raise if oracle counts decrease or a recorded potential is negative."""
    prev = None
    for r in records:
        if prev is not None:
            for name in ("calls_f", "calls_g", "calls_hx", "calls_hy"):
                if getattr(r, name) < getattr(prev, name):
                    raise ValueError(f"{name} decreased at index {r.index}")
        if not np.isnan(r.potential) and r.potential < -1e-12:
            raise ValueError(f"negative potential at index {r.index}")
        prev = r
